#pragma once

#include <Eigen/Dense>

namespace evostab {

/// Dense matrix exponential by scaling and squaring with a degree-13 Pade
/// approximant. Accurate to machine precision for the desk-scale matrices
/// used here.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a);

}  // namespace evostab
