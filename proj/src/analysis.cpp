#include "evostab/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace evostab {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double require_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

double number_or(const Json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return require_number(j.at(key), where + "." + key);
}

Json inf_aware(double v) {
  if (std::isinf(v)) return Json("inf");
  return Json(v);
}

double inf_aware_back(const Json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw ConfigError(where + ": expected a number or \"inf\"");
  }
  return require_number(j, where);
}

const char* quad_name(Quadrature q) { return q == Quadrature::Trapezoid ? "trapezoid" : "simpson"; }

Quadrature quad_from(const std::string& s, const std::string& where) {
  if (s == "trapezoid") return Quadrature::Trapezoid;
  if (s == "simpson") return Quadrature::Simpson;
  throw ConfigError(where + ": unknown quadrature '" + s + "'");
}

const char* provenance_name(Provenance p) { return p == Provenance::Analytic ? "analytic" : "estimated"; }

Provenance provenance_from(const std::string& s, const std::string& where) {
  if (s == "analytic") return Provenance::Analytic;
  if (s == "estimated") return Provenance::Estimated;
  throw ConfigError(where + ": unknown provenance '" + s + "'");
}

Json space_to_json(const SpaceSpec& space) {
  Json j;
  switch (space.kind()) {
    case SpaceKind::Lp:
      j["kind"] = "Lp";
      j["p"] = space.p();
      break;
    case SpaceKind::Lorentz:
      j["kind"] = "Lorentz";
      j["p"] = space.p();
      j["q"] = inf_aware(space.q());
      break;
    case SpaceKind::MSpace:
      j["kind"] = "MSpace";
      break;
    case SpaceKind::LInfty:
      j["kind"] = "LInfty";
      break;
  }
  j["quadrature"] = quad_name(space.quadrature());
  return j;
}

SpaceSpec space_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return SpaceSpec::parse(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw ConfigError(where + ": expected a space object with 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  Quadrature quad = Quadrature::Trapezoid;
  if (j.contains("quadrature")) quad = quad_from(j.at("quadrature").get<std::string>(), where);
  try {
    if (kind == "Lp") return SpaceSpec::lp(inf_aware_back(j.at("p"), where + ".p"), quad);
    if (kind == "Lorentz")
      return SpaceSpec::lorentz(require_number(j.at("p"), where + ".p"), inf_aware_back(j.at("q"), where + ".q"),
                                quad);
    if (kind == "MSpace") return SpaceSpec::mspace().with_quadrature(quad);
    if (kind == "LInfty") return SpaceSpec::linfty().with_quadrature(quad);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown space kind '" + kind + "'");
}

Json constants_to_json(const SpaceConstants& c) {
  Json j;
  j["m_avg"] = c.m_avg;
  j["n_shift"] = c.n_shift;
  j["inf_chi"] = c.inf_chi;
  j["lambda1_chi_norm"] = c.lambda1_chi_norm;
  j["provenance"] = Json{{"m_avg", provenance_name(c.m_avg_prov)},
                         {"n_shift", provenance_name(c.n_shift_prov)},
                         {"inf_chi", provenance_name(c.inf_chi_prov)},
                         {"lambda1_chi_norm", provenance_name(c.lambda1_chi_prov)}};
  return j;
}

SpaceConstants constants_from_json(const Json& j, const std::string& where) {
  SpaceConstants c;
  c.m_avg = require_number(j.at("m_avg"), where);
  c.n_shift = require_number(j.at("n_shift"), where);
  c.inf_chi = require_number(j.at("inf_chi"), where);
  c.lambda1_chi_norm = require_number(j.at("lambda1_chi_norm"), where);
  const Json& p = j.at("provenance");
  c.m_avg_prov = provenance_from(p.at("m_avg").get<std::string>(), where);
  c.n_shift_prov = provenance_from(p.at("n_shift").get<std::string>(), where);
  c.inf_chi_prov = provenance_from(p.at("inf_chi").get<std::string>(), where);
  c.lambda1_chi_prov = provenance_from(p.at("lambda1_chi_norm").get<std::string>(), where);
  return c;
}

const char* flag_name(TruncationFlag f) { return f == TruncationFlag::Converged ? "converged" : "capped"; }

TruncationFlag flag_from(const std::string& s, const std::string& where) {
  if (s == "converged") return TruncationFlag::Converged;
  if (s == "capped") return TruncationFlag::Capped;
  throw ConfigError(where + ": unknown truncation flag '" + s + "'");
}

Json datko_to_json(const DatkoReport& r) {
  Json j;
  j["space"] = space_to_json(r.space);
  j["t0_grid"] = r.t0_grid;
  Json probes = Json::array();
  for (const auto& x : r.probes) {
    Json v = Json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i) v.push_back(x(i));
    probes.push_back(std::move(v));
  }
  j["probes"] = std::move(probes);
  Json cells = Json::array();
  for (const auto& row : r.cells) {
    Json jr = Json::array();
    for (const auto& c : row)
      jr.push_back(Json{{"value", c.value}, {"flag", flag_name(c.flag)}, {"divergent", c.divergent},
                        {"horizon", c.horizon}});
    cells.push_back(std::move(jr));
  }
  j["cells"] = std::move(cells);
  j["sup_per_probe"] = r.sup_per_probe;
  j["horizon_cap"] = r.horizon_cap;
  j["divergent"] = r.divergent;
  j["semigroup_reduced"] = r.semigroup_reduced;
  j["periodic_reduced"] = r.periodic_reduced;
  return j;
}

DatkoReport datko_from_json(const Json& j, const std::string& where) {
  DatkoReport r;
  r.space = space_from_json(j.at("space"), where + ".space");
  r.t0_grid = j.at("t0_grid").get<std::vector<double>>();
  for (const Json& v : j.at("probes")) {
    Eigen::VectorXd x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = require_number(v.at(i), where);
    r.probes.push_back(std::move(x));
  }
  for (const Json& row : j.at("cells")) {
    std::vector<TrajectoryNorm> out;
    for (const Json& c : row) {
      TrajectoryNorm t;
      t.value = require_number(c.at("value"), where);
      t.flag = flag_from(c.at("flag").get<std::string>(), where);
      t.divergent = c.at("divergent").get<bool>();
      t.horizon = require_number(c.at("horizon"), where);
      out.push_back(t);
    }
    r.cells.push_back(std::move(out));
  }
  r.sup_per_probe = j.at("sup_per_probe").get<std::vector<double>>();
  r.horizon_cap = require_number(j.at("horizon_cap"), where);
  r.divergent = j.at("divergent").get<bool>();
  r.semigroup_reduced = j.at("semigroup_reduced").get<bool>();
  r.periodic_reduced = j.at("periodic_reduced").get<bool>();
  return r;
}

Json seminorms_to_json(const SeminormEstimate& e) {
  return Json{{"bound", e.bound},
              {"divergent", e.divergent},
              {"argmax", Json{{"t", e.argmax_t}, {"t0", e.argmax_t0}, {"probe", e.argmax_probe}}},
              {"grid_sizes", Json{{"t", e.t_count}, {"t0", e.t0_count}, {"probes", e.probe_count}}}};
}

SeminormEstimate seminorms_from_json(const Json& j, const std::string& where) {
  SeminormEstimate e;
  e.bound = require_number(j.at("bound"), where);
  e.divergent = j.at("divergent").get<bool>();
  e.argmax_t = require_number(j.at("argmax").at("t"), where);
  e.argmax_t0 = require_number(j.at("argmax").at("t0"), where);
  e.argmax_probe = j.at("argmax").at("probe").get<int>();
  e.t_count = j.at("grid_sizes").at("t").get<std::size_t>();
  e.t0_count = j.at("grid_sizes").at("t0").get<std::size_t>();
  e.probe_count = j.at("grid_sizes").at("probes").get<std::size_t>();
  return e;
}

Json certificate_to_json(const StabilityCertificate& c) {
  Json j;
  j["status"] = c.certified() ? "certified" : "refused";
  if (!c.certified()) j["refusal_reason"] = c.refusal_reason;
  j["K1"] = c.decay_coeff;
  j["alpha"] = c.decay_rate;
  j["derivation"] = Json{{"C", c.derivation.uniform_bound},
                         {"C1", c.derivation.uniform_growth},
                         {"q", c.derivation.contraction},
                         {"Delta", c.derivation.contraction_time},
                         {"space_constants", constants_to_json(c.derivation.constants)}};
  j["verification_residual"] = c.verification_residual;
  return j;
}

StabilityCertificate certificate_from_json(const Json& j, const std::string& where) {
  StabilityCertificate c;
  c.status = j.at("status").get<std::string>() == "certified" ? CertStatus::Certified : CertStatus::Refused;
  if (j.contains("refusal_reason")) c.refusal_reason = j.at("refusal_reason").get<std::string>();
  c.decay_coeff = require_number(j.at("K1"), where);
  c.decay_rate = require_number(j.at("alpha"), where);
  const Json& d = j.at("derivation");
  c.derivation.uniform_bound = require_number(d.at("C"), where);
  c.derivation.uniform_growth = require_number(d.at("C1"), where);
  c.derivation.contraction = require_number(d.at("q"), where);
  c.derivation.contraction_time = require_number(d.at("Delta"), where);
  c.derivation.constants = constants_from_json(d.at("space_constants"), where + ".space_constants");
  c.verification_residual = require_number(j.at("verification_residual"), where);
  return c;
}

using EntryFn = std::function<double(double)>;

struct CoeffEntry {
  EntryFn fn;
  EntryFn antiderivative;  // exact for all three entry forms
};

CoeffEntry entry_from_json(const Json& j, const std::string& where) {
  if (j.is_number() || (j.is_object() && j.contains("constant"))) {
    const double c = j.is_number() ? j.get<double>() : require_number(j.at("constant"), where + ".constant");
    return {[c](double) { return c; }, [c](double t) { return c * t; }};
  }
  if (!j.is_object()) throw ConfigError(where + ": expected a number or an entry object");
  if (j.contains("sinusoidal")) {
    const Json& s = j.at("sinusoidal");
    const double offset = number_or(s, "offset", 0.0, where);
    const double amplitude = require_number(s.at("amplitude"), where + ".amplitude");
    const double omega = require_number(s.at("omega"), where + ".omega");
    const double phase = number_or(s, "phase", 0.0, where);
    if (omega == 0.0) {
      const double c = offset + amplitude * std::sin(phase);
      return {[c](double) { return c; }, [c](double t) { return c * t; }};
    }
    return {[=](double t) { return offset + amplitude * std::sin(omega * t + phase); },
            [=](double t) { return offset * t - amplitude / omega * std::cos(omega * t + phase); }};
  }
  if (j.contains("schedule")) {
    const Json& s = j.at("schedule");
    auto times = s.at("times").get<std::vector<double>>();
    auto values = s.at("values").get<std::vector<double>>();
    if (times.empty() || times.size() != values.size())
      throw ConfigError(where + ".schedule: times and values must be nonempty and equally long");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1])) throw ConfigError(where + ".schedule: times must be strictly increasing");
    // prefix integrals with I(times[0]) = 0
    std::vector<double> prefix(times.size(), 0.0);
    for (std::size_t i = 1; i < times.size(); ++i)
      prefix[i] = prefix[i - 1] + values[i - 1] * (times[i] - times[i - 1]);
    auto fn = [times, values](double t) {
      std::size_t i = 0;
      while (i + 1 < times.size() && t >= times[i + 1]) ++i;
      return values[i];
    };
    auto anti = [times = std::move(times), values = std::move(values), prefix = std::move(prefix)](double t) {
      std::size_t i = 0;
      while (i + 1 < times.size() && t >= times[i + 1]) ++i;
      return prefix[i] + values[i] * (t - times[i]);
    };
    return {std::move(fn), std::move(anti)};
  }
  throw ConfigError(where + ": unknown entry form (want constant, sinusoidal, or schedule)");
}

ExpBound bound_from_json(const Json& j, const std::string& where) {
  if (!j.contains("exp_bound")) throw ConfigError(where + ": missing exp_bound");
  const Json& b = j.at("exp_bound");
  ExpBound out{require_number(b.at("K"), where + ".exp_bound.K"), require_number(b.at("c"), where + ".exp_bound.c")};
  if (!(out.growth_coeff >= 1.0)) throw ConfigError(where + ".exp_bound.K: must be >= 1");
  if (!(out.growth_rate > 0.0)) throw ConfigError(where + ".exp_bound.c: must be > 0");
  return out;
}

}  // namespace

EvolutionFamily family_from_json(const Json& system, TimeDomain domain) {
  if (system.is_string()) return find_corpus_entry(system.get<std::string>()).family;
  if (!system.is_object() || !system.contains("type")) throw ConfigError("system: expected a corpus name or an object with 'type'");
  const std::string type = system.at("type").get<std::string>();

  if (type == "scalar") {
    CoeffEntry a = entry_from_json(system.at("a"), "system.a");
    return EvolutionFamily::scalar(std::move(a.fn), bound_from_json(system, "system"), domain,
                                   std::move(a.antiderivative));
  }
  if (type == "ode") {
    const int dim = system.at("dim").get<int>();
    if (dim < 1) throw ConfigError("system.dim: must be >= 1");
    const Json& m = system.at("matrix");
    if (!m.is_array() || m.size() != static_cast<std::size_t>(dim)) throw ConfigError("system.matrix: expected a dim x dim array");
    std::vector<std::vector<EntryFn>> entries(dim);
    for (int i = 0; i < dim; ++i) {
      const Json& row = m.at(i);
      if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
        throw ConfigError("system.matrix: expected a dim x dim array");
      for (int k = 0; k < dim; ++k) entries[i].push_back(entry_from_json(row.at(k), "system.matrix").fn);
    }
    IntegratorSettings integ;
    integ.step = number_or(system, "step", 1e-3, "system");
    if (!(integ.step > 0.0)) throw ConfigError("system.step: must be > 0");
    auto coeff = [entries = std::move(entries), dim](double t) {
      Eigen::MatrixXd a(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) a(i, k) = entries[i][k](t);
      return a;
    };
    return EvolutionFamily::linear_ode(dim, std::move(coeff), bound_from_json(system, "system"), domain, integ);
  }
  if (type == "semigroup") {
    const Json& m = system.at("matrix");
    const auto dim = static_cast<Eigen::Index>(m.size());
    if (dim < 1) throw ConfigError("system.matrix: must be nonempty");
    Eigen::MatrixXd a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Json& row = m.at(static_cast<std::size_t>(i));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
        throw ConfigError("system.matrix: expected a square array of numbers");
      for (Eigen::Index k = 0; k < dim; ++k)
        a(i, k) = require_number(row.at(static_cast<std::size_t>(k)), "system.matrix");
    }
    return EvolutionFamily::semigroup(std::move(a), bound_from_json(system, "system"), domain);
  }
  if (type == "periodic") {
    const double period = require_number(system.at("period"), "system.period");
    if (!(period > 0.0)) throw ConfigError("system.period: must be > 0");
    return EvolutionFamily::periodic(family_from_json(system.at("base"), domain), period);
  }
  throw ConfigError("system.type: unknown type '" + type + "'");
}

AnalysisConfig parse_config(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  AnalysisConfig cfg;

  if (!doc.contains("system")) throw ConfigError("config.system: required");
  if (doc.at("system").is_string()) {
    cfg.corpus_name = doc.at("system").get<std::string>();
    bool known = false;
    for (const auto& e : corpus()) known = known || e.name == cfg.corpus_name;
    if (!known) throw ConfigError("config.system: unknown corpus entry '" + cfg.corpus_name + "'");
  } else {
    cfg.inline_system = doc.at("system");
  }

  if (!doc.contains("space")) throw ConfigError("config.space: required");
  cfg.space = space_from_json(doc.at("space"), "config.space");

  if (doc.contains("domain")) {
    const std::string d = doc.at("domain").get<std::string>();
    if (d == "half-line")
      cfg.domain = TimeDomain::HalfLine;
    else if (d == "line")
      cfg.domain = TimeDomain::Line;
    else
      throw ConfigError("config.domain: expected 'half-line' or 'line'");
  }

  if (doc.contains("t0_grid")) {
    const Json& g = doc.at("t0_grid");
    if (g.contains("count")) {
      const auto count = g.at("count").get<long long>();
      if (count < 1) throw ConfigError("config.t0_grid.count: must be >= 1");
      cfg.t0_grid.count = static_cast<std::size_t>(count);
    }
    if (g.contains("lo")) cfg.t0_grid.lo = require_number(g.at("lo"), "config.t0_grid.lo");
    if (g.contains("hi")) cfg.t0_grid.hi = require_number(g.at("hi"), "config.t0_grid.hi");
    if (cfg.t0_grid.lo && cfg.t0_grid.hi && !(*cfg.t0_grid.lo <= *cfg.t0_grid.hi))
      throw ConfigError("config.t0_grid: lo must not exceed hi");
  }

  if (doc.contains("horizon")) {
    const Json& h = doc.at("horizon");
    cfg.horizon.rel_tol = number_or(h, "rel_tol", cfg.horizon.rel_tol, "config.horizon");
    cfg.horizon.cap = number_or(h, "cap", cfg.horizon.cap, "config.horizon");
    cfg.horizon.initial = number_or(h, "initial", cfg.horizon.initial, "config.horizon");
    cfg.horizon.dt = number_or(h, "dt", cfg.horizon.dt, "config.horizon");
    if (!(cfg.horizon.rel_tol > 0.0)) throw ConfigError("config.horizon.rel_tol: must be > 0");
    if (!(cfg.horizon.dt > 0.0)) throw ConfigError("config.horizon.dt: must be > 0");
    if (!(cfg.horizon.initial > 1.0)) throw ConfigError("config.horizon.initial: must be > 1");
    if (!(cfg.horizon.cap >= cfg.horizon.initial)) throw ConfigError("config.horizon.cap: must be >= initial");
  }

  if (doc.contains("probes")) {
    const Json& p = doc.at("probes");
    if (p.contains("count")) {
      cfg.probes.random_count = p.at("count").get<int>();
      if (cfg.probes.random_count < 0) throw ConfigError("config.probes.count: must be >= 0");
    }
    if (p.contains("seed")) cfg.probes.seed = p.at("seed").get<std::uint64_t>();
  }

  if (doc.contains("certificate")) {
    cfg.certificate_q = number_or(doc.at("certificate"), "q", cfg.certificate_q, "config.certificate");
    if (!(cfg.certificate_q > 0.0 && cfg.certificate_q < 1.0))
      throw ConfigError("config.certificate.q: must lie in (0, 1)");
  }

  if (doc.contains("verify")) {
    const Json& v = doc.at("verify");
    cfg.verify.duration = number_or(v, "duration", cfg.verify.duration, "config.verify");
    cfg.verify.step = number_or(v, "step", cfg.verify.step, "config.verify");
    if (!(cfg.verify.duration > 0.0) || !(cfg.verify.step > 0.0))
      throw ConfigError("config.verify: duration and step must be > 0");
  }

  return cfg;
}

bool AnalysisReport::operator==(const AnalysisReport& other) const {
  return system == other.system && space == other.space && constants == other.constants && datko == other.datko &&
         seminorms == other.seminorms && certificate == other.certificate &&
         fit_decay_coeff == other.fit_decay_coeff && fit_decay_rate == other.fit_decay_rate;
}

Json report_to_json(const AnalysisReport& r) {
  Json j;
  j["system"] = r.system;
  j["space"] = space_to_json(r.space);
  j["space_constants"] = constants_to_json(r.constants);
  j["datko"] = datko_to_json(r.datko);
  j["seminorm_estimate"] = seminorms_to_json(r.seminorms);
  j["certificate"] = certificate_to_json(r.certificate);
  j["empirical_fit"] = Json{{"K1_emp", r.fit_decay_coeff}, {"alpha_emp", r.fit_decay_rate}, {"certified", false}};
  return j;
}

AnalysisReport report_from_json(const Json& doc) {
  AnalysisReport r;
  r.system = doc.at("system").get<std::string>();
  r.space = space_from_json(doc.at("space"), "report.space");
  r.constants = constants_from_json(doc.at("space_constants"), "report.space_constants");
  r.datko = datko_from_json(doc.at("datko"), "report.datko");
  r.seminorms = seminorms_from_json(doc.at("seminorm_estimate"), "report.seminorm_estimate");
  r.certificate = certificate_from_json(doc.at("certificate"), "report.certificate");
  r.fit_decay_coeff = require_number(doc.at("empirical_fit").at("K1_emp"), "report.empirical_fit");
  r.fit_decay_rate = require_number(doc.at("empirical_fit").at("alpha_emp"), "report.empirical_fit");
  return r;
}

AnalysisOutputs run_analysis(const AnalysisConfig& config) {
  AnalysisOutputs out;

  const EvolutionFamily family = config.corpus_name.empty()
                                     ? family_from_json(*config.inline_system, config.domain)
                                     : find_corpus_entry(config.corpus_name).family;

  const double lo = config.t0_grid.lo.value_or(config.domain == TimeDomain::HalfLine ? 0.0 : -25.0);
  const double hi = config.t0_grid.hi.value_or(config.domain == TimeDomain::HalfLine ? 50.0 : 25.0);
  const std::vector<double> grid = uniform_grid(lo, hi, config.t0_grid.count);
  const std::vector<Eigen::VectorXd> probes = default_probes(family.dim(), config.probes.random_count, config.probes.seed);

  AnalysisReport& report = out.report;
  report.system = config.corpus_name.empty() ? "inline" : config.corpus_name;
  report.space = config.space;
  report.constants = space_constants(config.space, 256, config.probes.seed);
  report.datko = datko_sup(family, config.space, grid, probes, config.horizon);

  // Window endpoints for the seminorm sweep: geometric offsets anchored at
  // both ends of the effective grid.
  std::vector<double> t_grid;
  const std::vector<double>& eff = report.datko.t0_grid;
  for (double w = 0.5; w <= 64.0; w *= 2.0) {
    t_grid.push_back(eff.front() + w);
    if (eff.back() != eff.front()) t_grid.push_back(eff.back() + w);
  }
  report.seminorms = estimate_uniform_bound(family, config.space, t_grid, eff, probes, config.horizon.dt,
                                            config.horizon.growth_ratio_limit);

  CertifyOptions copts;
  copts.verify_duration = config.verify.duration;
  copts.verify_step = config.verify.step;
  report.certificate = certify_stability(family, config.space, report.datko, report.seminorms, config.certificate_q,
                                         copts);

  {
    // decay profile for the CSV and the non-certified fit
    std::vector<double> fit_t0s;
    const std::size_t stride = std::max<std::size_t>(1, eff.size() / 4);
    for (std::size_t i = 0; i < eff.size(); i += stride) fit_t0s.push_back(eff[i]);
    const EmpiricalFit fit = empirical_decay_fit(family, fit_t0s, config.verify.duration, probes, 0.25);
    report.fit_decay_coeff = fit.decay_coeff;
    report.fit_decay_rate = fit.decay_rate;

    std::string csv = "s,norm_probe_max\r\n";
    for (std::size_t k = 0; k < fit.offsets.size(); ++k)
      csv += fmt(fit.offsets[k]) + "," + fmt(fit.norm_probe_max[k]) + "\r\n";
    out.csv_decay = std::move(csv);
  }

  {
    std::string csv = "t0,M_x,flag\r\n";
    for (std::size_t i = 0; i < report.datko.t0_grid.size(); ++i) {
      double mx = 0.0;
      bool capped = false;
      for (const auto& cell : report.datko.cells[i]) {
        mx = std::max(mx, cell.value);
        capped = capped || cell.flag == TruncationFlag::Capped;
      }
      csv += fmt(report.datko.t0_grid[i]) + "," + fmt(mx) + "," + (capped ? "capped" : "converged") + "\r\n";
    }
    out.csv_sup = std::move(csv);
  }

  if (report.certificate.certified())
    out.exit_code = kExitSuccess;
  else if (report.certificate.refusal_reason == kRefusalConstraint)
    out.exit_code = kExitConstraint;
  else if (report.certificate.refusal_reason == kRefusalDivergent)
    out.exit_code = kExitDivergent;
  else
    out.exit_code = kExitInternal;

  return out;
}

Json corpus_to_json(const std::string& name_filter) {
  Json arr = Json::array();
  for (const auto& entry : corpus()) {
    if (!name_filter.empty() && entry.name.find(name_filter) == std::string::npos) continue;
    Json j;
    j["name"] = entry.name;
    switch (entry.truth.cls) {
      case StabilityClass::Stable:
        j["ground_truth"] = "stable";
        break;
      case StabilityClass::MarginallyStable:
        j["ground_truth"] = "marginally-stable";
        break;
      case StabilityClass::Unstable:
        j["ground_truth"] = "unstable";
        break;
    }
    if (entry.truth.decay_coeff) j["K1_oracle"] = *entry.truth.decay_coeff;
    if (entry.truth.decay_rate) j["alpha_oracle"] = *entry.truth.decay_rate;
    j["dim"] = entry.family.dim();
    j["note"] = entry.oracle_note;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace evostab
