#include "mfgl_cli/run.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mfgl/complexity.hpp"
#include "mfgl/gibbs.hpp"
#include "mfgl/rng.hpp"
#include "mfgl_cli/spec_io.hpp"

namespace mfgl::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct InputError : Error {
  using Error::Error;
};

class Stopwatch {
 public:
  Stopwatch(Report& r, bool on) : report_(r), on_(on) {}
  template <class Fn>
  auto time(const std::string& phase, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    if (on_) {
      const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
      report_.timings[phase] = d.count();
    }
    return result;
  }

 private:
  Report& report_;
  bool on_;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

FourierExpansion random_expansion(int n, int degree, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Term> terms;
  for (SubsetMask s = 1; s < (SubsetMask{1} << n); ++s) {
    if (std::popcount(s) <= degree) terms.push_back({s, rng.uniform(-0.5, 0.5)});
  }
  return FourierExpansion(n, std::move(terms));
}

std::vector<std::vector<double>> random_means(int n, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> z(static_cast<std::size_t>(n));
    for (double& x : z) x = rng.uniform(-0.95, 0.95);
    out.push_back(std::move(z));
  }
  return out;
}

MeanFieldOptions iteration_options(const RunConfig& cfg) {
  MeanFieldOptions o;
  o.damping = cfg.damping;
  o.tol = cfg.tol;
  o.max_iter = cfg.max_iter;
  return o;
}

ComplexityOptions complexity_options(const RunConfig& cfg) {
  ComplexityOptions o;
  o.samples = cfg.samples;
  o.seed = cfg.seed;
  o.max_n = cfg.max_n;
  return o;
}

HamiltonianSpec require_spec(const RunConfig& cfg) {
  if (cfg.spec_path.empty()) throw InputError(cfg.command + " requires --spec");
  return load_spec(cfg.spec_path);
}

double max_vertex_value(const FourierExpansion& f, int max_n) {
  const std::vector<double> table = f.truth_table(max_n);
  return *std::max_element(table.begin(), table.end());
}

void append(std::vector<AuditRow>& rows, std::vector<AuditRow> more) {
  rows.insert(rows.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

struct Instance {
  std::string name;
  FourierExpansion f;
};

void run_analyze(const RunConfig& cfg, Report& r, Stopwatch& sw) {
  const HamiltonianSpec spec = require_spec(cfg);
  const Hamiltonian h = build_hamiltonian(spec, cfg.max_n);
  const int n = h.expansion.dim();
  r.params = sw.time("complexity", [&] { return complexity_params(h.expansion, complexity_options(cfg)); });
  const std::vector<StartPoint> starts = default_starts(n, cfg.seed);
  r.solutions = sw.time("fixed_points", [&] {
    return solve_multistart(h.gradient, starts, cfg.lambda, iteration_options(cfg));
  });
  r.summary["n"] = n;
  r.summary["xf_threshold"] = xf_threshold(*r.params, n);
  ojson xf = ojson::array();
  for (const FixedPointSolution& s : r.solutions) {
    const XfTestResult t = xf_test(h.expansion, s.point, *r.params);
    xf.push_back({{"start_id", s.start_id}, {"residual_per_n", t.residual_per_n}, {"member", t.member}});
  }
  r.summary["xf"] = std::move(xf);
  if (const auto* cw = std::get_if<CurieWeissSpec>(&spec.payload)) {
    r.summary["scalar_roots"] = curie_weiss_roots(cw->beta);
    r.summary["scalar_roots_finite_n"] = curie_weiss_roots(cw->beta * (cw->n - 1) / cw->n);
  }
  if (const auto* is = std::get_if<IsingSpec>(&spec.payload)) {
    const ComplexityParams b = ising_complexity_bounds(is->A, is->mu);
    r.summary["closed_form_bounds"] = {{"D", b.D}, {"L1", b.L1}, {"L2", b.L2}};
  }
}

void run_fixed_points(const RunConfig& cfg, Report& r, Stopwatch& sw) {
  const HamiltonianSpec spec = require_spec(cfg);
  const Hamiltonian h = build_hamiltonian(spec, cfg.max_n);
  const std::vector<StartPoint> starts = default_starts(h.expansion.dim(), cfg.seed);
  r.solutions = sw.time("fixed_points", [&] {
    return solve_multistart(h.gradient, starts, cfg.lambda, iteration_options(cfg));
  });
  r.summary["n"] = h.expansion.dim();
}

int run_ld_scan(const RunConfig& cfg, Report& r, Stopwatch& sw, std::string& diagnostic) {
  const HamiltonianSpec spec = require_spec(cfg);
  if (!cfg.t) throw InputError("ld-scan requires --t");
  const Hamiltonian h = build_hamiltonian(spec, cfg.max_n);
  const FourierExpansion& f = h.expansion;
  const int n = f.dim();
  const double t = *cfg.t;
  const double top = max_vertex_value(f, cfg.max_n);
  if (top < t * n) {
    diagnostic = "witness-missing: max f = " + fmt(top) + " < t n = " + fmt(t * n);
    return kExitInput;
  }
  const std::vector<double> grid = cfg.lambda_grid.empty() ? default_lambda_grid() : cfg.lambda_grid;
  const std::vector<StartPoint> starts = default_starts(n, cfg.seed);
  LambdaScanOptions opts;
  opts.iteration = iteration_options(cfg);
  const LambdaScanResult scan =
      sw.time("lambda_scan", [&] { return lambda_scan(f, t, cfg.delta, grid, starts, opts); });
  r.solutions = scan.solutions;
  r.audits = sw.time("large_deviations", [&] {
    return audit_large_deviations(f, t, cfg.delta, spec.tag() + "(t=" + fmt(t) + ",delta=" + fmt(cfg.delta) + ")",
                                  cfg.max_n);
  });
  r.summary["window_lo"] = scan.window_lo;
  r.summary["window_hi"] = scan.window_hi;
  r.summary["delta_prime"] = delta_prime(cfg.delta);
  r.summary["delta_prime_within_2delta"] = delta_prime(cfg.delta) <= 2.0 * cfg.delta;
  r.summary["runs"] = scan.runs;
  return all_pass(r.audits) ? kExitOk : kExitAuditFailed;
}

std::vector<AuditRow> suite_appendix(const RunConfig& cfg, const std::vector<Instance>& fs, Report& r) {
  std::vector<AuditRow> rows;
  rows.push_back(audit_tanh_lemma(cfg.trials, 1.0, 5.0, cfg.seed));
  for (const Instance& inst : fs) {
    const auto means = random_means(inst.f.dim(), 5, cfg.seed + 1);
    const std::string tag = inst.name + ";means(seed=" + std::to_string(cfg.seed + 1) + ")";
    append(rows, audit_appendix_misc(inst.f, ScalarShape::cutoff(), means, tag + ";h=cutoff", cfg.max_n));
    append(rows, audit_appendix_misc(inst.f, ScalarShape::remark14(), means, tag + ";h=remark14", cfg.max_n));
  }
  const std::vector<int> ns = {16, 64, 256, 1024};
  const TightnessResult tight = tightness_demo(ns);
  append(rows, tight.rows);
  r.summary["tightness_norms"] = tight.norms;
  r.summary["tightness_slope"] = tight.slope;
  return rows;
}

std::vector<AuditRow> suite_transport(const RunConfig& cfg, const std::vector<Instance>& fs) {
  std::vector<AuditRow> rows;
  for (const Instance& inst : fs) {
    const auto thetas = sample_box_tilts(inst.f.dim(), cfg.tilts, cfg.seed);
    append(rows, audit_prop17(inst.f, thetas, inst.name + ";box_tilts(seed=" + std::to_string(cfg.seed) + ")",
                              cfg.transport_max_states));
  }
  return rows;
}

std::vector<AuditRow> suite_residuals(const RunConfig& cfg, const std::vector<Instance>& fs, Report& r) {
  std::vector<AuditRow> rows;
  for (const Instance& inst : fs) {
    const ComplexityParams params = complexity_params(inst.f, complexity_options(cfg));
    if (!r.params) r.params = params;
    const auto thetas = sample_tilts(inst.f.dim(), cfg.tilts, cfg.epsilon, cfg.seed);
    append(rows, audit_main_residuals(inst.f, thetas, cfg.epsilon, params,
                                      inst.name + ";eps=" + fmt(cfg.epsilon) + ";tilts(seed=" +
                                          std::to_string(cfg.seed) + ")"));
  }
  return rows;
}

std::vector<AuditRow> suite_ld(const RunConfig& cfg, const Instance& inst, double t) {
  return audit_large_deviations(inst.f, t, cfg.delta, inst.name + ";t=" + fmt(t) + ";delta=" + fmt(cfg.delta),
                                cfg.max_n);
}

Instance bundled_cw(double beta, int n) {
  return {"curie_weiss(beta=" + fmt(beta) + ",n=" + std::to_string(n) + ")",
          build_hamiltonian(HamiltonianSpec{CurieWeissSpec{beta, n}}).expansion};
}

Instance bundled_random(int n, int degree, std::uint64_t seed) {
  return {"random(n=" + std::to_string(n) + ",degree=" + std::to_string(degree) + ",seed=" + std::to_string(seed) + ")",
          random_expansion(n, degree, seed)};
}

int run_audit(const RunConfig& cfg, Report& r, Stopwatch& sw) {
  const std::string& suite = cfg.suite;
  const bool all = suite == "all";
  std::optional<Instance> user;
  if (!cfg.spec_path.empty()) {
    const HamiltonianSpec spec = load_spec(cfg.spec_path);
    user = Instance{"spec:" + spec.tag(), build_hamiltonian(spec, cfg.max_n).expansion};
  }
  auto pick = [&](std::vector<Instance> bundled) {
    return user ? std::vector<Instance>{*user} : std::move(bundled);
  };
  std::vector<AuditRow> rows;
  if (all || suite == "appendix") {
    const auto fs = pick({bundled_random(8, 2, cfg.seed), bundled_cw(2.0, 8)});
    append(rows, sw.time("appendix", [&] { return suite_appendix(cfg, fs, r); }));
  }
  if (all || suite == "transport") {
    const auto fs = pick({bundled_cw(1.2, 8), bundled_random(6, 3, cfg.seed)});
    append(rows, sw.time("transport", [&] { return suite_transport(cfg, fs); }));
  }
  if (all || suite == "residuals") {
    const auto fs = pick({bundled_cw(2.0, 8)});
    append(rows, sw.time("residuals", [&] { return suite_residuals(cfg, fs, r); }));
  }
  if (all || suite == "ld") {
    Instance inst = user ? *user : bundled_cw(1.5, 10);
    double t = 0.0;
    if (cfg.t) {
      t = *cfg.t;
    } else if (!user) {
      t = 0.5 * max_vertex_value(inst.f, cfg.max_n) / inst.f.dim();
    } else {
      throw InputError("audit --suite ld with --spec requires --t");
    }
    append(rows, sw.time("ld", [&] { return suite_ld(cfg, inst, t); }));
  }
  r.audits = std::move(rows);
  return all_pass(r.audits) ? kExitOk : kExitAuditFailed;
}

int run_report(const RunConfig& cfg, Report& r) {
  if (cfg.input_path.empty()) throw InputError("report requires --input");
  std::ifstream in(cfg.input_path, std::ios::binary);
  if (!in) throw InputError("cannot open " + cfg.input_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  r = parse_report(buf.str());
  return all_pass(r.audits) ? kExitOk : kExitAuditFailed;
}

}  // namespace

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> commands = {"analyze", "fixed-points", "ld-scan", "audit", "report"};
  static const std::vector<std::string> suites = {"appendix", "transport", "residuals", "ld", "all"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
    throw InvalidArgument("unknown command '" + cfg.command + "'");
  }
  if (std::find(suites.begin(), suites.end(), cfg.suite) == suites.end()) {
    throw InvalidArgument("unknown suite '" + cfg.suite + "'");
  }
  if (cfg.max_n < 1 || cfg.transport_max_states < 1) throw InvalidArgument("caps must be >= 1");
  if (!(cfg.tol > 0.0)) throw InvalidArgument("tol must be > 0");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) throw InvalidArgument("damping must be in (0,1]");
  if (cfg.max_iter < 0) throw InvalidArgument("max-iter must be >= 0");
  if (cfg.samples < 2) throw InvalidArgument("samples must be >= 2");
  if (!(cfg.delta > 0.0)) throw InvalidArgument("delta must be > 0");
  if (cfg.tilts < 0 || cfg.trials < 1) throw InvalidArgument("tilts must be >= 0 and trials >= 1");
  if (!std::isfinite(cfg.lambda)) throw InvalidArgument("lambda must be finite");
  for (double l : cfg.lambda_grid) {
    if (!std::isfinite(l)) throw InvalidArgument("lambda grid must be finite");
  }
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  ojson j;
  j["command"] = cfg.command;
  j["spec_path"] = cfg.spec_path;
  j["input_path"] = cfg.input_path;
  j["out_path"] = cfg.out_path;
  j["format"] = to_string(cfg.format);
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["tol"] = cfg.tol;
  j["damping"] = cfg.damping;
  j["max_iter"] = cfg.max_iter;
  j["lambda"] = cfg.lambda;
  if (cfg.lambda_grid.empty()) {
    j["lambda_grid"] = "default";
  } else {
    j["lambda_grid"] = cfg.lambda_grid;
  }
  j["epsilon"] = cfg.epsilon;
  j["t"] = cfg.t ? ojson(*cfg.t) : ojson(nullptr);
  j["delta"] = cfg.delta;
  j["max_n"] = cfg.max_n;
  j["transport_max_states"] = cfg.transport_max_states;
  j["suite"] = cfg.suite;
  j["tilts"] = cfg.tilts;
  j["trials"] = cfg.trials;
  j["timings"] = cfg.timings;
  return j;
}

RunOutcome execute(const RunConfig& cfg) {
  RunOutcome out;
  try {
    validate(cfg);
    Report& r = out.report;
    r.config = config_to_json(cfg);
    if (!cfg.spec_path.empty() && cfg.command != "report") r.config["spec"] = spec_to_json(load_spec(cfg.spec_path));
    Stopwatch sw(r, cfg.timings);
    if (cfg.command == "analyze") {
      run_analyze(cfg, r, sw);
    } else if (cfg.command == "fixed-points") {
      run_fixed_points(cfg, r, sw);
    } else if (cfg.command == "ld-scan") {
      out.exit_code = run_ld_scan(cfg, r, sw, out.diagnostic);
    } else if (cfg.command == "audit") {
      out.exit_code = run_audit(cfg, r, sw);
    } else {
      out.exit_code = run_report(cfg, r);
    }
    if (out.exit_code == kExitAuditFailed) {
      std::size_t failed = 0;
      for (const AuditRow& a : r.audits) failed += a.applicable && !a.pass;
      out.diagnostic = std::to_string(failed) + " audit row(s) failed";
    }
  } catch (const Error& e) {
    out.exit_code = kExitInput;
    out.diagnostic = e.what();
  } catch (const nlohmann::json::exception& e) {
    out.exit_code = kExitInput;
    out.diagnostic = e.what();
  }
  return out;
}

int run(const RunConfig& cfg) {
  RunOutcome out = execute(cfg);
  if (!out.diagnostic.empty()) std::cerr << "mfgl: " << out.diagnostic << "\n";
  if (out.exit_code == kExitInput) return out.exit_code;
  try {
    const std::string bytes = serialize_report(out.report, cfg.format);
    if (cfg.out_path.empty()) {
      std::cout << bytes;
      std::cout.flush();
    } else {
      write_atomic(cfg.out_path, bytes);
    }
  } catch (const Error& e) {
    std::cerr << "mfgl: " << e.what() << "\n";
    return kExitInput;
  }
  return out.exit_code;
}

}  // namespace mfgl::cli
