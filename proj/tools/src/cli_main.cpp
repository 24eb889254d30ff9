#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mfgl_cli/run.hpp"

namespace mfgl::cli {

namespace {

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InvalidArgument("bad lambda grid entry '" + item + "'");
    grid.push_back(v);
  }
  if (grid.empty()) throw InvalidArgument("empty lambda grid");
  return grid;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Mean-field decomposition audits for Gibbs measures on the hypercube"};
  RunConfig cfg;
  std::string format = "json";
  std::string grid;
  double t = 0.0;

  app.add_option("command", cfg.command, "analyze | fixed-points | ld-scan | audit | report")
      ->required()
      ->check(CLI::IsMember({"analyze", "fixed-points", "ld-scan", "audit", "report"}));
  app.add_option("--spec", cfg.spec_path, "Hamiltonian spec JSON")->envname("MFGL_SPEC");
  app.add_option("--input", cfg.input_path, "report JSON to re-emit (report command)")->envname("MFGL_INPUT");
  app.add_option("--out", cfg.out_path, "output file; stdout when omitted")->envname("MFGL_OUT");
  app.add_option("--format", format, "json | csv")->envname("MFGL_FORMAT")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "RNG seed")->envname("MFGL_SEED");
  app.add_option("--samples", cfg.samples, "Gaussian width samples")->envname("MFGL_SAMPLES");
  app.add_option("--tol", cfg.tol, "fixed-point residual tolerance")->envname("MFGL_TOL");
  app.add_option("--damping", cfg.damping, "iteration damping in (0,1]")->envname("MFGL_DAMPING");
  app.add_option("--max-iter", cfg.max_iter, "iteration cap")->envname("MFGL_MAX_ITER");
  app.add_option("--lambda", cfg.lambda, "scale in X = tanh(lambda grad f(X))")->envname("MFGL_LAMBDA");
  app.add_option("--lambda-grid", grid, "comma-separated lambda values for ld-scan")->envname("MFGL_LAMBDA_GRID");
  app.add_option("--epsilon", cfg.epsilon, "epsilon for the residual audits")->envname("MFGL_EPSILON");
  auto* t_opt = app.add_option("--t", t, "large-deviation level t")->envname("MFGL_T");
  app.add_option("--delta", cfg.delta, "large-deviation width delta")->envname("MFGL_DELTA");
  app.add_option("--max-n", cfg.max_n, "dense enumeration cap")->envname("MFGL_MAX_N");
  app.add_option("--transport-max-states", cfg.transport_max_states, "exact transport state cap")
      ->envname("MFGL_TRANSPORT_MAX_STATES");
  app.add_option("--suite", cfg.suite, "appendix | transport | residuals | ld | all")
      ->envname("MFGL_SUITE")
      ->check(CLI::IsMember({"appendix", "transport", "residuals", "ld", "all"}));
  app.add_option("--tilts", cfg.tilts, "tilts per audited instance")->envname("MFGL_TILTS");
  app.add_option("--trials", cfg.trials, "trials for the tanh lemma audit")->envname("MFGL_TRIALS");
  app.add_flag("--timings", cfg.timings, "record wall-clock timings in the report")->envname("MFGL_TIMINGS");

  try {
    app.parse(argc, argv);
    cfg.format = format_from_string(format);
    if (*t_opt) cfg.t = t;
    if (!grid.empty()) cfg.lambda_grid = parse_grid(grid);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const Error& e) {
    std::cerr << "mfgl: " << e.what() << "\n";
    return kExitInput;
  }
  return run(cfg);
}

}  // namespace mfgl::cli
