#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mfgl/errors.hpp"
#include "mfgl_cli/report.hpp"
#include "mfgl_cli/run.hpp"
#include "mfgl_cli/spec_io.hpp"

using namespace mfgl;
using namespace mfgl::cli;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / ("mfgl_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int call_main(std::vector<std::string> args) {
  args.insert(args.begin(), "mfgl");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST(SpecIo, RoundTripsEveryFamily) {
  const std::vector<std::string> docs = {
      R"({"type":"linear","theta":[0.5,-0.25]})",
      R"({"type":"ising","A":[[0,0.3],[0.3,0]],"mu":[0.1,0]})",
      R"({"type":"curie_weiss","beta":2,"n":8})",
      R"({"type":"triangle_count","beta":1,"N":4})",
      R"({"type":"sparse_fourier","n":3,"terms":[{"subset":[0,2],"coeff":0.5},{"subset":[],"coeff":1}]})",
      R"({"type":"smoothed_cutoff","inner":{"type":"curie_weiss","beta":1,"n":4},"t":0.1,"delta":0.05})",
  };
  for (const std::string& doc : docs) {
    const HamiltonianSpec spec = spec_from_json(json::parse(doc));
    const auto once = spec_to_json(spec);
    const auto twice = spec_to_json(spec_from_json(json::parse(once.dump())));
    EXPECT_EQ(once, twice) << doc;
    EXPECT_NO_THROW(build_hamiltonian(spec));
  }
}

TEST(SpecIo, RejectsMalformedSpecs) {
  const std::vector<std::string> docs = {
      R"({"type":"nope"})",
      R"({"beta":1,"n":3})",
      R"({"type":"curie_weiss","beta":"x","n":3})",
      R"({"type":"curie_weiss","beta":1,"n":0})",
      R"({"type":"ising","A":[[0,1],[0.5,0]],"mu":[0,0]})",
      R"({"type":"linear","theta":[1e400]})",
      R"({"type":"sparse_fourier","n":2,"terms":[{"subset":[5],"coeff":1}]})",
      R"([1,2])",
  };
  for (const std::string& doc : docs) {
    EXPECT_THROW(
        {
          try {
            spec_from_json(json::parse(doc)).validate();
          } catch (const json::exception&) {
            throw InvalidArgument("json");
          }
        },
        InvalidArgument)
        << doc;
  }
  EXPECT_THROW(load_spec(scratch_dir() / "missing.json"), InvalidArgument);
}

TEST(Execute, AnalyzeCurieWeiss) {
  RunConfig cfg;
  cfg.command = "analyze";
  cfg.spec_path = write_file("cw.json", R"({"type":"curie_weiss","beta":2,"n":8})");
  cfg.samples = 20000;
  const RunOutcome out = execute(cfg);
  ASSERT_EQ(out.exit_code, kExitOk) << out.diagnostic;
  ASSERT_TRUE(out.report.params.has_value());
  EXPECT_LE(out.report.params->D, 2.0 * std::sqrt(8.0));
  EXPECT_GE(out.report.solutions.size(), 3u);
  const auto roots = out.report.summary.at("scalar_roots_finite_n");
  bool found = false;
  for (const auto& r : roots) found = found || std::abs(r.get<double>() - 0.92425) < 1e-3;
  EXPECT_TRUE(found);
}

TEST(Execute, AppendixAuditPasses) {
  RunConfig cfg;
  cfg.command = "audit";
  cfg.suite = "appendix";
  cfg.trials = 500;
  const RunOutcome out = execute(cfg);
  EXPECT_EQ(out.exit_code, kExitOk) << out.diagnostic;
  EXPECT_FALSE(out.report.audits.empty());
}

TEST(Execute, LdScanWithoutWitness) {
  RunConfig cfg;
  cfg.command = "ld-scan";
  cfg.spec_path = write_file("cw6.json", R"({"type":"curie_weiss","beta":1,"n":6})");
  cfg.t = 5.0;
  const RunOutcome out = execute(cfg);
  EXPECT_EQ(out.exit_code, kExitInput);
  EXPECT_NE(out.diagnostic.find("witness-missing"), std::string::npos);
}

TEST(Execute, ValidationErrors) {
  RunConfig cfg;
  cfg.command = "analyze";
  EXPECT_EQ(execute(cfg).exit_code, kExitInput);
  cfg.command = "bogus";
  EXPECT_EQ(execute(cfg).exit_code, kExitInput);
  RunConfig damp;
  damp.command = "fixed-points";
  damp.damping = 0.0;
  EXPECT_THROW(validate(damp), InvalidArgument);
}

TEST(Report, EmptyReportRoundTrips) {
  const Report empty;
  const std::string text = serialize_report(empty, Format::json);
  EXPECT_TRUE(equivalent(parse_report(text), empty));
  const auto rows = parse_csv(serialize_report(empty, Format::csv));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].front(), "check_id");
}

TEST(Report, NonFiniteValuesRoundTrip) {
  Report r;
  r.audits.push_back(make_row("a", "x,\"y\"", 1.0, 0.0));
  r.audits.push_back(error_row("b", "z", "boom"));
  r.audits.push_back(make_row("c", "w", 0.1, std::numeric_limits<double>::infinity()));
  const Report back = parse_report(serialize_report(r, Format::json));
  EXPECT_TRUE(equivalent(back, r));
  EXPECT_TRUE(std::isnan(back.audits[1].measured));
  EXPECT_TRUE(std::isinf(back.audits[0].ratio));
  const auto csv = parse_csv(serialize_report(r, Format::csv));
  ASSERT_EQ(csv.size(), 4u);
  EXPECT_EQ(csv[1][1], "x,\"y\"");
}

TEST(Report, AnalyzeReportRoundTripsAndCsvMatches) {
  RunConfig cfg;
  cfg.command = "audit";
  cfg.suite = "transport";
  cfg.tilts = 4;
  const RunOutcome out = execute(cfg);
  ASSERT_EQ(out.exit_code, kExitOk) << out.diagnostic;
  const std::string text = serialize_report(out.report, Format::json);
  const Report back = parse_report(text);
  EXPECT_TRUE(equivalent(back, out.report));
  EXPECT_EQ(serialize_report(back, Format::json), text);
  EXPECT_EQ(parse_csv(serialize_report(out.report, Format::csv)).size(), out.report.audits.size() + 1);
}

TEST(Report, EquivalentDetectsDifferences) {
  Report a;
  a.audits.push_back(make_row("a", "i", 0.5, 1.0));
  Report b = a;
  EXPECT_TRUE(equivalent(a, b));
  b.audits[0].measured = 0.6;
  EXPECT_FALSE(equivalent(a, b));
  EXPECT_THROW(parse_report("{not json"), InvalidArgument);
}

TEST(Report, WriteAtomicReplacesFile) {
  const auto path = scratch_dir() / "atomic.txt";
  write_atomic(path, "first");
  write_atomic(path, "second");
  EXPECT_EQ(slurp(path), "second");
  for (const auto& entry : std::filesystem::directory_iterator(scratch_dir())) {
    EXPECT_EQ(entry.path().string().find(".tmp"), std::string::npos) << entry.path();
  }
}

TEST(CliMain, BadFlagsExitOne) {
  EXPECT_EQ(call_main({"analyze", "--no-such-flag"}), kExitInput);
  EXPECT_EQ(call_main({"analyze", "--seed", "abc"}), kExitInput);
  EXPECT_EQ(call_main({"analyze", "--spec", (scratch_dir() / "missing.json").string()}), kExitInput);
}

TEST(CliMain, WritesReportAndReadsItBack) {
  const std::string spec = write_file("cw4.json", R"({"type":"curie_weiss","beta":1.5,"n":4})");
  const std::string out = (scratch_dir() / "fp.json").string();
  ::setenv("MFGL_SEED", "17", 1);
  ASSERT_EQ(call_main({"fixed-points", "--spec", spec, "--out", out}), kExitOk);
  ::unsetenv("MFGL_SEED");
  const Report r = parse_report(slurp(out));
  EXPECT_EQ(r.config.at("seed").get<std::uint64_t>(), 17u);
  EXPECT_FALSE(r.solutions.empty());
  const std::string again = (scratch_dir() / "fp_again.json").string();
  EXPECT_EQ(call_main({"report", "--input", out, "--out", again}), kExitOk);
  EXPECT_TRUE(equivalent(parse_report(slurp(again)), r));
}
