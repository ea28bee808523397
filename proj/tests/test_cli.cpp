#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <tsn/sampling.hpp>

namespace fs = std::filesystem;

namespace {

#ifndef TSNFIT_BIN_PATH
#error "TSNFIT_BIN_PATH must point at the tsnfit executable"
#endif

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "tsnfit_cli_test";
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string(TSNFIT_BIN_PATH) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "tsnfit_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

// A fixed small dataset in [0, 1.6], written with a header column.
fs::path sample_csv() {
  const tsn::SnParams truth{0, 1, 2};
  const auto w = tsn::truncation_bounds(tsn::TruncationDirection::Right, 0.1, truth);
  const auto data = tsn::sample_tsn(tsn::TsnModel(truth, w), 80, {2718, 0});
  std::string text = "id,value\n";
  char buf[64];
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, data[i]);
    text += buf;
  }
  return write_file("sample.csv", text);
}

}  // namespace

TEST_CASE("cli fit produces deterministic JSON and exit code 0", "[cli]") {
  const auto csv = sample_csv();
  const std::string args = "fit --input " + csv.string() +
                           " --column value --upper 1.6448536269514722 "
                           "--method grid-mom --grid-points 101";
  const auto a = run_cli(args);
  INFO(a.err);
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("\"method\": \"grid-mom\"") != std::string::npos);
  CHECK(a.out.find("\"converged\": true") != std::string::npos);
  CHECK(a.out.find("\"n_used\": 80") != std::string::npos);
  CHECK(a.out.find("\"grid\"") != std::string::npos);
  const auto b = run_cli(args);
  CHECK(a.out == b.out);  // byte-identical on repeat
}

TEST_CASE("cli fit matches the golden JSON document", "[cli]") {
  // tiny fixed dataset, fully pinned flags: schema and values are frozen
  const fs::path csv = write_file("golden.csv",
                                  "x\n0.10\n0.25\n0.40\n0.55\n0.70\n0.85\n"
                                  "1.00\n1.15\n1.30\n1.45\n");
  const auto r = run_cli("fit --input " + csv.string() +
                         " --method grid-mom --grid-points 21 --lower 0 "
                         "--upper 1.5");
  CHECK(r.exit_code == 0);
  const fs::path golden =
      fs::path(TSN_TEST_DATA_DIR) / "fit_golden.json";
  REQUIRE(fs::exists(golden));
  CHECK(r.out == slurp(golden));
}

TEST_CASE("cli fit input errors exit with code 1", "[cli]") {
  const auto empty = write_file("empty.csv", "");
  const auto r1 = run_cli("fit --input " + empty.string());
  CHECK(r1.exit_code == 1);
  CHECK(r1.err.find("empty") != std::string::npos);

  const auto csv = sample_csv();
  const auto r2 = run_cli("fit --input " + csv.string() +
                          " --column value --lower 50 --upper 60");
  CHECK(r2.exit_code == 1);
  CHECK(r2.err.find("no observations in window") != std::string::npos);

  const auto r3 = run_cli("fit --input " + csv.string() + " --method bogus");
  CHECK(r3.exit_code == 1);
  CHECK(r3.err.find("bogus") != std::string::npos);

  const auto r4 = run_cli("fit --input " + scratch_dir().string() +
                          "/definitely_missing.csv");
  CHECK(r4.exit_code == 1);

  const auto r5 = run_cli("fit --input " + csv.string() + " --column nope");
  CHECK(r5.exit_code == 1);
  CHECK(r5.err.find("nope") != std::string::npos);
}

TEST_CASE("cli sqrt transform handles negatives", "[cli]") {
  const auto csv = write_file("neg.csv", "v\n4.0\n9.0\n-1.0\n");
  const auto r = run_cli("fit --input " + csv.string() + " --sqrt-transform");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("sqrt") != std::string::npos);
}

TEST_CASE("cli bootstrap JSON", "[cli]") {
  const auto csv = sample_csv();
  const std::string base = "bootstrap --input " + csv.string() +
                           " --column 1 --upper 1.6448536269514722 "
                           "--method mwm --bootstrap-B 8";
  const auto a = run_cli(base + " --seed 5");
  INFO(a.err);
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("\"bootstrap\"") != std::string::npos);
  CHECK(a.out.find("\"B\": 8") != std::string::npos);
  const auto b = run_cli(base + " --seed 5");
  CHECK(a.out == b.out);

  const auto c = run_cli(base + " --seed 6");
  CHECK(c.exit_code == 0);
  // the point estimate is seed-independent; the se are not
  const auto estimate_of = [](const std::string& s) {
    const auto from = s.find("\"estimate\"");
    return s.substr(from, s.find('}', from) - from);
  };
  CHECK(estimate_of(a.out) == estimate_of(c.out));
  CHECK(a.out != c.out);

  const auto bad = run_cli("bootstrap --input " + csv.string() +
                           " --column 1 --upper 1.6448536269514722 "
                           "--method mwm --bootstrap-B 1");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("cli simulate writes reproducible CSV tables", "[cli]") {
  const std::string scenario = R"([cli_cell]
direction = right
tau = 0.1
alpha0 = 2
n = 60
reps = 2
methods = grid-mom
grid_points = 41
seed = 11
)";
  const auto cfg = write_file("cells.cfg", scenario);
  const fs::path out1 = scratch_dir() / "sim1";
  const fs::path out2 = scratch_dir() / "sim2";
  fs::remove_all(out1);
  fs::remove_all(out2);

  const auto a = run_cli("simulate --scenarios " + cfg.string() + " --out-dir " +
                         out1.string());
  INFO(a.err);
  CHECK(a.exit_code == 0);
  REQUIRE(fs::exists(out1 / "cli_cell_metrics.csv"));
  REQUIRE(fs::exists(out1 / "cli_cell_replicates.csv"));
  REQUIRE(fs::exists(out1 / "summary.csv"));

  const std::string replicates = slurp(out1 / "cli_cell_replicates.csv");
  CHECK(std::count(replicates.begin(), replicates.end(), '\n') == 3);  // header + 2

  const auto b = run_cli("simulate --scenarios " + cfg.string() + " --out-dir " +
                         out2.string());
  CHECK(b.exit_code == 0);
  CHECK(slurp(out1 / "cli_cell_replicates.csv") ==
        slurp(out2 / "cli_cell_replicates.csv"));
  CHECK(slurp(out1 / "summary.csv") == slurp(out2 / "summary.csv"));

  // --reps override
  const fs::path out3 = scratch_dir() / "sim3";
  fs::remove_all(out3);
  const auto c = run_cli("simulate --scenarios " + cfg.string() + " --out-dir " +
                         out3.string() + " --reps 4");
  CHECK(c.exit_code == 0);
  const std::string more = slurp(out3 / "cli_cell_replicates.csv");
  CHECK(std::count(more.begin(), more.end(), '\n') == 5);

  // malformed scenario file names the offending line
  const auto bad_cfg = write_file("bad.cfg", "[s]\nmethods = nope\n");
  const auto d = run_cli("simulate --scenarios " + bad_cfg.string() +
                         " --out-dir " + out3.string());
  CHECK(d.exit_code == 1);
  CHECK(d.err.find("nope") != std::string::npos);
}
