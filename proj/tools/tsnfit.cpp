// tsnfit: fit truncated skew-normal models to CSV data, run Monte Carlo
// scenario files, and compute parametric-bootstrap standard errors.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <tsn/tsn.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct FitFlags {
  std::string input;
  std::string column;  // empty = first numeric column
  std::string lower = "-inf";
  std::string upper = "inf";
  std::string method = "grid-mom";
  double grid_a = 5.0;
  int grid_points = 401;
  int multistart = 1;
  bool sqrt_transform = false;
  std::uint64_t seed = 0;
};

void add_fit_flags(CLI::App* cmd, FitFlags& flags) {
  cmd->add_option("--input", flags.input, "input CSV file")->required();
  cmd->add_option("--column", flags.column,
                  "column index (0-based) or header name; default: first "
                  "numeric column");
  cmd->add_option("--lower", flags.lower,
                  "lower truncation bound (number or -inf)");
  cmd->add_option("--upper", flags.upper,
                  "upper truncation bound (number or inf)");
  cmd->add_option("--method", flags.method,
                  "mle | mom | mwm | grid-mom | grid-mle");
  cmd->add_option("--grid-a", flags.grid_a, "shape-grid half width");
  cmd->add_option("--grid-points", flags.grid_points, "shape-grid point count");
  cmd->add_option("--multistart", flags.multistart,
                  "number of MLE starts sampled from the data cube");
  cmd->add_flag("--sqrt-transform", flags.sqrt_transform,
                "square-root transform observations before fitting");
  cmd->add_option("--seed", flags.seed, "random seed");
}

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_bound(const std::string& token) {
  if (token == "-inf") return -std::numeric_limits<double>::infinity();
  if (token == "inf" || token == "+inf")
    return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw input_error("bad bound '" + token + "' (use a number, -inf, or inf)");
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto a = cell.find_first_not_of(" \t\r");
    const auto b = cell.find_last_not_of(" \t\r");
    cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_cell(const std::string& s, double& out) {
  if (s.empty()) return false;
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

/// Reads one numeric column. A non-numeric first row is treated as a header.
std::vector<double> read_csv_column(const std::string& path,
                                    const std::string& selector) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos)
      lines.push_back(line);
  }
  if (lines.empty()) throw input_error("input file '" + path + "' is empty");

  const auto first = split_csv(lines.front());
  std::size_t col = 0;
  std::size_t data_start = 0;
  double ignored;

  bool selector_is_index = false;
  if (!selector.empty()) {
    try {
      std::size_t used = 0;
      const long idx = std::stol(selector, &used);
      selector_is_index = used == selector.size() && idx >= 0;
      if (selector_is_index) col = std::size_t(idx);
    } catch (const std::exception&) {
    }
  }

  if (selector.empty()) {
    // first numeric column; probe the first row, falling back to the second
    // when the first row is a header
    bool found = false;
    for (std::size_t j = 0; j < first.size() && !found; ++j)
      if (parse_cell(first[j], ignored)) {
        col = j;
        found = true;
      }
    if (!found) {
      data_start = 1;
      if (lines.size() < 2)
        throw input_error("no numeric column found in '" + path + "'");
      const auto second = split_csv(lines[1]);
      for (std::size_t j = 0; j < second.size() && !found; ++j)
        if (parse_cell(second[j], ignored)) {
          col = j;
          found = true;
        }
      if (!found) throw input_error("no numeric column found in '" + path + "'");
    }
  } else if (selector_is_index) {
    if (col < first.size() && !parse_cell(first[col], ignored))
      data_start = 1;  // header row
  } else {
    bool found = false;
    for (std::size_t j = 0; j < first.size(); ++j)
      if (first[j] == selector) {
        col = j;
        found = true;
        break;
      }
    if (!found)
      throw input_error("column '" + selector + "' not found in the header of '" +
                        path + "'");
    data_start = 1;
  }

  std::vector<double> data;
  data.reserve(lines.size() - data_start);
  for (std::size_t i = data_start; i < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    if (col >= cells.size())
      throw input_error("line " + std::to_string(i + 1) + ": missing column " +
                        std::to_string(col));
    double v;
    if (!parse_cell(cells[col], v))
      throw input_error("line " + std::to_string(i + 1) +
                        ": non-numeric value '" + cells[col] + "'");
    data.push_back(v);
  }
  if (data.empty()) throw input_error("input file '" + path + "' has no data rows");
  return data;
}

struct PreparedFit {
  std::vector<double> data;  // transformed, inside the window
  tsn::TruncationWindow window;
  tsn::Method method = tsn::Method::GridMom;
  tsn::GridSpec grid;
  tsn::MleOptions mle;
};

PreparedFit prepare_fit(const FitFlags& flags, std::uint64_t mle_start_seed) {
  const auto method = tsn::method_from_name(flags.method);
  if (!method) throw input_error("unknown method '" + flags.method + "'");

  auto raw = read_csv_column(flags.input, flags.column);
  if (flags.sqrt_transform) {
    for (auto& x : raw) {
      if (x < 0.0)
        throw input_error("--sqrt-transform: negative observation " +
                          std::to_string(x));
      x = std::sqrt(x);
    }
  }

  PreparedFit out;
  out.method = *method;
  out.window = {parse_bound(flags.lower), parse_bound(flags.upper)};
  try {
    out.window.validate();
  } catch (const std::exception& e) {
    throw input_error(e.what());
  }
  for (double x : raw)
    if (out.window.contains(x)) out.data.push_back(x);
  if (out.data.empty()) throw input_error("no observations in window");
  if (out.data.size() < 2)
    throw input_error("need at least 2 observations in the window");
  out.grid = {flags.grid_a, flags.grid_points};
  try {
    out.grid.validate();
  } catch (const std::exception& e) {
    throw input_error(e.what());
  }
  out.mle = {flags.multistart, mle_start_seed};
  return out;
}

json window_json(const tsn::TruncationWindow& w) {
  json j;
  if (std::isinf(w.lower))
    j["lower"] = "-inf";
  else
    j["lower"] = w.lower;
  if (std::isinf(w.upper))
    j["upper"] = "inf";
  else
    j["upper"] = w.upper;
  return j;
}

json fit_json(const PreparedFit& pf, const tsn::FitResult& res,
              std::uint64_t seed) {
  json j;
  j["method"] = std::string(tsn::method_name(res.method));
  j["estimate"] = {{"xi", res.estimate.xi},
                   {"omega", res.estimate.omega},
                   {"alpha", res.estimate.alpha}};
  j["loglik"] = res.loglik;
  j["converged"] = res.converged;
  j["n_used"] = pf.data.size();
  j["window"] = window_json(pf.window);
  if (res.method == tsn::Method::GridMom || res.method == tsn::Method::GridMle)
    j["grid"] = {{"a", pf.grid.half_width}, {"points", pf.grid.points}};
  if (res.method == tsn::Method::Mle) j["multistart"] = pf.mle.multistart_count;
  if (res.method == tsn::Method::Mom || res.method == tsn::Method::Mwm)
    j["residual_norm"] = res.residual_norm;
  j["seed"] = seed;
  return j;
}

int cmd_fit(const FitFlags& flags) {
  const PreparedFit pf = prepare_fit(flags, flags.seed);
  const tsn::FitResult res =
      tsn::fit(pf.method, pf.data, pf.window, pf.grid, pf.mle);
  std::cout << fit_json(pf, res, flags.seed).dump(2) << "\n";
  return res.converged ? 0 : 2;
}

int cmd_bootstrap(const FitFlags& flags, int B, unsigned threads) {
  if (B < 2) throw input_error("--bootstrap-B must be at least 2");
  // The point fit never sees --seed, so the point estimate is seed-independent.
  const PreparedFit pf = prepare_fit(flags, 0);
  const tsn::FitResult res =
      tsn::fit(pf.method, pf.data, pf.window, pf.grid, pf.mle);
  json j = fit_json(pf, res, flags.seed);
  if (!res.converged) {
    std::cerr << "tsnfit: point fit did not converge; bootstrap skipped\n";
    std::cout << j.dump(2) << "\n";
    return 2;
  }
  const tsn::BootstrapSummary boot = tsn::parametric_bootstrap(
      res, pf.window, pf.data.size(), B, pf.method,
      tsn::RngStream{flags.seed, 0}, pf.grid, pf.mle, threads);
  j["bootstrap"] = {{"B", boot.requested},
                    {"failures", boot.failures},
                    {"se",
                     {{"xi", boot.se[0]},
                      {"omega", boot.se[1]},
                      {"alpha", boot.se[2]}}}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 int reps_override, unsigned threads) {
  std::ifstream in(scenario_path);
  if (!in) throw input_error("cannot open scenario file '" + scenario_path + "'");
  std::vector<tsn::ScenarioSpec> specs;
  try {
    specs = tsn::parse_scenarios(in);
  } catch (const tsn::scenario_parse_error& e) {
    throw input_error(std::string("scenario file: ") + e.what());
  }
  if (reps_override > 0)
    for (auto& s : specs) s.replications = reps_override;

  fs::create_directories(out_dir);
  std::string combined = "scenario,method,parameter,bias,rmse,median,iqr,failures\n";
  for (const auto& spec : specs) {
    const tsn::ScenarioResult result = tsn::run_scenario(spec, threads);
    const auto rows = tsn::summarize(result);
    const std::string table = tsn::emit_table(rows, tsn::TableFormat::Csv);

    const fs::path metrics = fs::path(out_dir) / (spec.name + "_metrics.csv");
    std::ofstream(metrics) << table;
    const fs::path reps = fs::path(out_dir) / (spec.name + "_replicates.csv");
    std::ofstream(reps) << tsn::emit_replicates_csv(result);

    std::istringstream body(table);
    std::string row;
    std::getline(body, row);  // drop header
    while (std::getline(body, row))
      if (!row.empty()) combined += spec.name + "," + row + "\n";
    std::cout << metrics.string() << "\n" << reps.string() << "\n";
  }
  const fs::path summary = fs::path(out_dir) / "summary.csv";
  std::ofstream(summary) << combined;
  std::cout << summary.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated skew-normal fitting and benchmarking"};
  app.require_subcommand(1);

  FitFlags fit_flags;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "fit a truncated skew-normal model to a CSV column");
  add_fit_flags(fit_cmd, fit_flags);

  FitFlags boot_flags;
  int bootstrap_B = 500;
  unsigned boot_threads = 0;
  CLI::App* boot_cmd = app.add_subcommand(
      "bootstrap", "parametric bootstrap standard errors for a fit");
  add_fit_flags(boot_cmd, boot_flags);
  boot_cmd->add_option("--bootstrap-B", bootstrap_B, "bootstrap replicates");
  boot_cmd->add_option("--threads", boot_threads, "worker threads (0 = auto)");

  std::string scenario_path, out_dir;
  int reps_override = 0;
  unsigned sim_threads = 0;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "run a Monte Carlo scenario file");
  sim_cmd->add_option("--scenarios", scenario_path, "scenario config file")
      ->required();
  sim_cmd->add_option("--out-dir", out_dir, "output directory for CSV tables")
      ->required();
  sim_cmd->add_option("--reps", reps_override,
                      "override the replication count of every scenario");
  sim_cmd->add_option("--threads", sim_threads, "worker threads (0 = auto)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit_flags);
    if (boot_cmd->parsed())
      return cmd_bootstrap(boot_flags, bootstrap_B, boot_threads);
    if (sim_cmd->parsed())
      return cmd_simulate(scenario_path, out_dir, reps_override, sim_threads);
  } catch (const input_error& e) {
    std::cerr << "tsnfit: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "tsnfit: " << e.what() << "\n";
    return 1;
  } catch (const tsn::error& e) {
    std::cerr << "tsnfit: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
