#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include <tsn/bench.hpp>
#include <tsn/scenario.hpp>

using Catch::Approx;
using tsn::Method;
using tsn::MethodReplicates;
using tsn::MetricRow;
using tsn::ReplicateEstimate;
using tsn::ScenarioSpec;
using tsn::SnParams;
using tsn::TruncationDirection;

namespace {
MethodReplicates make_replicates(Method m, const std::vector<double>& alphas) {
  MethodReplicates out;
  out.method = m;
  for (double a : alphas)
    out.fits.push_back({true, SnParams{a, a, a}});
  return out;
}

const MetricRow& find_row(const std::vector<MetricRow>& rows, Method m,
                          std::string_view param) {
  for (const auto& r : rows)
    if (r.method == m && r.parameter == param) return r;
  throw std::runtime_error("row not found");
}
}  // namespace

TEST_CASE("summarize hand arithmetic", "[bench]") {
  const auto reps = make_replicates(Method::GridMom, {1.0, 2.0, 3.0, 4.0});
  const auto rows = tsn::summarize({reps}, SnParams{2.0, 2.0, 2.0});
  REQUIRE(rows.size() == 3);
  const auto& row = find_row(rows, Method::GridMom, "alpha");
  CHECK(row.bias == Approx(0.5));
  CHECK(row.rmse == Approx(std::sqrt(1.5)));
  CHECK(row.median == Approx(2.5));
  CHECK(row.iqr == Approx(1.5));  // type-7 quantiles: q75 3.25, q25 1.75
  CHECK(row.failures == 0);
  CHECK_FALSE(row.blowup);
}

TEST_CASE("summarize of exact estimates is all zeros", "[bench]") {
  const auto reps = make_replicates(Method::Mwm, {2.0, 2.0, 2.0});
  const auto rows = tsn::summarize({reps}, SnParams{2.0, 2.0, 2.0});
  for (const auto& r : rows) {
    CHECK(r.bias == 0.0);
    CHECK(r.rmse == 0.0);
    CHECK(r.iqr == 0.0);
  }
}

TEST_CASE("summarize counts failures and flags blowups", "[bench]") {
  MethodReplicates reps = make_replicates(Method::Mle, {1.0, 150.0, 2.0});
  reps.fits.push_back({false, SnParams{}});
  const auto rows = tsn::summarize({reps}, SnParams{0, 1, 1});
  const auto& row = find_row(rows, Method::Mle, "alpha");
  CHECK(row.failures == 1);
  CHECK(row.blowup);
  CHECK_THROWS_AS(tsn::summarize({MethodReplicates{}}, SnParams{0, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("rmse squared dominates bias squared", "[bench]") {
  const auto reps = make_replicates(Method::Mom, {0.3, -1.2, 4.0, 2.2, 0.9});
  const auto rows = tsn::summarize({reps}, SnParams{0.5, 0.5, 0.5});
  for (const auto& r : rows) {
    CHECK(r.rmse >= 0.0);
    CHECK(r.rmse * r.rmse >= r.bias * r.bias - 1e-12);
  }
}

TEST_CASE("emit_table renders CSV with the >100 convention", "[bench]") {
  CHECK(tsn::emit_table({}, tsn::TableFormat::Csv) ==
        "method,parameter,bias,rmse,median,iqr,failures\n");

  MetricRow row;
  row.method = Method::GridMom;
  row.parameter = "alpha";
  row.bias = 0.25;
  row.rmse = 340.0;
  row.median = 2.0;
  row.iqr = 1.5;
  row.blowup = true;
  row.failures = 3;
  const std::string csv = tsn::emit_table({row}, tsn::TableFormat::Csv);
  CHECK(csv.find("grid-mom,alpha,0.25,>100,2,1.5,3") != std::string::npos);
  const std::string text = tsn::emit_table({row}, tsn::TableFormat::Text);
  CHECK(text.find(">100") != std::string::npos);
}

TEST_CASE("emitted CSV round trips numerically", "[bench]") {
  const auto reps = make_replicates(Method::Mwm, {0.123456789, 1.5, -2.25, 0.5});
  const auto rows = tsn::summarize({reps}, SnParams{0.3, 0.7, 1.1});
  const std::string csv = tsn::emit_table(rows, tsn::TableFormat::Csv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::size_t idx = 0;
  while (std::getline(in, line)) {
    REQUIRE(idx < rows.size());
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    CHECK(std::stod(cells[2]) == Approx(rows[idx].bias).epsilon(1e-9));
    CHECK(std::stod(cells[3]) == Approx(rows[idx].rmse).epsilon(1e-9));
    CHECK(std::stod(cells[4]) == Approx(rows[idx].median).epsilon(1e-9));
    CHECK(std::stod(cells[5]) == Approx(rows[idx].iqr).epsilon(1e-9));
    ++idx;
  }
  CHECK(idx == rows.size());
}

TEST_CASE("run_scenario is reproducible and method-set stable", "[bench]") {
  ScenarioSpec spec;
  spec.name = "tiny";
  spec.direction = TruncationDirection::Right;
  spec.tau = 0.1;
  spec.truth = {0, 1, 2};
  spec.n = 120;
  spec.replications = 3;
  spec.methods = {Method::GridMom};
  spec.grid = {5.0, 41};
  spec.base_seed = 99;

  const auto a = tsn::run_scenario(spec);
  const auto b = tsn::run_scenario(spec);
  REQUIRE(a.per_method.size() == 1);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(a.per_method[0].fits[r].estimate.xi ==
          b.per_method[0].fits[r].estimate.xi);
    CHECK(a.per_method[0].fits[r].estimate.alpha ==
          b.per_method[0].fits[r].estimate.alpha);
  }

  // adding a method leaves the shared method's replicates untouched
  ScenarioSpec wider = spec;
  wider.methods = {Method::GridMom, Method::Mwm};
  const auto c = tsn::run_scenario(wider);
  for (std::size_t r = 0; r < 3; ++r)
    CHECK(c.per_method[0].fits[r].estimate.alpha ==
          a.per_method[0].fits[r].estimate.alpha);
}

TEST_CASE("run_scenario output is thread-count invariant", "[bench]") {
  ScenarioSpec spec;
  spec.name = "threads";
  spec.direction = TruncationDirection::Double;
  spec.tau = 0.2;
  spec.truth = {0, 1, 1};
  spec.n = 100;
  spec.replications = 6;
  spec.methods = {Method::GridMom, Method::Mwm};
  spec.grid = {5.0, 41};
  spec.base_seed = 7;

  const auto one = tsn::run_scenario(spec, 1);
  const auto two = tsn::run_scenario(spec, 2);
  CHECK(tsn::emit_replicates_csv(one) == tsn::emit_replicates_csv(two));
  CHECK(tsn::emit_table(tsn::summarize(one), tsn::TableFormat::Csv) ==
        tsn::emit_table(tsn::summarize(two), tsn::TableFormat::Csv));
}

TEST_CASE("scenario files parse", "[bench]") {
  const std::string text = R"(
# desk-scale cell
[right_a4]
direction = right
tau = 0.1
alpha0 = 4
n = 500
reps = 200
methods = grid-mom, mwm
seed = 42

[left_small]
direction = left
tau = 0.2
xi0 = 0.5
omega0 = 2
alpha0 = 1
n = 100
reps = 10
methods = mle
multistart = 5
grid_a = 8
grid_points = 161
seed = 7
)";
  const auto specs = tsn::parse_scenarios(text);
  REQUIRE(specs.size() == 2);
  CHECK(specs[0].name == "right_a4");
  CHECK(specs[0].direction == TruncationDirection::Right);
  CHECK(specs[0].truth.alpha == 4.0);
  CHECK(specs[0].methods ==
        std::vector<Method>{Method::GridMom, Method::Mwm});
  CHECK(specs[0].grid.points == 401);
  CHECK(specs[1].truth.xi == 0.5);
  CHECK(specs[1].truth.omega == 2.0);
  CHECK(specs[1].mle_options.multistart_count == 5);
  CHECK(specs[1].grid.half_width == 8.0);
  CHECK(specs[1].base_seed == 7);
}

TEST_CASE("scenario parser diagnostics", "[bench]") {
  CHECK_THROWS_WITH(
      tsn::parse_scenarios("[s]\ndirection = up\n"),
      Catch::Matchers::ContainsSubstring("direction"));
  CHECK_THROWS_WITH(
      tsn::parse_scenarios(
          "[s]\ndirection = left\ntau = 0.1\nalpha0 = 1\nn = 50\nreps = 2\n"
          "methods = grid-bogus\nseed = 1\n"),
      Catch::Matchers::ContainsSubstring("grid-bogus"));
  CHECK_THROWS_WITH(
      tsn::parse_scenarios(
          "[s]\ndirection = left\ntau = 0.1\nalpha0 = 1\nn = 50\nreps = 2\n"
          "seed = 1\n"),
      Catch::Matchers::ContainsSubstring("methods"));
  CHECK_THROWS_WITH(tsn::parse_scenarios("direction = left\n"),
                    Catch::Matchers::ContainsSubstring("header"));
  CHECK_THROWS_WITH(tsn::parse_scenarios("[s]\ntau 0.1\n"),
                    Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_AS(tsn::parse_scenarios(""), tsn::scenario_parse_error);
}

TEST_CASE("misspecified grid study stays on the grid", "[bench]") {
  const tsn::GridSpec narrow{5.0, 201};
  const auto fits = tsn::misspecified_range_study(10.0, {{narrow}}, 4);
  REQUIRE(fits.size() == 1);
  CHECK(std::fabs(fits[0].estimate.alpha) <= narrow.half_width);
  bool member = false;
  for (int g = 0; g < narrow.points; ++g)
    if (narrow.value(g) == fits[0].estimate.alpha) member = true;
  CHECK(member);
}

TEST_CASE("timing study argument checks and positivity", "[bench]") {
  const std::size_t ns[] = {100};
  const int gs[] = {21};
  CHECK_THROWS_AS(tsn::timing_study(ns, gs, 2), std::invalid_argument);
  const auto rows = tsn::timing_study(ns, gs, 3);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) CHECK(r.mean_seconds > 0.0);
  const std::string csv = tsn::emit_timing_csv(rows);
  CHECK(csv.find("grid-mom,100,21,") != std::string::npos);
}
