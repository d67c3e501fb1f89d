#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "svpath/error.hpp"
#include "svpath/experiments.hpp"
#include "svpath/instances.hpp"
#include "svpath/serialize.hpp"

#include "json.hpp"

using namespace svp;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an svp::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("cube batch") {
  auto cube = gen_hypercube(3);
  auto batch = run_batch(cube, *cube.x1(), *cube.x2(), 200, 1);
  CHECK(batch.lengths.size() == 200);
  CHECK(batch.failures.empty());
  for (int l : batch.lengths) CHECK(l >= 3);
  for (std::size_t t = 0; t < batch.seeds.size(); ++t) CHECK(batch.seeds[t] == 1 + t);

  auto r = bound_report(batch, cube, 1.0);
  CHECK(r.bound_8mn2_over_delta2 == 432.0);
  REQUIRE(r.mean_length);
  CHECK(*r.mean_length <= 432.0);
  CHECK(*r.ratio_mean_to_bound < 0.1);
  CHECK(r.passed);
}

TEST_CASE("simplex batch") {
  auto s = gen_simplex(3);
  TrialBatch batch;
  auto r = run_experiment(s, *s.x1(), *s.x2(), 50, 9, {}, &batch);
  CHECK(r.bfs_lower == 1);
  for (int l : batch.lengths) CHECK((l == 1 || l == 2));
  CHECK(*r.mean_length >= 1.0);
  CHECK(*r.mean_length < 1.5);
  CHECK(r.passed);
}

TEST_CASE("integral instances get the sub-determinant ceiling") {
  auto t = gen_transportation(2, 3, 1);
  auto r = run_experiment(t, *t.x1(), *t.x2(), 20, 0);
  REQUIRE(r.subdet_bound);
  const double m = t.m(), n = t.n();
  CHECK(*r.subdet_bound == doctest::Approx(8 * m * std::pow(n, 4)));
}

TEST_CASE("empty batch") {
  auto cube = gen_hypercube(3);
  auto batch = run_batch(cube, *cube.x1(), *cube.x2(), 0, 1);
  CHECK(batch.lengths.empty());
  auto r = bound_report(batch, cube, 1.0);
  CHECK_FALSE(r.mean_length);
  CHECK(r.passed);
  auto csv = emit(r, ReportFormat::Csv);
  CHECK(csv.starts_with(std::string(kCsvHeader) + "\n"));
  CHECK(csv.find(",6,3,1,0,,,432,") != std::string::npos);
}

TEST_CASE("missing delta") {
  auto cube = gen_hypercube(3);
  auto batch = run_batch(cube, *cube.x1(), *cube.x2(), 2, 1);
  CHECK(code_of([&] { bound_report(batch, cube, std::nullopt); }) == ErrorCode::MissingDelta);
}

TEST_CASE("reports round-trip and are deterministic") {
  auto inst = gen_random_sphere(12, 3, 2);
  auto a = run_experiment(inst, *inst.x1(), *inst.x2(), 60, 100);
  BatchOptions threaded;
  threaded.threads = 4;
  auto b = run_experiment(inst, *inst.x1(), *inst.x2(), 60, 100, threaded);
  CHECK(emit(a, ReportFormat::Json) == emit(b, ReportFormat::Json));
  CHECK(emit(a, ReportFormat::Csv) == emit(b, ReportFormat::Csv));

  auto back = parse_report_json(emit(a, ReportFormat::Json));
  CHECK(emit(back, ReportFormat::Json) == emit(a, ReportFormat::Json));
  CHECK(back.mean_length == a.mean_length);
  CHECK(back.delta == a.delta);
}

TEST_CASE("path json layout") {
  auto cube = gen_hypercube(3);
  auto p = find_path(cube, *cube.x1(), *cube.x2(), 7);
  auto j = nlohmann::json::parse(path_to_json(p));
  for (const char* key : {"status", "seed", "retries", "vertices", "bases", "slopes", "projections", "perturbation"})
    CHECK(j.contains(key));
  CHECK(j["status"] == "Completed");
  CHECK(j["perturbation"].is_null());
  CHECK(j["vertices"].size() == p.vertices.size());
  CHECK(j["slopes"].size() == p.slopes.size());
  CHECK(j["slopes"][0].get<double>() == p.slopes[0]);
}

TEST_CASE("format_number round-trips") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    double v = rng.gaussian() * std::pow(10.0, rng.uniform_int(-30, 30));
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("rotating the cube does not change path lengths") {
  auto cube = gen_hypercube(4);
  auto rotated = gen_rotated(cube, 21);
  auto a = run_batch(cube, *cube.x1(), *cube.x2(), 100, 0);
  auto b = run_batch(rotated, *rotated.x1(), *rotated.x2(), 100, 0);
  REQUIRE(a.lengths.size() == 100);
  REQUIRE(b.lengths.size() == 100);
  std::size_t same = 0;
  for (std::size_t t = 0; t < 100; ++t) same += a.lengths[t] == b.lengths[t];
  CHECK(same >= 95);
  auto ra = bound_report(a, cube, 1.0), rb = bound_report(b, rotated, 1.0);
  CHECK(std::abs(*ra.mean_length - *rb.mean_length) <= 2 * (*ra.std_err + *rb.std_err) + 1e-12);
}
