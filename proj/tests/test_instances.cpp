#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "svpath/error.hpp"
#include "svpath/flatness.hpp"
#include "svpath/instances.hpp"

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

void audit(const Instance& inst) {
  for (std::size_t i = 0; i < inst.m(); ++i) CHECK(std::abs(norm(inst.A().row(i)) - 1.0) < 1e-12);
  REQUIRE(inst.x1());
  REQUIRE(inst.x2());
  CHECK_FALSE(verify_vertex(inst, *inst.x1()).degenerate);
  CHECK_FALSE(verify_vertex(inst, *inst.x2()).degenerate);
  for (const auto& v : enumerate_vertices(inst)) CHECK_FALSE(v.degenerate);
}

}  // namespace

TEST_CASE("family names") {
  for (auto f : {Family::Hypercube, Family::Simplex, Family::RandomSphere, Family::Transportation, Family::Rotated,
                 Family::CutCube})
    CHECK(parse_family(to_string(f)) == f);
  CHECK_FALSE(parse_family("klee-minty"));
}

TEST_CASE("hypercube") {
  auto c3 = gen_hypercube(3);
  CHECK(c3.m() == 6);
  CHECK(enumerate_vertices(c3).size() == 8);
  CHECK(delta_A(c3).delta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(subdet_report(*c3.int_A()).Delta == 1);
  CHECK(*c3.x1() == Vec{0, 0, 0});
  CHECK(*c3.x2() == Vec{1, 1, 1});
  CHECK(enumerate_vertices(gen_hypercube(2)).size() == 4);
  CHECK(enumerate_vertices(gen_hypercube(8)).size() == 256);
  audit(c3);
}

TEST_CASE("transportation") {
  auto t22 = gen_transportation({1, 1}, {1, 1});
  CHECK(t22.n() == 1);
  CHECK(subdet_report(*t22.int_A()).Delta == 1);
  CHECK(code_of([] { gen_transportation({1, 2}, {1, 1}); }) == ErrorCode::InfeasibleTotals);

  auto t23 = gen_transportation(2, 3, 5);
  CHECK(t23.n() == 2);
  CHECK(t23.m() == 6);
  CHECK(subdet_report(*t23.int_A()).Delta == 1);
  CHECK(gen_transportation(2, 3, 5).raw_b() == t23.raw_b());

  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto t = gen_transportation(3, 4, seed);
    CHECK(subdet_report(*t.int_A()).Delta == 1);
    audit(t);
  }
}

TEST_CASE("random-sphere") {
  int resamples = -1;
  auto inst = gen_random_sphere(12, 3, 1, &resamples);
  CHECK(resamples >= 0);
  audit(inst);
  for (const auto& v : enumerate_vertices(inst)) CHECK(verify_vertex(inst, v.x).basis == v.basis);
  CHECK(delta_A(inst).delta > 0);
  CHECK(gen_random_sphere(12, 3, 1).A() == inst.A());
  CHECK(gen_random_sphere(12, 3, 2).A() != inst.A());

  auto g = build_vertex_graph(inst);
  auto [s, t] = farthest_pair(g);
  int far = bfs_distance(g, s, t);
  CHECK(bfs_distance(g, *g.find(*inst.x1()), *g.find(*inst.x2())) == far);
  for (std::size_t u = 0; u < g.vertices.size(); ++u)
    for (int d : bfs_distances(g, u)) CHECK(d <= far);
}

TEST_CASE("rotated") {
  auto base = gen_hypercube(3);
  auto rot = gen_rotated(base, 12);
  CHECK(std::abs(delta_A(rot).delta - 1.0) < 1e-9);
  CHECK_FALSE(rot.integral());
  audit(rot);
  CHECK(gen_rotated(base, 12).A() == rot.A());
  auto spec = generate({Family::Rotated, 3, 0, 12, {}});
  CHECK(spec.A() == rot.A());
}

TEST_CASE("cut cube") {
  auto cut = gen_cut_cube(3, 2.5);
  CHECK(enumerate_vertices(cut).size() == 10);
  audit(cut);
  CHECK(code_of([] { gen_cut_cube(3, 3.5); }) == ErrorCode::InvalidArgument);
  auto spec = generate({Family::CutCube, 3, 0, 0, {{"cut", 2.5}}});
  CHECK(spec.A() == cut.A());
}

TEST_CASE("generation is a pure function of the spec") {
  for (auto f : {Family::Hypercube, Family::Simplex, Family::RandomSphere, Family::Transportation, Family::Rotated,
                 Family::CutCube}) {
    GeneratorSpec spec{f, 3, 9, 4, {}};
    auto a = generate(spec), b = generate(spec);
    CHECK(dump_instance(a) == dump_instance(b));
  }
}

TEST_CASE("instance file round trip") {
  auto dir = std::filesystem::temp_directory_path() / "svpath_instances_test";
  std::filesystem::create_directories(dir);
  for (const auto& inst : {gen_hypercube(3), gen_random_sphere(10, 3, 7), gen_rotated(gen_hypercube(4), 3)}) {
    auto path = dir / (inst.name() + ".json");
    write_instance(inst, path);
    auto back = read_instance(path);
    CHECK(back.raw_A() == inst.raw_A());
    CHECK(back.raw_b() == inst.raw_b());
    CHECK(back.A() == inst.A());
    CHECK(back.integral() == inst.integral());
    CHECK(back.x1() == inst.x1());
    CHECK(back.x2() == inst.x2());
    CHECK(back.name() == inst.name());
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("instance parsing errors") {
  CHECK(code_of([] { parse_instance(R"({"A": [[1, 0], [0, NaN]], "b": [1, 1]})"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_instance(R"({"A": [[1, 0], [0, "x"]], "b": [1, 1]})"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_instance(R"({"A": [[1, 0], [0, 1e999]], "b": [1, 1]})"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_instance(R"({"A": [[1, 0], [0, 1]]})"); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { parse_instance(R"({"A": [[1, 0], [0, 1]], "b": [1]})"); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { parse_instance("{\"A\": [[1, 0],\n [0, 1]], \"b\": [1, 1"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_instance("/nonexistent/instance.json"); }) == ErrorCode::IoError);

  auto ok = parse_instance(R"({"A": [[1, 0], [0, 1], [-1, -1]], "b": [1, 1, 0], "x1": [0, 0]})");
  CHECK(ok.integral());
  CHECK(ok.x1() == Vec{0, 0});
  CHECK_FALSE(ok.x2());
}
