#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "svpath/error.hpp"
#include "svpath/flatness.hpp"
#include "svpath/instances.hpp"
#include "svpath/polytope.hpp"

using namespace svp;
using fixtures::max_diff;
using Rows = std::vector<std::size_t>;

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

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

double hausdorff(const std::vector<VertexWithBasis>& a, const std::vector<VertexWithBasis>& b) {
  auto one_way = [](const auto& from, const auto& to) {
    double worst = 0;
    for (const auto& p : from) {
      double best = INFINITY;
      for (const auto& q : to) best = std::min(best, norm(sub(p.x, q.x)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

}  // namespace

TEST_CASE("instance canonicalization") {
  auto inst = Instance::from_rows("t", Mat{{3, 4}, {0, -2}, {-1, 0}}, Vec{5, 0, 0}, true);
  for (std::size_t i = 0; i < inst.m(); ++i) CHECK(std::abs(norm(inst.A().row(i)) - 1.0) < 1e-12);
  CHECK(inst.b()[0] == doctest::Approx(1.0));
  CHECK(inst.raw_A() == Mat{{3, 4}, {0, -2}, {-1, 0}});
  CHECK((*inst.int_A())(0, 1) == 4);
  CHECK(code_of([] { Instance::from_rows("t", Mat{{0, 0}, {1, 0}}, Vec{1, 1}, false); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { Instance::from_rows("t", Mat{{0.5, 1}, {1, 0}}, Vec{1, 1}, true); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { Instance::from_rows("t", Mat{{1, 0, 0}}, Vec{1}, false); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("tight_rows") {
  auto cube = fixtures::cube3();
  CHECK(tight_rows(cube, {0, 0, 0}) == Rows{3, 4, 5});
  CHECK(tight_rows(cube, {1, 1, 1}) == Rows{0, 1, 2});
  CHECK(tight_rows(cube, {0.5, 0.5, 0.5}).empty());
  CHECK(code_of([&] { tight_rows(cube, {1.5, 0, 0}); }) == ErrorCode::Infeasible);
  CHECK(message_of([&] { tight_rows(cube, {0, 0, -1}); }).find("row 5") != std::string::npos);
}

TEST_CASE("verify_vertex") {
  auto cube = fixtures::cube3();
  auto v = verify_vertex(cube, {0, 0, 0});
  CHECK(v.basis == Rows{3, 4, 5});
  CHECK_FALSE(v.degenerate);
  CHECK(verify_vertex(fixtures::cube_with_duplicate_row(), {1, 1, 1}).degenerate);
  CHECK(code_of([&] { verify_vertex(cube, {0.5, 0, 0}); }) == ErrorCode::NotAVertex);
  CHECK(code_of([&] { verify_vertex(cube, {2, 0, 0}); }) == ErrorCode::Infeasible);
}

TEST_CASE("edge_directions") {
  auto cube = fixtures::cube3();
  auto at_origin = edge_directions(cube, verify_vertex(cube, {0, 0, 0}));
  REQUIRE(at_origin.size() == 3);
  CHECK(at_origin[0].leaving_row == 3);
  CHECK(max_diff(at_origin[0].direction, {1, 0, 0}) < 1e-15);

  auto at_ones = edge_directions(cube, verify_vertex(cube, {1, 1, 1}));
  CHECK(at_ones[2].leaving_row == 2);
  CHECK(max_diff(at_ones[2].direction, {0, 0, -1}) < 1e-15);

  auto tri = gen_simplex(2);
  auto at_tri_origin = edge_directions(tri, verify_vertex(tri, {0, 0}));
  CHECK(at_tri_origin[0].leaving_row == 0);
  CHECK(max_diff(at_tri_origin[0].direction, {1, 0}) < 1e-15);

  for (const auto& e : edge_directions(fixtures::pyramid(), verify_vertex(fixtures::pyramid(), {0, 0, 0}))) {
    auto v = verify_vertex(fixtures::pyramid(), {0, 0, 0});
    for (std::size_t k : v.basis) {
      double expect = k == e.leaving_row ? -1.0 : 0.0;
      CHECK(std::abs(dot(fixtures::pyramid().A().row(k), e.direction) - expect) < 1e-12);
    }
  }
}

TEST_CASE("ratio_step") {
  auto cube = fixtures::cube3();
  auto step = ratio_step(cube, verify_vertex(cube, {0, 0, 0}), {1, 0, 0});
  REQUIRE(step);
  CHECK(step->entering_row == 0);
  CHECK(step->step == doctest::Approx(1.0));

  auto tri = gen_simplex(2);
  auto s2 = ratio_step(tri, verify_vertex(tri, {0, 0}), {1, 0});
  REQUIRE(s2);
  CHECK(s2->entering_row == 2);
  CHECK(s2->step == doctest::Approx(1.0));

  auto half = Instance::from_rows("half", Mat{{0, -1}, {-1, 0}}, Vec{0, 0}, false);
  CHECK_FALSE(ratio_step(half, verify_vertex(half, {0, 0}), {0, 1}));
}

TEST_CASE("enumerate_vertices") {
  CHECK(enumerate_vertices(fixtures::cube3()).size() == 8);
  CHECK(enumerate_vertices(gen_simplex(3)).size() == 4);
  auto cut = gen_cut_cube(3, 2.5);
  auto verts = enumerate_vertices(cut);
  CHECK(verts.size() == 10);
  for (const auto& v : verts) {
    CHECK(v.basis.size() == 3);
    CHECK(rank(cut.A().select_rows(v.basis)) == 3);
    CHECK(verify_vertex(cut, v.x).basis.size() == 3);
  }
  CHECK(enumerate_vertices(gen_hypercube(8)).size() == 256);
  CHECK(code_of([] { enumerate_vertices(gen_hypercube(8), 100); }) == ErrorCode::CapExceeded);
}

TEST_CASE("bfs_distance") {
  auto cube = fixtures::cube3();
  CHECK(bfs_distance(cube, verify_vertex(cube, {0, 0, 0}), verify_vertex(cube, {1, 1, 1})) == 3);

  auto simplex = gen_simplex(3);
  auto g = build_vertex_graph(simplex);
  for (std::size_t s = 0; s < g.vertices.size(); ++s)
    for (std::size_t t = 0; t < g.vertices.size(); ++t) CHECK(bfs_distance(g, s, t) == (s == t ? 0 : 1));

  // Values from the brute-force oracle in tests/oracles.
  auto cut = gen_cut_cube(3, 2.5);
  auto cg = build_vertex_graph(cut);
  CHECK(cg.edge_count() == 15);
  auto origin = verify_vertex(cut, {0, 0, 0});
  CHECK(bfs_distance(cut, origin, verify_vertex(cut, {1, 1, 0.5})) == 3);
  CHECK(bfs_distance(cut, origin, verify_vertex(cut, {0.5, 1, 1})) == 3);
}

TEST_CASE("perturb") {
  auto cube = fixtures::cube3();
  auto [p1, rec1] = perturb(cube, 1e-7, 42);
  auto [p2, rec2] = perturb(cube, 1e-7, 42);
  CHECK(p1.b() == p2.b());
  CHECK(rec1.perturbed_b == p1.b());
  CHECK(rec1.original_b == cube.b());
  CHECK(p1.A() == cube.A());
  for (std::size_t i = 0; i < cube.m(); ++i) {
    CHECK(p1.b()[i] > cube.b()[i]);
    CHECK(p1.b()[i] - cube.b()[i] <= 1e-7);
  }
  CHECK(code_of([&] { perturb(cube, 0.0, 1); }) == ErrorCode::InvalidArgument);

  auto pyr = fixtures::pyramid();
  CHECK(verify_vertex(pyr, {0.5, 0.5, 1}).degenerate);
  auto [pp, rec] = perturb(pyr, 1e-7, 9);
  auto verts = enumerate_vertices(pp);
  CHECK(verts.size() >= 5);
  for (const auto& v : verts) CHECK_FALSE(verify_vertex(pp, v.x).degenerate);
}

TEST_CASE("collapse_path") {
  CHECK(collapse_path(fixtures::cube3(), {}).empty());

  auto cube = fixtures::cube3();
  auto [pc, rec] = perturb(cube, 1e-7, 1);
  std::vector<VertexWithBasis> path{verify_vertex(pc, basis_point(pc, {3, 4, 5})),
                                    verify_vertex(pc, basis_point(pc, {0, 4, 5}))};
  auto walk = collapse_path(cube, path);
  REQUIRE(walk.size() == 2);
  CHECK(max_diff(walk[0], path[0].x) <= 2e-7);
  CHECK(max_diff(walk[1], {1, 0, 0}) < 1e-12);

  // Two perturbed copies of the pyramid apex collapse into one point. The
  // magnitude is large enough for the copies to stay apart under dedup.
  auto pyr = fixtures::pyramid();
  auto [pp, prec] = perturb(pyr, 1e-3, 9);
  std::vector<VertexWithBasis> apex_copies;
  for (const auto& v : enumerate_vertices(pp))
    if (norm_inf(sub(v.x, Vec{0.5, 0.5, 1})) < 1e-2) apex_copies.push_back(v);
  REQUIRE(apex_copies.size() >= 2);
  auto base = verify_vertex(pp, basis_point(pp, {0, 1, 2}));
  std::vector<VertexWithBasis> through{base, apex_copies[0], apex_copies[1]};
  auto collapsed = collapse_path(pyr, through);
  REQUIRE(collapsed.size() == 2);
  CHECK(max_diff(collapsed[1], {0.5, 0.5, 1}) < 1e-12);

  // A basis whose original solution is infeasible cannot be mapped back.
  // On the cut cube the rows x_i <= 1 meet at (1,1,1), which the cut excludes.
  CHECK(code_of([] { collapse_path(gen_cut_cube(3, 2.5), {VertexWithBasis{{1, 1, 0.5}, {0, 1, 2}, false}}); }) ==
        ErrorCode::MappingFailed);
}

TEST_CASE("property: enumerated vertices carry rank-n bases") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = gen_random_sphere(10, 3, seed);
    for (const auto& v : enumerate_vertices(inst)) {
      CHECK(v.basis.size() == inst.n());
      CHECK(rank(inst.A().select_rows(v.basis)) == inst.n());
    }
  }
}

TEST_CASE("property: edge reciprocity") {
  std::vector<Instance> corpus{fixtures::cube3(), gen_simplex(4), gen_cut_cube(3, 2.5), gen_transportation(2, 3, 4)};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) corpus.push_back(gen_random_sphere(12, 3, seed));
  for (const auto& inst : corpus) {
    for (const auto& v : enumerate_vertices(inst)) {
      if (v.degenerate) continue;
      for (const auto& e : edge_directions(inst, v)) {
        auto step = ratio_step(inst, v, e.direction);
        REQUIRE(step);
        Rows nb;
        for (auto r : v.basis)
          if (r != e.leaving_row) nb.push_back(r);
        nb.push_back(step->entering_row);
        std::sort(nb.begin(), nb.end());
        auto w = verify_vertex(inst, basis_point(inst, nb));
        if (w.degenerate) continue;
        bool back = false;
        for (const auto& f : edge_directions(inst, w)) {
          if (f.leaving_row != step->entering_row) continue;
          auto s2 = ratio_step(inst, w, f.direction);
          REQUIRE(s2);
          Vec x = add(w.x, scale(f.direction, s2->step));
          back = max_diff(x, v.x) <= 1e-7;
        }
        CHECK(back);
      }
    }
  }
}

TEST_CASE("property: edge steps are at least delta times the edge length") {
  std::vector<Instance> corpus{fixtures::cube3(), gen_simplex(3), gen_cut_cube(3, 2.5), gen_transportation(3, 3, 2),
                               fixtures::two_axes_and_diagonal()};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) corpus.push_back(gen_random_sphere(9, 3, seed));
  for (const auto& inst : corpus) {
    double delta = delta_A(inst).delta;
    auto g = build_vertex_graph(inst);
    for (std::size_t u = 0; u < g.vertices.size(); ++u)
      for (std::size_t w : g.adjacency[u]) {
        Vec dz = sub(g.vertices[w].x, g.vertices[u].x);
        for (std::size_t i = 0; i < inst.m(); ++i) {
          double s = std::abs(dot(inst.A().row(i), dz));
          if (s > 1e-9) CHECK(s >= delta * norm(dz) - 1e-7);
        }
      }
  }
}

TEST_CASE("property: small perturbations move vertices little") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = gen_random_sphere(10, 3, seed);
    auto [p, rec] = perturb(inst, 1e-6, seed);
    auto a = enumerate_vertices(inst);
    auto b = enumerate_vertices(p);
    CHECK(a.size() == b.size());
    CHECK(hausdorff(a, b) <= 1e-4);
  }
}
