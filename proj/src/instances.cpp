#include "svpath/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "svpath/combinatorics.hpp"
#include "svpath/error.hpp"
#include "svpath/flatness.hpp"

namespace svp {

namespace {

using ojson = nlohmann::ordered_json;

// Endpoint search is skipped above this many candidate bases.
constexpr std::uint64_t kEndpointSearchCap = 200'000;

Instance with_farthest_endpoints(const Instance& inst) {
  if (binomial(inst.m(), inst.n()) > kEndpointSearchCap) return inst;
  VertexGraph g = build_vertex_graph(inst);
  if (g.vertices.size() < 2) return inst;
  auto [s, t] = farthest_pair(g);
  return inst.with_endpoints(g.vertices[s].x, g.vertices[t].x);
}

std::string field_error(std::string_view source, const std::string& field, const std::string& what) {
  return std::string(source) + ": field \"" + field + "\": " + what;
}

double read_number(const ojson& v, std::string_view source, const std::string& field) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    fail(ErrorCode::ParseError, field_error(source, field, "non-numeric value \"" + s + "\""));
  }
  if (!v.is_number()) fail(ErrorCode::SchemaError, field_error(source, field, "expected a number"));
  double d = v.get<double>();
  if (!std::isfinite(d)) fail(ErrorCode::ParseError, field_error(source, field, "non-finite number"));
  return d;
}

Vec read_vector(const ojson& v, std::string_view source, const std::string& field) {
  if (!v.is_array()) fail(ErrorCode::SchemaError, field_error(source, field, "expected an array"));
  Vec out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(read_number(v[i], source, field + "[" + std::to_string(i) + "]"));
  return out;
}

ojson vector_json(const Vec& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Hypercube: return "hypercube";
    case Family::Simplex: return "simplex";
    case Family::RandomSphere: return "random-sphere";
    case Family::Transportation: return "transportation";
    case Family::Rotated: return "rotated";
    case Family::CutCube: return "cut-cube";
  }
  return "hypercube";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::Hypercube, Family::Simplex, Family::RandomSphere, Family::Transportation,
                   Family::Rotated, Family::CutCube})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

Instance gen_hypercube(std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "hypercube needs n >= 1");
  Mat a(2 * n, n);
  Vec b(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = 1.0;
    b[i] = 1.0;
    a(n + i, i) = -1.0;
  }
  return Instance::from_rows("hypercube-" + std::to_string(n), std::move(a), std::move(b), true)
      .with_endpoints(Vec(n, 0.0), Vec(n, 1.0));
}

Instance gen_simplex(std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "simplex needs n >= 1");
  Mat a(n + 1, n);
  Vec b(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = -1.0;
    a(n, i) = 1.0;
  }
  b[n] = 1.0;
  Vec e1(n, 0.0);
  e1[0] = 1.0;
  return Instance::from_rows("simplex-" + std::to_string(n), std::move(a), std::move(b), true)
      .with_endpoints(Vec(n, 0.0), std::move(e1));
}

Instance gen_cut_cube(std::size_t n, double cut) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "cut-cube needs n >= 2");
  if (!(cut > n - 1.0 && cut < static_cast<double>(n)))
    fail(ErrorCode::InvalidArgument, "cut must lie strictly between n-1 and n");
  Mat a(2 * n + 1, n);
  Vec b(2 * n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = 1.0;
    b[i] = 1.0;
    a(n + i, i) = -1.0;
    a(2 * n, i) = 1.0;
  }
  b[2 * n] = cut;
  std::ostringstream name;
  name << "cut-cube-" << n;
  return with_farthest_endpoints(Instance::from_rows(name.str(), std::move(a), std::move(b), true));
}

Instance gen_transportation(const std::vector<std::int64_t>& supplies, const std::vector<std::int64_t>& demands) {
  const std::size_t p = supplies.size(), q = demands.size();
  if (p < 2 || q < 2) fail(ErrorCode::InvalidArgument, "transportation needs p, q >= 2");
  for (auto v : supplies)
    if (v <= 0) fail(ErrorCode::InvalidArgument, "supplies must be positive");
  for (auto v : demands)
    if (v <= 0) fail(ErrorCode::InvalidArgument, "demands must be positive");
  if (std::accumulate(supplies.begin(), supplies.end(), std::int64_t{0}) !=
      std::accumulate(demands.begin(), demands.end(), std::int64_t{0}))
    fail(ErrorCode::InfeasibleTotals, "total supply differs from total demand");

  // Free variables x_ij for i < p-1, j < q-1; the last row and column of the
  // flow table are determined by the equalities.
  const std::size_t n = (p - 1) * (q - 1);
  const std::size_t m = p * q;
  auto var = [&](std::size_t i, std::size_t j) { return i * (q - 1) + j; };
  Mat a(m, n);
  Vec b(m, 0.0);
  std::size_t r = 0;
  for (std::size_t k = 0; k < n; ++k, ++r) a(r, k) = -1.0;
  for (std::size_t i = 0; i + 1 < p; ++i, ++r) {
    for (std::size_t j = 0; j + 1 < q; ++j) a(r, var(i, j)) = 1.0;
    b[r] = static_cast<double>(supplies[i]);
  }
  for (std::size_t j = 0; j + 1 < q; ++j, ++r) {
    for (std::size_t i = 0; i + 1 < p; ++i) a(r, var(i, j)) = 1.0;
    b[r] = static_cast<double>(demands[j]);
  }
  std::int64_t corner = supplies[p - 1];
  for (std::size_t j = 0; j + 1 < q; ++j) corner -= demands[j];
  for (std::size_t k = 0; k < n; ++k) a(r, k) = -1.0;
  b[r] = static_cast<double>(corner);

  std::string name = "transportation-" + std::to_string(p) + "x" + std::to_string(q);
  return with_farthest_endpoints(Instance::from_rows(name, std::move(a), std::move(b), true));
}

Instance gen_transportation(std::size_t p, std::size_t q, std::uint64_t seed) {
  if (p < 2 || q < 2) fail(ErrorCode::InvalidArgument, "transportation needs p, q >= 2");
  Rng rng(seed);
  for (int tries = 0; tries < 100'000; ++tries) {
    std::vector<std::int64_t> s(p), d(q);
    for (auto& v : s) v = rng.uniform_int(1, 5);
    for (auto& v : d) v = rng.uniform_int(1, 5);
    if (std::accumulate(s.begin(), s.end(), std::int64_t{0}) != std::accumulate(d.begin(), d.end(), std::int64_t{0}))
      continue;
    // Supplies s_i + e and last demand d_q + p e with e = 1/(p+1), scaled by
    // p+1. No proper partial sums of supplies and demands can then agree, so
    // the polytope is simple, and the data stays integral.
    const auto k = static_cast<std::int64_t>(p + 1);
    for (auto& v : s) v = k * v + 1;
    for (auto& v : d) v *= k;
    d.back() += static_cast<std::int64_t>(p);
    Instance inst = gen_transportation(s, d);
    return inst.with_name(inst.name() + "-seed" + std::to_string(seed));
  }
  fail(ErrorCode::InfeasibleTotals, "could not draw matching supplies and demands");
}

Instance gen_random_sphere(std::size_t m, std::size_t n, std::uint64_t seed, int* resamples) {
  if (n < 2 || m < n + 1) fail(ErrorCode::InvalidArgument, "random-sphere needs n >= 2 and m >= n+1");
  if (binomial(m, n) > kDefaultEnumerationCap)
    fail(ErrorCode::CapExceeded, "random-sphere audit needs vertex enumeration within the cap");
  Rng rng(seed);
  int discarded = 0;
  for (int tries = 0; tries < 1000; ++tries) {
    Mat a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      Vec g(n);
      for (double& x : g) x = rng.gaussian();
      Vec u = normalize(g);
      std::copy(u.begin(), u.end(), a.row(i).begin());
    }
    Instance inst = Instance::from_rows("random-sphere-" + std::to_string(m) + "x" + std::to_string(n) + "-seed" +
                                            std::to_string(seed),
                                        std::move(a), Vec(m, 1.0), false);
    VertexGraph g = build_vertex_graph(inst);
    bool degenerate = false;
    for (const auto& v : g.vertices) degenerate = degenerate || v.degenerate;
    if (degenerate || g.vertices.size() < 2 || !is_bounded(inst, g)) {
      ++discarded;
      continue;
    }
    if (resamples) *resamples = discarded;
    auto [s, t] = farthest_pair(g);
    return inst.with_endpoints(g.vertices[s].x, g.vertices[t].x);
  }
  fail(ErrorCode::UnboundedSample, "no bounded non-degenerate sample in 1000 draws");
}

Mat random_orthogonal(std::size_t n, Rng& rng) {
  std::vector<Vec> cols;
  while (cols.size() < n) {
    Vec v(n);
    for (double& x : v) x = rng.gaussian();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& c : cols) {
        double proj = dot(c, v);
        for (std::size_t j = 0; j < n; ++j) v[j] -= proj * c[j];
      }
    double len = norm(v);
    if (len < 1e-8) continue;
    cols.push_back(scale(v, 1.0 / len));
  }
  Mat q(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) q(i, j) = cols[j][i];
  return q;
}

Instance gen_rotated(const Instance& base, std::uint64_t seed) {
  Rng rng(seed);
  Mat q = random_orthogonal(base.n(), rng);
  return rotate_rows(base, q).with_name(base.name() + "-rot" + std::to_string(seed));
}

Instance generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::Hypercube: return gen_hypercube(spec.n);
    case Family::Simplex: return gen_simplex(spec.n);
    case Family::CutCube: {
      auto it = spec.params.find("cut");
      double cut = it != spec.params.end() ? it->second : static_cast<double>(spec.n) - 0.5;
      return gen_cut_cube(spec.n, cut);
    }
    case Family::RandomSphere: return gen_random_sphere(spec.m, spec.n, spec.seed);
    case Family::Transportation: return gen_transportation(spec.n, spec.m, spec.seed);
    case Family::Rotated: {
      if (spec.m == 0 || spec.m == 2 * spec.n) return gen_rotated(gen_hypercube(spec.n), spec.seed);
      return gen_rotated(gen_random_sphere(spec.m, spec.n, spec.seed), spec.seed);
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown family");
}

std::pair<std::size_t, std::size_t> farthest_pair(const VertexGraph& g) {
  if (g.vertices.size() < 2) fail(ErrorCode::InvalidArgument, "need at least two vertices");
  std::pair<std::size_t, std::size_t> best{0, 1};
  int best_d = -1;
  for (std::size_t s = 0; s < g.vertices.size(); ++s) {
    auto dist = bfs_distances(g, s);
    for (std::size_t t = s + 1; t < dist.size(); ++t)
      if (dist[t] > best_d) {
        best_d = dist[t];
        best = {s, t};
      }
  }
  return best;
}

Instance parse_instance(std::string_view text, std::string_view source) {
  ojson doc;
  try {
    doc = ojson::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string(source) + ": " + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::SchemaError, std::string(source) + ": top level must be an object");
  for (const char* key : {"A", "b"})
    if (!doc.contains(key)) fail(ErrorCode::SchemaError, field_error(source, key, "missing"));

  const ojson& ja = doc["A"];
  if (!ja.is_array() || ja.empty()) fail(ErrorCode::SchemaError, field_error(source, "A", "expected a non-empty array of rows"));
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < ja.size(); ++i) rows.push_back(read_vector(ja[i], source, "A[" + std::to_string(i) + "]"));
  for (const auto& r : rows)
    if (r.size() != rows.front().size() || r.empty())
      fail(ErrorCode::SchemaError, field_error(source, "A", "rows must have equal positive length"));
  Vec b = read_vector(doc["b"], source, "b");

  const std::size_t m = rows.size(), n = rows.front().size();
  auto check_dim = [&](const char* key, std::size_t expected) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number_integer() || doc[key].get<std::int64_t>() != static_cast<std::int64_t>(expected))
      fail(ErrorCode::SchemaError, field_error(source, key, "does not match A (expected " + std::to_string(expected) + ")"));
  };
  check_dim("m", m);
  check_dim("n", n);
  if (b.size() != m)
    fail(ErrorCode::SchemaError, field_error(source, "b", "has " + std::to_string(b.size()) + " entries, A has " +
                                                              std::to_string(m) + " rows"));

  std::string name = "unnamed";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail(ErrorCode::SchemaError, field_error(source, "name", "expected a string"));
    name = doc["name"].get<std::string>();
  }
  // Without an explicit flag, A counts as integral when every entry is.
  bool integral = std::all_of(rows.begin(), rows.end(), [](const Vec& r) {
    return std::all_of(r.begin(), r.end(), [](double v) { return std::abs(v) < 0x1p53 && v == std::trunc(v); });
  });
  if (doc.contains("integral")) {
    if (!doc["integral"].is_boolean()) fail(ErrorCode::SchemaError, field_error(source, "integral", "expected a boolean"));
    integral = doc["integral"].get<bool>();
  }
  std::optional<Vec> x1, x2;
  for (auto [key, slot] : {std::pair{"x1", &x1}, std::pair{"x2", &x2}}) {
    if (!doc.contains(key) || doc[key].is_null()) continue;
    Vec x = read_vector(doc[key], source, key);
    if (x.size() != n) fail(ErrorCode::SchemaError, field_error(source, key, "must have n entries"));
    *slot = std::move(x);
  }

  try {
    return Instance::from_rows(std::move(name), Mat::from_rows(rows), std::move(b), integral)
        .with_endpoints(std::move(x1), std::move(x2));
  } catch (const Error& e) {
    fail(ErrorCode::SchemaError, std::string(source) + ": " + e.what());
  }
}

std::string dump_instance(const Instance& inst) {
  ojson doc;
  doc["name"] = inst.name();
  doc["m"] = inst.m();
  doc["n"] = inst.n();
  ojson a = ojson::array();
  for (std::size_t i = 0; i < inst.m(); ++i) {
    ojson row = ojson::array();
    for (std::size_t j = 0; j < inst.n(); ++j) {
      if (inst.integral())
        row.push_back((*inst.int_A())(i, j));
      else
        row.push_back(inst.raw_A()(i, j));
    }
    a.push_back(std::move(row));
  }
  doc["A"] = std::move(a);
  doc["b"] = vector_json(inst.raw_b());
  doc["integral"] = inst.integral();
  if (inst.x1()) doc["x1"] = vector_json(*inst.x1());
  if (inst.x2()) doc["x2"] = vector_json(*inst.x2());
  return doc.dump(2) + "\n";
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.string());
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  out << dump_instance(inst);
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace svp
