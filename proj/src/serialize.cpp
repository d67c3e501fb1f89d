#include "svpath/serialize.hpp"

#include <array>
#include <charconv>

#include "json.hpp"

namespace svp {

namespace {

using ojson = nlohmann::ordered_json;

ojson vector_json(const Vec& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(x == 0.0 ? 0.0 : x);
  return a;
}

}  // namespace

std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string path_to_json(const ShadowPath& path) {
  ojson doc;
  doc["status"] = std::string(to_string(path.status));
  doc["seed"] = path.seed;
  doc["retries"] = path.retries;
  doc["length"] = path.length();
  ojson vertices = ojson::array(), bases = ojson::array();
  for (const auto& v : path.vertices) {
    vertices.push_back(vector_json(v.x));
    bases.push_back(v.basis);
  }
  doc["vertices"] = std::move(vertices);
  doc["bases"] = std::move(bases);
  doc["slopes"] = vector_json(path.slopes);
  ojson proj = ojson::array();
  for (const auto& p : path.projections) proj.push_back({p[0], p[1]});
  doc["projections"] = std::move(proj);
  if (path.perturbation) {
    const auto& r = *path.perturbation;
    doc["perturbation"] = {{"magnitude", r.magnitude},
                           {"seed", r.seed},
                           {"original_b", vector_json(r.original_b)},
                           {"perturbed_b", vector_json(r.perturbed_b)}};
  } else {
    doc["perturbation"] = nullptr;
  }
  ojson walk = ojson::array();
  for (const auto& x : path.walk) walk.push_back(vector_json(x));
  doc["walk"] = std::move(walk);
  doc["failures"] = path.failures;
  return doc.dump(2) + "\n";
}

}  // namespace svp
