#pragma once

#include <string>

#include "svpath/shadow.hpp"

namespace svp {

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

/// ShadowPath as JSON: status, seed, retries, vertices, bases, slopes,
/// projections, perturbation (or null), walk and failures.
std::string path_to_json(const ShadowPath& path);

}  // namespace svp
