#pragma once

#include <string>

#include "cdr/orbifold.hpp"

namespace cdr::cli {

/// Reads and validates an orbifold description (see README for the schema).
/// Errors are InputError with a JSON path such as "$.classes[1].components[0].mg".
OrbifoldInput parse_orbifold_input(const std::string& path);
OrbifoldInput parse_orbifold_json(const std::string& text, const std::string& source = "<input>");

}  // namespace cdr::cli
