#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctlab/fields/vector_field.hpp"

namespace ctlab {

/// Numeric catalog parameters; scalars are vectors of length one.
using FieldParams = std::map<std::string, std::vector<double>>;

struct CatalogEntry {
  std::string name;
  std::string description;
  std::string params;  ///< human readable parameter schema with defaults
};

/// Catalog entries in their stable (alphabetical) order, optionally filtered
/// by substring of the name.
std::vector<CatalogEntry> catalog_list(const std::string& filter = "");

/// Builds a catalog field. Every field accepts `horizon` (T, default 1) and
/// `box` (half-width of the sampling box, default 1). Unknown names or
/// parameters throw PreconditionError.
VectorField builtin_field(const std::string& name, const FieldParams& params = {});

/// phi(u) = u (1 - ln|u|) on [-1, 1], sign(u) outside: the scalar profile of
/// the log_lipschitz field.
double log_lipschitz_profile(double u);

}  // namespace ctlab
