#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "rmmcop/bivariate.hpp"
#include "rmmcop/generator.hpp"
#include "rmmcop/ncopula.hpp"

namespace rmmcop {

/// Parse failure with the path of the offending node, e.g. "/f/a".
struct SpecError : std::runtime_error {
  SpecError(const std::string& message, std::string node_path)
      : std::runtime_error(message + " (at node '" + node_path + "')"),
        path(std::move(node_path)) {}
  std::string path;
};

/// Components of an rmm-family root node, kept around for convergence
/// diagnostics.
struct RmmParts {
  BivariateCopula c_dot;
  Generator f;
  Generator g;
};

struct ParsedCopula {
  int dim = 2;
  std::optional<BivariateCopula> bivariate;  // set when dim == 2
  std::optional<NCopula> ncopula;            // set when dim >= 3
  std::optional<RmmParts> rmm_parts;
  std::string label;

  double eval(std::span<const double> point) const;
};

/// Parses a copula expression document (JSON; see docs/spec_format.md) and
/// builds the evaluable copula.  Throws SpecError on malformed documents,
/// unknown families, out-of-range parameters or dimension mismatches.
ParsedCopula parse_spec(const std::string& json_text);

}  // namespace rmmcop
