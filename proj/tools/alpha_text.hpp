#pragma once

#include <string_view>

#include "bucklab/constructions.hpp"

namespace bucklab::cli {

// Target densities on the command line:
//
//   alpha  := rational
//           | [rational "*"] base ["/" INT] [("+" | "-") rational]
//           | "digits:" path
//   base   := "sqrt(" rational ")" | "golden-conjugate"
//
// A square root that happens to be rational collapses to the exact value.
// Decimal literals such as 0.7 are rejected: they are rational, and the
// irrational constructions would silently fail on them.
Alpha parse_alpha(std::string_view text);

}  // namespace bucklab::cli
