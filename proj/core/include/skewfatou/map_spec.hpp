#pragma once

#include <string>
#include <string_view>

#include "skewfatou/poly.hpp"

namespace skewfatou {

/// Parses a map-spec document:
///
///   {"d": 2,
///    "p": [[-6, 0], [0, 0], [1, 0]],
///    "q": [{"j": 0, "k": 2, "re": 1, "im": 0}, {"j": 1, "k": 0, "re": -1, "im": 0}]}
///
/// `p` lists d+1 [re, im] pairs in ascending degree; unlisted q monomials are
/// zero. Extra top-level keys are ignored. Monicity is checked exactly.
/// Throws MalformedSpec, DegreeMismatch, NotMonic or DegreeTooLow.
SkewProduct parse_map(std::string_view text);

/// Inverse of parse_map; the output is stable (sorted terms, fixed number format).
std::string to_map_spec(const SkewProduct& sp);

}  // namespace skewfatou
