#pragma once

#include <string>
#include <string_view>

#include "bucklab/periodic_set.hpp"

namespace bucklab {

// Text grammar for eventually periodic sets (whitespace is insignificant):
//
//   set      := part ( "+" part )* clause*
//   part     := finite | periodic
//   periodic := "mod" INT [ "residues" ] finite [ "from" INT ]
//   clause   := "except-add" finite | "except-remove" finite
//   finite   := "{" [ item ( "," item )* ] "}"
//   item     := INT | INT ".." INT
//
// "+" between parts is set union; `mod q {R} from T` is {n >= T : n mod q in R}
// (T defaults to 0); clauses then add or remove individual members.
//
// Canonical rendering is one of "{}", "{E}", "mod q {R} from T" or
// "{E} + mod q {R} from T", and parse_set(render_set(S)) == S.
EventuallyPeriodicSet parse_set(std::string_view text);
std::string render_set(const EventuallyPeriodicSet& s);

}  // namespace bucklab
