#pragma once

#include "pgroups/pcgroup.hpp"

#include <iosfwd>
#include <string>

namespace pgroups {

// Line-oriented presentation files:
//   p <prime> n <ngens>
//   wt w1 w2 ... wn          (optional; inferred from the filtration if absent)
//   pow i : w
//   comm j i : w             (j > i)
// where w is `id` or a product gA^e*gB^e*... with 1-based generator indices.
// Omitted relations are trivial. '#' starts a comment.
PcGroup parse_presentation(const std::string &text);
PcGroup parse_presentation_file(const std::string &path);

std::string print_presentation(const PcGroup &G);

} // namespace pgroups
