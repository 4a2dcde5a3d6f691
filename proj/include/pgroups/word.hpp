#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pgroups {

// Generator index, 0-based. Generators are ordered by non-decreasing weight.
using Gen = int;

// A letter g^e of a word, exponent normalized to [1, p-1] where possible.
struct Letter {
  Gen gen;
  int exp;
  bool operator==(const Letter &) const = default;
};

// An uncollected word: product of letters, left to right.
using Word = std::vector<Letter>;

// Collected normal form g_0^{e_0} ... g_{n-1}^{e_{n-1}}, entries in [0, p).
// Length always equals the generator count of the owning group.
using NormalWord = std::vector<std::uint8_t>;

inline bool is_identity(const NormalWord &w) {
  for (auto e : w)
    if (e != 0)
      return false;
  return true;
}

// Highest generator with nonzero exponent, or -1 for the identity.
inline int top_gen(const NormalWord &w) {
  for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i)
    if (w[i] != 0)
      return i;
  return -1;
}

// Lowest generator with nonzero exponent, or -1 for the identity.
inline int leading_gen(const NormalWord &w) {
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] != 0)
      return i;
  return -1;
}

inline Word to_word(const NormalWord &w) {
  Word out;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] != 0)
      out.push_back({i, static_cast<int>(w[i])});
  return out;
}

std::string word_to_string(const Word &w);
std::string normal_to_string(const NormalWord &w);

} // namespace pgroups
