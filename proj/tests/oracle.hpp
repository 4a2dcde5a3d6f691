#pragma once

// Test-only oracles, independent of the library's collection machinery.

#include "pgroups/pcgroup.hpp"

#include <deque>
#include <stdexcept>
#include <vector>

namespace oracle {

// Naive normal-form computation by letter-sequence rewriting: a word is a
// flat list of generators (each letter exponent one); repeatedly fix the
// leftmost violation (descent g_j g_i with j > i, or a run g^p). Independent
// of PcGroup::mul_* both in representation and in strategy.
inline std::vector<int> rewrite_letters(const pgroups::PcGroup &G,
                                        std::vector<int> w) {
  const int p = G.prime();
  auto expand = [&](const pgroups::NormalWord &nw) {
    std::vector<int> out;
    for (int g = 0; g < G.ngens(); ++g)
      for (int k = 0; k < nw[g]; ++k)
        out.push_back(g);
    return out;
  };
  long steps = 0;
  for (;;) {
    if (++steps > 50'000'000)
      throw std::runtime_error("oracle rewriting did not terminate");
    bool changed = false;
    // leftmost descent
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] > w[i + 1]) {
        int a = w[i], b = w[i + 1];
        std::vector<int> repl{b, a};
        auto tail = expand(G.comm(a, b)); // a b -> b a [a,b]
        repl.insert(repl.end(), tail.begin(), tail.end());
        w.erase(w.begin() + i, w.begin() + i + 2);
        w.insert(w.begin() + i, repl.begin(), repl.end());
        changed = true;
        break;
      }
    }
    if (changed)
      continue;
    // leftmost run of length p
    for (size_t i = 0; i + p <= w.size(); ++i) {
      bool run = true;
      for (int k = 1; k < p; ++k)
        if (w[i + k] != w[i])
          run = false;
      if (run) {
        auto repl = expand(G.power(w[i]));
        w.erase(w.begin() + i, w.begin() + i + p);
        w.insert(w.begin() + i, repl.begin(), repl.end());
        changed = true;
        break;
      }
    }
    if (!changed)
      return w;
  }
}

inline pgroups::NormalWord normal_form(const pgroups::PcGroup &G,
                                       const std::vector<int> &letters) {
  std::vector<int> w = rewrite_letters(G, letters);
  pgroups::NormalWord out(G.ngens(), 0);
  for (int g : w)
    ++out[g];
  return out;
}

inline std::vector<int> letters_of(const pgroups::PcGroup &G,
                                   const pgroups::NormalWord &nw) {
  std::vector<int> out;
  for (int g = 0; g < G.ngens(); ++g)
    for (int k = 0; k < nw[g]; ++k)
      out.push_back(g);
  return out;
}

// Oracle product of two normal words.
inline pgroups::NormalWord multiply(const pgroups::PcGroup &G,
                                    const pgroups::NormalWord &a,
                                    const pgroups::NormalWord &b) {
  std::vector<int> w = letters_of(G, a);
  auto wb = letters_of(G, b);
  w.insert(w.end(), wb.begin(), wb.end());
  return normal_form(G, w);
}

// All group elements in lexicographic exponent order.
inline std::vector<pgroups::NormalWord> all_elements(const pgroups::PcGroup &G) {
  std::vector<pgroups::NormalWord> out;
  pgroups::NormalWord cur(G.ngens(), 0);
  for (;;) {
    out.push_back(cur);
    int i = G.ngens() - 1;
    while (i >= 0) {
      if (++cur[i] < G.prime())
        break;
      cur[i] = 0;
      --i;
    }
    if (i < 0)
      return out;
  }
}

} // namespace oracle
