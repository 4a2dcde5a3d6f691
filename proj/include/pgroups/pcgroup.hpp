#pragma once

#include "pgroups/word.hpp"

#include <cassert>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgroups {

// Hard cap on generator count (covers of the deepest groups here stay well
// below it); lets the collector use fixed scratch.
inline constexpr int kMaxGens = 256;

// How a generator of weight >= 2 arises from earlier ones. Generators of
// weight 1 carry kind None.
struct Definition {
  enum Kind { None, Power, Comm } kind = None;
  Gen i = -1; // Power: g_i^p; Comm: [g_j, g_i] with j > i
  Gen j = -1;
  bool operator==(const Definition &) const = default;
};

// A consistent weighted power-commutator presentation of a finite p-group.
//
// Relations: g_i^p = power(i) and [g_j, g_i] = comm(j, i) for j > i, with
// right-hand sides normal words in generators of strictly higher index whose
// weights are at least the relation weight (w_i + 1 resp. w_i + w_j).
// Immutable after construction; all operations are pure.
class PcGroup {
public:
  // Empty placeholder; every operation requires a properly constructed group.
  PcGroup() = default;

  PcGroup(int prime, int ngens, std::vector<int> weights,
          std::vector<NormalWord> powers, std::vector<NormalWord> comms,
          std::vector<Definition> defs);

  // Presentation with unknown weights: collection runs without the weight
  // shortcut. Index constraints still apply. Used while inferring weights.
  static PcGroup flat(int prime, int ngens, std::vector<NormalWord> powers,
                      std::vector<NormalWord> comms,
                      std::vector<Definition> defs);

  int prime() const { return p_; }
  int ngens() const { return n_; }
  int weight(Gen g) const { return weight_[g]; }
  const std::vector<int> &weights() const { return weight_; }
  // p-class bound of the presentation (= max weight).
  int pclass_bound() const { return pclass_; }
  int log_order() const { return n_; }

  const NormalWord &power(Gen i) const { return power_[i]; }
  // [g_j, g_i] for j > i.
  const NormalWord &comm(Gen j, Gen i) const { return comm_[tri(j, i)]; }
  const Definition &definition(Gen g) const { return def_[g]; }

  NormalWord identity() const { return NormalWord(n_, 0); }
  NormalWord generator(Gen g) const;

  // lhs *= g^e with e in [1, p). Collection from the left.
  void mul_gen(NormalWord &lhs, Gen g, int e) const;
  // lhs *= w, letters applied left to right (exponents may be any integer).
  void mul_word(NormalWord &lhs, const Word &w) const;
  void mul(NormalWord &lhs, const NormalWord &rhs) const;

  NormalWord multiply(const NormalWord &a, const NormalWord &b) const;
  NormalWord collect(const Word &w) const;
  NormalWord inverse(const NormalWord &a) const;
  NormalWord power_of(const NormalWord &a, long k) const; // square & multiply
  // a^-1 b^-1 a b
  NormalWord commutator(const NormalWord &a, const NormalWord &b) const;
  // b^-1 a b
  NormalWord conjugate(const NormalWord &a, const NormalWord &b) const;

  // Order of an element (a p-power).
  long element_order(const NormalWord &a) const;

  // All consistency overlaps g_k(g_j g_i) = (g_k g_j)g_i plus the power
  // overlaps, run unrestricted. True iff every pair collects equally.
  bool is_consistent() const;

  // The failing overlaps as collected left/right pairs (for cover building
  // the difference is supported on tail generators).
  struct Overlap {
    NormalWord lhs, rhs;
  };
  void consistency_overlaps(const std::function<void(const Overlap &)> &sink) const;

  bool operator==(const PcGroup &o) const = default;

private:
  static size_t tri_static(Gen j, Gen i) {
    return static_cast<size_t>(j) * (j - 1) / 2 + i;
  }
  size_t tri(Gen j, Gen i) const {
    assert(j > i && j < n_ && i >= 0);
    return tri_static(j, i);
  }
  void mul_gen1(NormalWord &lhs, Gen g) const;
  void validate(bool check_weights) const;
  void build_caches();

  int p_ = 0;
  int n_ = 0;
  int pclass_ = 0;
  std::vector<int> weight_;
  std::vector<NormalWord> power_;
  std::vector<NormalWord> comm_; // triangular, index j*(j-1)/2 + i
  std::vector<Definition> def_;
  // Letter-form caches of the relation right-hand sides.
  std::vector<Word> powerw_;
  std::vector<Word> commw_;
  // Collector masks: for fixed g, which higher k interact at all within the
  // class bound (pull_), which of those have nontrivial commutators (hard_),
  // and the largest interacting index (scan_hi_, -1 if none).
  std::vector<std::vector<std::uint8_t>> pull_mask_;
  std::vector<std::vector<std::uint8_t>> hard_mask_;
  std::vector<int> scan_hi_;
};

// Elementary abelian C_p x C_p, the root of every tree here.
PcGroup elementary_bicyclic(int p);

// Extraspecial group of order p^3 and exponent p ([g2,g1] = g3).
PcGroup extraspecial_exponent_p(int p);

} // namespace pgroups
