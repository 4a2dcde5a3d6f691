#pragma once

#include "pgroups/subgrp.hpp"

#include <string>
#include <vector>

namespace pgroups {

// Logarithmic abelian type invariants: weakly decreasing positive parts,
// printed exponent-compressed ("1^3", "21^3", "2^21^2", "32^5").
struct Partition {
  std::vector<int> parts;

  int sum() const;
  bool operator==(const Partition &o) const = default;
  // Total order used for canonical pattern forms: larger sum first, then
  // lexicographically smaller parts vector first ((1,1,1) before (2,1)).
  bool operator<(const Partition &o) const;
  std::string str() const;
  static Partition parse(const std::string &s);
};

enum class SeriesKind { Derived, LowerCentral, LowerExponentP };

struct SeriesData {
  SeriesKind kind;
  std::vector<Span> terms; // strictly descending, first = G, last = trivial
  int length() const { return static_cast<int>(terms.size()) - 1; }
};

SeriesData derived_series(const PcGroup &G);
int derived_length(const PcGroup &G);

SeriesData lower_central_series(const PcGroup &G);
int nilpotency_class(const PcGroup &G);
int coclass(const PcGroup &G);

SeriesData lower_exponent_p_series(const PcGroup &G);
int exponent_p_class(const PcGroup &G);

// Weights recomputed from the lower exponent-p central series of G itself
// (generator g lies in P_{w-1} minus P_w). Throws if they violate the
// non-decreasing invariant.
std::vector<int> filtration_weights(const PcGroup &G);

// Invariants of H/[H,H] as partition (e_1 >= e_2 >= ...), H given by rows.
Partition abelian_invariants(const PcGroup &G, const Span &H);
Partition abelian_invariants(const PcGroup &G);

// Rank of G/Phi(G).
int generator_rank(const PcGroup &G);

// p-local Smith normal form exponents of an integer matrix: the multiset of
// p-valuations of the elementary divisors (including +inf encoded as -1 for
// free summands, which do not occur for finite p-groups).
std::vector<int> p_smith_exponents(std::vector<std::vector<long>> mat, int p);

} // namespace pgroups
