#pragma once

#include "pgroups/structure.hpp"

#include <string>
#include <vector>

namespace pgroups {

// Transfer kernel entry conventions: 0 = total kernel (all of G/G'),
// 1..p+1 = the line of the corresponding maximal subgroup, kTrivialKernel
// for a trivial kernel (kept outside the 0..p+1 alphabet).
inline constexpr int kTrivialKernel = -1;

struct ArtinPattern {
  std::vector<int> kappa;      // p+1 entries
  std::vector<Partition> tau;  // p+1 entries
  bool normalized = false;

  bool operator==(const ArtinPattern &o) const = default;
  std::string kappa_str() const; // e.g. "12222222", 't' for trivial kernels
  std::string tau_str() const;   // e.g. "1^5,1^3,21,21,21,21,21,21"
};

// The p+1 maximal subgroups in canonical order: H_i is the preimage of the
// line spanned by (1, i-1) in G/Phi(G) coordinates for i = 1..p, and H_{p+1}
// the preimage of span(0,1). Requires generator rank 2.
std::vector<Span> maximal_subgroups(const PcGroup &G);

// Artin transfer T_{G,H}: image of g in H (well-defined modulo [H,H]).
NormalWord transfer(const PcGroup &G, const Span &H, const NormalWord &g);

// Transfer data for one maximal subgroup.
struct TransferSlot {
  int kappa = 0;      // kernel code as above
  Partition tau;      // abelian invariants of H/[H,H]
};
TransferSlot transfer_slot(const PcGroup &G, const Span &H);
// variant with a precomputed [H,H]
TransferSlot transfer_slot_shared(const PcGroup &G, const Span &H,
                                  const Span &Hder);

std::vector<int> transfer_kernel_type(const PcGroup &G);
ArtinPattern artin_pattern(const PcGroup &G);

// Lexicographically minimal representative over simultaneous relabelings of
// the p+1 maximal subgroups (the permutation acts on positions of kappa and
// tau and on kappa values, fixing 0 and the trivial-kernel sentinel).
// Components are ordered by (tau, kappa); larger tau sums come first, so the
// polarized component lands in position 1 for every workload here.
ArtinPattern normalize(const ArtinPattern &ap);

// Apply a relabeling permutation (perm[i] = new label of old subgroup i+1,
// 0-based positions): for property tests.
ArtinPattern relabel(const ArtinPattern &ap, const std::vector<int> &perm);

// Target matching. Positions 2..p+1 ("stabilization") must match exactly;
// position 1 ("polarization") admits kappa 0 (a total kernel can still
// shrink onto the target line) and bounds tau componentwise (the monotony
// rule: a polarization that already exceeds the target never shrinks back).
struct PatternTarget {
  std::vector<int> kappa;
  std::vector<Partition> tau;
};
bool matches_exact(const ArtinPattern &ap, const PatternTarget &target);
bool matches_filter(const ArtinPattern &ap, const PatternTarget &target);

// tau_a <= tau_b componentwise after zero padding.
bool partition_leq(const Partition &a, const Partition &b);

} // namespace pgroups
