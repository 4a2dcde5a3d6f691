#pragma once

#include "pgroups/pcgroup.hpp"

#include <optional>
#include <vector>

namespace pgroups {

// A subgroup held as an induced generating sequence: one row per occupied
// leading generator, leading exponent normalized to 1, closed under powers
// and commutators of rows (so sifting decides membership). |H| = p^rows.
class Span {
public:
  explicit Span(const PcGroup &G)
      : G_(&G), row_(G.ngens()), inv_pow_(G.ngens()) {}

  const PcGroup &group() const { return *G_; }

  // Add a generator and restore closure.
  void add_generator(const NormalWord &w);
  // Close under conjugation by the ambient generators as well.
  void make_normal();

  // Residual of w after greedy left-division by the rows.
  NormalWord sift(const NormalWord &w) const;
  bool contains(const NormalWord &w) const { return is_identity(sift(w)); }

  int rows() const { return count_; }
  int log_size() const { return count_; }
  bool has_lead(Gen g) const { return row_[g].has_value(); }
  const NormalWord &row(Gen g) const { return *row_[g]; }
  // Rows in increasing leading-generator order.
  std::vector<NormalWord> basis() const;
  std::vector<Gen> leads() const;

  // Exponents (e_1, ..., e_r) with w = prod rows^{e_k} in basis order;
  // nullopt when w is not a member.
  std::optional<std::vector<int>> coordinates(const NormalWord &w) const;

  bool is_trivial() const { return count_ == 0; }
  bool same_span(const Span &o) const;

private:
  bool sift_insert(NormalWord w, std::vector<NormalWord> &queue);

  const PcGroup *G_;
  std::vector<std::optional<NormalWord>> row_;
  // inv_pow_[g][e-1] = (row^e)^-1, the left-division factors used by sift
  std::vector<std::vector<NormalWord>> inv_pow_;
  int count_ = 0;
  bool normal_ = false;
};

// Span generated by a set of words.
Span span_of(const PcGroup &G, const std::vector<NormalWord> &gens);
// Normal closure of a set of words.
Span normal_closure(const PcGroup &G, const std::vector<NormalWord> &gens);

// [A, B]: normal closure inside <A, B> of commutators of the rows. For the
// series computations both arguments are normal in G and so is the result;
// the closure is taken under conjugation by ambient generators.
Span commutator_subgroup(const PcGroup &G, const Span &A, const Span &B);

// Frattini subgroup [G,G] G^p.
Span frattini_subgroup(const PcGroup &G);

// Product subgroup <A, B>.
Span join(const Span &A, const Span &B);

// The quotient G/N for N normal: presentation on the generators outside N's
// lead set, with relations reduced modulo N. Every position of the ambient
// group carries a row (bare generator or N-row), so exponent extraction is a
// straight sift.
class Quotient {
public:
  Quotient(const PcGroup &G, const Span &N);

  const PcGroup &group() const { return *Q_; }
  const std::vector<Gen> &kept() const { return kept_; }
  // Image of an ambient element in quotient coordinates.
  NormalWord project(const NormalWord &w) const;

private:
  const PcGroup *G_;
  std::optional<PcGroup> Q_;
  std::vector<Gen> kept_;
  std::vector<int> slot_;          // ambient gen -> quotient index or -1
  std::vector<NormalWord> table_;  // per ambient position: N-row or bare gen
  std::vector<std::vector<NormalWord>> inv_pow_;
};

} // namespace pgroups
