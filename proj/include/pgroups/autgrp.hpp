#pragma once

#include "pgroups/cover.hpp"

#include <unordered_map>
#include <vector>

namespace pgroups {

// Square matrix over F_p, row-major; row i = image coordinates of basis
// vector i, so right action v -> v*A composes left to right.
struct FpMat {
  int dim = 0;
  int p = 0;
  std::vector<std::uint8_t> v;

  static FpMat identity(int dim, int p);
  std::uint8_t &at(int r, int c) { return v[r * dim + c]; }
  std::uint8_t at(int r, int c) const { return v[r * dim + c]; }
  FpMat mul(const FpMat &o) const;
  FpMat inv() const;
  bool operator==(const FpMat &o) const = default;
  std::string key() const { return std::string(v.begin(), v.end()); }
};

// An automorphism as images of all generators.
struct Automorphism {
  std::vector<NormalWord> images;
  bool operator==(const Automorphism &o) const = default;
};

Automorphism identity_automorphism(const PcGroup &G);
NormalWord apply_aut(const PcGroup &G, const Automorphism &a,
                     const NormalWord &w);
// a then b.
Automorphism compose(const PcGroup &G, const Automorphism &a,
                     const Automorphism &b);
Automorphism invert(const PcGroup &G, const Automorphism &a);
bool is_automorphism(const PcGroup &G, const Automorphism &a);
// Induced matrix on G/Phi(G) (rank-2 groups: 2x2).
FpMat frattini_matrix(const PcGroup &G, const Automorphism &a);

// Closure enumeration of a matrix group with generator words (BFS order).
struct MatGroup {
  std::vector<FpMat> elems; // elems[0] = identity
  std::vector<int> parent;  // BFS tree: elems[k] = elems[parent[k]] * gen[via[k]]
  std::vector<int> via;
  std::unordered_map<std::string, int> index;

  int find(const FpMat &m) const;
  bool contains(const FpMat &m) const { return find(m) >= 0; }
  size_t size() const { return elems.size(); }
  // product of generator indices reaching element k
  std::vector<int> word(int k) const;
};
MatGroup enumerate_matrix_group(const std::vector<FpMat> &gens,
                                size_t limit = 1u << 22);

// Automorphism group of a 2-generated p-group, split as the p-part
// (automorphisms trivial on G/Phi(G), held as an echelonized polycyclic
// sequence along the filtration alpha(g)g^-1 in P_d) and the image in
// GL(2,p) (fully enumerated with pullback words into top_gens).
class AutGroup {
public:
  struct PcgsEntry {
    Automorphism aut;
    Automorphism inv;
    int depth = 0;                 // alpha(g)g^-1 in P_depth for all g
    std::vector<std::uint8_t> lead; // coords in Hom(V, P_d/P_{d+1})
  };

  AutGroup() = default;
  AutGroup(const PcGroup &G, std::vector<Automorphism> top_gens,
           std::vector<Automorphism> p_gens);

  const PcGroup &group() const { return *G_; }
  const std::vector<Automorphism> &top_gens() const { return top_gens_; }
  const MatGroup &top() const { return top_; }
  const std::vector<PcgsEntry> &pcgs() const { return pcgs_; }

  // Pullback of a GL(2,p)-image element (composes top generators).
  Automorphism pull_top(int elem_index) const;
  // |Aut(G)| = |L| * p^pcgs.
  long double order_estimate() const;
  bool top_contains(const FpMat &m) const { return top_.contains(m); }

  // Depth and leading vector of a p-part automorphism; depth == pclass means
  // the identity.
  std::pair<int, std::vector<std::uint8_t>> depth_lead(const Automorphism &a) const;

private:
  void sift_in(Automorphism a);
  // first generator index of each weight layer and layer sizes
  void build_layers();

  const PcGroup *G_ = nullptr;
  std::vector<Automorphism> top_gens_;
  MatGroup top_;
  std::vector<PcgsEntry> pcgs_; // sorted by (depth, lead pivot)
  std::vector<int> layer_first_, layer_size_;

  friend class DescendantEngine;
};

// Aut(C_p x C_p) = GL(2,p), generated by a diagonal torus element and the
// standard second generator.
AutGroup root_autgroup(const PcGroup &root);

// Canonical lift of the generator images into the cover: weight-1 images are
// embedded, defined generators are derived through their defining relations.
std::vector<NormalWord> cover_lift_images(const CoverData &cd,
                                          const Automorphism &a);

// Action matrix of an automorphism on the multiplicator of the cover.
FpMat multiplicator_action(const CoverData &cd, const Automorphism &a);

} // namespace pgroups
