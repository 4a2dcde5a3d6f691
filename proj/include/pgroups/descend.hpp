#pragma once

#include "pgroups/autgrp.hpp"

#include <map>
#include <memory>
#include <string>

namespace pgroups {

// Reduced row-echelon basis of a subspace of the multiplicator.
using SubspaceRows = std::vector<std::vector<std::uint8_t>>;

std::string subspace_key(const SubspaceRows &rows, int mu);
SubspaceRows subspace_act(const SubspaceRows &rows, const FpMat &m);
// All dim-dimensional subspaces of F_p^mu as RREF bases, in a fixed order.
std::vector<SubspaceRows> enumerate_subspaces(int mu, int dim, int p);
// U + N = M for the nucleus rows N.
bool is_allowable(const SubspaceRows &U, const SubspaceRows &nucleus, int mu,
                  int p);

// A vertex of the descendant tree: group, cover, automorphisms. The group is
// held behind a stable pointer because AutGroup and CoverData refer to it.
struct Node {
  std::shared_ptr<const PcGroup> group;
  CoverData cover;
  AutGroup auts;

  static Node root(int p);
  const PcGroup &G() const { return *group; }
};

// Multiplicator action matrices for one node expansion: generators and the
// full GL(2,p)-image element list.
struct ActionMats {
  std::vector<FpMat> top;     // per top generator
  std::vector<FpMat> pcgs;    // per pcgs entry
  std::vector<FpMat> top_all; // per element of auts.top(), BFS order
};
ActionMats action_matrices(const Node &node);

struct StepOrbits {
  int step = 0;
  long allowable_count = 0;
  std::vector<SubspaceRows> reps; // discovery order
  std::vector<long> sizes;
};
StepOrbits orbits_of_step(const Node &node, const ActionMats &mats, int step);

// Quotient of the cover by an allowable subgroup, as a consistent weighted
// presentation with definitions for the new top-layer generators.
PcGroup descendant_quotient(const CoverData &cd, const SubspaceRows &U);

// A_1-orbit of U with transversal words plus the stabilizer machinery.
struct StabilizerData {
  std::vector<Automorphism> p_stab;  // generators of Stab_{A_1}(U)
  std::vector<int> x_elems;          // L-indices of the stabilizer image X
  std::map<std::string, std::vector<int>> orbit1; // key -> pcgs word
  bool contains_minus_identity = false;
};
// full=false computes only the A_1-orbit and the inversion membership (the
// cheap sigma test); full=true adds the stabilizer generators and the
// GL(2,p)-image element list needed to build the descendant's automorphisms.
StabilizerData stabilizer(const Node &node, const ActionMats &mats,
                          const SubspaceRows &U, bool full = true);

// Automorphism group of the descendant: lifts of the stabilizer generators
// extended by the central automorphisms on the new layer.
AutGroup descend_autgroup(const Node &parent, const ActionMats &mats,
                          const SubspaceRows &U, const StabilizerData &sd,
                          const PcGroup &child);

// Full child node (group + cover + automorphisms).
Node make_child(const Node &parent, const ActionMats &mats,
                const SubspaceRows &U, const StabilizerData &sd);

struct DescendantSet {
  int step = 0;
  long allowable_count = 0;
  std::vector<PcGroup> reps;
  std::vector<bool> capable;
  int N() const { return static_cast<int>(reps.size()); }
  int C() const {
    int c = 0;
    for (bool b : capable)
      c += b;
    return c;
  }
};
DescendantSet immediate_descendants(const Node &node, int step,
                                    int threads = 1);
// N_s/C_s for every 1 <= s <= nu.
std::map<int, std::pair<int, int>> descendant_counts(const Node &node,
                                                     int threads = 1);

// Run fn(i) for i in [0, count), deterministically collecting side effects
// through the callee's own indexed storage.
void parallel_for(int count, int threads, const std::function<void(int)> &fn);

} // namespace pgroups
