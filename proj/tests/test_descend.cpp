#include "doctest.h"

#include "pgroups/descend.hpp"
#include "pgroups/artin.hpp"
#include "pgroups/presentation.hpp"

using namespace pgroups;

TEST_CASE("root automorphism group is GL(2,p)") {
  Node root = Node::root(7);
  CHECK(root.auts.top().size() == 2016); // (49-1)(49-7)
  CHECK(root.auts.pcgs().empty());
  for (const auto &a : root.auts.top_gens())
    CHECK(is_automorphism(root.G(), a));
  CHECK(is_automorphism(root.G(), identity_automorphism(root.G())));
}

TEST_CASE("subspace enumeration matches Gaussian binomials") {
  // [4 choose 2]_5 = 806, [3 choose 1]_7 = 57
  CHECK(enumerate_subspaces(4, 2, 5).size() == 806);
  CHECK(enumerate_subspaces(3, 1, 7).size() == 57);
  CHECK(enumerate_subspaces(3, 2, 7).size() == 57);
  CHECK(enumerate_subspaces(4, 4, 5).size() == 1);
}

TEST_CASE("descendants of the elementary bicyclic root") {
  // The three 2-generated groups of order p^3 with p-class 2.
  for (int p : {5, 7}) {
    Node root = Node::root(p);
    CHECK(root.cover.nu == 3);
    DescendantSet d1 = immediate_descendants(root, 1);
    CHECK(d1.N() == 3);
    for (const auto &H : d1.reps) {
      CHECK(H.ngens() == 3);
      CHECK(H.is_consistent());
      CHECK(exponent_p_class(H) == 2);
    }
    // step > nu gives nothing
    ActionMats mats = action_matrices(root);
    CHECK(orbits_of_step(root, mats, 4).reps.empty());
  }
}

TEST_CASE("orbit sizes sum to the allowable count at the root") {
  Node root = Node::root(5);
  ActionMats mats = action_matrices(root);
  for (int s = 1; s <= 3; ++s) {
    StepOrbits orb = orbits_of_step(root, mats, s);
    long total = 0;
    for (long x : orb.sizes)
      total += x;
    CHECK(total == orb.allowable_count);
  }
}

TEST_CASE("children carry valid automorphism groups") {
  Node root = Node::root(5);
  ActionMats mats = action_matrices(root);
  StepOrbits orb = orbits_of_step(root, mats, 1);
  REQUIRE(orb.reps.size() == 3);
  for (const auto &U : orb.reps) {
    StabilizerData sd = stabilizer(root, mats, U);
    Node child = make_child(root, mats, U, sd);
    for (const auto &a : child.auts.top_gens())
      CHECK(is_automorphism(child.G(), a));
    for (const auto &e : child.auts.pcgs())
      CHECK(is_automorphism(child.G(), e.aut));
    CHECK(generator_rank(child.G()) == 2);
  }
}

TEST_CASE("Heisenberg child of the root and its bifurcation") {
  // Identify the extraspecial exponent-p child among the three order-p^3
  // descendants, then check it has a step-2 bifurcation.
  for (int p : {5, 7}) {
    Node root = Node::root(p);
    ActionMats mats = action_matrices(root);
    StepOrbits orb = orbits_of_step(root, mats, 1);
    int heis = -1;
    for (size_t i = 0; i < orb.reps.size(); ++i) {
      PcGroup H = descendant_quotient(root.cover, orb.reps[i]);
      bool powers_trivial = is_identity(H.power(0)) && is_identity(H.power(1));
      if (powers_trivial && !is_identity(H.comm(1, 0))) {
        heis = static_cast<int>(i);
        break;
      }
    }
    REQUIRE(heis >= 0);
    StabilizerData sd = stabilizer(root, mats, orb.reps[heis]);
    // the full GL(2,p) stabilizes the Heisenberg subspace
    CHECK(sd.x_elems.size() == root.auts.top().size());
    Node H = make_child(root, mats, orb.reps[heis], sd);
    CHECK(H.G() == extraspecial_exponent_p(p));
    CHECK(H.cover.nu >= 2);
  }
}
