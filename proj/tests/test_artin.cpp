#include "doctest.h"

#include "pgroups/artin.hpp"
#include "pgroups/presentation.hpp"
#include "oracle.hpp"

#include <random>
#include <set>

using namespace pgroups;

namespace {
PcGroup extra125() { return parse_presentation("p 5 n 3\ncomm 2 1 : g3\n"); }
}

TEST_CASE("maximal subgroups: counts and orders") {
  PcGroup R7 = elementary_bicyclic(7);
  auto m7 = maximal_subgroups(R7);
  CHECK(m7.size() == 8);
  for (const auto &H : m7)
    CHECK(H.log_size() == 1);

  PcGroup E = extra125();
  auto m5 = maximal_subgroups(E);
  CHECK(m5.size() == 6);
  for (const auto &H : m5) {
    CHECK(H.log_size() == 2);
    CHECK(H.contains(E.generator(2))); // contains the center
  }
}

TEST_CASE("maximal subgroups of extraspecial 5^3 against brute force") {
  // Brute-force: collect all order-25 subgroups via pairwise closures.
  PcGroup E = extra125();
  auto elems = oracle::all_elements(E);
  std::set<std::vector<NormalWord>> found;
  for (const auto &a : elems)
    for (const auto &b : elems) {
      std::set<NormalWord> sub{E.identity()};
      // close <a, b>
      for (;;) {
        std::set<NormalWord> next = sub;
        for (const auto &x : sub) {
          next.insert(E.multiply(x, a));
          next.insert(E.multiply(x, b));
        }
        if (next.size() == sub.size())
          break;
        sub.swap(next);
        if (sub.size() > 25)
          break;
      }
      if (sub.size() == 25)
        found.insert(std::vector<NormalWord>(sub.begin(), sub.end()));
    }
  CHECK(found.size() == 6);
  // Our canonical list hits exactly these subgroups.
  auto maxs = maximal_subgroups(E);
  std::set<std::vector<NormalWord>> ours;
  for (const auto &H : maxs) {
    std::set<NormalWord> sub;
    for (const auto &x : elems)
      if (H.contains(x))
        sub.insert(x);
    CHECK(sub.size() == 25);
    ours.insert(std::vector<NormalWord>(sub.begin(), sub.end()));
  }
  CHECK(ours == found);
}

TEST_CASE("transfer on abelian root kills everything") {
  PcGroup R = elementary_bicyclic(7);
  auto ap = artin_pattern(R);
  for (int k : ap.kappa)
    CHECK(k == 0);
  for (const auto &t : ap.tau)
    CHECK(t == Partition{{1}});

  PcGroup R5 = elementary_bicyclic(5);
  auto tk = transfer_kernel_type(R5);
  CHECK(tk == std::vector<int>{0, 0, 0, 0, 0, 0});
}

TEST_CASE("transfer is a homomorphism (seeded random pairs)") {
  for (const char *txt :
       {"p 5 n 3\ncomm 2 1 : g3\n",
        "p 5 n 4\npow 1 : g3\npow 2 : g4\ncomm 2 1 : g4^3\n"}) {
    PcGroup G = parse_presentation(txt);
    auto maxs = maximal_subgroups(G);
    auto elems = oracle::all_elements(G);
    std::mt19937_64 rng(505);
    for (const auto &H : maxs) {
      Span Hder = commutator_subgroup(G, H, H);
      for (int t = 0; t < 500 / static_cast<int>(maxs.size()) + 20; ++t) {
        const auto &a = elems[rng() % elems.size()];
        const auto &b = elems[rng() % elems.size()];
        NormalWord lhs = transfer(G, H, G.multiply(a, b));
        NormalWord rhs = G.multiply(transfer(G, H, a), transfer(G, H, b));
        // equal modulo [H,H]
        CHECK(Hder.contains(G.multiply(G.inverse(lhs), rhs)));
      }
    }
  }
}

TEST_CASE("kernel x image size equals p^2") {
  PcGroup G = parse_presentation("p 5 n 4\npow 1 : g3\npow 2 : g4\ncomm 2 1 : g4^3\n");
  auto maxs = maximal_subgroups(G);
  auto elems = oracle::all_elements(G);
  for (const auto &H : maxs) {
    Span Hder = commutator_subgroup(G, H, H);
    std::set<NormalWord> image;
    int kernel = 0;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        NormalWord x = G.identity();
        if (a)
          G.mul_gen(x, 0, a);
        if (b)
          G.mul_gen(x, 1, b);
        NormalWord t = transfer(G, H, x);
        if (Hder.contains(t))
          ++kernel;
        image.insert(Hder.sift(t));
      }
    CHECK(kernel * image.size() == 25);
  }
}

TEST_CASE("normalize: idempotent and relabeling invariant (all 720 perms)") {
  PcGroup E = extra125();
  ArtinPattern ap = artin_pattern(E);
  ArtinPattern n1 = normalize(ap);
  CHECK(normalize(n1) == n1);
  std::vector<int> perm{0, 1, 2, 3, 4, 5};
  do {
    CHECK(normalize(relabel(ap, perm)) == n1);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("pattern target matching") {
  // extraspecial p^3 exponent p: total kernels everywhere
  PcGroup E = extra125();
  ArtinPattern ap = artin_pattern(E);
  CHECK(ap.kappa == std::vector<int>{0, 0, 0, 0, 0, 0});
  PatternTarget t;
  t.kappa = {1, 2, 2, 2, 2, 2};
  t.tau = {Partition::parse("21^3"), Partition::parse("1^3"),
           Partition::parse("21"), Partition::parse("21"),
           Partition::parse("21"), Partition::parse("21")};
  // not an exact match, and the filter also rejects: stabilized tau of the
  // extraspecial group is 1^2, not 1^3/21
  CHECK_FALSE(matches_exact(ap, t));
  CHECK_FALSE(matches_filter(ap, t));
  // a target equal to its own pattern matches exactly
  PatternTarget self;
  self.kappa = ap.kappa;
  self.tau = ap.tau;
  CHECK(matches_exact(ap, self));
  CHECK(matches_filter(ap, self));
}

TEST_CASE("partition monotone order") {
  CHECK(partition_leq(Partition::parse("1^5"), Partition::parse("1^5")));
  CHECK(partition_leq(Partition::parse("1^4"), Partition::parse("1^5")));
  CHECK(partition_leq(Partition::parse("21^3"), Partition::parse("21^3")));
  CHECK_FALSE(partition_leq(Partition::parse("2^21^2"), Partition::parse("21^3")));
  CHECK_FALSE(partition_leq(Partition::parse("1^6"), Partition::parse("1^5")));
  CHECK(partition_leq(Partition::parse("1^3"), Partition::parse("21^3")));
}
