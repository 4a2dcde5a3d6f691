#include "doctest.h"

#include "pgroups/cover.hpp"
#include "pgroups/presentation.hpp"

using namespace pgroups;

TEST_CASE("cover of the elementary bicyclic root") {
  // Tail-counting oracle for elementary abelian of rank d: every one of the
  // d(d+1)/2 relations is non-defining and no consistency equation binds, so
  // mu = d(d+1)/2 and the whole multiplicator is nuclear.
  for (int p : {3, 5, 7}) {
    CoverData cd = p_cover(elementary_bicyclic(p));
    CHECK(cd.mu == 3);
    CHECK(cd.nu == 3);
    CHECK(cd.cover.ngens() == 5);
    CHECK(cd.cover.is_consistent());
    CHECK(exponent_p_class(cd.cover) == 2);
  }
}

TEST_CASE("cover of the cyclic group") {
  // C_p^2 = <g1 | g1^p = g2>: one tail on g2^p, one on [g2,g1]; the overlap
  // g1 * g1^p = g1^p * g1 kills the commutator tail, so the cover is C_p^3.
  PcGroup G = parse_presentation("p 5 n 2\npow 1 : g2\n");
  CoverData cd = p_cover(G);
  CHECK(cd.mu == 1);
  CHECK(cd.cover.ngens() == 3);
  CHECK(cd.cover.is_consistent());
  CHECK(nilpotency_class(cd.cover) == 1); // abelian C_125
  CHECK(cd.nu == 1);
}

TEST_CASE("cover of extraspecial p^3") {
  PcGroup G = parse_presentation("p 5 n 3\ncomm 2 1 : g3\n");
  CoverData cd = p_cover(G);
  CHECK(cd.cover.is_consistent());
  CHECK(cd.mu >= 2);
  CHECK(cd.nu >= 2); // metabelian bifurcation point in the trees used here
  CHECK(exponent_p_class(cd.cover) == 3);
  // cover/multiplicator is G again (syntactic check: first n generators,
  // relations reduced mod M, match G's relations)
  const PcGroup &C = cd.cover;
  for (int i = 0; i < G.ngens(); ++i) {
    NormalWord w = C.power(i);
    for (int g = 0; g < G.ngens(); ++g)
      CHECK(w[g] == G.power(i)[g]);
  }
  for (int j = 1; j < G.ngens(); ++j)
    for (int i = 0; i < j; ++i) {
      NormalWord w = C.comm(j, i);
      for (int g = 0; g < G.ngens(); ++g)
        CHECK(w[g] == G.comm(j, i)[g]);
    }
}

TEST_CASE("generator rank bounded by relation rank") {
  for (const char *txt :
       {"p 5 n 1\n", "p 5 n 2\npow 1 : g2\n", "p 5 n 3\ncomm 2 1 : g3\n",
        "p 7 n 4\ncomm 2 1 : g3\ncomm 3 1 : g4\n"}) {
    PcGroup G = parse_presentation(txt);
    CHECK(generator_rank(G) <= relation_rank(G));
  }
}

TEST_CASE("rref helper") {
  std::vector<std::vector<std::uint8_t>> rows{
      {2, 4, 1}, {1, 2, 0}, {3, 1, 1}};
  auto piv = rref_mod_p(rows, 5);
  CHECK(piv == std::vector<int>{0, 2});
  CHECK(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::uint8_t>{1, 2, 0});
  CHECK(rows[1] == std::vector<std::uint8_t>{0, 0, 1});
  CHECK(rank_mod_p({{1, 0}, {0, 1}, {1, 1}}, 5) == 2);
}
