#include "doctest.h"

#include "pgroups/presentation.hpp"
#include "pgroups/structure.hpp"
#include "oracle.hpp"

#include <set>

using namespace pgroups;

namespace {

PcGroup extra125() { return parse_presentation("p 5 n 3\ncomm 2 1 : g3\n"); }
PcGroup maxclass2401() {
  return parse_presentation("p 7 n 4\ncomm 2 1 : g3\ncomm 3 1 : g4\n");
}

// Brute-force derived length via full element enumeration: repeatedly form
// the set of all commutators and close it under multiplication.
int oracle_derived_length(const PcGroup &G) {
  auto elems = oracle::all_elements(G);
  std::set<NormalWord> cur(elems.begin(), elems.end());
  int dl = 0;
  while (cur.size() > 1) {
    std::set<NormalWord> comms;
    for (const auto &a : cur)
      for (const auto &b : cur)
        comms.insert(G.commutator(a, b));
    // close under products
    for (;;) {
      std::set<NormalWord> next = comms;
      for (const auto &a : comms)
        for (const auto &b : comms)
          next.insert(G.multiply(a, b));
      if (next.size() == comms.size())
        break;
      comms.swap(next);
    }
    cur.swap(comms);
    ++dl;
    REQUIRE(dl < 10);
  }
  return dl;
}

} // namespace

TEST_CASE("derived series basics") {
  CHECK(derived_length(elementary_bicyclic(7)) == 1);
  PcGroup E = extra125();
  CHECK(derived_length(E) == 2);
  CHECK(oracle_derived_length(E) == 2);
  PcGroup M = maxclass2401();
  CHECK(derived_length(M) == 2);
  SeriesData s = derived_series(M);
  CHECK(s.terms.front().log_size() == 4);
  CHECK(s.terms.back().is_trivial());
}

TEST_CASE("lower central series, class and coclass") {
  CHECK(nilpotency_class(elementary_bicyclic(5)) == 1);
  CHECK(coclass(elementary_bicyclic(5)) == 1);
  CHECK(nilpotency_class(extra125()) == 2);
  CHECK(coclass(extra125()) == 1);
  CHECK(nilpotency_class(maxclass2401()) == 3);
  CHECK(coclass(maxclass2401()) == 1);
}

TEST_CASE("lower exponent-p series") {
  CHECK(exponent_p_class(elementary_bicyclic(7)) == 1);
  CHECK(exponent_p_class(extra125()) == 2);
  // independent oracle: strip one layer at a time by quotienting out the
  // deepest nontrivial series term
  PcGroup M = maxclass2401();
  int direct = exponent_p_class(M);
  int steps = 0;
  PcGroup cur = M;
  for (;;) {
    ++steps;
    SeriesData s = lower_exponent_p_series(cur);
    REQUIRE(steps <= 10);
    if (s.terms.size() == 2) // only G > 1 left
      break;
    cur = Quotient(cur, s.terms[s.terms.size() - 2]).group();
  }
  CHECK(direct == steps);
  CHECK(direct == 3);
}

TEST_CASE("filtration weights match declared weights") {
  for (const char *txt :
       {"p 5 n 3\ncomm 2 1 : g3\n", "p 7 n 4\ncomm 2 1 : g3\ncomm 3 1 : g4\n",
        "p 5 n 4\npow 1 : g3\npow 2 : g4\ncomm 2 1 : g4^3\n"}) {
    PcGroup G = parse_presentation(txt);
    CHECK(filtration_weights(G) == G.weights());
  }
}

TEST_CASE("abelian invariants") {
  CHECK(abelian_invariants(elementary_bicyclic(7)) == Partition{{1, 1}});
  CHECK(abelian_invariants(extra125()) == Partition{{1, 1}});
  // abelian subgroup <g1, g3> of the extraspecial group is C5 x C5
  PcGroup E = extra125();
  Span H = span_of(E, {E.generator(0), E.generator(2)});
  CHECK(H.log_size() == 2);
  CHECK(abelian_invariants(E, H) == Partition{{1, 1}});
  // order 7^4 with g1 of order 49: abelianization C_49 x C_7
  PcGroup G = parse_presentation("p 7 n 4\npow 1 : g4\ncomm 2 1 : g3\n");
  CHECK(abelian_invariants(G) == Partition{{2, 1}});
}

TEST_CASE("partition parse, print and order") {
  CHECK(Partition::parse("21^3") == Partition{{2, 1, 1, 1}});
  CHECK(Partition::parse("1^5").str() == "1^5");
  CHECK(Partition::parse("3^22^4") == Partition{{3, 3, 2, 2, 2, 2}});
  CHECK(Partition{{2, 1}}.str() == "21");
  CHECK(Partition{{2, 2, 1, 1}}.str() == "2^21^2");
  // larger sum first
  CHECK(Partition::parse("1^5") < Partition::parse("21"));
  // same sum: lexicographically smaller parts first
  CHECK(Partition::parse("1^3") < Partition::parse("21"));
  CHECK(Partition::parse("2^21^2") < Partition::parse("21^3"));
}

TEST_CASE("generator rank") {
  CHECK(generator_rank(elementary_bicyclic(5)) == 2);
  CHECK(generator_rank(extra125()) == 2);
  CHECK(generator_rank(parse_presentation("p 5 n 1\n")) == 1);
}

TEST_CASE("quotient presentation") {
  PcGroup M = maxclass2401();
  SeriesData lcs = lower_central_series(M);
  // M / gamma_3 is extraspecial-like of order 7^3
  Quotient q(M, lcs.terms[2]);
  CHECK(q.group().ngens() == 3);
  CHECK(q.group().is_consistent());
  CHECK(nilpotency_class(q.group()) == 2);
  CHECK(q.project(M.generator(3)) == q.group().identity());
  CHECK(q.project(M.generator(0)) == q.group().generator(0));
}
