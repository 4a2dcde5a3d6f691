#include "doctest.h"

#include "pgroups/pcgroup.hpp"
#include "pgroups/presentation.hpp"
#include "oracle.hpp"

#include <random>

using namespace pgroups;

namespace {

const char *kC7C7 = R"(p 7 n 2
)";

const char *kExtra125 = R"(p 5 n 3
comm 2 1 : g3
)";

// Coclass-1 group of order 7^4: g3 = [g2,g1], g4 = [g3,g1].
const char *kMaxClass2401 = R"(p 7 n 4
comm 2 1 : g3
comm 3 1 : g4
)";

} // namespace

TEST_CASE("parse elementary bicyclic root") {
  PcGroup G = parse_presentation(kC7C7);
  CHECK(G.prime() == 7);
  CHECK(G.ngens() == 2);
  CHECK(G.log_order() == 2);
  CHECK(is_identity(G.power(0)));
  CHECK(is_identity(G.comm(1, 0)));
  CHECK(G == elementary_bicyclic(7));
  // abelian: g2 * g1 collects to (1,1)
  NormalWord w = G.collect({{1, 1}, {0, 1}});
  CHECK(w == NormalWord{1, 1});
}

TEST_CASE("parse extraspecial 5^3 and check order and consistency") {
  PcGroup G = parse_presentation(kExtra125);
  CHECK(G.ngens() == 3);
  CHECK(G.weight(2) == 2);
  CHECK(G.definition(2).kind == Definition::Comm);
  CHECK(G.is_consistent());
  CHECK(G == extraspecial_exponent_p(5));
  // 125 distinct normal words == order 125
  CHECK(oracle::all_elements(G).size() == 125);
}

TEST_CASE("misordered commutator relation is rejected") {
  CHECK_THROWS_AS(parse_presentation("p 7 n 2\ncomm 2 1 : g1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_presentation("p 7 n 3\ncomm 3 2 : g2\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_presentation("p 5 n 2\npow 1 : g2^5\n"),
                  std::invalid_argument);
}

TEST_CASE("collect basics") {
  PcGroup G = parse_presentation(kExtra125);
  CHECK(is_identity(G.collect({})));
  // g2 g1 = g1 g2 [g2,g1]
  NormalWord w = G.collect({{1, 1}, {0, 1}});
  CHECK(w == NormalWord{1, 1, 1});
  // collect is idempotent on normal words
  for (const auto &x : oracle::all_elements(G))
    CHECK(G.collect(to_word(x)) == x);
}

TEST_CASE("full Cayley table of extraspecial 5^3 matches the rewriting oracle") {
  PcGroup G = parse_presentation(kExtra125);
  auto elems = oracle::all_elements(G);
  for (const auto &a : elems)
    for (const auto &b : elems) {
      CAPTURE(normal_to_string(a));
      CAPTURE(normal_to_string(b));
      REQUIRE(G.multiply(a, b) == oracle::multiply(G, a, b));
    }
}

TEST_CASE("collection matches oracle on an order-7^4 group") {
  PcGroup G = parse_presentation(kMaxClass2401);
  REQUIRE(G.is_consistent());
  auto elems = oracle::all_elements(G);
  REQUIRE(elems.size() == 2401);
  std::mt19937_64 rng(20201021);
  for (int t = 0; t < 4000; ++t) {
    const auto &a = elems[rng() % elems.size()];
    const auto &b = elems[rng() % elems.size()];
    REQUIRE(G.multiply(a, b) == oracle::multiply(G, a, b));
  }
}

TEST_CASE("group axioms") {
  PcGroup G = parse_presentation(kExtra125);
  auto elems = oracle::all_elements(G);
  std::mt19937_64 rng(12345);
  auto rnd = [&]() { return elems[rng() % elems.size()]; };
  for (int t = 0; t < 1000; ++t) {
    NormalWord a = rnd(), b = rnd(), c = rnd();
    // associativity
    CHECK(G.multiply(G.multiply(a, b), c) == G.multiply(a, G.multiply(b, c)));
  }
  for (int t = 0; t < 200; ++t) {
    NormalWord a = rnd();
    CHECK(is_identity(G.multiply(a, G.inverse(a))));
    CHECK(is_identity(G.multiply(G.inverse(a), a)));
    long ord = G.element_order(a);
    CHECK(125 % ord == 0);
    CHECK(is_identity(G.power_of(a, ord)));
  }
  // power(g_i, p) equals the power relation right-hand side
  PcGroup H = parse_presentation(kMaxClass2401);
  for (int i = 0; i < H.ngens(); ++i)
    CHECK(H.power_of(H.generator(i), H.prime()) == H.power(i));
}

TEST_CASE("associativity on an order-5^4 group against oracle") {
  // Quotient-flavored presentation: g3 = [g2,g1], g4 = g3^5... use a
  // class-2 group with nontrivial powers instead.
  const char *txt = R"(p 5 n 4
pow 1 : g3
pow 2 : g4
comm 2 1 : g4^3
)";
  PcGroup G = parse_presentation(txt);
  REQUIRE(G.is_consistent());
  std::mt19937_64 rng(777);
  auto elems = oracle::all_elements(G);
  REQUIRE(elems.size() == 625);
  for (int t = 0; t < 1000; ++t) {
    const auto &a = elems[rng() % elems.size()];
    const auto &b = elems[rng() % elems.size()];
    REQUIRE(G.multiply(a, b) == oracle::multiply(G, a, b));
    const auto &c = elems[rng() % elems.size()];
    REQUIRE(G.multiply(G.multiply(a, b), c) == G.multiply(a, G.multiply(b, c)));
  }
}

TEST_CASE("consistency detects tampering") {
  // Order 7^4, class 2: g1 of order 49, g3 = [g2,g1] of order 7.
  const char *good = R"(p 7 n 4
pow 1 : g4
comm 2 1 : g3
)";
  PcGroup G = parse_presentation(good);
  REQUIRE(G.is_consistent());
  // Edit the g3 power relation: the overlap of [g2, g1^7] = [g2,g1]^7 with
  // g2^7 = 1 forces g3^7 = 1, so g3^7 = g4 presents no group.
  CHECK_FALSE(parse_presentation(R"(p 7 n 4
pow 1 : g4
pow 3 : g4
comm 2 1 : g3
)")
                  .is_consistent());
}

TEST_CASE("presentation round trip") {
  for (const char *txt : {kExtra125, kMaxClass2401}) {
    PcGroup G = parse_presentation(txt);
    PcGroup H = parse_presentation(print_presentation(G));
    CHECK(G == H);
  }
}
