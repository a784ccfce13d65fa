#include "groupdist/group.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "groupdist/catalog.hpp"
#include "oracles.hpp"

namespace groupdist {
namespace {

std::vector<int> sorted_orders(const GroupTable& g) { return order_multiset(g); }

TEST(ParseTableTest, CyclicFour) {
  const GroupTable g = parse_table("n 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
  EXPECT_EQ(g.order(), 4);
  EXPECT_EQ(g.identity(), 0);
  EXPECT_EQ(g, cyclic(4));
}

TEST(ParseTableTest, RowNotAPermutation) {
  try {
    parse_table("n 2\n0 1\n1 1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1 is not a permutation"), std::string::npos) << e.what();
  }
}

TEST(ParseTableTest, IdentityIsLocatedNotAssumed) {
  // C3 relabeled so that the identity is element 2.
  const GroupTable g = parse_table("# name: C3'\nn 3\n1 2 0\n2 0 1\n0 1 2\n");
  EXPECT_EQ(g.identity(), 2);
  EXPECT_EQ(g.name(), "C3'");
  EXPECT_TRUE(validate(g).ok());
}

TEST(ParseTableTest, CommentsAndBlankLines) {
  const GroupTable g = parse_table("# hello\n\nn 2\n# between\n0 1\n\n1 0\n");
  EXPECT_EQ(g, cyclic(2));
}

TEST(ParseTableTest, MalformedInputs) {
  EXPECT_THROW(parse_table(""), ParseError);
  EXPECT_THROW(parse_table("0 1\n1 0\n"), ParseError);               // missing header
  EXPECT_THROW(parse_table("n 2\n0 x\n1 0\n"), ParseError);         // not an integer
  EXPECT_THROW(parse_table("n 2\n0 2\n1 0\n"), ParseError);         // out of range
  EXPECT_THROW(parse_table("n 2\n0 1 0\n1 0\n"), ParseError);       // row too long
  EXPECT_THROW(parse_table("n 2\n0 1\n"), ParseError);              // missing row
  EXPECT_THROW(parse_table("n 2\n0 1\n1 0\n0 1\n"), ParseError);    // extra row
  EXPECT_THROW(parse_table("n 0\n"), ParseError);
}

TEST(ParseTableTest, HeisenbergRoundTripsBitExactly) {
  const GroupTable h = by_name("Heis3").table;
  const std::string text = serialize(h);
  const GroupTable back = parse_table(text);
  EXPECT_EQ(back, h);
  EXPECT_EQ(back.name(), "Heis3");
  EXPECT_EQ(serialize(back), text);
}

TEST(ParseTableTest, SerializationRoundTripsForWholeCatalog) {
  for (const CatalogEntry& e : catalog()) {
    const std::string text = serialize(e.table);
    EXPECT_EQ(serialize(parse_table(text)), text) << e.name;
  }
}

TEST(ValidateTest, ConstructorsPass) {
  EXPECT_TRUE(validate(cyclic(5)).ok());
  EXPECT_TRUE(validate(direct_product(cyclic(3), cyclic(3))).ok());
  EXPECT_TRUE(validate(heisenberg(5)).ok());
}

TEST(ValidateTest, PerturbedCyclicFourHasWitnessedViolation) {
  // Swap two cells within row 1 of C4: rows stay Latin, columns and
  // associativity break.
  std::vector<Elem> cells = cyclic(4).cells();
  std::swap(cells[1 * 4 + 2], cells[1 * 4 + 3]);
  const GroupTable bad = GroupTable::unchecked("bad", 4, cells);
  const Verdict v = validate(bad);
  ASSERT_FALSE(v.ok());
  EXPECT_TRUE(v.has(ViolationKind::kLatinColumn));
  ASSERT_TRUE(v.has(ViolationKind::kAssociativity));
  for (const Violation& viol : v.violations) {
    if (viol.kind != ViolationKind::kAssociativity) continue;
    const auto [i, j, k] = viol.witness;
    EXPECT_NE(bad.op(bad.op(i, j), k), bad.op(i, bad.op(j, k)));
  }
}

TEST(ValidateTest, ReportsMissingIdentityAndClosure) {
  const GroupTable constant = GroupTable::unchecked("zero", 2, {0, 0, 0, 0});
  const Verdict v = validate(constant);
  EXPECT_TRUE(v.has(ViolationKind::kIdentity));
  EXPECT_TRUE(v.has(ViolationKind::kLatinRow));

  const GroupTable open = GroupTable::unchecked("open", 2, {0, 1, 1, 5});
  const Verdict w = validate(open);
  ASSERT_TRUE(w.has(ViolationKind::kClosure));
  EXPECT_EQ(w.violations.front().witness[0], 1);
  EXPECT_EQ(w.violations.front().witness[1], 1);
}

TEST(ValidateTest, LatinButNotAssociative) {
  // A Latin square with identity 0 that is not a group (order 5 loop).
  const GroupTable loop = GroupTable::unchecked("loop", 5,
                                                {0, 1, 2, 3, 4,  //
                                                 1, 0, 3, 4, 2,  //
                                                 2, 4, 0, 1, 3,  //
                                                 3, 2, 4, 0, 1,  //
                                                 4, 3, 1, 2, 0});
  const Verdict v = validate(loop);
  EXPECT_FALSE(v.has(ViolationKind::kLatinRow));
  EXPECT_FALSE(v.has(ViolationKind::kLatinColumn));
  EXPECT_FALSE(v.has(ViolationKind::kIdentity));
  EXPECT_TRUE(v.has(ViolationKind::kAssociativity));
}

TEST(CyclicTest, Basics) {
  EXPECT_THROW(cyclic(0), Error);
  EXPECT_EQ(cyclic(1).order(), 1);
  EXPECT_EQ(cyclic(1).identity(), 0);
  EXPECT_EQ(cyclic(3).cells(), (std::vector<Elem>{0, 1, 2, 1, 2, 0, 2, 0, 1}));
  EXPECT_EQ(element_order(cyclic(9), 1), 9);
  EXPECT_EQ(element_order(cyclic(6), 2), 3);
}

TEST(DirectProductTest, Klein) {
  const GroupTable v = direct_product(cyclic(2), cyclic(2));
  EXPECT_EQ(sorted_orders(v), (std::vector<int>{1, 2, 2, 2}));
  EXPECT_EQ(v.identity(), 0);
}

TEST(DirectProductTest, ExponentThree) {
  const GroupTable g = direct_product(cyclic(3), cyclic(3));
  EXPECT_EQ(g.order(), 9);
  for (Elem x = 1; x < 9; ++x) EXPECT_EQ(element_order(g, x), 3);
}

TEST(DirectProductTest, CoprimeFactorsGiveCyclic) {
  const GroupTable g = direct_product(cyclic(3), cyclic(4));
  EXPECT_EQ(g.order(), 12);
  const auto iso = find_isomorphism(g, cyclic(12));
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(iso->is_bijection());
  EXPECT_TRUE(is_homomorphism_map(*iso, g, cyclic(12)));
}

TEST(SemidirectProductTest, TrivialActionIsDirectProduct) {
  const GroupTable a = cyclic(3), b = cyclic(4);
  const std::vector<std::vector<Elem>> trivial(4, {0, 1, 2});
  EXPECT_EQ(semidirect_product(a, b, trivial).cells(), direct_product(a, b).cells());
}

TEST(SemidirectProductTest, DihedralEight) {
  const GroupTable d4 = semidirect_product(cyclic(4), cyclic(2), {{0, 1, 2, 3}, {0, 3, 2, 1}});
  EXPECT_TRUE(validate(d4).ok());
  EXPECT_EQ(sorted_orders(d4), (std::vector<int>{1, 2, 2, 2, 2, 2, 4, 4}));
  EXPECT_FALSE(d4.is_abelian());
}

TEST(SemidirectProductTest, ExponentNineExtraspecial) {
  std::vector<std::vector<Elem>> action(3, std::vector<Elem>(9));
  for (int x = 0; x < 9; ++x) {
    action[0][x] = x;
    action[1][x] = (4 * x) % 9;
    action[2][x] = (16 * x) % 9;
  }
  const GroupTable g = semidirect_product(cyclic(9), cyclic(3), action);
  EXPECT_EQ(g.order(), 27);
  EXPECT_TRUE(validate(g).ok());
  EXPECT_FALSE(g.is_abelian());
  const auto orders = sorted_orders(g);
  EXPECT_EQ(orders.back(), 9);
}

TEST(SemidirectProductTest, RejectsBadActions) {
  // Not an automorphism of C4: x -> 2x is not a bijection.
  EXPECT_THROW(semidirect_product(cyclic(4), cyclic(2), {{0, 1, 2, 3}, {0, 2, 0, 2}}), Error);
  // A bijection that is not an automorphism of C4.
  EXPECT_THROW(semidirect_product(cyclic(4), cyclic(2), {{0, 1, 2, 3}, {0, 2, 1, 3}}), Error);
  // Inversion for both non-identity elements of C3 is not a homomorphism C3 -> Aut(C4).
  EXPECT_THROW(semidirect_product(cyclic(4), cyclic(3), {{0, 1, 2, 3}, {0, 3, 2, 1}, {0, 3, 2, 1}}),
               Error);
  EXPECT_THROW(semidirect_product(cyclic(4), cyclic(2), {{0, 1, 2, 3}}), Error);
}

TEST(HeisenbergTest, OrderTwentySeven) {
  const GroupTable h = heisenberg(3);
  EXPECT_EQ(h.order(), 27);
  EXPECT_TRUE(validate(h).ok());
  EXPECT_FALSE(h.is_abelian());
  std::vector<int> expected(27, 3);
  expected[0] = 1;
  EXPECT_EQ(sorted_orders(h), expected);
}

TEST(HeisenbergTest, CommutatorIsCentral) {
  const GroupTable h = heisenberg(3);
  const Elem x = 9, y = 3;  // (1,0,0) and (0,1,0)
  const Elem comm = h.op(h.op(x, y), h.op(h.inverse(x), h.inverse(y)));
  EXPECT_EQ(comm, 1);  // (0,0,1)
  EXPECT_NE(comm, h.identity());
}

TEST(HeisenbergTest, OrderEightIsDihedral) {
  const GroupTable h2 = heisenberg(2);
  const GroupTable d4 = by_name("D4").table;
  const auto iso = find_isomorphism(h2, d4);
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(is_homomorphism_map(*iso, h2, d4));
  EXPECT_TRUE(oracle::embeds(h2, d4));
}

TEST(HeisenbergTest, RejectsNonPrime) {
  EXPECT_THROW(heisenberg(4), Error);
  EXPECT_THROW(heisenberg(1), Error);
}

TEST(ElementOrderTest, MatchesOracleAndDividesOrder) {
  for (const CatalogEntry& e : catalog()) {
    EXPECT_EQ(element_order(e.table, e.table.identity()), 1) << e.name;
    for (Elem x = 0; x < e.order; ++x) {
      const int k = element_order(e.table, x);
      EXPECT_EQ(e.order % k, 0) << e.name << " element " << x;
      EXPECT_EQ(k, oracle::order_of(e.table, x)) << e.name << " element " << x;
    }
  }
}

TEST(GeneratingSequenceTest, SpansTheGroup) {
  EXPECT_EQ(generating_sequence(cyclic(1)), std::vector<Elem>{});
  EXPECT_EQ(generating_sequence(cyclic(7)), std::vector<Elem>{1});
  EXPECT_EQ(generating_sequence(direct_product(cyclic(2), cyclic(2))), (std::vector<Elem>{1, 2}));
  EXPECT_EQ(generating_sequence(by_name("C3xC3xC3").table).size(), 3u);
}

TEST(FindIsomorphismTest, Examples) {
  for (const CatalogEntry& e : catalog()) {
    const auto iso = find_isomorphism(e.table, e.table);
    ASSERT_TRUE(iso.has_value()) << e.name;
    EXPECT_TRUE(iso->is_bijection());
    EXPECT_TRUE(is_homomorphism_map(*iso, e.table, e.table));
  }
  EXPECT_FALSE(find_isomorphism(cyclic(4), direct_product(cyclic(2), cyclic(2))).has_value());
  EXPECT_FALSE(find_isomorphism(heisenberg(3), by_name("C3xC3xC3").table).has_value());
  EXPECT_FALSE(find_isomorphism(cyclic(4), cyclic(5)).has_value());
}

TEST(FindIsomorphismTest, RelabeledCopies) {
  std::mt19937_64 rng(3);
  for (const CatalogEntry& e : catalog()) {
    std::vector<Elem> perm(e.order);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const GroupTable copy = relabel(e.table, ElementMap{e.order, e.order, perm});
    ASSERT_TRUE(validate(copy).ok()) << e.name;
    const auto iso = find_isomorphism(e.table, copy);
    ASSERT_TRUE(iso.has_value()) << e.name;
    EXPECT_TRUE(is_homomorphism_map(*iso, e.table, copy));
  }
}

TEST(FindIsomorphismTest, AgreesWithExhaustiveOracleUpToOrderEight) {
  const auto& cat = catalog();
  for (const CatalogEntry& a : cat)
    for (const CatalogEntry& b : cat) {
      if (a.order != b.order || a.order > 8) continue;
      EXPECT_EQ(find_isomorphism(a.table, b.table).has_value(), oracle::embeds(a.table, b.table))
          << a.name << " vs " << b.name;
    }
}

TEST(FindSubgroupEmbeddingTest, Examples) {
  const auto c2c4 = find_subgroup_embedding(cyclic(2), cyclic(4));
  ASSERT_TRUE(c2c4.has_value());
  EXPECT_EQ(c2c4->images, (std::vector<Elem>{0, 2}));
  EXPECT_FALSE(find_subgroup_embedding(cyclic(3), cyclic(4)).has_value());
  const GroupTable d4 = by_name("D4").table;
  const auto c4d4 = find_subgroup_embedding(cyclic(4), d4);
  ASSERT_TRUE(c4d4.has_value());
  EXPECT_TRUE(c4d4->is_injective());
  EXPECT_TRUE(is_homomorphism_map(*c4d4, cyclic(4), d4));
  EXPECT_FALSE(find_subgroup_embedding(d4, cyclic(4)).has_value());
}

TEST(FindSubgroupEmbeddingTest, AgreesWithExhaustiveOracle) {
  const auto& cat = catalog();
  for (const CatalogEntry& g : cat)
    for (const CatalogEntry& k : cat) {
      if (g.order >= k.order || k.order > 8) continue;
      const auto emb = find_subgroup_embedding(g.table, k.table);
      EXPECT_EQ(emb.has_value(), oracle::embeds(g.table, k.table)) << g.name << " -> " << k.name;
      if (emb) {
        EXPECT_TRUE(emb->is_injective());
        EXPECT_TRUE(is_homomorphism_map(*emb, g.table, k.table));
      }
    }
}

TEST(FindHomomorphismsTest, IncludesTrivialAndAreHomomorphisms) {
  const GroupTable s3 = by_name("D3").table;
  const auto homs = find_homomorphisms(s3, cyclic(2), 100);
  // Trivial map and the sign map.
  EXPECT_EQ(homs.size(), 2u);
  for (const auto& h : homs) EXPECT_TRUE(is_homomorphism_map(h, s3, cyclic(2)));
  EXPECT_EQ(find_homomorphisms(cyclic(3), cyclic(4), 100).size(), 1u);
  EXPECT_EQ(find_homomorphisms(cyclic(6), cyclic(6), 100).size(), 6u);
}

}  // namespace
}  // namespace groupdist
