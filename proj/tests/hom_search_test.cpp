#include "casa/hom_search.hpp"

#include <algorithm>
#include <set>

#include "casa/error.hpp"
#include "casa/presets.hpp"
#include "doctest.h"

using namespace casa;

namespace {

bool sorted_and_distinct(const HomEnumeration& e) {
  for (std::size_t i = 0; i + 1 < e.items.size(); ++i)
    if (!(e.items[i].table < e.items[i + 1].table)) return false;
  return true;
}

bool all_homs(const HomEnumeration& e) {
  for (const auto& h : e.items)
    if (!is_homomorphism(h)) return false;
  return true;
}

}  // namespace

TEST_CASE("Hom(2^3, 2) for boolean 2 is the three projections") {
  auto two = presets::bool2();
  auto dom = power_algebra(two, 3);
  auto homs = enumerate_homs(dom, two);
  REQUIRE(homs.count() == 3);
  CHECK(all_homs(homs));
  CHECK(sorted_and_distinct(homs));
  // projections onto coordinates 0,1,2 of the 3-bit encoding
  CHECK(homs.items[0].table == std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1});
  CHECK(homs.items[1].table == std::vector<int>{0, 0, 1, 1, 0, 0, 1, 1});
  CHECK(homs.items[2].table == std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("enumeration contains the identity when dom = cod") {
  for (const auto& a : {presets::cyclic(4), presets::bool2(), presets::f2_vector(2)}) {
    auto homs = enumerate_homs(a, a);
    auto id = identity_hom(a);
    bool found = false;
    for (const auto& h : homs.items)
      if (h.table == id.table) found = true;
    CHECK(found);
  }
}

TEST_CASE("Hom((Z2)^3, Z2) has 8 elements") {
  auto z2 = presets::cyclic(2);
  auto homs = enumerate_homs(power_algebra(z2, 3), z2);
  CHECK(homs.count() == 8);
  CHECK(all_homs(homs));
  CHECK(sorted_and_distinct(homs));
}

TEST_CASE("count_homs closed forms") {
  auto two = presets::bool2();
  for (std::size_t s = 1; s <= 4; ++s)
    CHECK(count_homs(power_algebra(two, s), two) == s);

  auto z3 = presets::cyclic(3);
  CHECK(count_homs(power_algebra(z3, 2), z3, 2) == 9);

  auto z4 = presets::cyclic(4);
  CHECK(count_homs(z4, presets::trivial_like(z4)) == 1);
}

TEST_CASE("count_homs matches enumeration when both run") {
  auto z6 = presets::cyclic(6);
  auto dom = power_algebra(z6, 2);
  CHECK(count_homs(dom, z6, 2) == enumerate_homs(dom, z6).count());

  auto two = presets::bool2();
  auto bdom = power_algebra(two, 4);
  auto bcod = power_algebra(two, 2);
  CHECK(count_homs(bdom, bcod) == enumerate_homs(bdom, bcod).count());
}

TEST_CASE("endomorphisms of Z4 are the four multiplications") {
  auto ring = enumerate_endomorphisms(presets::cyclic(4));
  REQUIRE(ring.size() == 4);
  std::set<std::vector<int>> tables(
      {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 0, 2}, {0, 3, 2, 1}});
  for (const auto& h : ring.items) CHECK(tables.count(h.table) == 1);
  CHECK(ring.identity_index >= 0);
  CHECK(ring.items[static_cast<std::size_t>(ring.identity_index)].table ==
        std::vector<int>{0, 1, 2, 3});

  // x2 after x2 = x0
  int dbl = ring.index_of(std::vector<int>{0, 2, 0, 2});
  int zero = ring.index_of(std::vector<int>{0, 0, 0, 0});
  CHECK(ring.composition[static_cast<std::size_t>(dbl)][static_cast<std::size_t>(dbl)] ==
        zero);
}

TEST_CASE("endomorphisms of the F2 plane number 16") {
  auto ring = enumerate_endomorphisms(presets::f2_vector(2));
  CHECK(ring.size() == 16);
  CHECK(ring.identity_index >= 0);
}

TEST_CASE("module view detects module-like algebras only") {
  CHECK(module_view(presets::cyclic(6)).has_value());
  CHECK(module_view(presets::f2_vector(2)).has_value());
  CHECK_FALSE(module_view(presets::bool2()).has_value());
  CHECK_FALSE(module_view(presets::s3_magma()).has_value());

  // group signature but not commutative: S3 with + named ops
  std::vector<int> mul(36);
  auto s3 = presets::symmetric3();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      mul[static_cast<std::size_t>(i) * 6 + j] =
          static_cast<int>(s3.mul(elem(i), elem(j)).coords[0]);
  FiniteAlgebra s3add("s3add", 6, Signature({{"+", 2}, {"0", 0}}), {mul, {0}});
  CHECK_FALSE(module_view(s3add).has_value());
}

TEST_CASE("module_homs: closed-form sizes") {
  auto z2 = presets::cyclic(2);
  CHECK(module_homs(z2, 3).count() == 8);

  auto z6 = presets::cyclic(6);
  CHECK(module_homs(z6, 2).count() == 36);

  auto zero_case = module_homs(z2, 0);
  REQUIRE(zero_case.count() == 1);
  CHECK(zero_case.items[0].table == std::vector<int>{0});
}

TEST_CASE("module_homs agrees with the generic enumeration, n <= 6, s <= 3") {
  for (int n : {2, 3, 4, 5, 6}) {
    auto a = presets::cyclic(n);
    for (std::size_t s = 1; s <= 3; ++s) {
      auto fast = module_homs(a, s);
      auto slow = enumerate_homs(power_algebra(a, s), a);
      REQUIRE(fast.count() == slow.count());
      for (std::size_t i = 0; i < fast.items.size(); ++i)
        CHECK(fast.items[i].table == slow.items[i].table);
    }
  }
  // vector space route as well
  auto v = presets::f2_vector(2);
  auto fast = module_homs(v, 1);
  auto slow = enumerate_homs(power_algebra(v, 1), v);
  REQUIRE(fast.count() == 16);
  REQUIRE(slow.count() == 16);
  for (std::size_t i = 0; i < fast.items.size(); ++i)
    CHECK(fast.items[i].table == slow.items[i].table);
}

TEST_CASE("module_homs rejects non-module algebras") {
  CHECK_THROWS_WITH_AS(module_homs(presets::bool2(), 2),
                       doctest::Contains("module"), Error);
}

TEST_CASE("boolean view finds atoms") {
  auto v1 = boolean_view(presets::bool2());
  CHECK(v1.atoms == std::vector<int>{1});

  auto v2 = boolean_view(presets::boolean(2));
  // atoms are (0,1) = 1 and (1,0) = 2
  CHECK(v2.atoms == std::vector<int>{1, 2});
  CHECK(v2.atom_count() == 2);
  CHECK(v2.bottom == 0);
  CHECK(v2.top == 3);
}

TEST_CASE("boolean view rejects a complement violation with a witness") {
  // not(x) = x breaks x | ~x = 1
  FiniteAlgebra bad("bad", 2,
                    Signature({{"and", 2}, {"or", 2}, {"not", 1}, {"0", 0}, {"1", 0}}),
                    {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 1}, {0}, {1}});
  CHECK_THROWS_WITH_AS(boolean_view(bad), doctest::Contains("complement"), Error);
  CHECK_THROWS_AS(boolean_view(presets::cyclic(2)), Error);
}

TEST_CASE("principal ideals: top, bottom, and maximal") {
  auto b8 = boolean_view(presets::boolean(3));
  auto everything = principal_ideal(b8, b8.top);
  CHECK(everything.size() == 8);
  CHECK(principal_ideal(b8, b8.bottom) == std::vector<int>{0});

  auto maximals = maximal_ideals(b8);
  REQUIRE(maximals.size() == 3);
  for (const auto& ideal : maximals) {
    CHECK(ideal.size() == 4);
    CHECK(is_ideal(b8, ideal));
  }
}

TEST_CASE("kernel of a projection is the principal ideal of the complement atom") {
  auto two = presets::bool2();
  auto b4 = power_algebra(two, 2);
  // pi_0 : 2^2 -> 2 on the 2-bit encoding
  HomMap pi0{b4, two, {0, 0, 1, 1}};
  REQUIRE(is_homomorphism(pi0));
  auto ker = kernel(pi0);
  CHECK(ker == std::vector<int>{0, 1});

  auto view = boolean_view(b4);
  // atom (1,0) = element 2; its complement is (0,1) = 1
  CHECK(view.complement(2) == 1);
  CHECK(ker == principal_ideal(view, 1));
}

TEST_CASE("kernels of surjective boolean homs are maximal principal ideals") {
  auto two = presets::bool2();
  for (std::size_t s = 1; s <= 3; ++s) {
    auto dom = power_algebra(two, s);
    auto view = boolean_view(dom);
    auto maximals = maximal_ideals(view);
    for (const auto& h : enumerate_homs(dom, two).items) {
      auto ker = kernel(h);
      CHECK(is_ideal(view, ker));
      CHECK(std::find(maximals.begin(), maximals.end(), ker) != maximals.end());
    }
  }
}

TEST_CASE("boolean_homs counts and generic agreement") {
  CHECK(boolean_homs(1, 3).count() == 3);
  CHECK(boolean_homs(1, 1).count() == 1);

  auto fast = boolean_homs(2, 2);
  REQUIRE(fast.count() == 16);
  auto two = presets::bool2();
  auto slow = enumerate_homs(power_algebra(two, 4), power_algebra(two, 2));
  REQUIRE(slow.count() == 16);
  for (std::size_t i = 0; i < fast.items.size(); ++i)
    CHECK(fast.items[i].table == slow.items[i].table);
  CHECK(all_homs(fast));

  // k <= 2, s <= 2 grid
  for (std::size_t k = 1; k <= 2; ++k)
    for (std::size_t s = 1; s <= 2; ++s) {
      auto special = boolean_homs(k, s);
      auto generic =
          enumerate_homs(power_algebra(two, k * s), power_algebra(two, k));
      REQUIRE(special.count() == generic.count());
      for (std::size_t i = 0; i < special.items.size(); ++i)
        CHECK(special.items[i].table == generic.items[i].table);
    }
}

TEST_CASE("composition of enumerated homs is a homomorphism") {
  auto z3 = presets::cyclic(3);
  auto inner = enumerate_homs(power_algebra(z3, 2), z3);
  auto outer = enumerate_homs(z3, z3);
  for (const auto& f : outer.items)
    for (const auto& g : inner.items) {
      auto fg = compose(f, g);
      CHECK(is_homomorphism(fg));
      // the composite appears in the enumeration of its type
      bool found = false;
      for (const auto& h : inner.items)
        if (h.table == fg.table) found = true;
      CHECK(found);
    }
}

TEST_CASE("enumerate_homs matches brute force over all value tables") {
  // independent oracle: walk every map dom -> cod and filter
  auto brute = [](const FiniteAlgebra& dom, const FiniteAlgebra& cod) {
    std::vector<std::vector<int>> found;
    auto total = pow_checked(static_cast<std::uint64_t>(cod.size()),
                             static_cast<unsigned>(dom.size()));
    std::vector<int> table(static_cast<std::size_t>(dom.size()));
    for (std::uint64_t t = 0; t < total; ++t) {
      decode_tuple(static_cast<std::size_t>(t), cod.size(), table);
      if (is_homomorphism(HomMap{dom, cod, table})) found.push_back(table);
    }
    return found;  // already in table-lexicographic order
  };
  struct Case {
    FiniteAlgebra dom, cod;
  };
  std::vector<Case> cases{
      {power_algebra(presets::cyclic(2), 3), presets::cyclic(2)},
      {power_algebra(presets::cyclic(3), 2), presets::cyclic(3)},
      {power_algebra(presets::bool2(), 2), presets::bool2()},
      {presets::s3_magma(), presets::s3_magma()},
      {presets::cyclic(4), presets::cyclic(2)},
      {power_algebra(presets::bare_set(2), 2), presets::bare_set(2)},
  };
  for (const auto& c : cases) {
    auto expected = brute(c.dom, c.cod);
    auto got = enumerate_homs(c.dom, c.cod);
    REQUIRE(got.count() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
      CHECK(got.items[i].table == expected[i]);
  }
}

TEST_CASE("cap errors surface as CapError") {
  auto z6 = presets::cyclic(6);
  CHECK_THROWS_AS(enumerate_homs(power_algebra(z6, 3), z6, 100), CapError);
  CHECK_THROWS_AS(power_algebra(z6, 5), CapError);
}

TEST_CASE("signature mismatch is rejected") {
  CHECK_THROWS_AS(enumerate_homs(presets::cyclic(2), presets::bool2()), Error);
}
