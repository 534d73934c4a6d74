#include "casa/group.hpp"

#include <random>
#include <string>

#include "casa/error.hpp"
#include "casa/presets.hpp"
#include "doctest.h"

using namespace casa;

namespace {

std::string cyclic_file(int n) {
  std::string text = "group C" + std::to_string(n) + "\norder " + std::to_string(n) + "\n";
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) text += std::to_string((a + b) % n) + " ";
    text += "\n";
  }
  return text;
}

Configuration random_config(const Group& g, int q, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(0, q - 1);
  std::vector<int> vals(static_cast<std::size_t>(g.order()));
  for (auto& v : vals) v = dist(rng);
  return Configuration::over_finite(g, q, std::move(vals));
}

}  // namespace

TEST_CASE("load_group accepts the cyclic table") {
  auto g = load_group(cyclic_file(3));
  CHECK(g.is_finite());
  CHECK(g.order() == 3);
  CHECK(g.mul(elem(1), elem(2)) == elem(0));
  CHECK(g.inv(elem(1)) == elem(2));
  CHECK(g.identity() == elem(0));
}

TEST_CASE("load_group rejects a non-associative table") {
  // identity row/column fine; (1,1,2) breaks: (1*1)*2 = 2*2 = 0 but 1*(1*2) = 1*0 = 1
  std::string text =
      "group bad\n"
      "order 3\n"
      "0 1 2\n"
      "1 2 0\n"
      "2 0 0\n";
  CHECK_THROWS_WITH_AS(load_group(text), doctest::Contains("associative"), Error);
}

TEST_CASE("load_group rejects a table without inverses") {
  std::string text =
      "group bad\n"
      "order 3\n"
      "0 1 2\n"
      "1 1 1\n"
      "2 1 1\n";
  CHECK_THROWS_AS(load_group(text), Error);
}

TEST_CASE("load_group requires identity at index 0") {
  // swap roles: element 1 is the identity here
  std::string text =
      "group shifted\n"
      "order 2\n"
      "1 0\n"
      "0 1\n";
  CHECK_THROWS_WITH_AS(load_group(text), doctest::Contains("identity"), Error);
}

TEST_CASE("klein four-group: every element self-inverse") {
  std::string text =
      "group V4\n"
      "order 4\n"
      "0 1 2 3\n"
      "1 0 3 2\n"
      "2 3 0 1\n"
      "3 2 1 0\n";
  auto g = load_group(text);
  for (int i = 0; i < 4; ++i) CHECK(g.inv(elem(i)) == elem(i));
  CHECK(g == presets::klein4());
}

TEST_CASE("shift by the identity is the identity") {
  auto g = presets::cyclic_group(5);
  std::mt19937 rng(42);
  for (int t = 0; t < 5; ++t) {
    auto x = random_config(g, 3, rng);
    CHECK(shift(g.identity(), x) == x);
  }
}

TEST_CASE("shift on Z4 rotates the tuple") {
  auto g = presets::cyclic_group(4);
  // x = (a,b,c,d) = (0,1,2,3); y(h) = x(h-1), so y = (d,a,b,c)
  auto x = Configuration::over_finite(g, 4, {0, 1, 2, 3});
  auto y = shift(elem(1), x);
  CHECK(y.values()[0] == 3);
  CHECK(y.values()[1] == 0);
  CHECK(y.values()[2] == 1);
  CHECK(y.values()[3] == 2);
}

TEST_CASE("shift action law on S3, exhaustive in g and h") {
  auto g = presets::symmetric3();
  std::mt19937 rng(7);
  for (int t = 0; t < 10; ++t) {
    auto x = random_config(g, 2, rng);
    for (auto a : g.elements())
      for (auto b : g.elements())
        CHECK(shift(a, shift(b, x)) == shift(g.mul(a, b), x));
  }
}

TEST_CASE("shift action law across small groups") {
  std::vector<Group> groups = {presets::cyclic_group(2), presets::cyclic_group(5),
                               presets::cyclic_group(8), presets::klein4(),
                               presets::symmetric3()};
  std::mt19937 rng(11);
  for (const auto& g : groups) {
    for (int t = 0; t < 20; ++t) {
      auto x = random_config(g, 2, rng);
      for (auto a : g.elements())
        for (auto b : g.elements())
          CHECK(shift(a, shift(b, x)) == shift(g.mul(a, b), x));
    }
  }
}

TEST_CASE("shift on periodic lattice configurations") {
  auto x = parse_configuration(Group::z(), 2, "0011");
  auto y = shift(elem(1), x);
  CHECK(format_configuration(y) == "1001");

  auto grid = parse_configuration(Group::z2(), 2, "10/00");
  auto moved = shift(elem(1, 1), grid);
  CHECK(format_configuration(moved) == "00/01");
}

TEST_CASE("product_set on Z sums intervals") {
  MemorySet s(Group::z(), {elem(-1), elem(0), elem(1)});
  auto p = product_set(s, s);
  REQUIRE(p.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(p.at(static_cast<std::size_t>(i)) == elem(i - 2));
}

TEST_CASE("product_set with the singleton identity") {
  auto g = presets::symmetric3();
  MemorySet e(g, {g.identity()});
  MemorySet s(g, {elem(2), elem(4)});
  auto p = product_set(e, s);
  CHECK(p == MemorySet::canonical(g, {elem(2), elem(4)}));
}

TEST_CASE("product_set on Z4 deduplicates into canonical order") {
  auto g = presets::cyclic_group(4);
  MemorySet s1(g, {elem(1), elem(2)});
  MemorySet s2(g, {elem(2), elem(3)});
  auto p = product_set(s1, s2);
  // pairwise sums mod 4: {3, 0, 0, 1} -> {0, 1, 3}
  REQUIRE(p.size() == 3);
  CHECK(p.at(0) == elem(0));
  CHECK(p.at(1) == elem(1));
  CHECK(p.at(2) == elem(3));
}

TEST_CASE("product_set is associative, exhaustive over <= 3-element sets") {
  for (const auto& g : {presets::cyclic_group(4), presets::klein4(),
                        presets::symmetric3(), presets::cyclic_group(8)}) {
    std::vector<MemorySet> sets;
    int m = g.order();
    for (int mask = 1; mask < (1 << m); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) > 3) continue;
      std::vector<GroupElem> elems;
      for (int i = 0; i < m; ++i)
        if (mask & (1 << i)) elems.push_back(elem(i));
      sets.emplace_back(g, std::move(elems));
    }
    bool associative = true;
    for (const auto& a : sets)
      for (const auto& b : sets) {
        // hoist a*b out of the innermost loop
        auto ab = product_set(a, b);
        for (const auto& c : sets)
          if (!(product_set(ab, c) == product_set(a, product_set(b, c)))) {
            associative = false;
            break;
          }
      }
    CHECK(associative);
  }
}

TEST_CASE("memory sets preserve listing order and reject duplicates") {
  MemorySet s(Group::z(), {elem(1), elem(-1), elem(0)});
  CHECK(s.at(0) == elem(1));
  CHECK(s.at(2) == elem(0));
  CHECK_THROWS_AS(MemorySet(Group::z(), {elem(1), elem(1)}), Error);
}

TEST_CASE("configuration parsing and indexing") {
  auto g = presets::cyclic_group(3);
  auto x = parse_configuration(g, 2, "101");
  CHECK(x.at(elem(0)) == 1);
  CHECK(x.at(elem(1)) == 0);
  CHECK(format_configuration(x) == "101");
  CHECK_THROWS_AS(parse_configuration(g, 2, "10"), ParseError);
  CHECK_THROWS_AS(parse_configuration(g, 2, "102"), ParseError);

  auto grid = parse_configuration(Group::z2(), 3, "012/120");
  CHECK(grid.period()[0] == 2);
  CHECK(grid.period()[1] == 3);
  CHECK(grid.at(elem(1, 2)) == 0);
  CHECK(grid.at(elem(-1, -1)) == 0);  // wraps to (1,2)
  CHECK_THROWS_AS(parse_configuration(Group::z2(), 2, "01/0"), ParseError);
}

TEST_CASE("configuration enumeration walks the whole space") {
  auto g = presets::cyclic_group(3);
  CHECK(configuration_count(g, 2) == 8);
  auto x = configuration_from_index(g, 2, 5);  // 101 in binary, element 0 most significant
  CHECK(x.at(elem(0)) == 1);
  CHECK(x.at(elem(1)) == 0);
  CHECK(x.at(elem(2)) == 1);
}

TEST_CASE("parse_elem handles lattice coordinates") {
  CHECK(parse_elem(Group::z(), "-3") == elem(-3));
  CHECK(parse_elem(Group::z2(), "2,-1") == elem(2, -1));
  CHECK_THROWS_AS(parse_elem(Group::z(), "1,2"), ParseError);
  CHECK_THROWS_AS(parse_elem(presets::cyclic_group(3), "7"), ParseError);
}
