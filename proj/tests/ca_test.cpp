#include "casa/ca.hpp"

#include <random>

#include "casa/error.hpp"
#include "casa/presets.hpp"
#include "doctest.h"

using namespace casa;

namespace {

// independent one-dimensional evaluator: y(i) = mu(x(i+s_1), ..., x(i+s_k))
std::vector<int> slide_oracle(const CellularAutomaton& ca, const std::vector<int>& x) {
  int period = static_cast<int>(x.size());
  int q = ca.alphabet().size();
  std::vector<int> y(x.size());
  for (int i = 0; i < period; ++i) {
    std::size_t index = 0;
    for (auto s : ca.rule.memory.elems()) {
      int j = static_cast<int>((i + s.coords[0]) % period);
      if (j < 0) j += period;
      index = index * static_cast<std::size_t>(q) +
              static_cast<std::size_t>(x[static_cast<std::size_t>(j)]);
    }
    y[static_cast<std::size_t>(i)] = ca.rule.table[index];
  }
  return y;
}

std::vector<int> periodic_values(const Configuration& x) {
  return {x.values().begin(), x.values().end()};
}

}  // namespace

TEST_CASE("eca decodes the Wolfram numbering") {
  auto z2 = presets::cyclic(2);
  // paper's table for rule 110, tuples 111,110,...,000
  int images_descending[8] = {0, 1, 1, 0, 1, 1, 1, 0};
  auto r110 = eca(110, z2);
  for (int i = 0; i < 8; ++i)
    CHECK(r110.rule.table[static_cast<std::size_t>(7 - i)] == images_descending[i]);

  auto r0 = eca(0, z2);
  CHECK(r0.rule.table == std::vector<int>(8, 0));

  // rule 204 is the identity mu = x_0
  auto r204 = eca(204, z2);
  for (std::size_t t = 0; t < 8; ++t)
    CHECK(r204.rule.table[t] == static_cast<int>((t >> 1) & 1));

  CHECK_THROWS_AS(eca(-1, z2), Error);
  CHECK_THROWS_AS(eca(256, z2), Error);
  CHECK_THROWS_AS(eca(110, presets::cyclic(3)), Error);
}

TEST_CASE("wolfram_number inverts eca for every rule") {
  auto z2 = presets::cyclic(2);
  for (int m = 0; m < 256; ++m) CHECK(wolfram_number(eca(m, z2)) == m);
}

TEST_CASE("rule 204 fixes every periodic configuration") {
  auto z2 = presets::cyclic(2);
  auto r204 = eca(204, z2);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int t = 0; t < 10; ++t) {
    std::vector<int> vals(7);
    for (auto& v : vals) v = bit(rng);
    auto x = Configuration::periodic(Group::z(), 2, {7, 1}, vals);
    CHECK(apply(r204, x) == x);
  }
}

TEST_CASE("rule 110 on the period-4 configuration 0001") {
  auto z2 = presets::cyclic(2);
  auto r110 = eca(110, z2);
  auto x = parse_configuration(Group::z(), 2, "0001");
  auto y = apply(r110, x);
  // y(i) = mu(x_{i-1}, x_i, x_{i+1}): mu(100)=0, mu(000)=0, mu(001)=1, mu(010)=1
  CHECK(periodic_values(y) == std::vector<int>{0, 0, 1, 1});
  CHECK(periodic_values(y) == slide_oracle(r110, {0, 0, 0, 1}));
}

TEST_CASE("apply agrees with the sliding oracle on random rules and inputs") {
  auto z2 = presets::cyclic(2);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> rule(0, 255), bit(0, 1), len(1, 9);
  for (int t = 0; t < 50; ++t) {
    auto ca = eca(rule(rng), z2);
    std::vector<int> vals(static_cast<std::size_t>(len(rng)));
    for (auto& v : vals) v = bit(rng);
    auto x = Configuration::periodic(Group::z(), 2, {static_cast<int>(vals.size()), 1},
                                     vals);
    CHECK(periodic_values(apply(ca, x)) == slide_oracle(ca, vals));
  }
}

TEST_CASE("constant-zero rule blanks the configuration") {
  auto z2 = presets::cyclic(2);
  auto x = parse_configuration(Group::z(), 2, "110101");
  CHECK(format_configuration(apply(eca(0, z2), x)) == "000000");
}

TEST_CASE("two-dimensional apply reduces offsets modulo the period") {
  auto z2 = presets::cyclic(2);
  MemorySet mem(Group::z2(), {elem(0, 1), elem(1, 0)});
  auto ca = make_ca("xor2d", z2, mem, {0, 1, 1, 0});
  auto x = parse_configuration(Group::z2(), 2, "101/010/001");
  auto y = apply(ca, x);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(y.at(elem(i, j)) == (x.at(elem(i, (j + 1) % 3)) ^ x.at(elem((i + 1) % 3, j))));
}

TEST_CASE("apply rejects mismatched configurations") {
  auto z2 = presets::cyclic(2);
  auto ca = eca(110, z2);
  auto wrong_group = Configuration::over_finite(presets::cyclic_group(4), 2, {0, 0, 0, 0});
  CHECK_THROWS_AS(apply(ca, wrong_group), Error);
  auto wrong_alpha = parse_configuration(Group::z(), 3, "012");
  CHECK_THROWS_AS(apply(ca, wrong_alpha), Error);
}

TEST_CASE("recover_local rebuilds the identity and shift rules") {
  auto g = presets::cyclic_group(4);
  auto z2 = presets::cyclic(2);

  auto identity_map = [](const Configuration& x) { return x; };
  auto id_ca = recover_local(z2, identity_map, MemorySet(g, {elem(0)}));
  CHECK(id_ca.rule.table == std::vector<int>{0, 1});

  // tau(x)(h) = x(h+1), which is the shift by -1
  auto advance = [&](const Configuration& x) { return shift(elem(3), x); };
  auto shift_ca = recover_local(z2, advance, MemorySet(g, {elem(1)}));
  CHECK(shift_ca.rule.table == std::vector<int>{0, 1});
  CHECK(shift_ca.rule.memory.at(0) == elem(1));
}

TEST_CASE("recover_local rejects non-automaton maps") {
  auto g = presets::cyclic_group(2);
  auto z2 = presets::cyclic(2);
  // flipping the value at the identity only is not shift-equivariant
  auto flip_at_e = [&](const Configuration& x) {
    auto y = x;
    y.set(elem(0), 1 - x.at(elem(0)));
    return y;
  };
  CHECK_THROWS_WITH_AS(
      recover_local(z2, flip_at_e, MemorySet(g, {elem(0), elem(1)})),
      doctest::Contains("not a cellular automaton"), Error);
}

TEST_CASE("extend_memory rewrites rule 204 over the full neighbourhood") {
  auto z2 = presets::cyclic(2);
  auto id_ca = make_ca("id", z2, MemorySet(Group::z(), {elem(0)}), {0, 1});
  MemorySet full(Group::z(), {elem(-1), elem(0), elem(1)});
  auto extended = extend_memory(id_ca, full);
  CHECK(extended.rule.table == eca(204, z2).rule.table);

  // extending by the same set is the identity transformation
  auto same = extend_memory(id_ca, id_ca.rule.memory);
  CHECK(same_rule(same, id_ca));

  CHECK_THROWS_AS(extend_memory(extended, MemorySet(Group::z(), {elem(0)})), Error);
}

TEST_CASE("minimal_memory drops inessential coordinates") {
  auto z2 = presets::cyclic(2);

  auto m204 = minimal_memory(eca(204, z2));
  REQUIRE(m204.memory_size() == 1);
  CHECK(m204.rule.memory.at(0) == elem(0));
  CHECK(m204.rule.table == std::vector<int>{0, 1});

  MemorySet full(Group::z(), {elem(-1), elem(0), elem(1)});
  auto constant = minimal_memory(make_ca("c", z2, full, std::vector<int>(8, 0)));
  CHECK(constant.memory_size() == 0);
  CHECK(constant.rule.table == std::vector<int>{0});

  CHECK(minimal_memory(eca(110, z2)).memory_size() == 3);
}

TEST_CASE("extend then minimize returns the original memory") {
  auto z2 = presets::cyclic(2);
  for (int m : {30, 90, 204, 240}) {
    auto ca = minimal_memory(eca(m, z2));
    MemorySet wider(Group::z(), {elem(-2), elem(-1), elem(0), elem(1)});
    auto widened = extend_memory(ca, wider);
    CHECK(equivalent(minimal_memory(widened), ca));
    CHECK(minimal_memory(widened).rule.memory == ca.rule.memory);
  }
}

TEST_CASE("compose with the identity is the identity") {
  auto z2 = presets::cyclic(2);
  auto r110 = eca(110, z2);
  auto r204 = eca(204, z2);
  CHECK(equivalent(compose(r204, r110), r110));
  CHECK(equivalent(compose(r110, r204), r110));
}

TEST_CASE("composing shifts adds their offsets") {
  auto z2 = presets::cyclic(2);
  auto sigma = [&](int k) {
    return make_ca("s" + std::to_string(k), z2, MemorySet(Group::z(), {elem(k)}), {0, 1});
  };
  auto composed = compose(sigma(1), sigma(1));
  CHECK(same_rule(composed, sigma(2)));
}

TEST_CASE("compose agrees with sequential application") {
  auto z2 = presets::cyclic(2);
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> rule(0, 255);
  for (int t = 0; t < 10; ++t) {
    auto a = eca(rule(rng), z2);
    auto b = eca(rule(rng), z2);
    auto ab = compose(a, b);
    for (int c = 0; c < 32; ++c) {
      std::vector<int> vals(5);
      for (int i = 0; i < 5; ++i) vals[static_cast<std::size_t>(i)] = (c >> i) & 1;
      auto x = Configuration::periodic(Group::z(), 2, {5, 1}, vals);
      CHECK(apply(ab, x) == apply(a, apply(b, x)));
    }
  }
}

TEST_CASE("xor-combining rules 240 and 170 gives rule 90") {
  auto z2 = presets::cyclic(2);
  std::vector<CellularAutomaton> cas{eca(240, z2), eca(170, z2)};
  auto combined = pointwise_combine("+", cas);
  CHECK(wolfram_number(combined) == 90);
}

TEST_CASE("pointwise_combine matches pointwise application") {
  auto z2 = presets::cyclic(2);
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> rule(0, 255), bit(0, 1);
  for (int t = 0; t < 10; ++t) {
    std::vector<CellularAutomaton> cas{eca(rule(rng), z2), eca(rule(rng), z2)};
    auto combined = pointwise_combine("+", cas);
    std::vector<int> vals(6);
    for (auto& v : vals) v = bit(rng);
    auto x = Configuration::periodic(Group::z(), 2, {6, 1}, vals);
    auto lhs = apply(combined, x);
    auto a = apply(cas[0], x);
    auto b = apply(cas[1], x);
    for (int i = 0; i < 6; ++i)
      CHECK(lhs.at(elem(i)) == (a.at(elem(i)) ^ b.at(elem(i))));
  }
}

TEST_CASE("unary scalar combine leaves the automaton unchanged") {
  auto v1 = presets::f2_vector(1);
  auto ca = eca(110, v1);
  std::vector<CellularAutomaton> one{ca};
  CHECK(same_rule(pointwise_combine("s1", one), ca));
}

TEST_CASE("nullary op yields the constant automaton") {
  auto z2 = presets::cyclic(2);
  auto constant = nullary_ca(Group::z(), z2, "0");
  CHECK(constant.memory_size() == 0);
  auto x = parse_configuration(Group::z(), 2, "1011");
  CHECK(format_configuration(apply(constant, x)) == "0000");
}

TEST_CASE("pointwise_combine rejects arity mismatches") {
  auto z2 = presets::cyclic(2);
  std::vector<CellularAutomaton> one{eca(110, z2)};
  CHECK_THROWS_AS(pointwise_combine("+", one), Error);
}

TEST_CASE("is_endomorphic: additive rules pass, rule 110 fails") {
  auto z2 = presets::cyclic(2);
  CHECK(is_endomorphic(eca(150, z2)));
  CHECK(is_endomorphic(eca(204, z2)));
  CHECK_FALSE(is_endomorphic(eca(110, z2)));

  // x_{-1} + x_0 + x_1 over an abelian alphabet of three elements
  auto z3 = presets::cyclic(3);
  MemorySet full(Group::z(), {elem(-1), elem(0), elem(1)});
  std::vector<int> table(27);
  std::vector<int> digits(3);
  for (std::size_t t = 0; t < 27; ++t) {
    decode_tuple(t, 3, digits);
    table[t] = (digits[0] + digits[1] + digits[2]) % 3;
  }
  CHECK(is_endomorphic(make_ca("sum3", z3, full, table)));
}

TEST_CASE("constructed automata are shift equivariant") {
  auto z2 = presets::cyclic(2);
  auto z4 = presets::cyclic_group(4);
  // all 16 rules over memory {0,1}
  MemorySet s(z4, {elem(0), elem(1)});
  std::vector<int> table(4);
  for (std::size_t r = 0; r < 16; ++r) {
    decode_tuple(r, 2, table);
    CHECK(is_shift_equivariant(make_ca("r", z2, s, table)));
  }

  auto s3 = presets::symmetric3();
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> bit(0, 1), pick(0, 5);
  for (int t = 0; t < 50; ++t) {
    std::vector<GroupElem> elems{elem(pick(rng))};
    auto second = elem(pick(rng));
    if (second != elems[0]) elems.push_back(second);
    MemorySet mem(s3, std::move(elems));
    std::vector<int> rt(static_cast<std::size_t>(1) << mem.size());
    for (auto& v : rt) v = bit(rng);
    CHECK(is_shift_equivariant(make_ca("r", z2, mem, rt)));
  }
}

TEST_CASE("a hand-built non-equivariant map is detected") {
  auto g = presets::cyclic_group(3);
  auto flip_at_e = [&](const Configuration& x) {
    auto y = x;
    y.set(elem(0), 1 - x.at(elem(0)));
    return y;
  };
  CHECK_FALSE(is_shift_equivariant_map(g, 2, flip_at_e));
}

TEST_CASE("componentwise ops commute with zero-extension and restriction") {
  // f(y_1,...,y_n) computed on S agrees with extending each y_i by element
  // 0, applying f on A^G, and restricting back to S
  auto g = presets::cyclic_group(4);
  auto a = presets::cyclic(2);
  MemorySet s(g, {elem(0), elem(1)});
  std::size_t plus = 0;
  std::vector<int> y1(2), y2(2);
  for (std::size_t t1 = 0; t1 < 4; ++t1)
    for (std::size_t t2 = 0; t2 < 4; ++t2) {
      decode_tuple(t1, 2, y1);
      decode_tuple(t2, 2, y2);
      auto extend = [&](const std::vector<int>& y) {
        auto x = Configuration::over_finite(g, 2, {0, 0, 0, 0});
        for (std::size_t i = 0; i < s.size(); ++i) x.set(s.at(i), y[i]);
        return x;
      };
      std::vector<Configuration> bars{extend(y1), extend(y2)};
      auto on_group = componentwise_op(a, plus, g, bars);
      for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(on_group.at(s.at(i)) == (y1[i] ^ y2[i]));
    }
}

TEST_CASE("g-algebra laws hold for Z4 over the xor alphabet") {
  auto g = presets::cyclic_group(4);
  CHECK(verify_g_algebra(g, presets::cyclic(2)).all_pass());
  CHECK(verify_equivariance(g, presets::cyclic(2), 10).all_pass());
}

TEST_CASE("canonical_form sorts the memory and is stable") {
  auto z2 = presets::cyclic(2);
  // rule reading (x_1, x_{-1}) in that declared order: mu(y) = y(1)
  MemorySet backwards(Group::z(), {elem(1), elem(-1)});
  auto ca = make_ca("b", z2, backwards, {0, 0, 1, 1});
  auto canon = canonical_form(ca);
  REQUIRE(canon.memory_size() == 1);
  CHECK(canon.rule.memory.at(0) == elem(1));
  CHECK(canon.rule.table == std::vector<int>{0, 1});
  CHECK(equivalent(ca, canon));
}

TEST_CASE("minimal and extended rules act identically on every configuration") {
  auto z2 = presets::cyclic(2);
  auto g = presets::cyclic_group(4);
  auto full = MemorySet::canonical(g, g.elements());
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> bit(0, 1), pick(0, 3), msize(1, 3);
  for (int t = 0; t < 20; ++t) {
    std::vector<GroupElem> elems;
    int want = msize(rng);
    while (static_cast<int>(elems.size()) < want) {
      auto e = elem(pick(rng));
      if (std::find(elems.begin(), elems.end(), e) == elems.end()) elems.push_back(e);
    }
    MemorySet mem(g, std::move(elems));
    std::vector<int> table(std::size_t{1} << mem.size());
    for (auto& v : table) v = bit(rng);
    auto ca = make_ca("r", z2, mem, table);
    auto minimized = minimal_memory(ca);
    auto extended = extend_memory(ca, full);
    for (std::uint64_t c = 0; c < 16; ++c) {
      auto x = configuration_from_index(g, 2, c);
      auto y = apply(ca, x);
      CHECK(apply(minimized, x) == y);
      CHECK(apply(extended, x) == y);
    }
  }
}

TEST_CASE("recover_local round trips a genuine automaton") {
  auto z2 = presets::cyclic(2);
  auto g = presets::symmetric3();
  std::mt19937 rng(27);
  std::uniform_int_distribution<int> bit(0, 1), pick(0, 5);
  for (int t = 0; t < 5; ++t) {
    std::vector<GroupElem> elems{elem(pick(rng))};
    auto second = elem(pick(rng));
    if (second != elems[0]) elems.push_back(second);
    MemorySet mem(g, std::move(elems));
    std::vector<int> table(std::size_t{1} << mem.size());
    for (auto& v : table) v = bit(rng);
    auto ca = make_ca("r", z2, mem, table);
    auto recovered =
        recover_local(z2, [&](const Configuration& x) { return apply(ca, x); },
                      ca.rule.memory);
    CHECK(same_rule(recovered, ca));
  }
}

TEST_CASE("ca files round trip") {
  auto z2 = presets::cyclic(2);
  auto ca = eca(110, z2);
  auto text = format_ca(ca);
  std::vector<Group> groups;
  std::vector<FiniteAlgebra> alphabets{z2};
  auto loaded = load_ca(text, groups, alphabets);
  CHECK(same_rule(loaded, ca));
  CHECK(loaded.name == ca.name);

  auto g = presets::cyclic_group(4);
  MemorySet mem(g, {elem(0), elem(2)});
  auto fca = make_ca("finite", z2, mem, {0, 1, 1, 0});
  std::vector<Group> fgroups{g};
  auto floaded = load_ca(format_ca(fca), fgroups, alphabets);
  CHECK(same_rule(floaded, fca));

  CHECK_THROWS_AS(load_ca("ca x\ngroup Q\nalphabet z2\nmemory 0\nrule 0 1\n",
                          fgroups, alphabets),
                  ParseError);
  CHECK_THROWS_AS(load_ca("ca x\ngroup Z\nalphabet nope\nmemory 0\nrule 0 1\n",
                          fgroups, alphabets),
                  ParseError);
  CHECK_THROWS_AS(load_ca("ca x\ngroup Z\nalphabet z2\nmemory 0\nrule 0 1 0\n",
                          fgroups, alphabets),
                  ParseError);
}
