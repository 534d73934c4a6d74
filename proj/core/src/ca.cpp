#include "casa/ca.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "casa/error.hpp"
#include "casa/hom_search.hpp"

namespace casa {

int LocalRule::eval(std::span<const int> args) const {
  if (args.size() != memory.size()) throw Error("local rule: wrong tuple length");
  return table[encode_tuple(args, alphabet.size())];
}

CellularAutomaton make_ca(std::string name, FiniteAlgebra alphabet, MemorySet memory,
                          std::vector<int> table) {
  auto expected = pow_checked(static_cast<std::uint64_t>(alphabet.size()),
                              static_cast<unsigned>(memory.size()));
  if (table.size() != expected)
    throw Error("ca '" + name + "': rule table has " + std::to_string(table.size()) +
                " entries, expected " + std::to_string(expected));
  for (int v : table)
    if (v < 0 || v >= alphabet.size())
      throw Error("ca '" + name + "': rule value out of range");
  return CellularAutomaton{std::move(name),
                           LocalRule{std::move(alphabet), std::move(memory), std::move(table)}};
}

Configuration apply(const CellularAutomaton& ca, const Configuration& x) {
  const Group& G = ca.group();
  if (x.group() != G) throw Error("apply: configuration group mismatch");
  if (x.alphabet_size() != ca.alphabet().size())
    throw Error("apply: configuration alphabet mismatch");

  auto mem = ca.rule.memory.elems();
  std::vector<int> args(mem.size());
  Configuration y = x;
  if (G.is_finite()) {
    for (int g = 0; g < G.order(); ++g) {
      for (std::size_t i = 0; i < mem.size(); ++i)
        args[i] = x.at(G.mul(elem(g), mem[i]));
      y.set(elem(g), ca.rule.table[encode_tuple(args, ca.alphabet().size())]);
    }
    return y;
  }
  auto [m1, m2] = x.period();
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m2; ++j) {
      for (std::size_t k = 0; k < mem.size(); ++k)
        args[k] = x.at(elem(i + mem[k].coords[0], j + mem[k].coords[1]));
      y.set(elem(i, j), ca.rule.table[encode_tuple(args, ca.alphabet().size())]);
    }
  return y;
}

CellularAutomaton recover_local(const FiniteAlgebra& alphabet, const GlobalMap& tau,
                                const MemorySet& memory, std::size_t config_cap) {
  const Group& G = memory.group();
  if (!G.is_finite()) throw Error("recover_local: group must be finite");
  int q = alphabet.size();
  auto total = configuration_count(G, q);
  if (total > config_cap)
    throw CapError("recover_local: configuration space of size " + std::to_string(total) +
                   " exceeds cap " + std::to_string(config_cap));

  // mu(y) = tau(ybar)(e), extending y by element 0
  auto entries = pow_checked(static_cast<std::uint64_t>(q),
                             static_cast<unsigned>(memory.size()));
  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(entries));
  std::vector<int> digits(memory.size());
  std::vector<int> zero(static_cast<std::size_t>(G.order()), 0);
  for (std::uint64_t t = 0; t < entries; ++t) {
    decode_tuple(static_cast<std::size_t>(t), q, digits);
    auto xbar = Configuration::over_finite(G, q, zero);
    for (std::size_t i = 0; i < memory.size(); ++i) xbar.set(memory.at(i), digits[i]);
    table.push_back(tau(xbar).at(G.identity()));
  }
  auto ca = make_ca("recovered", alphabet, memory, std::move(table));

  for (std::uint64_t c = 0; c < total; ++c) {
    auto x = configuration_from_index(G, q, c);
    if (apply(ca, x) != tau(x))
      throw Error("recover_local: map is not a cellular automaton with this memory set");
  }
  return ca;
}

CellularAutomaton extend_memory(const CellularAutomaton& ca, const MemorySet& larger,
                                std::size_t domain_cap) {
  const MemorySet& mem = ca.rule.memory;
  if (!mem.subset_of(larger))
    throw Error("extend_memory: new memory set does not contain the old one");
  int q = ca.alphabet().size();
  auto entries = pow_checked(static_cast<std::uint64_t>(q),
                             static_cast<unsigned>(larger.size()));
  if (entries > domain_cap)
    throw CapError("extend_memory: rule table of size " + std::to_string(entries) +
                   " exceeds cap " + std::to_string(domain_cap));

  std::vector<std::size_t> pos(mem.size());
  for (std::size_t i = 0; i < mem.size(); ++i) pos[i] = *larger.index_of(mem.at(i));

  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(entries));
  std::vector<int> big(larger.size()), small(mem.size());
  for (std::uint64_t t = 0; t < entries; ++t) {
    decode_tuple(static_cast<std::size_t>(t), q, big);
    for (std::size_t i = 0; i < mem.size(); ++i) small[i] = big[pos[i]];
    table.push_back(ca.rule.table[encode_tuple(small, q)]);
  }
  return make_ca(ca.name, ca.alphabet(), larger, std::move(table));
}

CellularAutomaton minimal_memory(const CellularAutomaton& ca) {
  const MemorySet& mem = ca.rule.memory;
  int q = ca.alphabet().size();
  std::size_t k = mem.size();
  auto entries = ca.rule.table.size();

  // position j is essential iff two tuples differing only at j differ in mu
  std::vector<bool> essential(k, false);
  std::vector<int> digits(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t t = 0; t < entries && !essential[j]; ++t) {
      decode_tuple(t, q, digits);
      if (digits[j] != 0) continue;
      int base = ca.rule.table[t];
      auto stride = pow_checked(static_cast<std::uint64_t>(q),
                                static_cast<unsigned>(k - 1 - j));
      for (int v = 1; v < q; ++v)
        if (ca.rule.table[t + static_cast<std::size_t>(stride) * v] != base) {
          essential[j] = true;
          break;
        }
    }
  }

  std::vector<GroupElem> kept;
  std::vector<std::size_t> kept_pos;
  for (std::size_t j = 0; j < k; ++j)
    if (essential[j]) {
      kept.push_back(mem.at(j));
      kept_pos.push_back(j);
    }
  if (kept.size() == k) return ca;

  MemorySet smaller(mem.group(), std::move(kept));
  auto small_entries = pow_checked(static_cast<std::uint64_t>(q),
                                   static_cast<unsigned>(smaller.size()));
  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(small_entries));
  std::vector<int> small(smaller.size()), big(k, 0);
  for (std::uint64_t t = 0; t < small_entries; ++t) {
    decode_tuple(static_cast<std::size_t>(t), q, small);
    std::fill(big.begin(), big.end(), 0);
    for (std::size_t i = 0; i < kept_pos.size(); ++i) big[kept_pos[i]] = small[i];
    table.push_back(ca.rule.table[encode_tuple(big, q)]);
  }
  return make_ca(ca.name, ca.alphabet(), std::move(smaller), std::move(table));
}

CellularAutomaton compose(const CellularAutomaton& outer, const CellularAutomaton& inner,
                          std::size_t domain_cap) {
  if (outer.group() != inner.group()) throw Error("compose: group mismatch");
  if (!outer.alphabet().same_structure(inner.alphabet()))
    throw Error("compose: alphabet mismatch");
  const Group& G = outer.group();
  int q = outer.alphabet().size();

  MemorySet mem = product_set(outer.rule.memory, inner.rule.memory);
  auto entries = pow_checked(static_cast<std::uint64_t>(q),
                             static_cast<unsigned>(mem.size()));
  if (entries > domain_cap)
    throw CapError("compose: rule table of size " + std::to_string(entries) +
                   " exceeds cap " + std::to_string(domain_cap));

  // index into mem of s1*s2, for s1 in S_outer, s2 in S_inner
  auto s1n = outer.rule.memory.size();
  auto s2n = inner.rule.memory.size();
  std::vector<std::size_t> pos(s1n * s2n);
  for (std::size_t i = 0; i < s1n; ++i)
    for (std::size_t j = 0; j < s2n; ++j)
      pos[i * s2n + j] =
          *mem.index_of(G.mul(outer.rule.memory.at(i), inner.rule.memory.at(j)));

  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(entries));
  std::vector<int> y(mem.size()), mid(s1n), inner_args(s2n);
  for (std::uint64_t t = 0; t < entries; ++t) {
    decode_tuple(static_cast<std::size_t>(t), q, y);
    for (std::size_t i = 0; i < s1n; ++i) {
      for (std::size_t j = 0; j < s2n; ++j) inner_args[j] = y[pos[i * s2n + j]];
      mid[i] = inner.rule.table[encode_tuple(inner_args, q)];
    }
    table.push_back(outer.rule.table[encode_tuple(mid, q)]);
  }
  return make_ca(outer.name + "." + inner.name, outer.alphabet(), std::move(mem),
                 std::move(table));
}

CellularAutomaton nullary_ca(const Group& g, const FiniteAlgebra& a,
                             std::string_view op_name) {
  int opi = a.signature().find(op_name);
  if (opi < 0 || a.signature().op(static_cast<std::size_t>(opi)).arity != 0)
    throw Error("nullary_ca: no nullary op named '" + std::string(op_name) + "'");
  return make_ca(std::string(op_name) + "-const", a, MemorySet(g, {}),
                 {a.eval(static_cast<std::size_t>(opi), {})});
}

CellularAutomaton pointwise_combine(std::string_view op_name,
                                    std::span<const CellularAutomaton> cas,
                                    std::size_t domain_cap) {
  if (cas.empty())
    throw Error("pointwise_combine: nullary ops take no automata; use nullary_ca");
  const FiniteAlgebra& a = cas[0].alphabet();
  int opi = a.signature().find(op_name);
  if (opi < 0) throw Error("pointwise_combine: no op named '" + std::string(op_name) + "'");
  int n = a.signature().op(static_cast<std::size_t>(opi)).arity;
  if (static_cast<std::size_t>(n) != cas.size())
    throw Error("pointwise_combine: op '" + std::string(op_name) + "' is " +
                std::to_string(n) + "-ary, got " + std::to_string(cas.size()) + " automata");
  for (const auto& ca : cas) {
    if (ca.group() != cas[0].group()) throw Error("pointwise_combine: group mismatch");
    if (!ca.alphabet().same_structure(a)) throw Error("pointwise_combine: alphabet mismatch");
  }

  MemorySet mem = cas[0].rule.memory;
  for (std::size_t i = 1; i < cas.size(); ++i) mem = union_set(mem, cas[i].rule.memory);
  int q = a.size();
  auto entries = pow_checked(static_cast<std::uint64_t>(q),
                             static_cast<unsigned>(mem.size()));
  if (entries > domain_cap)
    throw CapError("pointwise_combine: rule table of size " + std::to_string(entries) +
                   " exceeds cap " + std::to_string(domain_cap));

  std::vector<std::vector<std::size_t>> pos(cas.size());
  for (std::size_t c = 0; c < cas.size(); ++c) {
    pos[c].resize(cas[c].rule.memory.size());
    for (std::size_t i = 0; i < pos[c].size(); ++i)
      pos[c][i] = *mem.index_of(cas[c].rule.memory.at(i));
  }

  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(entries));
  std::vector<int> y(mem.size()), vals(cas.size()), sub;
  for (std::uint64_t t = 0; t < entries; ++t) {
    decode_tuple(static_cast<std::size_t>(t), q, y);
    for (std::size_t c = 0; c < cas.size(); ++c) {
      sub.resize(pos[c].size());
      for (std::size_t i = 0; i < pos[c].size(); ++i) sub[i] = y[pos[c][i]];
      vals[c] = cas[c].rule.table[encode_tuple(sub, q)];
    }
    table.push_back(a.eval(static_cast<std::size_t>(opi), vals));
  }
  return make_ca(std::string(op_name) + "-combined", a, std::move(mem), std::move(table));
}

bool is_endomorphic(const CellularAutomaton& ca, std::size_t domain_cap) {
  auto dom = power_algebra(ca.alphabet(), ca.memory_size(), domain_cap);
  return is_homomorphism(HomMap{dom, ca.alphabet(), ca.rule.table});
}

Configuration componentwise_op(const FiniteAlgebra& a, std::size_t op_index,
                               const Group& g, std::span<const Configuration> xs) {
  int n = a.signature().op(op_index).arity;
  if (xs.size() != static_cast<std::size_t>(n))
    throw Error("componentwise_op: arity mismatch");
  for (const auto& x : xs)
    if (x.group() != g || x.alphabet_size() != a.size())
      throw Error("componentwise_op: configuration mismatch");
  std::vector<int> zeros(static_cast<std::size_t>(g.order()), 0);
  Configuration r = Configuration::over_finite(g, a.size(), std::move(zeros));
  std::vector<int> vals(static_cast<std::size_t>(n));
  for (int h = 0; h < g.order(); ++h) {
    for (int i = 0; i < n; ++i)
      vals[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i)].at(elem(h));
    r.set(elem(h), a.eval(op_index, vals));
  }
  return r;
}

namespace {

Configuration random_configuration(const Group& g, int q, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, q - 1);
  std::vector<int> values(static_cast<std::size_t>(g.order()));
  for (auto& v : values) v = dist(rng);
  return Configuration::over_finite(g, q, std::move(values));
}

bool equivariant_on(const Group& g, const GlobalMap& tau, const Configuration& x) {
  for (auto ge : g.elements()) {
    if (tau(shift(ge, x)) != shift(ge, tau(x))) return false;
  }
  return true;
}

}  // namespace

bool is_shift_equivariant_map(const Group& g, int alphabet_size, const GlobalMap& tau,
                              std::size_t config_cap, std::size_t samples,
                              std::uint64_t seed) {
  if (!g.is_finite()) throw Error("is_shift_equivariant: group must be finite");
  std::uint64_t total = configuration_count(g, alphabet_size);
  if (total <= config_cap) {
    for (std::uint64_t c = 0; c < total; ++c)
      if (!equivariant_on(g, tau, configuration_from_index(g, alphabet_size, c)))
        return false;
    return true;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i)
    if (!equivariant_on(g, tau, random_configuration(g, alphabet_size, rng)))
      return false;
  return true;
}

bool is_shift_equivariant(const CellularAutomaton& ca, std::size_t config_cap,
                          std::size_t samples, std::uint64_t seed) {
  return is_shift_equivariant_map(
      ca.group(), ca.alphabet().size(),
      [&](const Configuration& x) { return apply(ca, x); }, config_cap, samples, seed);
}

CellularAutomaton canonical_form(const CellularAutomaton& ca) {
  auto min = minimal_memory(ca);
  auto mem = min.rule.memory.elems();
  std::vector<std::size_t> order(mem.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return mem[i] < mem[j]; });
  bool sorted = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] != i) sorted = false;
  if (sorted) return min;

  std::vector<GroupElem> selems;
  selems.reserve(mem.size());
  for (auto i : order) selems.push_back(mem[i]);
  MemorySet smem(min.group(), std::move(selems));

  int q = min.alphabet().size();
  std::vector<int> table(min.rule.table.size());
  std::vector<int> sorted_digits(mem.size()), digits(mem.size());
  for (std::size_t t = 0; t < table.size(); ++t) {
    decode_tuple(t, q, sorted_digits);
    for (std::size_t i = 0; i < order.size(); ++i) digits[order[i]] = sorted_digits[i];
    table[t] = min.rule.table[encode_tuple(digits, q)];
  }
  return make_ca(min.name, min.alphabet(), std::move(smem), std::move(table));
}

bool same_rule(const CellularAutomaton& a, const CellularAutomaton& b) {
  return a.group() == b.group() && a.alphabet().same_structure(b.alphabet()) &&
         a.rule.memory == b.rule.memory && a.rule.table == b.rule.table;
}

bool equivalent(const CellularAutomaton& a, const CellularAutomaton& b) {
  return same_rule(canonical_form(a), canonical_form(b));
}

CellularAutomaton eca(int wolfram_code, const FiniteAlgebra& alphabet) {
  if (wolfram_code < 0 || wolfram_code > 255)
    throw Error("eca: rule number must be in 0..255");
  if (alphabet.size() != 2) throw Error("eca: alphabet must have two elements");
  MemorySet mem(Group::z(), {elem(-1), elem(0), elem(1)});
  // Wolfram lists tuples 111..000; ascending tuple t therefore reads bit t.
  std::vector<int> table(8);
  for (int t = 0; t < 8; ++t) table[static_cast<std::size_t>(t)] = (wolfram_code >> t) & 1;
  return make_ca("rule" + std::to_string(wolfram_code), alphabet, std::move(mem),
                 std::move(table));
}

int wolfram_number(const CellularAutomaton& ca) {
  if (ca.alphabet().size() != 2) throw Error("wolfram_number: alphabet is not binary");
  if (ca.group() != Group::z()) throw Error("wolfram_number: group is not Z");
  MemorySet full(Group::z(), {elem(-1), elem(0), elem(1)});
  auto min = minimal_memory(ca);
  if (!min.rule.memory.subset_of(full))
    throw Error("wolfram_number: memory does not fit in {-1,0,1}");
  auto ext = extend_memory(min, full);
  int code = 0;
  for (int t = 0; t < 8; ++t) code |= ext.rule.table[static_cast<std::size_t>(t)] << t;
  return code;
}

CellularAutomaton load_ca(const std::string& text, std::span<const Group> groups,
                          std::span<const FiniteAlgebra> alphabets) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) rows.push_back(std::move(toks));
  }
  if (rows.size() != 5) throw ParseError("ca file: expected 5 sections");
  auto expect = [&](std::size_t i, const char* kw, std::size_t min_args) {
    if (rows[i][0] != kw || rows[i].size() < 1 + min_args)
      throw ParseError(std::string("ca file: expected '") + kw + " ...'");
  };
  expect(0, "ca", 1);
  expect(1, "group", 1);
  expect(2, "alphabet", 1);
  expect(3, "memory", 0);
  expect(4, "rule", 1);

  std::string name = rows[0][1];
  const std::string& gname = rows[1][1];
  Group group = Group::z();
  if (gname == "Z") {
    group = Group::z();
  } else if (gname == "Z2") {
    group = Group::z2();
  } else {
    bool found = false;
    for (const auto& g : groups)
      if (g.name() == gname) {
        group = g;
        found = true;
        break;
      }
    if (!found) throw ParseError("ca file: unknown group '" + gname + "'");
  }

  const std::string& aname = rows[2][1];
  const FiniteAlgebra* alphabet = nullptr;
  for (const auto& a : alphabets)
    if (a.name() == aname) {
      alphabet = &a;
      break;
    }
  if (!alphabet) throw ParseError("ca file: unknown alphabet '" + aname + "'");

  std::vector<GroupElem> elems;
  for (std::size_t i = 1; i < rows[3].size(); ++i)
    elems.push_back(parse_elem(group, rows[3][i]));
  MemorySet mem(group, std::move(elems));

  std::vector<int> table;
  for (std::size_t i = 1; i < rows[4].size(); ++i) {
    try {
      table.push_back(std::stoi(rows[4][i]));
    } catch (const std::exception&) {
      throw ParseError("ca file: bad rule value '" + rows[4][i] + "'");
    }
  }
  try {
    return make_ca(std::move(name), *alphabet, std::move(mem), std::move(table));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::string format_ca(const CellularAutomaton& ca) {
  std::string out = "ca " + ca.name + "\n";
  out += "group " + ca.group().name() + "\n";
  out += "alphabet " + ca.alphabet().name() + "\n";
  out += "memory";
  for (auto e : ca.rule.memory.elems()) out += " " + format_elem(ca.group(), e);
  out += "\nrule";
  for (int v : ca.rule.table) out += " " + std::to_string(v);
  out += "\n";
  return out;
}

Report verify_g_algebra(const Group& g, const FiniteAlgebra& a, std::size_t config_cap) {
  Report report;
  if (!g.is_finite()) throw Error("verify_g_algebra: group must be finite");
  int q = a.size();
  auto total = configuration_count(g, q);
  if (total > config_cap)
    throw CapError("verify_g_algebra: configuration space exceeds cap");

  // componentwise ops commute with the shift: f(g.x_1, ..., g.x_n) = g.f(x_1, ..., x_n)
  for (std::size_t opi = 0; opi < a.signature().size(); ++opi) {
    int n = a.signature().op(opi).arity;
    auto insts = pow_checked(total, static_cast<unsigned>(n));
    bool ok = true;
    std::vector<Configuration> xs;
    for (std::uint64_t inst = 0; inst < insts && ok; ++inst) {
      auto rem = inst;
      xs.clear();
      for (int i = 0; i < n; ++i) {
        xs.push_back(configuration_from_index(g, q, rem % total));
        rem /= total;
      }
      for (auto ge : g.elements()) {
        std::vector<Configuration> shifted;
        shifted.reserve(xs.size());
        for (const auto& x : xs) shifted.push_back(shift(ge, x));
        if (componentwise_op(a, opi, g, shifted) !=
            shift(ge, componentwise_op(a, opi, g, xs))) {
          ok = false;
          break;
        }
      }
    }
    report.add("g-algebra-op-" + a.signature().op(opi).name, ok,
               "G=" + g.name() + " A=" + a.name());
  }
  return report;
}

Report verify_equivariance(const Group& g, const FiniteAlgebra& a,
                           std::size_t rule_samples, std::size_t config_cap,
                           std::uint64_t seed) {
  Report report;
  if (!g.is_finite()) throw Error("verify_equivariance: group must be finite");
  int q = a.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> val(0, q - 1);
  std::uniform_int_distribution<int> mem_size(1, 2);
  bool all_equivariant = true;
  for (std::size_t r = 0; r < rule_samples; ++r) {
    std::vector<GroupElem> elems;
    int k = mem_size(rng);
    std::uniform_int_distribution<int> pick(0, g.order() - 1);
    while (static_cast<int>(elems.size()) < k) {
      auto e = elem(pick(rng));
      if (std::find(elems.begin(), elems.end(), e) == elems.end()) elems.push_back(e);
    }
    MemorySet mem(g, std::move(elems));
    auto entries = pow_checked(static_cast<std::uint64_t>(q),
                               static_cast<unsigned>(mem.size()));
    std::vector<int> table(static_cast<std::size_t>(entries));
    for (auto& v : table) v = val(rng);
    auto ca = make_ca("sample", a, std::move(mem), std::move(table));
    if (!is_shift_equivariant(ca, config_cap)) {
      all_equivariant = false;
      break;
    }
  }
  report.add("equivariance-" + g.name() + "-" + a.name(), all_equivariant,
             std::to_string(rule_samples) + " random rules");
  return report;
}

}  // namespace casa
