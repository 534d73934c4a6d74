#include "casa/endo.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "casa/error.hpp"
#include "casa/presets.hpp"

namespace casa {

ModuleEndos::ModuleEndos(const FiniteAlgebra& a, std::size_t domain_cap)
    : view_([&] {
        auto v = module_view(a);
        if (!v) throw Error("ModuleEndos: '" + a.name() + "' is not module-like");
        return *v;
      }()),
      ring_(enumerate_endomorphisms(a, domain_cap)) {
  std::vector<int> zero_table(static_cast<std::size_t>(a.size()), view_.zero_elem);
  zero_ = ring_.index_of(zero_table);
  if (zero_ < 0) throw Error("ModuleEndos: zero endomorphism missing");
}

int ModuleEndos::add(int i, int j) const {
  std::vector<int> table(static_cast<std::size_t>(algebra().size()));
  for (std::size_t x = 0; x < table.size(); ++x)
    table[x] = view_.add(ring_.items[static_cast<std::size_t>(i)].table[x],
                         ring_.items[static_cast<std::size_t>(j)].table[x]);
  int idx = ring_.index_of(table);
  if (idx < 0) throw Error("ModuleEndos: endomorphisms not closed under addition");
  return idx;
}

GroupAlgebraElement::GroupAlgebraElement(Group group, ModuleEndosPtr endos,
                                         std::vector<GroupElem> support,
                                         std::vector<int> coeffs)
    : group_(std::move(group)), endos_(std::move(endos)) {
  if (!endos_) throw Error("group algebra element: missing endomorphism context");
  if (support.size() != coeffs.size())
    throw Error("group algebra element: support/coefficient length mismatch");
  std::vector<std::pair<GroupElem, int>> entries;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!group_.contains(support[i]))
      throw Error("group algebra element: support element not in group");
    if (coeffs[i] < 0 || coeffs[i] >= static_cast<int>(endos_->size()))
      throw Error("group algebra element: coefficient index out of range");
    if (coeffs[i] == endos_->zero()) continue;
    entries.emplace_back(support[i], coeffs[i]);
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i + 1 < entries.size(); ++i)
    if (entries[i].first == entries[i + 1].first)
      throw Error("group algebra element: duplicate support element");
  for (auto& [g, c] : entries) {
    support_.push_back(g);
    coeffs_.push_back(c);
  }
}

GroupAlgebraElement GroupAlgebraElement::zero(Group group, ModuleEndosPtr endos) {
  return GroupAlgebraElement(std::move(group), std::move(endos), {}, {});
}

GroupAlgebraElement GroupAlgebraElement::delta(Group group, ModuleEndosPtr endos,
                                               GroupElem g, int endo_index) {
  return GroupAlgebraElement(std::move(group), std::move(endos), {g}, {endo_index});
}

int GroupAlgebraElement::coeff_at(GroupElem g) const {
  for (std::size_t i = 0; i < support_.size(); ++i)
    if (support_[i] == g) return coeffs_[i];
  return endos_->zero();
}

GroupAlgebraElement GroupAlgebraElement::plus(const GroupAlgebraElement& other) const {
  if (group_ != other.group_) throw Error("group algebra: group mismatch");
  if (!endos_->algebra().same_structure(other.endos_->algebra()))
    throw Error("group algebra: alphabet mismatch");
  std::map<GroupElem, int> acc;
  for (std::size_t i = 0; i < support_.size(); ++i) acc[support_[i]] = coeffs_[i];
  for (std::size_t i = 0; i < other.support_.size(); ++i) {
    auto [it, fresh] = acc.try_emplace(other.support_[i], other.coeffs_[i]);
    if (!fresh) it->second = endos_->add(it->second, other.coeffs_[i]);
  }
  std::vector<GroupElem> support;
  std::vector<int> coeffs;
  for (auto& [g, c] : acc) {
    support.push_back(g);
    coeffs.push_back(c);
  }
  return GroupAlgebraElement(group_, endos_, std::move(support), std::move(coeffs));
}

bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  return a.group_ == b.group_ && a.endos_->algebra().same_structure(b.endos_->algebra()) &&
         a.support_ == b.support_ && a.coeffs_ == b.coeffs_;
}

GroupAlgebraElement convolve(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  if (a.group() != b.group()) throw Error("convolve: group mismatch");
  if (!a.endos().algebra().same_structure(b.endos().algebra()))
    throw Error("convolve: alphabet mismatch");
  const auto& endos = a.endos();
  const Group& G = a.group();

  // (a*b)(g) = sum_h a(h) o b(h^{-1} g); iterate h over supp(a), t over
  // supp(b), accumulating at g = h*t.
  std::map<GroupElem, int> acc;
  for (std::size_t i = 0; i < a.support().size(); ++i)
    for (std::size_t j = 0; j < b.support().size(); ++j) {
      GroupElem g = G.mul(a.support()[i], b.support()[j]);
      int term = endos.compose(a.coeffs()[i], b.coeffs()[j]);
      auto [it, fresh] = acc.try_emplace(g, term);
      if (!fresh) it->second = endos.add(it->second, term);
    }
  std::vector<GroupElem> support;
  std::vector<int> coeffs;
  for (auto& [g, c] : acc) {
    support.push_back(g);
    coeffs.push_back(c);
  }
  return GroupAlgebraElement(G, a.endos_ptr(), std::move(support), std::move(coeffs));
}

CellularAutomaton psi(const GroupAlgebraElement& alpha) {
  const auto& endos = alpha.endos();
  const auto& a = endos.algebra();
  int q = a.size();
  MemorySet mem(alpha.group(),
                std::vector<GroupElem>(alpha.support().begin(), alpha.support().end()));
  auto entries = pow_checked(static_cast<std::uint64_t>(q),
                             static_cast<unsigned>(mem.size()));
  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(entries));
  std::vector<int> digits(mem.size());
  for (std::uint64_t t = 0; t < entries; ++t) {
    decode_tuple(static_cast<std::size_t>(t), q, digits);
    int acc = endos.view().zero_elem;
    for (std::size_t i = 0; i < mem.size(); ++i)
      acc = endos.view().add(acc, endos.apply(alpha.coeffs()[i], digits[i]));
    table.push_back(acc);
  }
  return make_ca("psi", a, std::move(mem), std::move(table));
}

GroupAlgebraElement psi_inverse(const CellularAutomaton& ca, ModuleEndosPtr endos) {
  if (!ca.alphabet().same_structure(endos->algebra()))
    throw Error("psi_inverse: alphabet mismatch");
  if (!is_endomorphic(ca))
    throw Error("psi_inverse: cellular automaton is not endomorphic");
  int q = ca.alphabet().size();
  int zero_elem = endos->view().zero_elem;
  std::size_t k = ca.memory_size();

  std::vector<GroupElem> support;
  std::vector<int> coeffs;
  std::vector<int> digits(k, zero_elem);
  std::vector<int> table(static_cast<std::size_t>(q));
  for (std::size_t j = 0; j < k; ++j) {
    std::fill(digits.begin(), digits.end(), zero_elem);
    for (int v = 0; v < q; ++v) {
      digits[j] = v;
      table[static_cast<std::size_t>(v)] = ca.rule.table[encode_tuple(digits, q)];
    }
    int idx = endos->index_of(table);
    if (idx < 0)
      throw Error("psi_inverse: coordinate map is not an endomorphism");
    support.push_back(ca.rule.memory.at(j));
    coeffs.push_back(idx);
  }
  return GroupAlgebraElement(ca.group(), std::move(endos), std::move(support),
                             std::move(coeffs));
}

EndoCAFamily enumerate_endoca(const Group& g, const MemorySet& s, const FiniteAlgebra& a,
                              std::size_t domain_cap) {
  if (s.group() != g) throw Error("enumerate_endoca: memory set is over another group");
  auto dom = power_algebra(a, s.size(), domain_cap);
  auto homs = enumerate_homs(dom, a, domain_cap);
  EndoCAFamily family{g, s, a, {}};
  family.items.reserve(homs.items.size());
  for (std::size_t i = 0; i < homs.items.size(); ++i)
    family.items.push_back(
        make_ca("endoca" + std::to_string(i), a, s, homs.items[i].table));
  return family;
}

namespace {

// Scalar op tables forming a finite field under pointwise + and composition.
// Returns the field size when they do.
std::optional<std::size_t> scalar_field_size(const ModuleView& view) {
  const auto& a = view.algebra;
  int q = a.size();
  std::vector<std::vector<int>> scalars;
  for (auto opi : view.scalar_ops) {
    std::vector<int> t(a.table(opi).begin(), a.table(opi).end());
    scalars.push_back(std::move(t));
  }
  std::sort(scalars.begin(), scalars.end());
  if (std::adjacent_find(scalars.begin(), scalars.end()) != scalars.end())
    return std::nullopt;

  std::vector<int> zero(static_cast<std::size_t>(q), view.zero_elem);
  std::vector<int> id(static_cast<std::size_t>(q));
  for (int x = 0; x < q; ++x) id[static_cast<std::size_t>(x)] = x;
  auto find = [&](const std::vector<int>& t) {
    return std::binary_search(scalars.begin(), scalars.end(), t);
  };
  if (!find(zero) || !find(id)) return std::nullopt;

  auto compose_t = [&](const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> r(static_cast<std::size_t>(q));
    for (int x = 0; x < q; ++x)
      r[static_cast<std::size_t>(x)] = f[static_cast<std::size_t>(g[static_cast<std::size_t>(x)])];
    return r;
  };
  auto add_t = [&](const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> r(static_cast<std::size_t>(q));
    for (int x = 0; x < q; ++x)
      r[static_cast<std::size_t>(x)] =
          view.add(f[static_cast<std::size_t>(x)], g[static_cast<std::size_t>(x)]);
    return r;
  };
  for (const auto& f : scalars)
    for (const auto& g : scalars) {
      if (!find(add_t(f, g))) return std::nullopt;
      auto fg = compose_t(f, g);
      if (!find(fg)) return std::nullopt;
      if (fg != compose_t(g, f)) return std::nullopt;
    }
  for (const auto& f : scalars) {
    if (f == zero) continue;
    bool invertible = false;
    for (const auto& g : scalars)
      if (compose_t(f, g) == id) {
        invertible = true;
        break;
      }
    if (!invertible) return std::nullopt;
  }
  return scalars.size();
}

bool is_cyclic_under_add(const ModuleView& view) {
  int q = view.algebra.size();
  for (int g = 0; g < q; ++g) {
    int seen = 0, x = view.zero_elem;
    do {
      x = view.add(x, g);
      ++seen;
    } while (x != view.zero_elem);
    if (seen == q) return true;
  }
  return false;
}

}  // namespace

EndoCount count_endoca(const Group& g, const MemorySet& s, const FiniteAlgebra& a,
                       std::size_t domain_cap) {
  if (s.group() != g) throw Error("count_endoca: memory set is over another group");
  auto size = s.size();
  EndoCount out;

  auto view = module_view(a);
  if (view) {
    if (auto field = scalar_field_size(*view)) {
      // q = |F|^n forces n
      std::size_t n = 0;
      std::uint64_t p = 1;
      while (p < static_cast<std::uint64_t>(a.size())) {
        p *= *field;
        ++n;
      }
      if (p == static_cast<std::uint64_t>(a.size()) && n >= 1)
        out.routes.emplace_back(
            "vector-space |F|^(n^2 s)",
            pow_checked(*field, static_cast<unsigned>(n * n * size)));
    }
    if (is_cyclic_under_add(*view))
      out.routes.emplace_back("cyclic n^s",
                              pow_checked(static_cast<std::uint64_t>(a.size()),
                                          static_cast<unsigned>(size)));
    auto ring = enumerate_endomorphisms(a, domain_cap);
    out.routes.emplace_back("module |End(A)|^s",
                            pow_checked(ring.size(), static_cast<unsigned>(size)));
  }

  try {
    auto bview = boolean_view(a);
    out.routes.emplace_back(
        "boolean (k|S|)^k",
        pow_checked(bview.atom_count() * size, static_cast<unsigned>(bview.atom_count())));
  } catch (const Error&) {
  }

  auto dom_size = pow_checked(static_cast<std::uint64_t>(a.size()),
                              static_cast<unsigned>(size));
  if (dom_size <= domain_cap) {
    auto dom = power_algebra(a, size, domain_cap);
    out.routes.emplace_back("generic", enumerate_homs(dom, a, domain_cap).count());
  }

  if (out.routes.empty())
    throw CapError("count_endoca: no closed form applies and the generic domain exceeds the cap");
  for (const auto& [m, c] : out.routes)
    if (c != out.routes.front().second)
      throw Error("count_endoca: methods disagree: " + out.routes.front().first + "=" +
                  std::to_string(out.routes.front().second) + " vs " + m + "=" +
                  std::to_string(c));
  out.count = out.routes.front().second;
  out.method = out.routes.front().first;
  return out;
}

std::vector<int> classify_eca(EcaPredicate predicate, const FiniteAlgebra* alphabet) {
  FiniteAlgebra alpha = presets::cyclic(2);
  switch (predicate) {
    case EcaPredicate::additive:
      break;
    case EcaPredicate::boolean_hom:
      alpha = presets::bool2();
      break;
    case EcaPredicate::endomorphic_under:
      if (!alphabet) throw Error("classify_eca: predicate needs an alphabet");
      if (alphabet->size() != 2)
        throw Error("classify_eca: alphabet must have two elements");
      alpha = *alphabet;
      break;
    case EcaPredicate::all: {
      std::vector<int> all(256);
      for (int m = 0; m < 256; ++m) all[static_cast<std::size_t>(m)] = m;
      return all;
    }
  }

  std::vector<int> accepted;
  for (int m = 0; m < 256; ++m) {
    auto ca = eca(m, alpha);
    if (!is_endomorphic(ca)) continue;
    if (predicate == EcaPredicate::boolean_hom) {
      auto min = minimal_memory(ca);
      bool projection = min.memory_size() == 1 && min.rule.table == std::vector<int>{0, 1};
      if (!projection)
        throw Error("classify_eca: rule " + std::to_string(m) +
                    " accepted as Boolean but its minimal rule is not a projection");
    }
    accepted.push_back(m);
  }
  return accepted;
}

Report verify_phi(const Group& g, const MemorySet& s, const FiniteAlgebra& a,
                  std::size_t domain_cap, std::size_t samples, std::uint64_t seed) {
  auto ent = is_entropic(a);
  if (!ent.entropic)
    throw Error("verify_phi: alphabet '" + a.name() + "' is not entropic (" +
                ent.witness->describe(a) + ")");
  Report report;

  auto family = enumerate_endoca(g, s, a, domain_cap);
  auto dom = power_algebra(a, s.size(), domain_cap);
  auto homs = enumerate_homs(dom, a, domain_cap);

  bool bijection = family.count() == homs.count();
  for (std::size_t i = 0; bijection && i < family.items.size(); ++i)
    bijection = family.items[i].rule.table == homs.items[i].table;
  report.add("phi-bijection", bijection,
             "|EndCA(G,S;A)| = |Hom(A^S,A)| = " + std::to_string(homs.count()));

  std::mt19937_64 rng(seed);
  for (std::size_t opi = 0; opi < a.signature().size(); ++opi) {
    const auto& op = a.signature().op(opi);
    int n = op.arity;
    bool ok = true;
    std::uint64_t checked = 0;

    auto check_tuple = [&](std::span<const std::size_t> pick) {
      std::vector<CellularAutomaton> cas;
      std::vector<HomMap> hs;
      for (auto i : pick) {
        cas.push_back(family.items[i]);
        hs.push_back(homs.items[i]);
      }
      CellularAutomaton combined =
          n == 0 ? extend_memory(nullary_ca(g, a, op.name), s, domain_cap)
                 : pointwise_combine(op.name, cas, domain_cap);
      HomMap hom = hom_algebra_op(a, op.name, hs, &dom);
      ++checked;
      return combined.rule.table == hom.table && combined.rule.memory == s;
    };

    auto tuples = pow_checked(homs.count(), static_cast<unsigned>(n));
    if (tuples <= domain_cap) {
      std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
      for (std::uint64_t t = 0; t < tuples && ok; ++t) {
        auto rem = t;
        for (int i = 0; i < n; ++i) {
          pick[static_cast<std::size_t>(i)] = static_cast<std::size_t>(rem % homs.count());
          rem /= homs.count();
        }
        ok = check_tuple(pick);
      }
    } else {
      std::uniform_int_distribution<std::size_t> dist(0, homs.items.size() - 1);
      std::vector<std::size_t> pick(static_cast<std::size_t>(n));
      for (std::size_t t = 0; t < samples && ok; ++t) {
        for (auto& p : pick) p = dist(rng);
        ok = check_tuple(pick);
      }
    }
    report.add("phi-preserves-op-" + op.name, ok,
               std::to_string(checked) + " tuples");
  }
  return report;
}

Report verify_group_algebra(const Group& g, const FiniteAlgebra& a, const MemorySet& s,
                            std::size_t domain_cap, std::size_t pair_cap,
                            std::size_t samples, std::uint64_t seed) {
  auto endos = std::make_shared<const ModuleEndos>(a, domain_cap);
  Report report;

  std::size_t n = endos->size();
  auto total = pow_checked(n, static_cast<unsigned>(s.size()));

  // all alpha with supp(alpha) contained in S
  std::vector<GroupAlgebraElement> elements;
  elements.reserve(static_cast<std::size_t>(total));
  std::vector<GroupElem> supp(s.elems().begin(), s.elems().end());
  for (std::uint64_t t = 0; t < total; ++t) {
    std::vector<int> coeffs(s.size());
    auto rem = t;
    for (std::size_t i = 0; i < s.size(); ++i) {
      coeffs[i] = static_cast<int>(rem % n);
      rem /= n;
    }
    elements.emplace_back(g, endos, supp, std::move(coeffs));
  }

  // (i) psi is a bijection onto EndCA(G,S;A)
  auto family = enumerate_endoca(g, s, a, domain_cap);
  std::vector<std::vector<int>> images;
  images.reserve(elements.size());
  for (const auto& alpha : elements)
    images.push_back(extend_memory(psi(alpha), s, domain_cap).rule.table);
  std::sort(images.begin(), images.end());
  bool injective = std::adjacent_find(images.begin(), images.end()) == images.end();
  std::vector<std::vector<int>> targets;
  targets.reserve(family.items.size());
  for (const auto& item : family.items) targets.push_back(item.rule.table);
  std::sort(targets.begin(), targets.end());
  report.add("psi-bijection", injective && images == targets,
             "|End(A)|^|S| = " + std::to_string(total));

  // pair set: exhaustive while |End(A)|^|S| stays within pair_cap
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (total <= pair_cap) {
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = 0; j < elements.size(); ++j) pairs.emplace_back(i, j);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dist(0, elements.size() - 1);
    for (std::size_t t = 0; t < samples; ++t) pairs.emplace_back(dist(rng), dist(rng));
  }

  // (ii) additivity; (iii) convolution matches composition
  bool additive = true;
  bool multiplicative = true;
  for (auto [i, j] : pairs) {
    const auto& alpha = elements[i];
    const auto& beta = elements[j];
    auto ca_a = psi(alpha);
    auto ca_b = psi(beta);
    if (additive) {
      auto lhs = psi(alpha.plus(beta));
      auto rhs = pointwise_combine("+", std::vector<CellularAutomaton>{ca_a, ca_b},
                                   domain_cap);
      additive = equivalent(lhs, rhs);
    }
    if (multiplicative) {
      auto lhs = psi(convolve(alpha, beta));
      auto rhs = minimal_memory(compose(ca_a, ca_b, domain_cap));
      multiplicative = same_rule(lhs, rhs);
    }
    if (!additive && !multiplicative) break;
  }
  report.add("psi-additive", additive, std::to_string(pairs.size()) + " pairs");
  report.add("psi-convolution-composition", multiplicative,
             std::to_string(pairs.size()) + " pairs");
  return report;
}

Report verify_direct_limit(const Group& g, std::span<const MemorySet> chain,
                           const FiniteAlgebra& a, std::size_t domain_cap) {
  auto ent = is_entropic(a);
  if (!ent.entropic)
    throw Error("verify_direct_limit: alphabet '" + a.name() + "' is not entropic (" +
                ent.witness->describe(a) + ")");
  if (chain.empty()) throw Error("verify_direct_limit: empty chain");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!chain[i].subset_of(chain[i + 1]))
      throw Error("verify_direct_limit: chain is not increasing");

  Report report;
  std::vector<EndoCAFamily> families;
  std::string sizes;
  for (const auto& s : chain) {
    families.push_back(enumerate_endoca(g, s, a, domain_cap));
    if (!sizes.empty()) sizes += ",";
    sizes += std::to_string(families.back().count());
  }
  report.add("family-sizes", true, sizes);

  // injective embeddings with images inside the larger family
  bool injective = true;
  for (std::size_t i = 0; i + 1 < chain.size() && injective; ++i)
    for (std::size_t j = i + 1; j < chain.size() && injective; ++j) {
      std::vector<std::vector<int>> images;
      for (const auto& item : families[i].items)
        images.push_back(extend_memory(item, chain[j], domain_cap).rule.table);
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
        injective = false;
        break;
      }
      for (const auto& img : images) {
        bool found = false;
        for (const auto& item : families[j].items)
          if (item.rule.table == img) {
            found = true;
            break;
          }
        if (!found) {
          injective = false;
          break;
        }
      }
    }
  report.add("embeddings-injective", injective);

  // extending in two hops equals extending directly
  bool composable = true;
  for (std::size_t i = 0; i + 2 < chain.size() && composable; ++i)
    for (const auto& item : families[i].items) {
      auto two_hops =
          extend_memory(extend_memory(item, chain[i + 1], domain_cap), chain[i + 2],
                        domain_cap);
      auto direct = extend_memory(item, chain[i + 2], domain_cap);
      if (!same_rule(two_hops, direct)) {
        composable = false;
        break;
      }
    }
  report.add("embeddings-compose", composable);

  // embeddings preserve the pointwise operations
  bool preserves = true;
  for (std::size_t opi = 0; opi < a.signature().size() && preserves; ++opi) {
    const auto& op = a.signature().op(opi);
    int n = op.arity;
    for (std::size_t i = 0; i + 1 < chain.size() && preserves; ++i) {
      auto count = families[i].count();
      auto tuples = pow_checked(count, static_cast<unsigned>(n));
      std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
      for (std::uint64_t t = 0; t < tuples && preserves; ++t) {
        auto rem = t;
        for (int c = 0; c < n; ++c) {
          pick[static_cast<std::size_t>(c)] = static_cast<std::size_t>(rem % count);
          rem /= count;
        }
        std::vector<CellularAutomaton> small, big;
        for (auto idx : pick) {
          small.push_back(families[i].items[idx]);
          big.push_back(extend_memory(families[i].items[idx], chain[i + 1], domain_cap));
        }
        auto combined_small =
            n == 0 ? nullary_ca(g, a, op.name) : pointwise_combine(op.name, small, domain_cap);
        auto combined_big =
            n == 0 ? nullary_ca(g, a, op.name) : pointwise_combine(op.name, big, domain_cap);
        preserves = equivalent(extend_memory(combined_small, chain[i + 1], domain_cap),
                               combined_big);
      }
    }
  }
  report.add("embeddings-preserve-ops", preserves);

  // minimal memory recovers the embedded item
  bool roundtrip = true;
  for (std::size_t i = 0; i + 1 < chain.size() && roundtrip; ++i)
    for (const auto& item : families[i].items) {
      auto extended = extend_memory(item, chain[i + 1], domain_cap);
      if (!equivalent(minimal_memory(extended), item)) {
        roundtrip = false;
        break;
      }
    }
  report.add("embeddings-minimal-roundtrip", roundtrip);
  return report;
}

Report verify_th_local(const Group& g, const FiniteAlgebra& a, const MemorySet& s,
                       std::size_t config_cap) {
  if (!g.is_finite()) throw Error("verify_th_local: group must be finite");
  int q = a.size();
  auto configs = configuration_count(g, q);
  if (configs > config_cap)
    throw CapError("verify_th_local: configuration space exceeds cap");

  auto rule_entries = pow_checked(static_cast<std::uint64_t>(q),
                                  static_cast<unsigned>(s.size()));
  auto rule_count = pow_checked(static_cast<std::uint64_t>(q),
                                static_cast<unsigned>(rule_entries));

  auto global_endomorphic = [&](const CellularAutomaton& ca) {
    std::vector<Configuration> xs;
    std::vector<int> vals;
    for (std::size_t opi = 0; opi < a.signature().size(); ++opi) {
      int n = a.signature().op(opi).arity;
      auto insts = pow_checked(configs, static_cast<unsigned>(n));
      for (std::uint64_t inst = 0; inst < insts; ++inst) {
        auto rem = inst;
        xs.clear();
        for (int i = 0; i < n; ++i) {
          xs.push_back(configuration_from_index(g, q, rem % configs));
          rem /= configs;
        }
        std::vector<Configuration> applied;
        applied.reserve(xs.size());
        for (const auto& x : xs) applied.push_back(apply(ca, x));
        if (apply(ca, componentwise_op(a, opi, g, xs)) !=
            componentwise_op(a, opi, g, applied))
          return false;
      }
    }
    return true;
  };

  std::uint64_t mismatches = 0;
  std::vector<int> table(static_cast<std::size_t>(rule_entries));
  for (std::uint64_t r = 0; r < rule_count; ++r) {
    decode_tuple(static_cast<std::size_t>(r), q, table);
    auto ca = make_ca("rule", a, s, table);
    if (is_endomorphic(ca) != global_endomorphic(ca)) ++mismatches;
  }
  Report report;
  report.add("local-global-agreement", mismatches == 0,
             std::to_string(rule_count) + " rules, " + std::to_string(mismatches) +
                 " mismatches");
  return report;
}

Report verify_boolean_counts(std::size_t max_s,
                             std::span<const std::pair<std::size_t, std::size_t>> ks_pairs,
                             std::size_t domain_cap) {
  Report report;
  auto two = presets::bool2();

  for (std::size_t s = 1; s <= max_s; ++s) {
    auto dom = power_algebra(two, s, domain_cap);
    auto generic = enumerate_homs(dom, two, domain_cap);
    auto special = boolean_homs(1, s, domain_cap);
    bool ok = generic.count() == s && special.count() == s &&
              generic.items.size() == special.items.size();
    for (std::size_t i = 0; ok && i < generic.items.size(); ++i)
      ok = generic.items[i].table == special.items[i].table;
    report.add("hom-count-2^" + std::to_string(s) + "-to-2", ok,
               "expect " + std::to_string(s) + ", got " + std::to_string(generic.count()));
  }

  for (auto [k, s] : ks_pairs) {
    auto expected = pow_checked(k * s, static_cast<unsigned>(k));
    auto special = boolean_homs(k, s, domain_cap);
    auto dom = power_algebra(two, k * s, domain_cap);
    auto cod = power_algebra(two, k, domain_cap);
    auto generic = enumerate_homs(dom, cod, domain_cap);
    bool ok = special.count() == expected && generic.count() == expected;
    for (std::size_t i = 0; ok && i < generic.items.size(); ++i)
      ok = generic.items[i].table == special.items[i].table;
    ok = ok && count_homs(dom, cod, std::nullopt, domain_cap) == expected;
    report.add("boolean-count-k" + std::to_string(k) + "-s" + std::to_string(s), ok,
               "(ks)^k = " + std::to_string(expected));
  }
  return report;
}

}  // namespace casa
