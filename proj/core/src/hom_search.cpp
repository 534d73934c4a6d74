#include "casa/hom_search.hpp"

#include <algorithm>
#include <map>

#include "casa/error.hpp"
#include "casa/presets.hpp"

namespace casa {

namespace {

// Backtracking over the value table. Variables are domain elements in index
// order, values tried ascending. Unit propagation: an op instance whose
// arguments are all assigned forces the image of its result element;
// a clash prunes the branch. DFS in this order emits solutions sorted
// lexicographically by table.
class HomSolver {
 public:
  HomSolver(const FiniteAlgebra& dom, const FiniteAlgebra& cod)
      : dom_(dom), cod_(cod), assign_(static_cast<std::size_t>(dom.size()), -1) {}

  std::vector<std::vector<int>> run() {
    if (!propagate()) return {};
    search();
    return std::move(solutions_);
  }

 private:
  bool propagate() {
    bool changed = true;
    std::vector<int> args, mapped;
    while (changed) {
      changed = false;
      for (std::size_t opi = 0; opi < dom_.signature().size(); ++opi) {
        int n = dom_.signature().op(opi).arity;
        auto tuples = pow_checked(static_cast<std::uint64_t>(dom_.size()),
                                  static_cast<unsigned>(n));
        args.assign(static_cast<std::size_t>(n), 0);
        mapped.assign(static_cast<std::size_t>(n), 0);
        for (std::uint64_t t = 0; t < tuples; ++t) {
          decode_tuple(static_cast<std::size_t>(t), dom_.size(), args);
          bool ready = true;
          for (int i = 0; i < n && ready; ++i) {
            int v = assign_[static_cast<std::size_t>(args[static_cast<std::size_t>(i)])];
            if (v < 0)
              ready = false;
            else
              mapped[static_cast<std::size_t>(i)] = v;
          }
          if (!ready) continue;
          int result = dom_.eval(opi, args);
          int required = cod_.eval(opi, mapped);
          int& slot = assign_[static_cast<std::size_t>(result)];
          if (slot < 0) {
            slot = required;
            changed = true;
          } else if (slot != required) {
            return false;
          }
        }
      }
    }
    return true;
  }

  void search() {
    int var = -1;
    for (std::size_t i = 0; i < assign_.size(); ++i)
      if (assign_[i] < 0) {
        var = static_cast<int>(i);
        break;
      }
    if (var < 0) {
      solutions_.push_back(assign_);
      return;
    }
    std::vector<int> saved = assign_;
    for (int v = 0; v < cod_.size(); ++v) {
      assign_[static_cast<std::size_t>(var)] = v;
      if (propagate()) search();
      assign_ = saved;
    }
  }

  const FiniteAlgebra& dom_;
  const FiniteAlgebra& cod_;
  std::vector<int> assign_;
  std::vector<std::vector<int>> solutions_;
};

bool is_power_of(const FiniteAlgebra& dom, const FiniteAlgebra& cod, std::size_t s) {
  if (dom.signature() != cod.signature()) return false;
  std::uint64_t expect;
  try {
    expect = pow_checked(static_cast<std::uint64_t>(cod.size()), static_cast<unsigned>(s));
  } catch (const Error&) {
    return false;
  }
  if (static_cast<std::uint64_t>(dom.size()) != expect) return false;
  // componentwise property of every table entry
  int q = cod.size();
  std::vector<int> args, digits, coord_args, expected(s);
  for (std::size_t opi = 0; opi < dom.signature().size(); ++opi) {
    int n = dom.signature().op(opi).arity;
    auto tuples = pow_checked(static_cast<std::uint64_t>(dom.size()),
                              static_cast<unsigned>(n));
    args.assign(static_cast<std::size_t>(n), 0);
    digits.assign(static_cast<std::size_t>(n) * s, 0);
    coord_args.assign(static_cast<std::size_t>(n), 0);
    for (std::uint64_t t = 0; t < tuples; ++t) {
      decode_tuple(static_cast<std::size_t>(t), dom.size(), args);
      for (int i = 0; i < n; ++i)
        decode_tuple(static_cast<std::size_t>(args[static_cast<std::size_t>(i)]), q,
                     std::span<int>(digits).subspan(static_cast<std::size_t>(i) * s, s));
      for (std::size_t c = 0; c < s; ++c) {
        for (int i = 0; i < n; ++i)
          coord_args[static_cast<std::size_t>(i)] = digits[static_cast<std::size_t>(i) * s + c];
        expected[c] = cod.eval(opi, coord_args);
      }
      if (dom.eval(opi, args) != static_cast<int>(encode_tuple(expected, q))) return false;
    }
  }
  return true;
}

}  // namespace

HomEnumeration enumerate_homs(const FiniteAlgebra& dom, const FiniteAlgebra& cod,
                              std::size_t domain_cap) {
  if (dom.signature() != cod.signature())
    throw Error("enumerate_homs: signature mismatch between '" + dom.name() + "' and '" +
                cod.name() + "'");
  if (static_cast<std::size_t>(dom.size()) > domain_cap)
    throw CapError("enumerate_homs: domain '" + dom.name() + "' has " +
                   std::to_string(dom.size()) + " elements, cap is " +
                   std::to_string(domain_cap));
  HomEnumeration out{dom, cod, {}};
  for (auto& table : HomSolver(dom, cod).run())
    out.items.push_back(HomMap{dom, cod, std::move(table)});
  return out;
}

std::uint64_t count_homs(const FiniteAlgebra& dom, const FiniteAlgebra& cod,
                         std::optional<std::size_t> power_exponent,
                         std::size_t domain_cap) {
  if (dom.signature() != cod.signature())
    throw Error("count_homs: signature mismatch");
  if (cod.size() == 1) return 1;

  // Boolean algebras: Hom(2^m, 2^k) splits through the codomain atoms,
  // giving m^k.
  try {
    auto dom_view = boolean_view(dom);
    auto cod_view = boolean_view(cod);
    return pow_checked(dom_view.atom_count(),
                       static_cast<unsigned>(cod_view.atom_count()));
  } catch (const Error&) {
  }

  // Module-like codomain with dom = cod^s: |End(cod)|^s.
  if (power_exponent && is_power_of(dom, cod, *power_exponent)) {
    if (module_view(cod)) {
      auto ring = enumerate_endomorphisms(cod, domain_cap);
      return pow_checked(ring.size(), static_cast<unsigned>(*power_exponent));
    }
  }

  return enumerate_homs(dom, cod, domain_cap).count();
}

int EndomorphismRing::index_of(std::span<const int> table) const {
  for (std::size_t i = 0; i < items.size(); ++i)
    if (std::equal(items[i].table.begin(), items[i].table.end(), table.begin(),
                   table.end()))
      return static_cast<int>(i);
  return -1;
}

EndomorphismRing enumerate_endomorphisms(const FiniteAlgebra& a, std::size_t domain_cap) {
  EndomorphismRing ring{a, enumerate_homs(a, a, domain_cap).items, {}, -1};
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < ring.items.size(); ++i)
    index[ring.items[i].table] = static_cast<int>(i);

  auto id = identity_hom(a);
  ring.identity_index = index.at(id.table);

  ring.composition.assign(ring.items.size(), std::vector<int>(ring.items.size(), -1));
  std::vector<int> table(static_cast<std::size_t>(a.size()));
  for (std::size_t i = 0; i < ring.items.size(); ++i)
    for (std::size_t j = 0; j < ring.items.size(); ++j) {
      for (std::size_t x = 0; x < table.size(); ++x)
        table[x] = ring.items[i].table[static_cast<std::size_t>(ring.items[j].table[x])];
      auto it = index.find(table);
      if (it == index.end())
        throw Error("enumerate_endomorphisms: ring not closed under composition");
      ring.composition[i][j] = it->second;
    }
  return ring;
}

int ModuleView::add(int a, int b) const {
  int args[2] = {a, b};
  return algebra.eval(plus_op, args);
}

int ModuleView::neg(int a) const {
  for (int b = 0; b < algebra.size(); ++b)
    if (add(a, b) == zero_elem) return b;
  throw Error("module view: no inverse");  // unreachable after verification
}

std::optional<ModuleView> module_view(const FiniteAlgebra& a) {
  int plus = a.signature().find("+");
  int zero = a.signature().find("0");
  if (plus < 0 || a.signature().op(static_cast<std::size_t>(plus)).arity != 2) return std::nullopt;
  if (zero < 0 || a.signature().op(static_cast<std::size_t>(zero)).arity != 0) return std::nullopt;

  ModuleView view{a, static_cast<std::size_t>(plus), static_cast<std::size_t>(zero), {}, 0};
  for (std::size_t i = 0; i < a.signature().size(); ++i) {
    if (i == view.plus_op || i == view.zero_op) continue;
    if (a.signature().op(i).arity != 1) return std::nullopt;
    view.scalar_ops.push_back(i);
  }
  view.zero_elem = a.eval(view.zero_op, {});

  int q = a.size();
  for (int x = 0; x < q; ++x) {
    if (view.add(x, view.zero_elem) != x || view.add(view.zero_elem, x) != x)
      return std::nullopt;
    bool has_inverse = false;
    for (int y = 0; y < q && !has_inverse; ++y)
      has_inverse = view.add(x, y) == view.zero_elem && view.add(y, x) == view.zero_elem;
    if (!has_inverse) return std::nullopt;
    for (int y = 0; y < q; ++y) {
      if (view.add(x, y) != view.add(y, x)) return std::nullopt;
      for (int z = 0; z < q; ++z)
        if (view.add(view.add(x, y), z) != view.add(x, view.add(y, z))) return std::nullopt;
    }
  }
  // Scalars must distribute over +; together with the group laws this is
  // exactly entropicity for this signature.
  if (!is_entropic(a).entropic) return std::nullopt;
  return view;
}

HomEnumeration module_homs(const FiniteAlgebra& a, std::size_t s, std::size_t domain_cap) {
  auto view = module_view(a);
  if (!view)
    throw Error("module_homs: '" + a.name() + "' is not module-like");
  auto ring = enumerate_endomorphisms(a, domain_cap);
  auto dom = power_algebra(a, s, domain_cap);

  HomEnumeration out{dom, a, {}};
  std::size_t dom_size = static_cast<std::size_t>(dom.size());
  std::vector<int> pick(s, 0);
  std::vector<int> digits(s);
  bool done = false;
  while (!done) {
    std::vector<int> table(dom_size);
    for (std::size_t y = 0; y < dom_size; ++y) {
      decode_tuple(y, a.size(), digits);
      int acc = view->zero_elem;
      for (std::size_t i = 0; i < s; ++i)
        acc = view->add(acc, ring.items[static_cast<std::size_t>(pick[i])].table[
                                 static_cast<std::size_t>(digits[i])]);
      table[y] = acc;
    }
    out.items.push_back(HomMap{dom, a, std::move(table)});
    done = true;
    for (std::size_t i = s; i-- > 0;) {
      if (++pick[i] < static_cast<int>(ring.size())) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
    if (s == 0) break;
  }
  std::sort(out.items.begin(), out.items.end(),
            [](const HomMap& x, const HomMap& y) { return x.table < y.table; });
  return out;
}

int BooleanView::meet(int a, int b) const {
  int args[2] = {a, b};
  return algebra.eval(meet_op, args);
}

int BooleanView::join(int a, int b) const {
  int args[2] = {a, b};
  return algebra.eval(join_op, args);
}

int BooleanView::complement(int a) const {
  int args[1] = {a};
  return algebra.eval(not_op, args);
}

bool BooleanView::leq(int a, int b) const { return join(a, b) == b; }

BooleanView boolean_view(const FiniteAlgebra& b) {
  auto need = [&](const char* name, int arity) {
    int i = b.signature().find(name);
    if (i < 0 || b.signature().op(static_cast<std::size_t>(i)).arity != arity)
      throw Error("boolean_view: '" + b.name() + "' lacks " + std::to_string(arity) +
                  "-ary op '" + name + "'");
    return static_cast<std::size_t>(i);
  };
  BooleanView view{b, need("and", 2), need("or", 2), need("not", 1), 0, 0, {}};
  view.bottom = b.eval(need("0", 0), {});
  view.top = b.eval(need("1", 0), {});

  int q = b.size();
  auto fail = [&](const std::string& law, int x, int y = -1) {
    std::string msg = "boolean_view: '" + b.name() + "' violates " + law + " at " +
                      b.elem_label(x);
    if (y >= 0) msg += "," + b.elem_label(y);
    throw Error(msg);
  };
  for (int x = 0; x < q; ++x) {
    if (view.join(x, view.bottom) != x) fail("identity x|0=x", x);
    if (view.meet(x, view.top) != x) fail("identity x&1=x", x);
    if (view.join(x, view.complement(x)) != view.top) fail("complement x|~x=1", x);
    if (view.meet(x, view.complement(x)) != view.bottom) fail("complement x&~x=0", x);
    for (int y = 0; y < q; ++y) {
      if (view.join(x, y) != view.join(y, x)) fail("commutativity of or", x, y);
      if (view.meet(x, y) != view.meet(y, x)) fail("commutativity of and", x, y);
      for (int z = 0; z < q; ++z) {
        if (view.join(view.join(x, y), z) != view.join(x, view.join(y, z)))
          fail("associativity of or", x, y);
        if (view.meet(view.meet(x, y), z) != view.meet(x, view.meet(y, z)))
          fail("associativity of and", x, y);
        if (view.meet(x, view.join(y, z)) != view.join(view.meet(x, y), view.meet(x, z)))
          fail("distributivity of and over or", x, y);
        if (view.join(x, view.meet(y, z)) != view.meet(view.join(x, y), view.join(x, z)))
          fail("distributivity of or over and", x, y);
      }
    }
  }

  for (int x = 0; x < q; ++x) {
    if (x == view.bottom) continue;
    bool minimal = true;
    for (int y = 0; y < q && minimal; ++y)
      if (y != view.bottom && y != x && view.leq(y, x)) minimal = false;
    if (minimal) view.atoms.push_back(x);
  }

  auto expected = pow_checked(2, static_cast<unsigned>(view.atoms.size()));
  if (static_cast<std::uint64_t>(q) != expected)
    throw Error("boolean_view: '" + b.name() + "' is not the power set of its atoms");
  // every element must be the join of the atoms below it, all distinct
  std::vector<std::uint64_t> masks;
  for (int x = 0; x < q; ++x) {
    int join_of_atoms = view.bottom;
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < view.atoms.size(); ++i)
      if (view.leq(view.atoms[i], x)) {
        join_of_atoms = view.join(join_of_atoms, view.atoms[i]);
        mask |= std::uint64_t{1} << i;
      }
    if (join_of_atoms != x)
      throw Error("boolean_view: element " + b.elem_label(x) +
                  " is not the join of the atoms below it");
    masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  if (std::adjacent_find(masks.begin(), masks.end()) != masks.end())
    throw Error("boolean_view: atom decomposition is not injective");
  return view;
}

std::vector<int> principal_ideal(const BooleanView& b, int y) {
  std::vector<int> out;
  for (int x = 0; x < b.algebra.size(); ++x)
    if (b.leq(x, y)) out.push_back(x);
  return out;
}

std::vector<std::vector<int>> maximal_ideals(const BooleanView& b) {
  std::vector<std::vector<int>> out;
  out.reserve(b.atoms.size());
  for (int a : b.atoms) out.push_back(principal_ideal(b, b.complement(a)));
  return out;
}

std::vector<int> kernel(const HomMap& phi) {
  int zi = phi.codomain.signature().find("0");
  if (zi < 0 || phi.codomain.signature().op(static_cast<std::size_t>(zi)).arity != 0)
    throw Error("kernel: codomain has no distinguished element '0'");
  int zero = phi.codomain.eval(static_cast<std::size_t>(zi), {});
  std::vector<int> out;
  for (std::size_t x = 0; x < phi.table.size(); ++x)
    if (phi.table[x] == zero) out.push_back(static_cast<int>(x));
  return out;
}

bool is_ideal(const BooleanView& b, std::span<const int> subset) {
  std::vector<bool> in(static_cast<std::size_t>(b.algebra.size()), false);
  for (int x : subset) in[static_cast<std::size_t>(x)] = true;
  if (!in[static_cast<std::size_t>(b.bottom)]) return false;
  for (int x : subset)
    for (int y : subset)
      if (!in[static_cast<std::size_t>(b.join(x, y))]) return false;
  for (int x : subset)
    for (int z = 0; z < b.algebra.size(); ++z)
      if (!in[static_cast<std::size_t>(b.meet(x, z))]) return false;
  return true;
}

HomEnumeration boolean_homs(std::size_t k, std::size_t s, std::size_t domain_cap) {
  if (k == 0 || s == 0) throw Error("boolean_homs: k and s must be positive");
  auto two = presets::bool2();
  auto dom = power_algebra(two, k * s, domain_cap);
  auto cod = power_algebra(two, k, domain_cap);

  std::size_t ks = k * s;
  auto dom_size = static_cast<std::size_t>(dom.size());
  // coordinate c of element x is bit (ks-1-c); same codec as power_algebra
  auto coord = [](std::size_t x, std::size_t width, std::size_t c) {
    return (x >> (width - 1 - c)) & 1u;
  };

  HomEnumeration out{dom, cod, {}};
  std::vector<std::size_t> pick(k, 0);
  bool done = false;
  while (!done) {
    std::vector<int> table(dom_size);
    for (std::size_t x = 0; x < dom_size; ++x) {
      std::size_t img = 0;
      for (std::size_t i = 0; i < k; ++i)
        img |= coord(x, ks, pick[i]) << (k - 1 - i);
      table[x] = static_cast<int>(img);
    }
    out.items.push_back(HomMap{dom, cod, std::move(table)});
    done = true;
    for (std::size_t i = k; i-- > 0;) {
      if (++pick[i] < ks) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
  }
  std::sort(out.items.begin(), out.items.end(),
            [](const HomMap& x, const HomMap& y) { return x.table < y.table; });
  return out;
}

}  // namespace casa
