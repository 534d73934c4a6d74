#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "casa/algebra.hpp"
#include "casa/limits.hpp"

namespace casa {

// Complete list of Hom(dom, cod) in canonical order (lexicographic by value
// table). Every item is a verified homomorphism; items are pairwise distinct.
struct HomEnumeration {
  FiniteAlgebra domain;
  FiniteAlgebra codomain;
  std::vector<HomMap> items;

  std::uint64_t count() const { return items.size(); }
};

// All homomorphisms dom -> cod by backtracking over the value table with
// unit propagation: once every argument of an op instance is assigned, the
// image of the instance's result is forced. Deterministic: variables in
// element order, values ascending, hence output in table-lexicographic
// order.
HomEnumeration enumerate_homs(const FiniteAlgebra& dom, const FiniteAlgebra& cod,
                              std::size_t domain_cap = limits::kDomainCap);

// |Hom(dom, cod)| using a closed form when one applies (Boolean algebras:
// k_dom^k_cod; module-like powers via power_exponent hint: |End(cod)|^s),
// falling back to full enumeration.
std::uint64_t count_homs(const FiniteAlgebra& dom, const FiniteAlgebra& cod,
                         std::optional<std::size_t> power_exponent = std::nullopt,
                         std::size_t domain_cap = limits::kDomainCap);

// End(A) with its composition table. composition[i][j] is the index of
// items[i] after items[j]; contains the identity and is closed.
struct EndomorphismRing {
  FiniteAlgebra algebra;
  std::vector<HomMap> items;
  std::vector<std::vector<int>> composition;
  int identity_index = -1;

  std::size_t size() const { return items.size(); }
  int index_of(std::span<const int> table) const;
};

EndomorphismRing enumerate_endomorphisms(const FiniteAlgebra& a,
                                         std::size_t domain_cap = limits::kDomainCap);

// Module-like structure on an algebra: binary '+', nullary '0', all other
// ops unary scalars; (A, +, 0) a commutative group and A entropic (scalars
// distribute over +). Built by module_view after exhaustive verification.
struct ModuleView {
  FiniteAlgebra algebra;
  std::size_t plus_op = 0;
  std::size_t zero_op = 0;
  std::vector<std::size_t> scalar_ops;
  int zero_elem = 0;

  int add(int a, int b) const;
  int neg(int a) const;
};

std::optional<ModuleView> module_view(const FiniteAlgebra& a);

// Hom(A^s, A) for module-like A: every hom is y -> sum_i eps_i(y(i)) for an
// s-tuple of endomorphisms, so the list is built directly from End(A)^s.
// Output matches enumerate_homs(power_algebra(A, s), A) exactly.
HomEnumeration module_homs(const FiniteAlgebra& a, std::size_t s,
                           std::size_t domain_cap = limits::kDomainCap);

// A finite Boolean algebra certified by exhaustive law checking, with its
// atoms (nonzero minimal elements) in ascending order. B is isomorphic to
// the power set of its atoms.
struct BooleanView {
  FiniteAlgebra algebra;
  std::size_t meet_op = 0;
  std::size_t join_op = 0;
  std::size_t not_op = 0;
  int bottom = 0;
  int top = 0;
  std::vector<int> atoms;

  std::size_t atom_count() const { return atoms.size(); }
  int meet(int a, int b) const;
  int join(int a, int b) const;
  int complement(int a) const;
  bool leq(int a, int b) const;  // a <= b iff a v b = b
};

// Requires ops and/or/not/0/1; throws Error naming the violated law and a
// witness element when the input is not Boolean.
BooleanView boolean_view(const FiniteAlgebra& b);

// <y> = {x : x <= y}, ascending.
std::vector<int> principal_ideal(const BooleanView& b, int y);

// {<not a> : a atom}, in atom order. These are exactly the maximal ideals.
std::vector<std::vector<int>> maximal_ideals(const BooleanView& b);

// {b : phi(b) = 0}; the codomain must have a nullary '0'.
std::vector<int> kernel(const HomMap& phi);

bool is_ideal(const BooleanView& b, std::span<const int> subset);

// Hom(2^{ks}, 2^k): one atom-indexed projection per codomain atom, so all
// k-tuples over ks coordinates. Output matches the generic enumeration on
// the materialized powers.
HomEnumeration boolean_homs(std::size_t k, std::size_t s,
                            std::size_t domain_cap = limits::kDomainCap);

}  // namespace casa
