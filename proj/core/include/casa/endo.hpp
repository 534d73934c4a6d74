#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "casa/ca.hpp"
#include "casa/hom_search.hpp"
#include "casa/report.hpp"

namespace casa {

// End(A) for a module-like alphabet, closed under composition and pointwise
// addition; the arithmetic context shared by group-algebra elements.
class ModuleEndos {
 public:
  explicit ModuleEndos(const FiniteAlgebra& a,
                       std::size_t domain_cap = limits::kDomainCap);

  const FiniteAlgebra& algebra() const { return ring_.algebra; }
  const ModuleView& view() const { return view_; }
  const std::vector<HomMap>& items() const { return ring_.items; }
  std::size_t size() const { return ring_.items.size(); }

  int zero() const { return zero_; }
  int identity() const { return ring_.identity_index; }
  int add(int i, int j) const;
  int compose(int i, int j) const { return ring_.composition[i][j]; }
  int apply(int i, int a) const { return ring_.items[i].table[a]; }
  int index_of(std::span<const int> table) const { return ring_.index_of(table); }

 private:
  ModuleView view_;
  EndomorphismRing ring_;
  int zero_ = -1;
};

using ModuleEndosPtr = std::shared_ptr<const ModuleEndos>;

// An element of the group algebra End(A)[G]: a finitely supported map from
// group elements to endomorphism indices. Zero coefficients are dropped and
// the support is kept in canonical order.
class GroupAlgebraElement {
 public:
  GroupAlgebraElement(Group group, ModuleEndosPtr endos,
                      std::vector<GroupElem> support, std::vector<int> coeffs);

  static GroupAlgebraElement zero(Group group, ModuleEndosPtr endos);
  static GroupAlgebraElement delta(Group group, ModuleEndosPtr endos, GroupElem g,
                                   int endo_index);

  const Group& group() const { return group_; }
  const ModuleEndos& endos() const { return *endos_; }
  const ModuleEndosPtr& endos_ptr() const { return endos_; }
  std::span<const GroupElem> support() const { return support_; }
  std::span<const int> coeffs() const { return coeffs_; }
  int coeff_at(GroupElem g) const;  // zero endo index when unsupported

  GroupAlgebraElement plus(const GroupAlgebraElement& other) const;

  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend bool operator!=(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    return !(a == b);
  }

 private:
  Group group_;
  ModuleEndosPtr endos_;
  std::vector<GroupElem> support_;
  std::vector<int> coeffs_;
};

// Convolution product: (a * b)(g) = sum_h a(h) o b(h^{-1} g), coefficients
// composed with b's applied first. Under psi this matches CA composition.
GroupAlgebraElement convolve(const GroupAlgebraElement& a, const GroupAlgebraElement& b);

// psi(alpha): the CA with memory supp(alpha) and local rule
// mu(y) = sum_s alpha(s)(y(s)).
CellularAutomaton psi(const GroupAlgebraElement& alpha);

// Decomposes an endomorphic CA over a module-like alphabet into coordinate
// endomorphisms eps_s(a) = mu(a at s, 0 elsewhere), dropping zeros.
GroupAlgebraElement psi_inverse(const CellularAutomaton& ca, ModuleEndosPtr endos);

// All endomorphic CA with memory contained in S, one per Hom(A^S, A), in
// hom-enumeration order.
struct EndoCAFamily {
  Group group;
  MemorySet memory;
  FiniteAlgebra alphabet;
  std::vector<CellularAutomaton> items;

  std::uint64_t count() const { return items.size(); }
};

EndoCAFamily enumerate_endoca(const Group& g, const MemorySet& s, const FiniteAlgebra& a,
                              std::size_t domain_cap = limits::kDomainCap);

// |EndCA(G, S; A)| by every applicable route: closed forms for module-like,
// vector-space, cyclic-group, and Boolean alphabets, plus the generic hom
// count when feasible. All computed routes must agree.
struct EndoCount {
  std::uint64_t count = 0;
  std::string method;  // most specific closed form, or "generic"
  std::vector<std::pair<std::string, std::uint64_t>> routes;
};

EndoCount count_endoca(const Group& g, const MemorySet& s, const FiniteAlgebra& a,
                       std::size_t domain_cap = limits::kDomainCap);

enum class EcaPredicate {
  additive,            // local rule additive for the Z_2 group structure
  boolean_hom,         // local rule a Boolean homomorphism
  endomorphic_under,   // endomorphic for a caller-supplied 2-element alphabet
  all,
};

// Scans all 256 elementary rules; returns accepted Wolfram numbers in
// ascending order. boolean_hom additionally checks that every accepted
// rule's minimal local rule is a single-coordinate projection.
std::vector<int> classify_eca(EcaPredicate predicate,
                              const FiniteAlgebra* alphabet = nullptr);

// Phi : EndCA(G,S;A) -> Hom(A^S, A), tau -> mu, is a bijection and maps
// pointwise combinations of CA to pointwise combinations of local rules.
// Exhaustive over op-argument tuples when |Hom|^n fits the cap, otherwise
// sampled. Refuses non-entropic alphabets, reporting the witness.
Report verify_phi(const Group& g, const MemorySet& s, const FiniteAlgebra& a,
                  std::size_t domain_cap = limits::kDomainCap,
                  std::size_t samples = 100, std::uint64_t seed = 11);

// psi is a bijection {alpha : supp <= S} -> EndCA(G,S;A), additive, and
// turns convolution into composition: psi(a * b) =
// minimal_memory(compose(psi(a), psi(b))). Exhaustive when |End(A)|^{|S|}
// is at most pair_cap, else sampled.
Report verify_group_algebra(const Group& g, const FiniteAlgebra& a, const MemorySet& s,
                            std::size_t domain_cap = limits::kDomainCap,
                            std::size_t pair_cap = 64 * 64,
                            std::size_t samples = 100, std::uint64_t seed = 13);

// Memory-set extension embeds EndCA(G,S_i;A) into EndCA(G,S_j;A) for
// S_i <= S_j: injectively, compatibly along the chain, preserving pointwise
// operations, and recovering each item under minimal_memory.
Report verify_direct_limit(const Group& g, std::span<const MemorySet> chain,
                           const FiniteAlgebra& a,
                           std::size_t domain_cap = limits::kDomainCap);

// Local-global equivalence: over all q^{q^{|S|}} local rules, the exhaustive
// endomorphism check of the global map agrees with the hom check of the
// local rule.
Report verify_th_local(const Group& g, const FiniteAlgebra& a, const MemorySet& s,
                       std::size_t config_cap = limits::kConfigCap);

// Boolean counting grid: |Hom(2^s, 2)| = s and |Hom((2^k)^s, 2^k)| = (ks)^k,
// with generic/specialized enumerations compared elementwise.
Report verify_boolean_counts(std::size_t max_s,
                             std::span<const std::pair<std::size_t, std::size_t>> ks_pairs,
                             std::size_t domain_cap = limits::kDomainCap);

}  // namespace casa
