#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "casa/algebra.hpp"
#include "casa/group.hpp"
#include "casa/limits.hpp"
#include "casa/report.hpp"

namespace casa {

// The local function mu : A^S -> A as a dense table of length q^{|S|},
// argument tuples in ascending lexicographic order with the first memory
// element most significant.
struct LocalRule {
  FiniteAlgebra alphabet;
  MemorySet memory;
  std::vector<int> table;

  int eval(std::span<const int> args) const;
};

struct CellularAutomaton {
  std::string name;
  LocalRule rule;

  const Group& group() const { return rule.memory.group(); }
  const FiniteAlgebra& alphabet() const { return rule.alphabet; }
  std::size_t memory_size() const { return rule.memory.size(); }
};

// Validates table length and value range.
CellularAutomaton make_ca(std::string name, FiniteAlgebra alphabet,
                          MemorySet memory, std::vector<int> table);

// y(g) = mu(x(g s_1), ..., x(g s_k)). Periodic lattice positions are
// reduced modulo the period.
Configuration apply(const CellularAutomaton& ca, const Configuration& x);

using GlobalMap = std::function<Configuration(const Configuration&)>;

// Recovers mu(y) = tau(ybar)(e) from an opaque map over a finite group,
// extending each partial configuration by element 0; then verifies on every
// configuration that the recovered rule regenerates the map. Throws Error
// when tau is not a CA with memory S.
CellularAutomaton recover_local(const FiniteAlgebra& alphabet, const GlobalMap& tau,
                                const MemorySet& memory,
                                std::size_t config_cap = limits::kConfigCap);

// Rewrites the rule over a superset memory: mu'(y) = mu(y|_S).
CellularAutomaton extend_memory(const CellularAutomaton& ca, const MemorySet& larger,
                                std::size_t domain_cap = limits::kDomainCap);

// Drops every memory position the rule does not depend on. The empty memory
// set (constant rule) is a legal result.
CellularAutomaton minimal_memory(const CellularAutomaton& ca);

// outer after inner, with memory product_set(S_outer, S_inner); the
// composite table is evaluated only on positions actually read.
CellularAutomaton compose(const CellularAutomaton& outer, const CellularAutomaton& inner,
                          std::size_t domain_cap = limits::kDomainCap);

// Memory union of the components; mu(y) = f(mu_1(y|_{S_1}), ..., mu_n(y|_{S_n})).
CellularAutomaton pointwise_combine(std::string_view op_name,
                                    std::span<const CellularAutomaton> cas,
                                    std::size_t domain_cap = limits::kDomainCap);

// The constant CA induced by a nullary op: empty memory, one-entry table.
CellularAutomaton nullary_ca(const Group& g, const FiniteAlgebra& a,
                             std::string_view op_name);

// f^{A^G}: the induced componentwise operation on configurations over a
// finite group.
Configuration componentwise_op(const FiniteAlgebra& a, std::size_t op_index,
                               const Group& g, std::span<const Configuration> xs);

// True iff the local rule is a homomorphism A^S -> A.
bool is_endomorphic(const CellularAutomaton& ca,
                    std::size_t domain_cap = limits::kDomainCap);

// tau(g . x) = g . tau(x) over a finite group (or periodic torus), for all
// g and all configurations when the space fits the cap, otherwise for a
// deterministic random sample.
bool is_shift_equivariant(const CellularAutomaton& ca,
                          std::size_t config_cap = limits::kConfigCap,
                          std::size_t samples = 50, std::uint64_t seed = 1);
bool is_shift_equivariant_map(const Group& g, int alphabet_size, const GlobalMap& tau,
                              std::size_t config_cap = limits::kConfigCap,
                              std::size_t samples = 50, std::uint64_t seed = 1);

// Minimal memory, then memory re-sorted into canonical element order with
// the table permuted to match. Two CA are equal as global maps iff their
// canonical forms coincide fieldwise.
CellularAutomaton canonical_form(const CellularAutomaton& ca);
bool equivalent(const CellularAutomaton& a, const CellularAutomaton& b);

// Exact fieldwise equality of rules (same memory list, same table).
bool same_rule(const CellularAutomaton& a, const CellularAutomaton& b);

// Elementary CA 'Rule M' over Z with memory {-1, 0, 1} and a 2-element
// alphabet. The Wolfram numbering lists tuples in descending order, so bit
// t of M is the image of the ascending tuple t.
CellularAutomaton eca(int wolfram_code, const FiniteAlgebra& alphabet);

// Inverse of the eca decoding; accepts any binary CA over Z whose minimal
// memory fits in {-1, 0, 1}.
int wolfram_number(const CellularAutomaton& ca);

// CA file format:
//   ca <name>
//   group <Z|Z2|name>
//   alphabet <name>
//   memory <elements, space-separated>
//   rule <q^|S| values, ascending lexicographic order>
// Named groups/alphabets are resolved against the supplied lists.
CellularAutomaton load_ca(const std::string& text, std::span<const Group> groups,
                          std::span<const FiniteAlgebra> alphabets);
std::string format_ca(const CellularAutomaton& ca);

// Componentwise operations commute with the shift action, exhaustive over
// A^G for finite G.
Report verify_g_algebra(const Group& g, const FiniteAlgebra& a,
                        std::size_t config_cap = limits::kConfigCap);

// Randomly sampled local rules all produce shift-equivariant automata
// (exhaustive in the group element, exhaustive or sampled in the
// configuration).
Report verify_equivariance(const Group& g, const FiniteAlgebra& a,
                           std::size_t rule_samples = 50,
                           std::size_t config_cap = limits::kConfigCap,
                           std::uint64_t seed = 7);

}  // namespace casa
