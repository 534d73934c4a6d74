#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "casa/limits.hpp"

namespace casa {

struct OpSpec {
  std::string name;
  int arity = 0;

  friend bool operator==(const OpSpec&, const OpSpec&) = default;
};

// A list of named finitary operation symbols with arities. Arity 0 symbols
// are distinguished elements.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSpec> ops);

  std::size_t size() const { return ops_.size(); }
  const OpSpec& op(std::size_t i) const { return ops_[i]; }
  std::span<const OpSpec> ops() const { return ops_; }
  int find(std::string_view name) const;  // -1 if absent

  friend bool operator==(const Signature&, const Signature&);
  friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }

 private:
  std::vector<OpSpec> ops_;
};

// Dense-table index of an argument tuple: ascending lexicographic order,
// first argument most significant. index = a_0 q^{n-1} + ... + a_{n-1}.
std::size_t encode_tuple(std::span<const int> digits, int q);
void decode_tuple(std::size_t index, int q, std::span<int> out);

// base^exp with overflow detection.
std::uint64_t pow_checked(std::uint64_t base, unsigned exp);

// A finite algebra: carrier {0,...,q-1} plus one dense value table per
// operation symbol, laid out by encode_tuple. Immutable, cheap to copy.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, int size, Signature signature,
                std::vector<std::vector<int>> tables,
                std::vector<std::string> elem_labels = {});

  int size() const;
  const std::string& name() const;
  const Signature& signature() const;

  int eval(std::size_t op_index, std::span<const int> args) const;
  int eval(std::string_view op_name, std::span<const int> args) const;
  int eval(std::size_t op_index, std::initializer_list<int> args) const {
    return eval(op_index, std::span<const int>(args.begin(), args.size()));
  }
  int eval(std::string_view op_name, std::initializer_list<int> args) const {
    return eval(op_name, std::span<const int>(args.begin(), args.size()));
  }
  std::span<const int> table(std::size_t op_index) const;
  std::string elem_label(int a) const;

  // Same carrier size, signature, and tables (names included).
  bool same_structure(const FiniteAlgebra& other) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Algebra file format:
//   algebra <name>
//   size <q>
//   op <name> <arity>
//   <q^arity values, ascending lexicographic argument order>
//   ... (one op block per operation)
// Blank lines and '#' comments are skipped.
FiniteAlgebra load_algebra(const std::string& text);

// The componentwise power A^k, materialized as a finite algebra of size q^k.
// Element i encodes a k-tuple via decode_tuple (first index most
// significant); operations act per coordinate.
FiniteAlgebra power_algebra(const FiniteAlgebra& a, std::size_t exponent,
                            std::size_t domain_cap = limits::kDomainCap);

// A function between algebras of a shared signature, as a dense value table
// indexed by domain element.
struct HomMap {
  FiniteAlgebra domain;
  FiniteAlgebra codomain;
  std::vector<int> table;

  int operator()(int a) const { return table[static_cast<std::size_t>(a)]; }
};

bool same_map(const HomMap& a, const HomMap& b);

// True iff phi(f(a_1..a_n)) = f(phi(a_1)..phi(a_n)) for every operation and
// every argument tuple. Throws Error on signature mismatch.
bool is_homomorphism(const HomMap& phi);

// f after g; g's codomain must structurally match f's domain.
HomMap compose(const HomMap& f, const HomMap& g);

HomMap identity_hom(const FiniteAlgebra& a);

// A failed instance of the interchange law between ops f and g:
// f(g(column_1)..g(column_n)) != g(f(row_1)..f(row_m)) at the stored
// m x n argument matrix (row-major).
struct EntropicWitness {
  std::size_t op_f = 0;
  std::size_t op_g = 0;
  std::vector<int> matrix;
  int lhs = 0;
  int rhs = 0;

  std::string describe(const FiniteAlgebra& a) const;
};

struct EntropicResult {
  bool entropic = false;
  std::optional<EntropicWitness> witness;
};

// Condition (1): every operation of A is a homomorphism A^n -> A.
bool entropic_by_definition(const FiniteAlgebra& a);

// Condition (2): the interchange law holds for every pair of operations.
// Returns the first violating instance found, if any.
std::optional<EntropicWitness> entropic_interchange_witness(const FiniteAlgebra& a);

// Evaluates both conditions, checks that they agree, and reports the result
// with a witness when A is not entropic.
EntropicResult is_entropic(const FiniteAlgebra& a);

// The pointwise combination x -> f(phi_1(x), ..., phi_n(x)) of homomorphisms
// into an entropic algebra; itself a homomorphism. For nullary f the shared
// domain cannot be inferred from the (empty) hom list and must be supplied.
HomMap hom_algebra_op(const FiniteAlgebra& a, std::string_view op_name,
                      std::span<const HomMap> homs,
                      const FiniteAlgebra* domain_for_nullary = nullptr);

}  // namespace casa
