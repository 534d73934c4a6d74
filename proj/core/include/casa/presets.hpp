#pragma once

#include <optional>
#include <string>

#include "casa/algebra.hpp"
#include "casa/group.hpp"

namespace casa::presets {

// Cyclic group Z_n by Cayley table, identity at index 0.
Group cyclic_group(int n);

// Symmetric group on 3 letters; elements are the six permutations in
// lexicographic word order, identity first.
Group symmetric3();

// Klein four-group (Z_2 x Z_2), every element self-inverse.
Group klein4();

// Z_n as an abelian group: ops + (binary) and 0 (nullary).
FiniteAlgebra cyclic(int n);

// (F_2)^n as a vector space: ops +, 0 and the scalar maps s0 (zero) and
// s1 (identity). Carrier encodes tuples with the first coordinate most
// significant.
FiniteAlgebra f2_vector(int n);

// Two-element Boolean algebra: and, or, not, 0, 1.
FiniteAlgebra bool2();

// Power-set Boolean algebra on k atoms, materialized as bool2^k.
FiniteAlgebra boolean(int k);

// S_3 with composition as a single binary op '*'; a non-entropic magma.
FiniteAlgebra s3_magma();

// Carrier of the given size with no operations.
FiniteAlgebra bare_set(int q);

// One-element algebra over the same signature as the given algebra.
FiniteAlgebra trivial_like(const FiniteAlgebra& a);

// Built-in alphabets addressable by name from the CLI and CA files:
// z2..z9, bool2, bool4, bool8, f2vec2, f2vec3, set2.
std::optional<FiniteAlgebra> builtin_algebra(const std::string& name);
std::vector<FiniteAlgebra> builtin_algebras();

}  // namespace casa::presets
