#include "casa/presets.hpp"

#include <algorithm>

#include "casa/error.hpp"

namespace casa::presets {

Group cyclic_group(int n) {
  if (n < 1) throw Error("cyclic_group: order must be positive");
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return Group::finite("C" + std::to_string(n), n, std::move(mul));
}

namespace {

// The six permutations of {0,1,2} in lexicographic word order; the identity
// word comes first, as the group loader requires.
const std::vector<std::array<int, 3>>& s3_words() {
  static const std::vector<std::array<int, 3>> words = {
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  return words;
}

}  // namespace

Group symmetric3() {
  const auto& words = s3_words();
  auto index_of = [&](const std::array<int, 3>& w) {
    return static_cast<int>(std::find(words.begin(), words.end(), w) - words.begin());
  };
  std::vector<int> mul(36);
  std::vector<std::string> labels;
  for (int i = 0; i < 6; ++i) {
    labels.push_back("(" + std::to_string(words[i][0]) + std::to_string(words[i][1]) +
                     std::to_string(words[i][2]) + ")");
    for (int j = 0; j < 6; ++j) {
      // composition: (p.q)(x) = p(q(x))
      std::array<int, 3> pq;
      for (int x = 0; x < 3; ++x) pq[static_cast<std::size_t>(x)] =
          words[static_cast<std::size_t>(i)][static_cast<std::size_t>(
              words[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)])];
      mul[static_cast<std::size_t>(i) * 6 + j] = index_of(pq);
    }
  }
  return Group::finite("S3", 6, std::move(mul), std::move(labels));
}

Group klein4() {
  // (Z_2)^2 componentwise; element = 2*a + b, so the law is XOR
  std::vector<int> mul(16);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) mul[static_cast<std::size_t>(x) * 4 + y] = x ^ y;
  return Group::finite("V4", 4, std::move(mul));
}

FiniteAlgebra cyclic(int n) {
  if (n < 1) throw Error("cyclic: size must be positive");
  std::vector<int> plus(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) plus[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return FiniteAlgebra("z" + std::to_string(n), n,
                       Signature({{"+", 2}, {"0", 0}}),
                       {std::move(plus), {0}});
}

FiniteAlgebra f2_vector(int n) {
  if (n < 1 || n > 12) throw Error("f2_vector: dimension out of range");
  int q = 1 << n;
  std::vector<int> plus(static_cast<std::size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) plus[static_cast<std::size_t>(a) * q + b] = a ^ b;
  std::vector<int> s0(static_cast<std::size_t>(q), 0);
  std::vector<int> s1(static_cast<std::size_t>(q));
  for (int a = 0; a < q; ++a) s1[static_cast<std::size_t>(a)] = a;
  return FiniteAlgebra("f2vec" + std::to_string(n), q,
                       Signature({{"+", 2}, {"0", 0}, {"s0", 1}, {"s1", 1}}),
                       {std::move(plus), {0}, std::move(s0), std::move(s1)});
}

FiniteAlgebra bool2() {
  return FiniteAlgebra("bool2", 2,
                       Signature({{"and", 2}, {"or", 2}, {"not", 1}, {"0", 0}, {"1", 0}}),
                       {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0}, {0}, {1}});
}

FiniteAlgebra boolean(int k) {
  if (k < 1 || k > 12) throw Error("boolean: atom count out of range");
  auto p = power_algebra(bool2(), static_cast<std::size_t>(k), std::size_t{1} << k);
  return p;
}

FiniteAlgebra s3_magma() {
  std::vector<int> table(36);
  const auto g = symmetric3();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      table[static_cast<std::size_t>(i) * 6 + j] =
          static_cast<int>(g.mul(elem(i), elem(j)).coords[0]);
  return FiniteAlgebra("s3magma", 6, Signature({{"*", 2}}), {std::move(table)});
}

FiniteAlgebra bare_set(int q) {
  return FiniteAlgebra("set" + std::to_string(q), q, Signature{}, {});
}

FiniteAlgebra trivial_like(const FiniteAlgebra& a) {
  std::vector<std::vector<int>> tables;
  for (std::size_t i = 0; i < a.signature().size(); ++i)
    tables.emplace_back(std::vector<int>(1, 0));
  return FiniteAlgebra("trivial", 1, a.signature(), std::move(tables));
}

std::optional<FiniteAlgebra> builtin_algebra(const std::string& name) {
  if (name.size() == 2 && name[0] == 'z' && name[1] >= '2' && name[1] <= '9')
    return cyclic(name[1] - '0');
  if (name == "bool2") return bool2();
  if (name == "bool4") return boolean(2);
  if (name == "bool8") return boolean(3);
  if (name == "f2vec2") return f2_vector(2);
  if (name == "f2vec3") return f2_vector(3);
  if (name == "set2") return bare_set(2);
  return std::nullopt;
}

std::vector<FiniteAlgebra> builtin_algebras() {
  std::vector<FiniteAlgebra> out;
  for (int n = 2; n <= 9; ++n) out.push_back(cyclic(n));
  out.push_back(bool2());
  out.push_back(boolean(2));
  out.push_back(boolean(3));
  out.push_back(f2_vector(2));
  out.push_back(f2_vector(3));
  out.push_back(bare_set(2));
  return out;
}

}  // namespace casa::presets
