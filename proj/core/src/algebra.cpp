#include "casa/algebra.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "casa/error.hpp"

namespace casa {

Signature::Signature(std::vector<OpSpec> ops) : ops_(std::move(ops)) {
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].name.empty()) throw Error("signature: empty op name");
    if (ops_[i].arity < 0) throw Error("signature: negative arity");
    for (std::size_t j = i + 1; j < ops_.size(); ++j)
      if (ops_[i].name == ops_[j].name)
        throw Error("signature: duplicate op name '" + ops_[i].name + "'");
  }
}

int Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return static_cast<int>(i);
  return -1;
}

bool operator==(const Signature& a, const Signature& b) { return a.ops_ == b.ops_; }

std::uint64_t pow_checked(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw Error("size overflow computing " + std::to_string(base) + "^" +
                  std::to_string(exp));
    r *= base;
  }
  return r;
}

std::size_t encode_tuple(std::span<const int> digits, int q) {
  std::size_t index = 0;
  for (int d : digits) index = index * static_cast<std::size_t>(q) + static_cast<std::size_t>(d);
  return index;
}

void decode_tuple(std::size_t index, int q, std::span<int> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<int>(index % static_cast<std::size_t>(q));
    index /= static_cast<std::size_t>(q);
  }
}

struct FiniteAlgebra::Impl {
  std::string name;
  int size = 0;
  Signature signature;
  std::vector<std::vector<int>> tables;
  std::vector<std::string> elem_labels;
};

FiniteAlgebra::FiniteAlgebra(std::string name, int size, Signature signature,
                             std::vector<std::vector<int>> tables,
                             std::vector<std::string> elem_labels) {
  if (size < 1) throw Error("algebra: size must be >= 1");
  if (tables.size() != signature.size())
    throw Error("algebra '" + name + "': one table per op required");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    auto expected = pow_checked(static_cast<std::uint64_t>(size),
                                static_cast<unsigned>(signature.op(i).arity));
    if (tables[i].size() != expected)
      throw Error("algebra '" + name + "': table length for op '" +
                  signature.op(i).name + "' is " + std::to_string(tables[i].size()) +
                  ", expected " + std::to_string(expected));
    for (int v : tables[i])
      if (v < 0 || v >= size)
        throw Error("algebra '" + name + "': table value out of range for op '" +
                    signature.op(i).name + "'");
  }
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->size = size;
  impl->signature = std::move(signature);
  impl->tables = std::move(tables);
  impl->elem_labels = std::move(elem_labels);
  impl_ = std::move(impl);
}

int FiniteAlgebra::size() const { return impl_->size; }
const std::string& FiniteAlgebra::name() const { return impl_->name; }
const Signature& FiniteAlgebra::signature() const { return impl_->signature; }

int FiniteAlgebra::eval(std::size_t op_index, std::span<const int> args) const {
  const auto& op = impl_->signature.op(op_index);
  if (args.size() != static_cast<std::size_t>(op.arity))
    throw Error("algebra '" + impl_->name + "': op '" + op.name + "' takes " +
                std::to_string(op.arity) + " arguments, got " +
                std::to_string(args.size()));
  for (int a : args)
    if (a < 0 || a >= impl_->size)
      throw Error("algebra '" + impl_->name + "': argument out of range");
  return impl_->tables[op_index][encode_tuple(args, impl_->size)];
}

int FiniteAlgebra::eval(std::string_view op_name, std::span<const int> args) const {
  int i = impl_->signature.find(op_name);
  if (i < 0)
    throw Error("algebra '" + impl_->name + "': no op named '" + std::string(op_name) + "'");
  return eval(static_cast<std::size_t>(i), args);
}

std::span<const int> FiniteAlgebra::table(std::size_t op_index) const {
  return impl_->tables[op_index];
}

std::string FiniteAlgebra::elem_label(int a) const {
  auto i = static_cast<std::size_t>(a);
  if (i < impl_->elem_labels.size()) return impl_->elem_labels[i];
  return std::to_string(a);
}

bool FiniteAlgebra::same_structure(const FiniteAlgebra& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->size == other.impl_->size && impl_->signature == other.impl_->signature &&
         impl_->tables == other.impl_->tables;
}

FiniteAlgebra load_algebra(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw ParseError("algebra file: unexpected end of input");
    return tokens[pos++];
  };
  auto next_int = [&](const char* what) {
    const std::string& t = next();
    try {
      std::size_t used = 0;
      int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw ParseError(std::string("algebra file: expected ") + what + ", got '" + t + "'");
    }
  };

  if (next() != "algebra") throw ParseError("algebra file: expected 'algebra <name>'");
  std::string name = next();
  if (next() != "size") throw ParseError("algebra file: expected 'size <q>'");
  int q = next_int("size");
  if (q < 1) throw ParseError("algebra file: size must be >= 1");

  std::vector<OpSpec> ops;
  std::vector<std::vector<int>> tables;
  while (pos < tokens.size()) {
    if (next() != "op") throw ParseError("algebra file: expected 'op <name> <arity>'");
    std::string op_name = next();
    int arity = next_int("arity");
    if (arity < 0) throw ParseError("algebra file: negative arity");
    auto len = pow_checked(static_cast<std::uint64_t>(q), static_cast<unsigned>(arity));
    std::vector<int> table;
    table.reserve(static_cast<std::size_t>(len));
    for (std::uint64_t i = 0; i < len; ++i) {
      int v = next_int("table value");
      if (v < 0 || v >= q)
        throw ParseError("algebra file '" + name + "': value " + std::to_string(v) +
                         " out of range for op '" + op_name + "'");
      table.push_back(v);
    }
    ops.push_back({std::move(op_name), arity});
    tables.push_back(std::move(table));
  }
  try {
    return FiniteAlgebra(name, q, Signature(std::move(ops)), std::move(tables));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

FiniteAlgebra power_algebra(const FiniteAlgebra& a, std::size_t exponent,
                            std::size_t domain_cap) {
  int q = a.size();
  auto size64 = pow_checked(static_cast<std::uint64_t>(q), static_cast<unsigned>(exponent));
  if (size64 > domain_cap)
    throw CapError("power algebra " + a.name() + "^" + std::to_string(exponent) +
                   " has " + std::to_string(size64) + " elements, cap is " +
                   std::to_string(domain_cap));
  auto psize = static_cast<std::size_t>(size64);

  std::vector<std::vector<int>> tables;
  std::vector<int> args;        // power-element args
  std::vector<int> base_args;   // per-coordinate args
  std::vector<std::vector<int>> arg_digits;
  std::vector<int> result(exponent);
  for (std::size_t opi = 0; opi < a.signature().size(); ++opi) {
    int n = a.signature().op(opi).arity;
    auto entries = pow_checked(size64, static_cast<unsigned>(n));
    std::vector<int> table;
    table.reserve(static_cast<std::size_t>(entries));
    args.assign(static_cast<std::size_t>(n), 0);
    arg_digits.assign(static_cast<std::size_t>(n), std::vector<int>(exponent));
    base_args.assign(static_cast<std::size_t>(n), 0);
    for (std::uint64_t t = 0; t < entries; ++t) {
      decode_tuple(static_cast<std::size_t>(t), static_cast<int>(psize), args);
      for (int i = 0; i < n; ++i)
        decode_tuple(static_cast<std::size_t>(args[static_cast<std::size_t>(i)]), q,
                     arg_digits[static_cast<std::size_t>(i)]);
      for (std::size_t c = 0; c < exponent; ++c) {
        for (int i = 0; i < n; ++i)
          base_args[static_cast<std::size_t>(i)] = arg_digits[static_cast<std::size_t>(i)][c];
        result[c] = a.eval(opi, base_args);
      }
      table.push_back(static_cast<int>(encode_tuple(result, q)));
    }
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(a.name() + "^" + std::to_string(exponent),
                       static_cast<int>(psize), a.signature(), std::move(tables));
}

bool same_map(const HomMap& a, const HomMap& b) {
  return a.domain.size() == b.domain.size() && a.codomain.size() == b.codomain.size() &&
         a.table == b.table;
}

bool is_homomorphism(const HomMap& phi) {
  const auto& dom = phi.domain;
  const auto& cod = phi.codomain;
  if (dom.signature() != cod.signature())
    throw Error("is_homomorphism: signature mismatch between '" + dom.name() +
                "' and '" + cod.name() + "'");
  if (phi.table.size() != static_cast<std::size_t>(dom.size()))
    throw Error("is_homomorphism: table length does not match domain");
  for (int v : phi.table)
    if (v < 0 || v >= cod.size()) throw Error("is_homomorphism: value out of range");

  std::vector<int> args, mapped;
  for (std::size_t opi = 0; opi < dom.signature().size(); ++opi) {
    int n = dom.signature().op(opi).arity;
    auto tuples = pow_checked(static_cast<std::uint64_t>(dom.size()),
                              static_cast<unsigned>(n));
    args.assign(static_cast<std::size_t>(n), 0);
    mapped.assign(static_cast<std::size_t>(n), 0);
    for (std::uint64_t t = 0; t < tuples; ++t) {
      decode_tuple(static_cast<std::size_t>(t), dom.size(), args);
      for (int i = 0; i < n; ++i)
        mapped[static_cast<std::size_t>(i)] = phi.table[static_cast<std::size_t>(
            args[static_cast<std::size_t>(i)])];
      if (phi.table[static_cast<std::size_t>(dom.eval(opi, args))] != cod.eval(opi, mapped))
        return false;
    }
  }
  return true;
}

HomMap compose(const HomMap& f, const HomMap& g) {
  if (!g.codomain.same_structure(f.domain))
    throw Error("compose: inner codomain does not match outer domain");
  std::vector<int> table(g.table.size());
  for (std::size_t x = 0; x < g.table.size(); ++x)
    table[x] = f.table[static_cast<std::size_t>(g.table[x])];
  return HomMap{g.domain, f.codomain, std::move(table)};
}

HomMap identity_hom(const FiniteAlgebra& a) {
  std::vector<int> table(static_cast<std::size_t>(a.size()));
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = static_cast<int>(i);
  return HomMap{a, a, std::move(table)};
}

std::string EntropicWitness::describe(const FiniteAlgebra& a) const {
  const auto& f = a.signature().op(op_f);
  const auto& g = a.signature().op(op_g);
  std::string s = "ops " + f.name + "/" + g.name + ", matrix [";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (i) s += " ";
    s += a.elem_label(matrix[i]);
  }
  s += "]: " + f.name + "-then-" + g.name + " gives " + a.elem_label(rhs) + ", " +
       g.name + "-then-" + f.name + " gives " + a.elem_label(lhs);
  return s;
}

bool entropic_by_definition(const FiniteAlgebra& a) {
  // f in Hom(A^n, A) checked without materializing A^n: iterate argument
  // tuples of the power, evaluate ops componentwise.
  int q = a.size();
  std::vector<int> fargs, coords, col, mapped;
  for (std::size_t opf = 0; opf < a.signature().size(); ++opf) {
    int n = a.signature().op(opf).arity;
    auto pw = pow_checked(static_cast<std::uint64_t>(q), static_cast<unsigned>(n));
    for (std::size_t opg = 0; opg < a.signature().size(); ++opg) {
      int m = a.signature().op(opg).arity;
      // arguments t_1..t_m in A^n, flattened as an m x n matrix
      auto total = pow_checked(pw, static_cast<unsigned>(m));
      std::vector<int> matrix(static_cast<std::size_t>(m) * n);
      for (std::uint64_t inst = 0; inst < total; ++inst) {
        decode_tuple(static_cast<std::size_t>(inst), q, matrix);
        // g applied in A^n: componentwise down each column
        col.assign(static_cast<std::size_t>(m), 0);
        coords.assign(static_cast<std::size_t>(n), 0);
        for (int c = 0; c < n; ++c) {
          for (int r = 0; r < m; ++r)
            col[static_cast<std::size_t>(r)] = matrix[static_cast<std::size_t>(r) * n + c];
          coords[static_cast<std::size_t>(c)] = a.eval(opg, col);
        }
        int lhs = a.eval(opf, coords);  // f(g-tuple)
        // f applied to each row, then g
        mapped.assign(static_cast<std::size_t>(m), 0);
        fargs.assign(static_cast<std::size_t>(n), 0);
        for (int r = 0; r < m; ++r) {
          for (int c = 0; c < n; ++c)
            fargs[static_cast<std::size_t>(c)] = matrix[static_cast<std::size_t>(r) * n + c];
          mapped[static_cast<std::size_t>(r)] = a.eval(opf, fargs);
        }
        if (lhs != a.eval(opg, mapped)) return false;
      }
    }
  }
  return true;
}

std::optional<EntropicWitness> entropic_interchange_witness(const FiniteAlgebra& a) {
  int q = a.size();
  std::vector<int> col, row, inner, outer;
  for (std::size_t opf = 0; opf < a.signature().size(); ++opf) {
    int n = a.signature().op(opf).arity;
    for (std::size_t opg = 0; opg < a.signature().size(); ++opg) {
      int m = a.signature().op(opg).arity;
      auto total = pow_checked(static_cast<std::uint64_t>(q),
                               static_cast<unsigned>(m) * static_cast<unsigned>(n));
      std::vector<int> matrix(static_cast<std::size_t>(m) * n);
      for (std::uint64_t inst = 0; inst < total; ++inst) {
        decode_tuple(static_cast<std::size_t>(inst), q, matrix);
        // lhs: f(g(col_1), ..., g(col_n))
        outer.assign(static_cast<std::size_t>(n), 0);
        col.assign(static_cast<std::size_t>(m), 0);
        for (int c = 0; c < n; ++c) {
          for (int r = 0; r < m; ++r)
            col[static_cast<std::size_t>(r)] = matrix[static_cast<std::size_t>(r) * n + c];
          outer[static_cast<std::size_t>(c)] = a.eval(opg, col);
        }
        int lhs = a.eval(opf, outer);
        // rhs: g(f(row_1), ..., f(row_m))
        inner.assign(static_cast<std::size_t>(m), 0);
        row.assign(static_cast<std::size_t>(n), 0);
        for (int r = 0; r < m; ++r) {
          for (int c = 0; c < n; ++c)
            row[static_cast<std::size_t>(c)] = matrix[static_cast<std::size_t>(r) * n + c];
          inner[static_cast<std::size_t>(r)] = a.eval(opf, row);
        }
        int rhs = a.eval(opg, inner);
        if (lhs != rhs) return EntropicWitness{opf, opg, matrix, lhs, rhs};
      }
    }
  }
  return std::nullopt;
}

EntropicResult is_entropic(const FiniteAlgebra& a) {
  bool by_def = entropic_by_definition(a);
  auto witness = entropic_interchange_witness(a);
  if (by_def == witness.has_value())
    throw Error("is_entropic: definition and interchange routes disagree on '" +
                a.name() + "'");
  return EntropicResult{by_def, std::move(witness)};
}

HomMap hom_algebra_op(const FiniteAlgebra& a, std::string_view op_name,
                      std::span<const HomMap> homs,
                      const FiniteAlgebra* domain_for_nullary) {
  int opi = a.signature().find(op_name);
  if (opi < 0) throw Error("hom_algebra_op: no op named '" + std::string(op_name) + "'");
  int n = a.signature().op(static_cast<std::size_t>(opi)).arity;
  if (homs.size() != static_cast<std::size_t>(n))
    throw Error("hom_algebra_op: op '" + std::string(op_name) + "' needs " +
                std::to_string(n) + " homomorphisms");
  auto ent = is_entropic(a);
  if (!ent.entropic)
    throw Error("hom_algebra_op: algebra '" + a.name() + "' is not entropic (" +
                ent.witness->describe(a) + ")");

  const FiniteAlgebra* dom = nullptr;
  if (n == 0) {
    if (!domain_for_nullary)
      throw Error("hom_algebra_op: nullary op requires an explicit domain");
    dom = domain_for_nullary;
  } else {
    dom = &homs[0].domain;
    for (const auto& h : homs) {
      if (!h.domain.same_structure(*dom))
        throw Error("hom_algebra_op: homomorphisms have mismatched domains");
      if (!h.codomain.same_structure(a))
        throw Error("hom_algebra_op: homomorphism codomain is not the given algebra");
    }
  }

  std::vector<int> table(static_cast<std::size_t>(dom->size()));
  std::vector<int> vals(static_cast<std::size_t>(n));
  for (std::size_t x = 0; x < table.size(); ++x) {
    for (int i = 0; i < n; ++i)
      vals[static_cast<std::size_t>(i)] = homs[static_cast<std::size_t>(i)].table[x];
    table[x] = a.eval(static_cast<std::size_t>(opi), vals);
  }
  return HomMap{*dom, a, std::move(table)};
}

}  // namespace casa
