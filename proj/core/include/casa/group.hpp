#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace casa {

// Element of a cell-position group. Finite groups store the Cayley-table
// index in coords[0]; lattice groups store the offset vector (dim 1 uses
// coords[0], dim 2 uses both). Ordering is lexicographic on coords, which
// is the canonical element order everywhere in this library.
struct GroupElem {
  std::array<std::int64_t, 2> coords{0, 0};

  friend constexpr auto operator<=>(const GroupElem&, const GroupElem&) = default;
};

constexpr GroupElem elem(std::int64_t a) { return {{a, 0}}; }
constexpr GroupElem elem(std::int64_t a, std::int64_t b) { return {{a, b}}; }

// A cell-position group: either a finite group given by its Cayley table,
// or the lattice Z / Z^2 under addition. Immutable, cheap to copy.
class Group {
 public:
  // The line Z and the plane Z^2.
  static Group z();
  static Group z2();

  // Finite group from a full multiplication table (row*order+col layout).
  // Validates closure, associativity, identity, and inverses.
  static Group finite(std::string name, int order, std::vector<int> mul,
                      std::vector<std::string> labels = {});

  bool is_finite() const;
  bool is_lattice() const { return !is_finite(); }
  int lattice_dim() const;  // 0 for finite groups
  int order() const;        // finite groups only

  const std::string& name() const;

  GroupElem identity() const;
  GroupElem mul(GroupElem a, GroupElem b) const;
  GroupElem inv(GroupElem a) const;
  bool contains(GroupElem a) const;

  std::vector<GroupElem> elements() const;  // finite groups only
  std::string elem_label(GroupElem a) const;

  friend bool operator==(const Group& a, const Group& b);
  friend bool operator!=(const Group& a, const Group& b) { return !(a == b); }

 private:
  struct Impl;
  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Group file format:
//   group <name>
//   order <m>
//   <m rows of m whitespace-separated indices, mul(row, col)>
// Element 0 must be the identity. Blank lines and '#' comments are skipped.
Group load_group(const std::string& text);

// Parses a group element in the external notation: a table index for finite
// groups, an integer offset for Z, or "i,j" for Z^2.
GroupElem parse_elem(const Group& g, const std::string& token);
std::string format_elem(const Group& g, GroupElem e);

// Finite ordered set of group elements. Listing order is part of the value:
// it fixes the layout of rule tables and power-algebra tuples.
class MemorySet {
 public:
  MemorySet(Group group, std::vector<GroupElem> elems);

  // Sorted ascending with duplicates removed.
  static MemorySet canonical(Group group, std::vector<GroupElem> elems);

  const Group& group() const { return group_; }
  std::span<const GroupElem> elems() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  GroupElem at(std::size_t i) const { return elems_[i]; }
  std::optional<std::size_t> index_of(GroupElem e) const;
  bool contains(GroupElem e) const { return index_of(e).has_value(); }
  bool subset_of(const MemorySet& other) const;

  friend bool operator==(const MemorySet& a, const MemorySet& b);
  friend bool operator!=(const MemorySet& a, const MemorySet& b) { return !(a == b); }

 private:
  Group group_;
  std::vector<GroupElem> elems_;
};

// {s1*s2 : s1 in a, s2 in b}, deduplicated, in canonical order.
MemorySet product_set(const MemorySet& a, const MemorySet& b);

// Set union keeping the order of first occurrence (a's order, then new
// elements of b in b's order).
MemorySet union_set(const MemorySet& a, const MemorySet& b);

// A total assignment of alphabet values to cell positions: a length-m tuple
// over a finite group, or a periodic (toroidal) grid over Z / Z^2. Lattice
// positions are reduced modulo the period on access.
class Configuration {
 public:
  static Configuration over_finite(Group group, int alphabet_size,
                                   std::vector<int> values);
  static Configuration periodic(Group lattice, int alphabet_size,
                                std::array<int, 2> period,
                                std::vector<int> values);

  const Group& group() const { return group_; }
  int alphabet_size() const { return q_; }
  bool is_periodic() const { return group_.is_lattice(); }
  std::array<int, 2> period() const { return period_; }

  std::size_t cell_count() const { return values_.size(); }
  std::span<const int> values() const { return values_; }

  int at(GroupElem pos) const;
  void set(GroupElem pos, int value);

  friend bool operator==(const Configuration& a, const Configuration& b);
  friend bool operator!=(const Configuration& a, const Configuration& b) {
    return !(a == b);
  }

 private:
  explicit Configuration(Group group) : group_(std::move(group)) {}

  Group group_;
  int q_ = 0;
  std::array<int, 2> period_{0, 0};
  std::vector<int> values_;
};

// y(h) = x(g^{-1} h).
Configuration shift(GroupElem g, const Configuration& x);

// Exhaustive walk of A^G for finite G: q^m configurations, element 0 most
// significant.
std::uint64_t configuration_count(const Group& g, int alphabet_size);
Configuration configuration_from_index(const Group& g, int alphabet_size,
                                       std::uint64_t index);

// Digit-string notation: one digit per cell (q <= 10). Finite groups expect
// exactly m digits in element order; Z takes the digits as one period; Z^2
// takes '/'-separated rows.
Configuration parse_configuration(const Group& g, int alphabet_size,
                                  const std::string& text);
std::string format_configuration(const Configuration& x);

}  // namespace casa
