#include "casa/group.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "casa/algebra.hpp"
#include "casa/error.hpp"

namespace casa {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

struct Group::Impl {
  std::string name;
  int lattice_dim = 0;  // 0: finite, 1: Z, 2: Z^2
  int order = 0;
  std::vector<int> mul;  // order*order, row-major
  std::vector<int> inv;
  std::vector<std::string> labels;

  int at(int a, int b) const { return mul[static_cast<std::size_t>(a) * order + b]; }
};

Group Group::z() {
  auto impl = std::make_shared<Impl>();
  impl->name = "Z";
  impl->lattice_dim = 1;
  return Group(std::move(impl));
}

Group Group::z2() {
  auto impl = std::make_shared<Impl>();
  impl->name = "Z2";
  impl->lattice_dim = 2;
  return Group(std::move(impl));
}

Group Group::finite(std::string name, int order, std::vector<int> mul,
                    std::vector<std::string> labels) {
  if (order <= 0) throw Error("group: order must be positive");
  if (mul.size() != static_cast<std::size_t>(order) * order)
    throw Error("group '" + name + "': multiplication table has wrong size");
  for (int v : mul)
    if (v < 0 || v >= order)
      throw Error("group '" + name + "': table entry out of range");

  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->order = order;
  impl->mul = std::move(mul);
  impl->labels = std::move(labels);

  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (impl->at(impl->at(a, b), c) != impl->at(a, impl->at(b, c)))
          throw Error("group '" + impl->name + "': not associative at (" +
                      std::to_string(a) + "," + std::to_string(b) + "," +
                      std::to_string(c) + ")");

  int e = -1;
  for (int cand = 0; cand < order && e < 0; ++cand) {
    bool ok = true;
    for (int g = 0; g < order; ++g)
      if (impl->at(cand, g) != g || impl->at(g, cand) != g) {
        ok = false;
        break;
      }
    if (ok) e = cand;
  }
  if (e < 0) throw Error("group '" + impl->name + "': no identity element");
  if (e != 0) throw Error("group '" + impl->name + "': identity must be element 0");

  impl->inv.assign(order, -1);
  for (int g = 0; g < order; ++g) {
    for (int h = 0; h < order; ++h)
      if (impl->at(g, h) == e && impl->at(h, g) == e) {
        impl->inv[g] = h;
        break;
      }
    if (impl->inv[g] < 0)
      throw Error("group '" + impl->name + "': element " + std::to_string(g) +
                  " has no inverse");
  }
  return Group(std::move(impl));
}

bool Group::is_finite() const { return impl_->lattice_dim == 0; }

int Group::lattice_dim() const { return impl_->lattice_dim; }

int Group::order() const {
  if (!is_finite()) throw Error("group '" + impl_->name + "' is infinite");
  return impl_->order;
}

const std::string& Group::name() const { return impl_->name; }

GroupElem Group::identity() const { return GroupElem{}; }

GroupElem Group::mul(GroupElem a, GroupElem b) const {
  if (!contains(a) || !contains(b)) throw Error("group element out of range");
  if (is_finite())
    return elem(impl_->at(static_cast<int>(a.coords[0]), static_cast<int>(b.coords[0])));
  return GroupElem{{a.coords[0] + b.coords[0], a.coords[1] + b.coords[1]}};
}

GroupElem Group::inv(GroupElem a) const {
  if (!contains(a)) throw Error("group element out of range");
  if (is_finite()) return elem(impl_->inv[static_cast<std::size_t>(a.coords[0])]);
  return GroupElem{{-a.coords[0], -a.coords[1]}};
}

bool Group::contains(GroupElem a) const {
  if (is_finite())
    return a.coords[0] >= 0 && a.coords[0] < impl_->order && a.coords[1] == 0;
  if (impl_->lattice_dim == 1) return a.coords[1] == 0;
  return true;
}

std::vector<GroupElem> Group::elements() const {
  int m = order();
  std::vector<GroupElem> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out.push_back(elem(i));
  return out;
}

std::string Group::elem_label(GroupElem a) const {
  if (is_finite()) {
    auto i = static_cast<std::size_t>(a.coords[0]);
    if (i < impl_->labels.size()) return impl_->labels[i];
    return std::to_string(a.coords[0]);
  }
  if (impl_->lattice_dim == 1) return std::to_string(a.coords[0]);
  return std::to_string(a.coords[0]) + "," + std::to_string(a.coords[1]);
}

bool operator==(const Group& a, const Group& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->lattice_dim == b.impl_->lattice_dim &&
         a.impl_->order == b.impl_->order && a.impl_->mul == b.impl_->mul;
}

namespace {

// Strips '#' comments, returns nonblank lines.
std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

Group load_group(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.size() < 2) throw ParseError("group file: too short");

  std::istringstream l0(lines[0]);
  std::string kw, name;
  l0 >> kw >> name;
  if (kw != "group" || name.empty()) throw ParseError("group file: expected 'group <name>'");

  std::istringstream l1(lines[1]);
  int m = 0;
  l1 >> kw >> m;
  if (kw != "order" || m <= 0) throw ParseError("group file: expected 'order <m>'");

  if (lines.size() != 2 + static_cast<std::size_t>(m))
    throw ParseError("group file '" + name + "': expected " + std::to_string(m) +
                     " table rows, found " + std::to_string(lines.size() - 2));

  std::vector<int> mul;
  mul.reserve(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r) {
    std::istringstream row(lines[2 + static_cast<std::size_t>(r)]);
    for (int c = 0; c < m; ++c) {
      int v = 0;
      if (!(row >> v))
        throw ParseError("group file '" + name + "': row " + std::to_string(r) +
                         " has fewer than " + std::to_string(m) + " entries");
      if (v < 0 || v >= m)
        throw ParseError("group file '" + name + "': entry " + std::to_string(v) +
                         " out of range");
      mul.push_back(v);
    }
    int extra;
    if (row >> extra)
      throw ParseError("group file '" + name + "': row " + std::to_string(r) +
                       " has too many entries");
  }
  return Group::finite(name, m, std::move(mul));
}

GroupElem parse_elem(const Group& g, const std::string& token) {
  auto parse_int = [&](std::string_view sv) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc{} || p != sv.data() + sv.size())
      throw ParseError("bad group element '" + token + "'");
    return v;
  };
  GroupElem e;
  if (auto comma = token.find(','); comma != std::string::npos) {
    if (g.lattice_dim() != 2)
      throw ParseError("element '" + token + "' needs a two-dimensional lattice");
    e = elem(parse_int(std::string_view(token).substr(0, comma)),
             parse_int(std::string_view(token).substr(comma + 1)));
  } else {
    e = elem(parse_int(token));
  }
  if (!g.contains(e)) throw ParseError("element '" + token + "' not in group " + g.name());
  return e;
}

std::string format_elem(const Group& g, GroupElem e) {
  if (g.lattice_dim() == 2)
    return std::to_string(e.coords[0]) + "," + std::to_string(e.coords[1]);
  return std::to_string(e.coords[0]);
}

MemorySet::MemorySet(Group group, std::vector<GroupElem> elems)
    : group_(std::move(group)), elems_(std::move(elems)) {
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (!group_.contains(elems_[i]))
      throw Error("memory set: element not in group " + group_.name());
    for (std::size_t j = i + 1; j < elems_.size(); ++j)
      if (elems_[i] == elems_[j]) throw Error("memory set: duplicate element");
  }
}

MemorySet MemorySet::canonical(Group group, std::vector<GroupElem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return MemorySet(std::move(group), std::move(elems));
}

std::optional<std::size_t> MemorySet::index_of(GroupElem e) const {
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (elems_[i] == e) return i;
  return std::nullopt;
}

bool MemorySet::subset_of(const MemorySet& other) const {
  if (group_ != other.group_) return false;
  for (auto e : elems_)
    if (!other.contains(e)) return false;
  return true;
}

bool operator==(const MemorySet& a, const MemorySet& b) {
  return a.group_ == b.group_ && a.elems_ == b.elems_;
}

MemorySet product_set(const MemorySet& a, const MemorySet& b) {
  if (a.group() != b.group()) throw Error("product_set: mismatched groups");
  std::vector<GroupElem> out;
  out.reserve(a.size() * b.size());
  for (auto s1 : a.elems())
    for (auto s2 : b.elems()) out.push_back(a.group().mul(s1, s2));
  return MemorySet::canonical(a.group(), std::move(out));
}

MemorySet union_set(const MemorySet& a, const MemorySet& b) {
  if (a.group() != b.group()) throw Error("union_set: mismatched groups");
  std::vector<GroupElem> out(a.elems().begin(), a.elems().end());
  for (auto e : b.elems())
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  return MemorySet(a.group(), std::move(out));
}

Configuration Configuration::over_finite(Group group, int alphabet_size,
                                         std::vector<int> values) {
  if (!group.is_finite()) throw Error("configuration: group is not finite");
  if (values.size() != static_cast<std::size_t>(group.order()))
    throw Error("configuration: expected one value per group element");
  Configuration x(std::move(group));
  x.q_ = alphabet_size;
  x.values_ = std::move(values);
  for (int v : x.values_)
    if (v < 0 || v >= alphabet_size) throw Error("configuration: value out of range");
  return x;
}

Configuration Configuration::periodic(Group lattice, int alphabet_size,
                                      std::array<int, 2> period,
                                      std::vector<int> values) {
  if (!lattice.is_lattice()) throw Error("configuration: group is not a lattice");
  int dim = lattice.lattice_dim();
  if (dim == 1) period[1] = 1;
  if (period[0] < 1 || period[1] < 1)
    throw Error("configuration: period components must be >= 1");
  if (values.size() != static_cast<std::size_t>(period[0]) * period[1])
    throw Error("configuration: value grid does not match period");
  Configuration x(std::move(lattice));
  x.q_ = alphabet_size;
  x.period_ = period;
  x.values_ = std::move(values);
  for (int v : x.values_)
    if (v < 0 || v >= alphabet_size) throw Error("configuration: value out of range");
  return x;
}

int Configuration::at(GroupElem pos) const {
  if (group_.is_finite()) {
    if (!group_.contains(pos)) throw Error("configuration: position out of range");
    return values_[static_cast<std::size_t>(pos.coords[0])];
  }
  auto i = floor_mod(pos.coords[0], period_[0]);
  auto j = floor_mod(pos.coords[1], period_[1]);
  return values_[static_cast<std::size_t>(i) * period_[1] + j];
}

void Configuration::set(GroupElem pos, int value) {
  if (value < 0 || value >= q_) throw Error("configuration: value out of range");
  if (group_.is_finite()) {
    if (!group_.contains(pos)) throw Error("configuration: position out of range");
    values_[static_cast<std::size_t>(pos.coords[0])] = value;
    return;
  }
  auto i = floor_mod(pos.coords[0], period_[0]);
  auto j = floor_mod(pos.coords[1], period_[1]);
  values_[static_cast<std::size_t>(i) * period_[1] + j] = value;
}

bool operator==(const Configuration& a, const Configuration& b) {
  return a.group_ == b.group_ && a.q_ == b.q_ && a.period_ == b.period_ &&
         a.values_ == b.values_;
}

Configuration shift(GroupElem g, const Configuration& x) {
  const Group& G = x.group();
  if (!G.contains(g)) throw Error("shift: element not in group");
  Configuration y = x;
  if (G.is_finite()) {
    GroupElem gi = G.inv(g);
    for (int h = 0; h < G.order(); ++h) y.set(elem(h), x.at(G.mul(gi, elem(h))));
    return y;
  }
  auto [m1, m2] = x.period();
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m2; ++j)
      y.set(elem(i, j), x.at(elem(i - g.coords[0], j - g.coords[1])));
  return y;
}

std::uint64_t configuration_count(const Group& g, int alphabet_size) {
  return pow_checked(static_cast<std::uint64_t>(alphabet_size),
                     static_cast<unsigned>(g.order()));
}

Configuration configuration_from_index(const Group& g, int alphabet_size,
                                       std::uint64_t index) {
  std::vector<int> values(static_cast<std::size_t>(g.order()));
  decode_tuple(static_cast<std::size_t>(index), alphabet_size, values);
  return Configuration::over_finite(g, alphabet_size, std::move(values));
}

Configuration parse_configuration(const Group& g, int alphabet_size,
                                  const std::string& text) {
  if (alphabet_size > 10)
    throw ParseError("configuration string: alphabet too large for digit notation");
  auto digit = [&](char c) {
    if (c < '0' || c > '9' || c - '0' >= alphabet_size)
      throw ParseError(std::string("configuration string: bad digit '") + c + "'");
    return c - '0';
  };
  if (g.is_finite() || g.lattice_dim() == 1) {
    std::vector<int> values;
    values.reserve(text.size());
    for (char c : text) values.push_back(digit(c));
    if (g.is_finite()) {
      if (values.size() != static_cast<std::size_t>(g.order()))
        throw ParseError("configuration string: expected " +
                         std::to_string(g.order()) + " digits, got " +
                         std::to_string(values.size()));
      return Configuration::over_finite(g, alphabet_size, std::move(values));
    }
    if (values.empty()) throw ParseError("configuration string: empty");
    int period = static_cast<int>(values.size());
    return Configuration::periodic(g, alphabet_size, {period, 1}, std::move(values));
  }
  std::vector<int> values;
  int cols = -1, rows = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('/', start);
    if (end == std::string::npos) end = text.size();
    int len = static_cast<int>(end - start);
    if (cols < 0) cols = len;
    if (len != cols || len == 0)
      throw ParseError("configuration string: ragged or empty rows");
    for (auto k = start; k < end; ++k) values.push_back(digit(text[k]));
    ++rows;
    start = end + 1;
    if (end == text.size()) break;
  }
  return Configuration::periodic(g, alphabet_size, {rows, cols}, std::move(values));
}

std::string format_configuration(const Configuration& x) {
  std::string out;
  auto vals = x.values();
  if (x.group().lattice_dim() == 2) {
    auto [m1, m2] = x.period();
    for (int i = 0; i < m1; ++i) {
      if (i) out += '/';
      for (int j = 0; j < m2; ++j)
        out += static_cast<char>('0' + vals[static_cast<std::size_t>(i) * m2 + j]);
    }
    return out;
  }
  for (int v : vals) out += static_cast<char>('0' + v);
  return out;
}

}  // namespace casa
