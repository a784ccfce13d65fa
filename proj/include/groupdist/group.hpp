#pragma once

// Finite groups as Cayley tables over dense element indices 0..n-1.

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace groupdist {

using Elem = int;
inline constexpr Elem kUndefined = -1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class GroupTable {
 public:
  GroupTable() = default;

  // Builds a table without checking the group axioms. Use validate() or
  // make_checked() for untrusted input.
  static GroupTable unchecked(std::string name, int n, std::vector<Elem> cells) {
    if (n <= 0) throw Error("group order must be positive");
    if (cells.size() != static_cast<std::size_t>(n) * n)
      throw Error("table must have n*n entries");
    GroupTable g;
    g.name_ = std::move(name);
    g.n_ = n;
    g.cells_ = std::move(cells);
    g.identity_ = g.scan_identity();
    return g;
  }

  static GroupTable make_checked(std::string name, int n, std::vector<Elem> cells);

  const std::string& name() const { return name_; }
  int order() const { return n_; }
  Elem identity() const { return identity_; }
  const std::vector<Elem>& cells() const { return cells_; }

  Elem op(Elem x, Elem y) const { return cells_[static_cast<std::size_t>(x) * n_ + y]; }

  Elem inverse(Elem x) const {
    const Elem* row = &cells_[static_cast<std::size_t>(x) * n_];
    for (Elem y = 0; y < n_; ++y)
      if (row[y] == identity_) return y;
    return kUndefined;
  }

  std::vector<Elem> inverses() const {
    std::vector<Elem> inv(n_);
    for (Elem x = 0; x < n_; ++x) inv[x] = inverse(x);
    return inv;
  }

  GroupTable renamed(std::string name) const {
    GroupTable g = *this;
    g.name_ = std::move(name);
    return g;
  }

  bool is_abelian() const {
    for (Elem x = 0; x < n_; ++x)
      for (Elem y = x + 1; y < n_; ++y)
        if (op(x, y) != op(y, x)) return false;
    return true;
  }

  friend bool operator==(const GroupTable& a, const GroupTable& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_;
  }

 private:
  Elem scan_identity() const {
    for (Elem e = 0; e < n_; ++e) {
      bool ok = true;
      for (Elem x = 0; x < n_ && ok; ++x) {
        const Elem l = op(e, x), r = op(x, e);
        ok = l == x && r == x;
      }
      if (ok) return e;
    }
    return kUndefined;
  }

  std::string name_;
  int n_ = 0;
  std::vector<Elem> cells_;
  Elem identity_ = kUndefined;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { kClosure, kLatinRow, kLatinColumn, kIdentity, kInverse, kAssociativity };

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::kClosure: return "closure";
    case ViolationKind::kLatinRow: return "latin-row";
    case ViolationKind::kLatinColumn: return "latin-column";
    case ViolationKind::kIdentity: return "identity";
    case ViolationKind::kInverse: return "inverse";
    case ViolationKind::kAssociativity: return "associativity";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  // Up to three indices; unused slots are kUndefined.
  std::array<Elem, 3> witness{kUndefined, kUndefined, kUndefined};
  std::string message;
};

struct Verdict {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
  }
};

// Checks closure, the Latin-square property, identity, inverses and
// associativity. Each violated axiom is reported once with its first witness.
inline Verdict validate(const GroupTable& g) {
  Verdict verdict;
  const int n = g.order();
  auto add = [&](ViolationKind kind, std::array<Elem, 3> w, std::string msg) {
    verdict.violations.push_back({kind, w, std::move(msg)});
  };

  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) {
      const Elem v = g.op(i, j);
      if (v < 0 || v >= n) {
        add(ViolationKind::kClosure, {i, j, v},
            "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(v) +
                " is out of range");
        return verdict;
      }
    }

  std::vector<char> seen(n);
  for (Elem i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem j = 0; j < n; ++j) {
      const Elem v = g.op(i, j);
      if (seen[v]) {
        add(ViolationKind::kLatinRow, {i, j, v},
            "row " + std::to_string(i) + " is not a permutation (repeats " + std::to_string(v) + ")");
        i = n;
        break;
      }
      seen[v] = 1;
    }
  }
  for (Elem j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem i = 0; i < n; ++i) {
      const Elem v = g.op(i, j);
      if (seen[v]) {
        add(ViolationKind::kLatinColumn, {i, j, v},
            "column " + std::to_string(j) + " is not a permutation (repeats " + std::to_string(v) +
                ")");
        j = n;
        break;
      }
      seen[v] = 1;
    }
  }

  const Elem e = g.identity();
  if (e == kUndefined) {
    add(ViolationKind::kIdentity, {}, "no two-sided identity element");
  } else {
    for (Elem x = 0; x < n; ++x) {
      bool found = false;
      for (Elem y = 0; y < n && !found; ++y) found = g.op(x, y) == e && g.op(y, x) == e;
      if (!found) {
        add(ViolationKind::kInverse, {x, kUndefined, kUndefined},
            "element " + std::to_string(x) + " has no two-sided inverse");
        break;
      }
    }
  }

  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) {
      const Elem ij = g.op(i, j);
      for (Elem k = 0; k < n; ++k) {
        if (g.op(ij, k) != g.op(i, g.op(j, k))) {
          add(ViolationKind::kAssociativity, {i, j, k},
              "(" + std::to_string(i) + "*" + std::to_string(j) + ")*" + std::to_string(k) +
                  " != " + std::to_string(i) + "*(" + std::to_string(j) + "*" + std::to_string(k) +
                  ")");
          return verdict;
        }
      }
    }
  return verdict;
}

inline GroupTable GroupTable::make_checked(std::string name, int n, std::vector<Elem> cells) {
  GroupTable g = unchecked(std::move(name), n, std::move(cells));
  const Verdict v = validate(g);
  if (!v.ok()) throw Error(g.name() + ": " + v.violations.front().message);
  return g;
}

// ---------------------------------------------------------------------------
// Element maps

// A mapping between index sets. Undefined images are kUndefined.
struct ElementMap {
  int domain_size = 0;
  int codomain_size = 0;
  std::vector<Elem> images;

  static ElementMap identity(int n) {
    ElementMap m{n, n, std::vector<Elem>(n)};
    for (Elem x = 0; x < n; ++x) m.images[x] = x;
    return m;
  }
  static ElementMap empty(int domain, int codomain) {
    return {domain, codomain, std::vector<Elem>(domain, kUndefined)};
  }

  Elem operator()(Elem x) const { return images[x]; }
  bool defined(Elem x) const { return images[x] != kUndefined; }

  bool in_range() const {
    if (images.size() != static_cast<std::size_t>(domain_size)) return false;
    return std::all_of(images.begin(), images.end(), [&](Elem v) {
      return v == kUndefined || (v >= 0 && v < codomain_size);
    });
  }
  bool is_total() const {
    return in_range() &&
           std::none_of(images.begin(), images.end(), [](Elem v) { return v == kUndefined; });
  }
  bool is_injective() const {
    if (!in_range()) return false;
    std::vector<char> used(codomain_size);
    for (Elem v : images) {
      if (v == kUndefined) continue;
      if (used[v]) return false;
      used[v] = 1;
    }
    return true;
  }
  bool is_bijection() const { return domain_size == codomain_size && is_total() && is_injective(); }

  friend bool operator==(const ElementMap&, const ElementMap&) = default;
};

using Bijection = ElementMap;
using Injection = ElementMap;
using PartialInjection = ElementMap;

inline bool is_homomorphism_map(const ElementMap& m, const GroupTable& g, const GroupTable& k) {
  const int n = g.order();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (m(g.op(x, y)) != k.op(m(x), m(y))) return false;
  return true;
}

// Relabels g through the bijection sigma: sigma(x) * sigma(y) = sigma(x o y).
inline GroupTable relabel(const GroupTable& g, const Bijection& sigma) {
  if (!sigma.is_bijection() || sigma.domain_size != g.order())
    throw Error("relabel: map is not a bijection of the group's index set");
  const int n = g.order();
  std::vector<Elem> cells(static_cast<std::size_t>(n) * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      cells[static_cast<std::size_t>(sigma(x)) * n + sigma(y)] = sigma(g.op(x, y));
  return GroupTable::unchecked(g.name(), n, std::move(cells));
}

// ---------------------------------------------------------------------------
// Table file format

// Reads the file shape (comments, "n <order>", n rows of n in-range
// integers) without checking the group axioms.
inline GroupTable parse_table_shape(std::istream& in) {
  std::string line;
  std::string name;
  int n = -1;
  std::vector<Elem> cells;
  int rows = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const std::string_view body = std::string_view(line).substr(first + 1);
      const auto pos = body.find("name:");
      if (pos != std::string_view::npos && name.empty()) {
        std::string label(body.substr(pos + 5));
        const auto b = label.find_first_not_of(' ');
        const auto e = label.find_last_not_of(" \r");
        name = b == std::string::npos ? std::string() : label.substr(b, e - b + 1);
      }
      continue;
    }
    std::istringstream ls(line);
    if (n < 0) {
      std::string key;
      long long value = 0;
      std::string extra;
      if (!(ls >> key >> value) || key != "n" || (ls >> extra))
        throw ParseError("line " + std::to_string(lineno) + ": expected 'n <order>'");
      if (value <= 0 || value > 4096)
        throw ParseError("line " + std::to_string(lineno) + ": order out of range");
      n = static_cast<int>(value);
      cells.reserve(static_cast<std::size_t>(n) * n);
      continue;
    }
    if (rows == n) throw ParseError("line " + std::to_string(lineno) + ": too many rows");
    std::string tok;
    int count = 0;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw ParseError("line " + std::to_string(lineno) + ": '" + tok + "' is not an integer");
      if (v < 0 || v >= n)
        throw ParseError("line " + std::to_string(lineno) + ": entry " + tok +
                         " out of range 0.." + std::to_string(n - 1));
      cells.push_back(static_cast<Elem>(v));
      ++count;
    }
    if (count != n)
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(n) +
                       " entries, found " + std::to_string(count));
    ++rows;
  }
  if (n < 0) throw ParseError("missing 'n <order>' line");
  if (rows != n)
    throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(rows));
  return GroupTable::unchecked(name, n, std::move(cells));
}

inline GroupTable parse_table_shape(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_table_shape(in);
}

// Parses and fully validates; the identity is located by scanning.
inline GroupTable parse_table(std::istream& in) {
  GroupTable g = parse_table_shape(in);
  const Verdict v = validate(g);
  if (!v.ok()) throw ParseError("invalid group table: " + v.violations.front().message);
  return g;
}

inline GroupTable parse_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_table(in);
}

inline std::string serialize(const GroupTable& g) {
  std::string out = "# name: " + g.name() + "\n";
  out += "n " + std::to_string(g.order()) + "\n";
  for (Elem i = 0; i < g.order(); ++i) {
    for (Elem j = 0; j < g.order(); ++j) {
      if (j) out += ' ';
      out += std::to_string(g.op(i, j));
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructors

inline GroupTable cyclic(int n) {
  if (n <= 0) throw Error("cyclic: order must be positive");
  std::vector<Elem> cells(static_cast<std::size_t>(n) * n);
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) cells[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  return GroupTable::unchecked("C" + std::to_string(n), n, std::move(cells));
}

// Element (x, y) is encoded as x * |b| + y.
inline GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elem> cells(static_cast<std::size_t>(n) * n);
  for (Elem x = 0; x < na; ++x)
    for (Elem y = 0; y < nb; ++y)
      for (Elem x2 = 0; x2 < na; ++x2)
        for (Elem y2 = 0; y2 < nb; ++y2)
          cells[static_cast<std::size_t>(x * nb + y) * n + (x2 * nb + y2)] =
              a.op(x, x2) * nb + b.op(y, y2);
  GroupTable g = GroupTable::unchecked(a.name() + "x" + b.name(), n, std::move(cells));
  return g;
}

// (x, y)(x', y') = (x o action[y](x'), y * y'), encoded as x * |b| + y.
// action[y] is given as the image sequence of an automorphism of a.
inline GroupTable semidirect_product(const GroupTable& a, const GroupTable& b,
                                     const std::vector<std::vector<Elem>>& action) {
  const int na = a.order(), nb = b.order();
  if (action.size() != static_cast<std::size_t>(nb))
    throw Error("semidirect_product: need one automorphism per element of b");
  for (Elem y = 0; y < nb; ++y) {
    const ElementMap m{na, na, action[y]};
    if (!m.is_bijection())
      throw Error("semidirect_product: action[" + std::to_string(y) + "] is not a bijection");
    for (Elem x = 0; x < na; ++x)
      for (Elem x2 = 0; x2 < na; ++x2)
        if (m(a.op(x, x2)) != a.op(m(x), m(x2)))
          throw Error("semidirect_product: action[" + std::to_string(y) +
                      "] is not an automorphism (witness " + std::to_string(x) + "," +
                      std::to_string(x2) + ")");
  }
  for (Elem y = 0; y < nb; ++y)
    for (Elem y2 = 0; y2 < nb; ++y2) {
      const auto& composed = action[b.op(y, y2)];
      for (Elem x = 0; x < na; ++x)
        if (composed[x] != action[y][action[y2][x]])
          throw Error("semidirect_product: action is not a homomorphism (witness " +
                      std::to_string(y) + "," + std::to_string(y2) + ")");
    }
  const int n = na * nb;
  std::vector<Elem> cells(static_cast<std::size_t>(n) * n);
  for (Elem x = 0; x < na; ++x)
    for (Elem y = 0; y < nb; ++y)
      for (Elem x2 = 0; x2 < na; ++x2)
        for (Elem y2 = 0; y2 < nb; ++y2)
          cells[static_cast<std::size_t>(x * nb + y) * n + (x2 * nb + y2)] =
              a.op(x, action[y][x2]) * nb + b.op(y, y2);
  return GroupTable::unchecked(a.name() + "s" + b.name(), n, std::move(cells));
}

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Upper unitriangular 3x3 matrices mod p; (a,b,c) is encoded as a*p^2 + b*p + c.
inline GroupTable heisenberg(int p) {
  if (!is_prime(p)) throw Error("heisenberg: " + std::to_string(p) + " is not prime");
  const int n = p * p * p;
  std::vector<Elem> cells(static_cast<std::size_t>(n) * n);
  for (Elem u = 0; u < n; ++u) {
    const int a = u / (p * p), b = (u / p) % p, c = u % p;
    for (Elem v = 0; v < n; ++v) {
      const int a2 = v / (p * p), b2 = (v / p) % p, c2 = v % p;
      cells[static_cast<std::size_t>(u) * n + v] =
          ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
    }
  }
  return GroupTable::unchecked("Heis" + std::to_string(p), n, std::move(cells));
}

inline int element_order(const GroupTable& g, Elem x) {
  int k = 1;
  for (Elem y = x; y != g.identity(); y = g.op(y, x)) ++k;
  return k;
}

inline std::vector<int> element_orders(const GroupTable& g) {
  std::vector<int> orders(g.order());
  for (Elem x = 0; x < g.order(); ++x) orders[x] = element_order(g, x);
  return orders;
}

inline std::vector<int> order_multiset(const GroupTable& g) {
  std::vector<int> orders = element_orders(g);
  std::sort(orders.begin(), orders.end());
  return orders;
}

// ---------------------------------------------------------------------------
// Homomorphism search

// Greedy generating sequence: repeatedly add the lowest-index element not in
// the span of those chosen so far.
inline std::vector<Elem> generating_sequence(const GroupTable& g) {
  const int n = g.order();
  std::vector<char> in_span(n);
  std::vector<Elem> gens;
  auto recompute_span = [&] {
    std::fill(in_span.begin(), in_span.end(), 0);
    std::vector<Elem> span{g.identity()};
    in_span[g.identity()] = 1;
    for (std::size_t i = 0; i < span.size(); ++i)
      for (Elem s : gens) {
        const Elem z = g.op(span[i], s);
        if (!in_span[z]) {
          in_span[z] = 1;
          span.push_back(z);
        }
      }
  };
  recompute_span();
  for (Elem cand = 0; cand < n; ++cand) {
    if (in_span[cand]) continue;
    gens.push_back(cand);
    recompute_span();
  }
  return gens;
}

namespace detail {

// Backtracking over images of a generating sequence. Each partial
// assignment is extended to the generated subgroup by closure; conflicts
// prune. Calls visit(map) for every homomorphism found; stops when visit
// returns false.
template <class Visit>
void search_homomorphisms(const GroupTable& g, const GroupTable& k, bool injective, Visit&& visit) {
  const int n = g.order(), m = k.order();
  const std::vector<Elem> gens = generating_sequence(g);
  const std::vector<int> g_ord = element_orders(g), k_ord = element_orders(k);

  std::vector<Elem> img(n, kUndefined);
  std::vector<Elem> owner(m, kUndefined);
  img[g.identity()] = k.identity();
  owner[k.identity()] = g.identity();

  // Stack of elements assigned at each level for undo.
  std::vector<Elem> trail;
  trail.reserve(n);
  bool stop = false;

  auto assign = [&](Elem x, Elem v) -> bool {
    if (img[x] != kUndefined) return img[x] == v;
    if (injective && owner[v] != kUndefined) return false;
    img[x] = v;
    if (injective) owner[v] = x;
    trail.push_back(x);
    return true;
  };
  auto undo_to = [&](std::size_t mark) {
    while (trail.size() > mark) {
      const Elem x = trail.back();
      trail.pop_back();
      if (injective) owner[img[x]] = kUndefined;
      img[x] = kUndefined;
    }
  };
  // Closure: multiply every mapped element by every chosen generator on the
  // right, propagating images and detecting conflicts.
  auto close = [&](std::size_t level) -> bool {
    std::vector<Elem> frontier;
    for (Elem x = 0; x < n; ++x)
      if (img[x] != kUndefined) frontier.push_back(x);
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const Elem x = frontier[i];
      for (std::size_t s = 0; s <= level; ++s) {
        const Elem gen = gens[s];
        const Elem z = g.op(x, gen);
        const Elem want = k.op(img[x], img[gen]);
        const bool fresh = img[z] == kUndefined;
        if (!assign(z, want)) return false;
        if (fresh) frontier.push_back(z);
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t level) -> void {
    if (stop) return;
    if (level == gens.size()) {
      ElementMap map{n, m, img};
      if (is_homomorphism_map(map, g, k)) stop = !visit(map);
      return;
    }
    const Elem gen = gens[level];
    for (Elem v = 0; v < m && !stop; ++v) {
      if (injective ? k_ord[v] != g_ord[gen] : g_ord[gen] % k_ord[v] != 0) continue;
      const std::size_t mark = trail.size();
      if (assign(gen, v) && close(level)) self(self, level + 1);
      undo_to(mark);
    }
  };
  rec(rec, 0);
}

}  // namespace detail

inline std::optional<Bijection> find_isomorphism(const GroupTable& a, const GroupTable& b) {
  if (a.order() != b.order() || order_multiset(a) != order_multiset(b)) return std::nullopt;
  std::optional<Bijection> found;
  detail::search_homomorphisms(a, b, true, [&](const ElementMap& m) {
    found = m;
    return false;
  });
  return found;
}

inline std::optional<Injection> find_subgroup_embedding(const GroupTable& g, const GroupTable& k) {
  if (g.order() > k.order() || k.order() % g.order() != 0) return std::nullopt;
  std::optional<Injection> found;
  detail::search_homomorphisms(g, k, true, [&](const ElementMap& m) {
    found = m;
    return false;
  });
  return found;
}

// Enumerates homomorphisms g -> k (not necessarily injective), up to limit.
inline std::vector<ElementMap> find_homomorphisms(const GroupTable& g, const GroupTable& k,
                                                  std::size_t limit) {
  std::vector<ElementMap> out;
  if (limit == 0) return out;
  detail::search_homomorphisms(g, k, false, [&](const ElementMap& m) {
    out.push_back(m);
    return out.size() < limit;
  });
  return out;
}

inline bool is_isomorphic(const GroupTable& a, const GroupTable& b) {
  return find_isomorphism(a, b).has_value();
}

}  // namespace groupdist
