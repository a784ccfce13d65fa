#pragma once

// Isomorphism-class representatives for every order 1..15 and for order 27.

#include <map>
#include <string>
#include <vector>

#include "groupdist/group.hpp"

namespace groupdist {

struct CatalogEntry {
  std::string name;
  int order = 0;
  std::string recipe;
  GroupTable table;
};

namespace detail {

inline std::vector<std::vector<Elem>> cyclic_power_action(int na, int nb, int multiplier) {
  // action[y](x) = multiplier^y * x mod na on the cyclic group of order na.
  std::vector<std::vector<Elem>> action(nb, std::vector<Elem>(na));
  int factor = 1;
  for (int y = 0; y < nb; ++y) {
    for (int x = 0; x < na; ++x) action[y][x] = (factor * x) % na;
    factor = (factor * multiplier) % na;
  }
  return action;
}

inline GroupTable dihedral(int m) {
  // C_m by inversion, order 2m.
  return semidirect_product(cyclic(m), cyclic(2), cyclic_power_action(m, 2, m - 1))
      .renamed("D" + std::to_string(m));
}

inline GroupTable quaternion8() {
  // 1, i, j, k, -1, -i, -j, -k
  std::vector<Elem> cells = {
      0, 1, 2, 3, 4, 5, 6, 7,  //
      1, 4, 3, 6, 5, 0, 7, 2,  //
      2, 7, 4, 1, 6, 3, 0, 5,  //
      3, 2, 5, 4, 7, 6, 1, 0,  //
      4, 5, 6, 7, 0, 1, 2, 3,  //
      5, 0, 7, 2, 1, 4, 3, 6,  //
      6, 3, 0, 5, 2, 7, 4, 1,  //
      7, 6, 1, 0, 3, 2, 5, 4,  //
  };
  return GroupTable::unchecked("Q8", 8, std::move(cells));
}

inline GroupTable dicyclic3() {
  // <a, x | a^6 = 1, x^2 = a^3, x a x^-1 = a^-1>; a^i x^j has index i + 6j.
  const int n = 12;
  std::vector<Elem> cells(n * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const int i = u % 6, j = u / 6, k = v % 6, l = v / 6;
      int power = (j == 0 ? i + k : i - k + 6) % 6;
      int xs = j + l;
      if (xs == 2) {
        power = (power + 3) % 6;
        xs = 0;
      }
      cells[u * n + v] = power + 6 * xs;
    }
  return GroupTable::unchecked("Dic3", n, std::move(cells));
}

inline GroupTable alternating4() {
  // (C2 x C2) by C3 cyclically permuting the three involutions 1 -> 2 -> 3.
  const GroupTable klein = direct_product(cyclic(2), cyclic(2));
  std::vector<std::vector<Elem>> action = {{0, 1, 2, 3}, {0, 3, 1, 2}, {0, 2, 3, 1}};
  return semidirect_product(klein, cyclic(3), action).renamed("A4");
}

inline GroupTable product(const std::vector<int>& cyclic_orders, const std::string& name) {
  GroupTable g = cyclic(cyclic_orders.front());
  for (std::size_t i = 1; i < cyclic_orders.size(); ++i) g = direct_product(g, cyclic(cyclic_orders[i]));
  return g.renamed(name);
}

inline std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  auto add = [&](GroupTable g, std::string recipe) {
    const int n = g.order();
    std::string name = g.name();
    out.push_back({std::move(name), n, std::move(recipe), std::move(g)});
  };
  auto add_cyclic = [&](int n) { add(cyclic(n), "cyclic(" + std::to_string(n) + ")"); };

  for (int n : {1, 2, 3}) add_cyclic(n);
  add_cyclic(4);
  add(product({2, 2}, "C2xC2"), "direct_product(cyclic(2), cyclic(2))");
  add_cyclic(5);
  add_cyclic(6);
  add(dihedral(3), "semidirect_product(cyclic(3), cyclic(2), inversion)");
  add_cyclic(7);
  add_cyclic(8);
  add(product({4, 2}, "C4xC2"), "direct_product(cyclic(4), cyclic(2))");
  add(product({2, 2, 2}, "C2xC2xC2"), "direct_product(cyclic(2), cyclic(2), cyclic(2))");
  add(dihedral(4), "semidirect_product(cyclic(4), cyclic(2), inversion)");
  add(quaternion8(), "explicit table");
  add_cyclic(9);
  add(product({3, 3}, "C3xC3"), "direct_product(cyclic(3), cyclic(3))");
  add_cyclic(10);
  add(dihedral(5), "semidirect_product(cyclic(5), cyclic(2), inversion)");
  add_cyclic(11);
  add_cyclic(12);
  add(product({6, 2}, "C6xC2"), "direct_product(cyclic(6), cyclic(2))");
  add(alternating4(), "semidirect_product(C2xC2, cyclic(3), 3-cycle)");
  add(dihedral(6), "semidirect_product(cyclic(6), cyclic(2), inversion)");
  add(dicyclic3(), "explicit table");
  add_cyclic(13);
  add_cyclic(14);
  add(dihedral(7), "semidirect_product(cyclic(7), cyclic(2), inversion)");
  add_cyclic(15);
  add_cyclic(27);
  add(product({9, 3}, "C9xC3"), "direct_product(cyclic(9), cyclic(3))");
  add(product({3, 3, 3}, "C3xC3xC3"), "direct_product(cyclic(3), cyclic(3), cyclic(3))");
  add(heisenberg(3), "heisenberg(3)");
  add(semidirect_product(cyclic(9), cyclic(3), cyclic_power_action(9, 3, 4)).renamed("C9sC3"),
      "semidirect_product(cyclic(9), cyclic(3), x -> 4x)");
  return out;
}

}  // namespace detail

inline bool catalog_covers(int n) { return (n >= 1 && n <= 15) || n == 27; }

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = detail::build_catalog();
  return entries;
}

inline std::vector<int> catalog_orders() {
  std::vector<int> orders;
  for (int n = 1; n <= 15; ++n) orders.push_back(n);
  orders.push_back(27);
  return orders;
}

inline std::vector<CatalogEntry> all_of_order(int n) {
  if (!catalog_covers(n))
    throw Error("order " + std::to_string(n) + " is not covered by the catalog (supported: 1..15, 27)");
  std::vector<CatalogEntry> out;
  for (const CatalogEntry& e : catalog())
    if (e.order == n) out.push_back(e);
  return out;
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const CatalogEntry& e : catalog()) names.push_back(e.name);
  return names;
}

inline const CatalogEntry& by_name(std::string_view label) {
  for (const CatalogEntry& e : catalog())
    if (e.name == label) return e;
  std::string msg = "unknown group name '" + std::string(label) + "'; valid names:";
  for (const CatalogEntry& e : catalog()) msg += " " + e.name;
  throw Error(msg);
}

}  // namespace groupdist
