#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "linalg.hpp"
#include "module.hpp"
#include "report.hpp"

namespace rackbeads {

/// Arc of each semi-arc: semi-arcs joined through over passages, arcs
/// numbered 1.. in order of their smallest semi-arc. Entry s − 1 is the arc
/// of semi-arc s.
inline std::vector<int> arc_of_semi_arcs(const LinkDiagram& d) {
  const int n = d.semi_arc_count();
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& c : d.crossings()) {
    int a = find(c.over_in), b = find(c.over_out);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> arc_of_root(n + 1, 0), out(n);
  int arcs = 0;
  for (int s = 1; s <= n; ++s) {
    const int r = find(s);
    if (arc_of_root[r] == 0) arc_of_root[r] = ++arcs;
    out[s - 1] = arc_of_root[r];
  }
  return out;
}

/// Relation matrix of the fundamental module of an X-labeled diagram over
/// Z_m: one column per arc, one row per crossing (in order) then per kink.
///   positive crossing: t_{x,y} e_u + s_{x,y} e_o − e_w
///   negative crossing: t_{x',y} e_w + s_{x',y} e_o − e_u
///   kink:              (t_{x,x} + s_{x,x}) e_in − e_out
/// with u, w the under-in and under-out arcs, o the over arc, x, x', y their labels.
inline ZmMatrix presentation_matrix(const LinkDiagram& d, const std::vector<int>& labels, const XModuleStructure& mod) {
  if (static_cast<int>(labels.size()) != d.semi_arc_count())
    throw StructuralError("labeling has " + std::to_string(labels.size()) + " entries but the diagram has " +
                          std::to_string(d.semi_arc_count()) + " semi-arcs");
  for (int x : labels)
    if (x < 1 || x > mod.rack_size()) throw StructuralError("label outside the module's rack");
  const auto arc = arc_of_semi_arcs(d);
  const int cols = arc.empty() ? 0 : *std::max_element(arc.begin(), arc.end());
  ZmMatrix m(0, cols, mod.modulus());
  auto label = [&](int s) { return labels[s - 1]; };
  auto col = [&](int s) { return arc[s - 1] - 1; };
  for (const auto& c : d.crossings()) {
    const int row = m.append_row();
    const int y = label(c.over_in);
    if (label(c.over_out) != y) throw StructuralError("labeling changes along an over strand");
    if (c.sign > 0) {
      const int x = label(c.under_in);
      m.add(row, col(c.under_in), mod.t(x, y));
      m.add(row, col(c.over_in), mod.s(x, y));
      m.add(row, col(c.under_out), -1);
    } else {
      const int x = label(c.under_out);
      m.add(row, col(c.under_out), mod.t(x, y));
      m.add(row, col(c.over_in), mod.s(x, y));
      m.add(row, col(c.under_in), -1);
    }
  }
  for (const auto& k : d.kinks()) {
    const int row = m.append_row();
    const int x = label(k.in);
    m.add(row, col(k.in), mod.t(x, x) + mod.s(x, x));
    m.add(row, col(k.out), -1);
  }
  return m;
}

}  // namespace rackbeads
