#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "cochain.hpp"
#include "cocycle.hpp"
#include "diagram.hpp"
#include "labeling.hpp"
#include "linalg.hpp"
#include "module.hpp"
#include "polynomial.hpp"
#include "presentation.hpp"
#include "rack.hpp"

namespace rackbeads {

/// A labeling gives the rack element of semi-arc s at index s − 1.
using Labeling = std::vector<int>;

/// All framing vectors in (Z_N)^c, lexicographic.
inline std::vector<std::vector<int>> framing_classes(int components, int modulus) {
  if (modulus < 1) throw StructuralError("framing modulus must be positive");
  std::vector<std::vector<int>> out;
  std::vector<int> w(components, 0);
  while (true) {
    out.push_back(w);
    int i = components - 1;
    while (i >= 0 && w[i] == modulus - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return out;
}

/// The rack-labeling constraint system of a diagram.
inline ConstraintSystem labeling_system(const LinkDiagram& d, const RackTable& r) {
  const int n = r.size();
  auto op = std::make_shared<std::vector<int>>(static_cast<std::size_t>(n) * n);
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) (*op)[static_cast<std::size_t>(x - 1) * n + (y - 1)] = r.op(x, y);
  auto pi = std::make_shared<std::vector<int>>(kink_map(r).perm);
  ConstraintSystem sys(d.semi_arc_count(), n);
  using K = LabelConstraint::Kind;
  for (const auto& c : label_constraints(d)) {
    switch (c.kind) {
      case K::Operation: sys.add_binary(c.result, c.left, c.right, op); break;
      case K::Equality: sys.add_equality(c.result, c.left); break;
      case K::Kink: sys.add_unary(c.result, c.left, pi); break;
    }
  }
  return sys;
}

/// X-labelings of a (framed) diagram, lexicographic in semi-arc order.
inline std::vector<Labeling> enumerate_labelings(const LinkDiagram& d, const RackTable& r) {
  return labeling_system(d, r).solutions();
}

/// The bead constraint system over a fixed X-labeling.
inline ConstraintSystem bead_system(const LinkDiagram& d, const Labeling& f, const DynamicalCocycle& alpha) {
  if (static_cast<int>(f.size()) != d.semi_arc_count()) throw StructuralError("labeling does not fit the diagram");
  const int k = alpha.beads();
  std::map<std::pair<int, int>, ConstraintSystem::Table> ops;
  std::map<int, ConstraintSystem::Table> kinks;
  auto op_table = [&](int x, int y) {
    auto& t = ops[{x, y}];
    if (!t) {
      auto v = std::make_shared<std::vector<int>>(static_cast<std::size_t>(k) * k);
      for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b) (*v)[static_cast<std::size_t>(a - 1) * k + (b - 1)] = alpha.op(x, y, a, b);
      t = v;
    }
    return t;
  };
  auto kink_table = [&](int x) {
    auto& t = kinks[x];
    if (!t) {
      auto v = std::make_shared<std::vector<int>>(k);
      for (int a = 1; a <= k; ++a) (*v)[a - 1] = alpha.kink(x, a);
      t = v;
    }
    return t;
  };
  ConstraintSystem sys(d.semi_arc_count(), k);
  using K = LabelConstraint::Kind;
  for (const auto& c : label_constraints(d)) {
    switch (c.kind) {
      case K::Operation: sys.add_binary(c.result, c.left, c.right, op_table(f[c.left - 1], f[c.right - 1])); break;
      case K::Equality: sys.add_equality(c.result, c.left); break;
      case K::Kink: sys.add_unary(c.result, c.left, kink_table(f[c.left - 1])); break;
    }
  }
  return sys;
}

inline std::uint64_t bead_count(const LinkDiagram& d, const Labeling& f, const DynamicalCocycle& alpha) {
  return bead_system(d, f, alpha).count();
}

/// One framing class of a link with its labelings.
struct FramedLabelings {
  std::vector<int> framing;
  LinkDiagram diagram;
  std::vector<Labeling> labelings;
};

/// Labelings of every framing class in (Z_N)^c, classes in lexicographic order.
inline std::vector<FramedLabelings> labelings_by_framing(const LinkDiagram& d, const RackTable& r) {
  const int rank = rack_rank(r);
  std::vector<FramedLabelings> out;
  for (const auto& w : framing_classes(d.component_count(), rank)) {
    auto framed = with_framing(d, w, rank);
    auto labelings = enumerate_labelings(framed, r);
    out.push_back({w, std::move(framed), std::move(labelings)});
  }
  return out;
}

inline std::uint64_t counting_invariant(const LinkDiagram& d, const RackTable& r) {
  std::uint64_t n = 0;
  const int rank = rack_rank(r);
  for (const auto& w : framing_classes(d.component_count(), rank))
    n += labeling_system(with_framing(d, w, rank), r).count();
  return n;
}

/// Σ u^{|closure of the labels used|}.
inline InvariantPolynomial image_invariant(const LinkDiagram& d, const RackTable& r) {
  InvariantPolynomial p;
  for (const auto& cls : labelings_by_framing(d, r))
    for (const auto& f : cls.labelings) p.add(static_cast<long long>(subrack_closure(r, f).size()));
  return p;
}

inline WrithePolynomial writhe_invariant(const LinkDiagram& d, const RackTable& r) {
  WrithePolynomial p;
  for (const auto& cls : labelings_by_framing(d, r)) p.add(cls.framing, cls.labelings.size());
  return p;
}

/// Σ_crossings sign·φ(x, y) with x the label of the under arc on the
/// source side of the crossing relation (under-in when positive, under-out
/// when negative) and y the over label; each kink node counts as the
/// positive curl it abbreviates, φ(x, x) for incoming label x.
inline long long boltzmann_weight(const LinkDiagram& d, const Labeling& f, const TwoCocycle& phi) {
  long long bw = 0;
  for (const auto& c : d.crossings()) {
    const int x = c.sign > 0 ? f[c.under_in - 1] : f[c.under_out - 1];
    bw += c.sign * phi(x, f[c.over_in - 1]);
  }
  for (const auto& k : d.kinks()) bw += phi(f[k.in - 1], f[k.in - 1]);
  return bw;
}

inline InvariantPolynomial cocycle_invariant(const LinkDiagram& d, const RackTable& r, const TwoCocycle& phi) {
  require_2cocycle(r, phi);
  InvariantPolynomial p;
  for (const auto& cls : labelings_by_framing(d, r))
    for (const auto& f : cls.labelings) p.add(boltzmann_weight(cls.diagram, f, phi));
  return p;
}

/// Σ u^{|Hom(Z[f], R)|}, the kernel size of each labeling's presentation matrix.
inline InvariantPolynomial module_invariant(const LinkDiagram& d, const RackTable& r, const XModuleStructure& mod) {
  require_xmodule(r, mod);
  InvariantPolynomial p;
  for (const auto& cls : labelings_by_framing(d, r))
    for (const auto& f : cls.labelings)
      p.add(static_cast<long long>(count_kernel(presentation_matrix(cls.diagram, f, mod))));
  return p;
}

/// Σ u^{number of bead labelings}.
inline InvariantPolynomial dynamical_invariant(const LinkDiagram& d, const RackTable& r,
                                               const DynamicalCocycle& alpha) {
  require_cocycle(r, alpha, true);
  InvariantPolynomial p;
  for (const auto& cls : labelings_by_framing(d, r))
    for (const auto& f : cls.labelings) p.add(static_cast<long long>(bead_count(cls.diagram, f, alpha)));
  return p;
}

}  // namespace rackbeads
