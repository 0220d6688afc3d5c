#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "report.hpp"

namespace rackbeads {

/// A classical crossing between semi-arcs. The under strand runs
/// under_in → under_out and the over strand over_in → over_out.
struct Crossing {
  int sign = 1;  // +1 or −1
  int under_in = 0;
  int over_in = 0;
  int under_out = 0;
  int over_out = 0;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// A positive framing kink (a curl of writhe +1) abbreviated to a node with
/// one incoming and one outgoing semi-arc.
struct KinkNode {
  int in = 0;
  int out = 0;

  friend bool operator==(const KinkNode&, const KinkNode&) = default;
};

/// An oriented link diagram as a semi-arc incidence structure. Semi-arcs are
/// numbered 1..semi_arc_count(); every semi-arc is the output of exactly one
/// crossing strand or kink node and the input of exactly one, except a
/// crossing-free component, which is a single semi-arc closing on itself.
/// Virtual crossings are not represented.
class LinkDiagram {
 public:
  LinkDiagram() = default;

  /// `components` may be empty, in which case components are derived and
  /// ordered by smallest semi-arc id. When given, each component must list
  /// its semi-arcs in traversal order.
  LinkDiagram(int semi_arcs, std::vector<Crossing> crossings, std::vector<KinkNode> kinks,
              std::vector<std::vector<int>> components = {}, bool is_virtual = false)
      : semi_arcs_(semi_arcs),
        crossings_(std::move(crossings)),
        kinks_(std::move(kinks)),
        components_(std::move(components)),
        virtual_(is_virtual) {
    validate();
  }

  /// The crossing-free unknot: one semi-arc, one component.
  static LinkDiagram unknot() { return LinkDiagram(1, {}, {}, {{1}}); }

  int semi_arc_count() const { return semi_arcs_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<KinkNode>& kinks() const { return kinks_; }
  const std::vector<std::vector<int>>& components() const { return components_; }
  int component_count() const { return static_cast<int>(components_.size()); }
  bool is_virtual() const { return virtual_; }

  /// 0-based component index of a semi-arc.
  int component_of(int semi_arc) const { return component_of_.at(semi_arc); }

  /// The semi-arc following `semi_arc` along its strand.
  int next(int semi_arc) const { return next_.at(semi_arc); }

  friend bool operator==(const LinkDiagram& a, const LinkDiagram& b) {
    return a.semi_arcs_ == b.semi_arcs_ && a.crossings_ == b.crossings_ && a.kinks_ == b.kinks_ &&
           a.components_ == b.components_ && a.virtual_ == b.virtual_;
  }

 private:
  void validate() {
    if (semi_arcs_ < 1) throw StructuralError("diagram has no semi-arcs");
    std::vector<int> inputs(semi_arcs_ + 1, 0), outputs(semi_arcs_ + 1, 0);
    next_.assign(semi_arcs_ + 1, 0);
    auto check_id = [&](int id, const std::string& what) {
      if (id < 1 || id > semi_arcs_)
        throw StructuralError(what + " refers to semi-arc " + std::to_string(id) + ", outside 1.." +
                              std::to_string(semi_arcs_));
    };
    auto link = [&](int in, int out, const std::string& what) {
      check_id(in, what);
      check_id(out, what);
      if (++inputs[in] > 1) throw StructuralError("semi-arc " + std::to_string(in) + " enters more than one node");
      if (++outputs[out] > 1) throw StructuralError("semi-arc " + std::to_string(out) + " leaves more than one node");
      next_[in] = out;
    };
    for (std::size_t i = 0; i < crossings_.size(); ++i) {
      const auto& c = crossings_[i];
      const auto what = "crossing " + std::to_string(i + 1);
      if (c.sign != 1 && c.sign != -1) throw StructuralError(what + " has sign other than +1/-1");
      link(c.under_in, c.under_out, what);
      link(c.over_in, c.over_out, what);
    }
    for (std::size_t i = 0; i < kinks_.size(); ++i) link(kinks_[i].in, kinks_[i].out, "kink " + std::to_string(i + 1));
    for (int s = 1; s <= semi_arcs_; ++s) {
      if (inputs[s] != outputs[s])
        throw StructuralError("semi-arc " + std::to_string(s) + " is dangling (" +
                              (inputs[s] ? "no node leads into it" : "it leads into no node") + ")");
      if (inputs[s] == 0) next_[s] = s;
    }

    component_of_.assign(semi_arcs_ + 1, -1);
    if (components_.empty()) {
      for (int s = 1; s <= semi_arcs_; ++s) {
        if (component_of_[s] >= 0) continue;
        std::vector<int> cycle;
        for (int t = s; component_of_[t] < 0; t = next_[t]) {
          component_of_[t] = static_cast<int>(components_.size());
          cycle.push_back(t);
        }
        components_.push_back(std::move(cycle));
      }
      return;
    }
    for (std::size_t c = 0; c < components_.size(); ++c) {
      const auto& cycle = components_[c];
      if (cycle.empty()) throw StructuralError("component " + std::to_string(c + 1) + " is empty");
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        check_id(cycle[i], "component " + std::to_string(c + 1));
        if (component_of_[cycle[i]] >= 0)
          throw StructuralError("semi-arc " + std::to_string(cycle[i]) + " is listed in two components");
        component_of_[cycle[i]] = static_cast<int>(c);
        const int expected = cycle[(i + 1) % cycle.size()];
        if (next_[cycle[i]] != expected)
          throw StructuralError("component " + std::to_string(c + 1) + " is not a closed strand: semi-arc " +
                                std::to_string(cycle[i]) + " is followed by " + std::to_string(next_[cycle[i]]) +
                                ", not " + std::to_string(expected));
      }
    }
    for (int s = 1; s <= semi_arcs_; ++s)
      if (component_of_[s] < 0)
        throw StructuralError("semi-arc " + std::to_string(s) + " is not in any declared component");
  }

  int semi_arcs_ = 0;
  std::vector<Crossing> crossings_;
  std::vector<KinkNode> kinks_;
  std::vector<std::vector<int>> components_;
  bool virtual_ = false;
  std::vector<int> next_;
  std::vector<int> component_of_;
};

/// Per component: signed count of crossings with both strands on that
/// component, plus one per kink node.
inline std::vector<int> self_writhe(const LinkDiagram& d) {
  std::vector<int> w(d.component_count(), 0);
  for (const auto& c : d.crossings()) {
    const int cu = d.component_of(c.under_in);
    if (cu == d.component_of(c.over_in)) w[cu] += c.sign;
  }
  for (const auto& k : d.kinks()) ++w[d.component_of(k.in)];
  return w;
}

namespace detail {

/// Mutable copy of a diagram's parts for inserting nodes along strands.
struct DiagramEditor {
  explicit DiagramEditor(const LinkDiagram& d)
      : source(d), semi_arcs(d.semi_arc_count()), crossings(d.crossings()), kinks(d.kinks()),
        components(d.components()) {}

  /// Cuts `arc` so that `nodes` new nodes can be placed on it in sequence.
  /// Returns pieces p with p[0] = arc; node i runs p[i−1] → p[i]. Whatever
  /// consumed `arc` now consumes p[nodes]; on a crossing-free loop p[nodes]
  /// is `arc` itself.
  std::vector<int> cut(int arc, int nodes) {
    if (arc < 1 || arc > source.semi_arc_count()) throw StructuralError("semi-arc out of range");
    const bool free_loop = is_free_loop(arc);
    std::vector<int> pieces{arc};
    const int fresh = free_loop ? nodes - 1 : nodes;
    for (int i = 0; i < fresh; ++i) pieces.push_back(++semi_arcs);
    if (free_loop) {
      pieces.push_back(arc);
    } else {
      const int last = pieces.back();
      for (auto& x : crossings) {
        if (x.under_in == arc) x.under_in = last;
        if (x.over_in == arc) x.over_in = last;
      }
      for (auto& k : kinks)
        if (k.in == arc) k.in = last;
    }
    auto& cycle = components[source.component_of(arc)];
    auto it = std::find(cycle.begin(), cycle.end(), arc);
    cycle.insert(it + 1, pieces.begin() + 1, pieces.begin() + 1 + fresh);
    return pieces;
  }

  LinkDiagram build() const {
    return LinkDiagram(semi_arcs, crossings, kinks, components, source.is_virtual());
  }

  const LinkDiagram& source;
  int semi_arcs;
  std::vector<Crossing> crossings;
  std::vector<KinkNode> kinks;
  std::vector<std::vector<int>> components;
 private:
  bool is_free_loop(int arc) const { return source.next(arc) == arc && consumer_free(arc); }
  bool consumer_free(int arc) const {
    for (const auto& x : source.crossings())
      if (x.under_in == arc || x.over_in == arc) return false;
    for (const auto& k : source.kinks())
      if (k.in == arc) return false;
    return true;
  }
};

}  // namespace detail

/// Appends `count[i]` positive kinks after the first semi-arc of component i.
inline LinkDiagram append_kinks(const LinkDiagram& d, const std::vector<int>& count) {
  if (static_cast<int>(count.size()) != d.component_count())
    throw StructuralError("kink count vector has wrong length");
  detail::DiagramEditor edit(d);
  for (int c = 0; c < d.component_count(); ++c) {
    if (count[c] < 0) throw StructuralError("negative kink count");
    if (count[c] == 0) continue;
    const auto pieces = edit.cut(d.components()[c].front(), count[c]);
    for (int i = 1; i <= count[c]; ++i) edit.kinks.push_back({pieces[i - 1], pieces[i]});
  }
  return edit.build();
}

/// Adds (w_i − self_writhe_i) mod N positive kinks to component i, so the
/// result has self-writhe ≡ w (mod N).
inline LinkDiagram with_framing(const LinkDiagram& d, const std::vector<int>& w, int modulus) {
  if (modulus < 1) throw StructuralError("framing modulus must be positive");
  if (static_cast<int>(w.size()) != d.component_count())
    throw StructuralError("framing vector has " + std::to_string(w.size()) + " entries but the diagram has " +
                          std::to_string(d.component_count()) + " components");
  const auto sw = self_writhe(d);
  std::vector<int> count(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= modulus) throw StructuralError("framing entry outside 0..N-1");
    count[i] = ((w[i] - sw[i]) % modulus + modulus) % modulus;
  }
  return append_kinks(d, count);
}

/// One labeling condition. Operation: label(result) = label(left) ▷ label(right);
/// its bead analogue is bead(result) = bead(left) ·_{label(left),label(right)} bead(right).
/// Equality: label(left) = label(result). Kink: label(result) = π(label(left)),
/// bead(result) = ρ_{label(left)}(bead(left)).
struct LabelConstraint {
  enum class Kind { Operation, Equality, Kink };
  Kind kind = Kind::Operation;
  int result = 0;
  int left = 0;
  int right = 0;  // Operation only

  friend bool operator==(const LabelConstraint&, const LabelConstraint&) = default;
};

/// Positive crossing: under_out = under_in ▷ over. Negative crossing:
/// under_in = under_out ▷ over. The over strand keeps its label.
inline std::vector<LabelConstraint> label_constraints(const LinkDiagram& d) {
  using K = LabelConstraint::Kind;
  std::vector<LabelConstraint> out;
  for (const auto& c : d.crossings()) {
    if (c.sign > 0)
      out.push_back({K::Operation, c.under_out, c.under_in, c.over_in});
    else
      out.push_back({K::Operation, c.under_in, c.under_out, c.over_in});
    out.push_back({K::Equality, c.over_out, c.over_in, 0});
  }
  for (const auto& k : d.kinks()) out.push_back({K::Kink, k.out, k.in, 0});
  return out;
}

/// Reidemeister II: pushes the strand through semi-arc `over_arc` across the
/// strand through `under_arc`, creating two crossings of opposite sign
/// (`first_sign` first along both strands). In a classical diagram the two
/// semi-arcs should border a common region; otherwise the result is a
/// virtual diagram of the same virtual link.
inline LinkDiagram reidemeister_two(const LinkDiagram& d, int over_arc, int under_arc, int first_sign = 1) {
  if (over_arc == under_arc) throw StructuralError("Reidemeister II needs two distinct semi-arcs");
  if (first_sign != 1 && first_sign != -1) throw StructuralError("crossing sign must be +1 or -1");
  detail::DiagramEditor edit(d);
  const auto over = edit.cut(over_arc, 2);
  const auto under = edit.cut(under_arc, 2);
  edit.crossings.push_back({first_sign, under[0], over[0], under[1], over[1]});
  edit.crossings.push_back({-first_sign, under[1], over[1], under[2], over[2]});
  return edit.build();
}

/// Reidemeister I: a genuine curl crossing of the given sign inserted after
/// `arc`. The strand passes over itself first, then under.
inline LinkDiagram add_curl(const LinkDiagram& d, int arc, int sign) {
  if (sign != 1 && sign != -1) throw StructuralError("curl sign must be +1 or -1");
  detail::DiagramEditor edit(d);
  // pieces: arc → (over) → loop → (under) → exit
  const auto pieces = edit.cut(arc, 2);
  edit.crossings.push_back({sign, pieces[1], pieces[0], pieces[2], pieces[1]});
  return edit.build();
}

}  // namespace rackbeads
