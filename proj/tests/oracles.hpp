#pragma once

// Exhaustive reference implementations. They work straight from the
// definitions and share no solving code with the library.

#include <cstdint>
#include <vector>

#include "rackbeads/rackbeads.hpp"

namespace oracle {

using namespace rackbeads;

/// Calls f(assignment) for every vector in {1..d}^len.
template <class F>
void for_each_assignment(int len, int d, F&& f) {
  std::vector<int> a(len, 1);
  while (true) {
    f(a);
    int i = len - 1;
    while (i >= 0 && a[i] == d) a[i--] = 1;
    if (i < 0) return;
    ++a[i];
  }
}

inline bool is_rack(const std::vector<std::vector<int>>& m) {
  const int n = static_cast<int>(m.size());
  for (int j = 0; j < n; ++j) {
    std::vector<bool> seen(n + 1, false);
    for (int i = 0; i < n; ++i) {
      if (seen[m[i][j]]) return false;
      seen[m[i][j]] = true;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (m[m[i][j] - 1][k] != m[m[i][k] - 1][m[j][k] - 1]) return false;
  return true;
}

/// Axioms (i) and (ii) of a dynamical cocycle read off the block matrix.
inline bool is_cocycle(const std::vector<std::vector<int>>& rack, int k, const std::vector<std::vector<int>>& blocks) {
  const int n = static_cast<int>(rack.size());
  auto op = [&](int x, int y, int a, int b) { return blocks[(x - 1) * k + a - 1][(y - 1) * k + b - 1]; };
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int b = 1; b <= k; ++b) {
        std::vector<bool> seen(k + 1, false);
        for (int a = 1; a <= k; ++a) {
          if (seen[op(x, y, a, b)]) return false;
          seen[op(x, y, a, b)] = true;
        }
      }
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int z = 1; z <= n; ++z)
        for (int a = 1; a <= k; ++a)
          for (int b = 1; b <= k; ++b)
            for (int c = 1; c <= k; ++c) {
              const int xy = rack[x - 1][y - 1], xz = rack[x - 1][z - 1], yz = rack[y - 1][z - 1];
              if (op(xy, z, op(x, y, a, b), c) != op(xz, yz, op(x, z, a, c), op(y, z, b, c))) return false;
            }
  return true;
}

inline bool is_n_reduced(const std::vector<std::vector<int>>& rack, int k, const std::vector<std::vector<int>>& blocks) {
  const int n = static_cast<int>(rack.size());
  int order = 1;
  for (int x = 1; x <= n; ++x) {
    int len = 1;
    for (int y = rack[x - 1][x - 1]; y != x; y = rack[y - 1][y - 1]) ++len;
    order = std::lcm(order, len);
  }
  for (int x = 1; x <= n; ++x)
    for (int a = 1; a <= k; ++a) {
      int label = x, bead = a;
      for (int i = 0; i < order; ++i) {
        bead = blocks[(label - 1) * k + bead - 1][(label - 1) * k + bead - 1];
        label = rack[label - 1][label - 1];
      }
      if (bead != a) return false;
    }
  return true;
}

/// Labelings of a diagram by filtering all n^E assignments against the
/// crossing and kink rules.
inline std::vector<std::vector<int>> labelings(const LinkDiagram& d, const RackTable& r) {
  std::vector<std::vector<int>> out;
  for_each_assignment(d.semi_arc_count(), r.size(), [&](const std::vector<int>& a) {
    auto L = [&](int s) { return a[s - 1]; };
    for (const auto& c : d.crossings()) {
      if (L(c.over_in) != L(c.over_out)) return;
      if (c.sign > 0 && L(c.under_out) != r.op(L(c.under_in), L(c.over_in))) return;
      if (c.sign < 0 && L(c.under_in) != r.op(L(c.under_out), L(c.over_in))) return;
    }
    for (const auto& k : d.kinks())
      if (L(k.out) != r.op(L(k.in), L(k.in))) return;
    out.push_back(a);
  });
  return out;
}

inline std::uint64_t beads(const LinkDiagram& d, const std::vector<int>& f, const DynamicalCocycle& alpha) {
  std::uint64_t n = 0;
  for_each_assignment(d.semi_arc_count(), alpha.beads(), [&](const std::vector<int>& a) {
    auto B = [&](int s) { return a[s - 1]; };
    auto X = [&](int s) { return f[s - 1]; };
    for (const auto& c : d.crossings()) {
      if (B(c.over_in) != B(c.over_out)) return;
      if (c.sign > 0 && B(c.under_out) != alpha.op(X(c.under_in), X(c.over_in), B(c.under_in), B(c.over_in))) return;
      if (c.sign < 0 && B(c.under_in) != alpha.op(X(c.under_out), X(c.over_in), B(c.under_out), B(c.over_in)))
        return;
    }
    for (const auto& k : d.kinks())
      if (B(k.out) != alpha.op(X(k.in), X(k.in), B(k.in), B(k.in))) return;
    ++n;
  });
  return n;
}

/// |{v : A v ≡ 0 (mod m)}| by enumerating all m^cols vectors.
inline std::uint64_t kernel_size(const std::vector<std::vector<long long>>& a, int cols, long long m) {
  std::uint64_t n = 0;
  std::vector<long long> v(cols, 0);
  while (true) {
    bool zero = true;
    for (const auto& row : a) {
      long long s = 0;
      for (int j = 0; j < cols; ++j) s += row[j] * v[j];
      if (((s % m) + m) % m != 0) {
        zero = false;
        break;
      }
    }
    n += zero;
    int i = cols - 1;
    while (i >= 0 && v[i] == m - 1) v[i--] = 0;
    if (i < 0) return n;
    ++v[i];
  }
}

/// Φ with the dynamical enhancement, every framing class, all by brute force.
inline InvariantPolynomial dynamical(const LinkDiagram& d, const RackTable& r, const DynamicalCocycle& alpha) {
  InvariantPolynomial p;
  const int rank = rack_rank(r);
  for (const auto& w : framing_classes(d.component_count(), rank)) {
    const auto framed = with_framing(d, w, rank);
    for (const auto& f : labelings(framed, r)) p.add(static_cast<long long>(beads(framed, f, alpha)));
  }
  return p;
}

}  // namespace oracle
