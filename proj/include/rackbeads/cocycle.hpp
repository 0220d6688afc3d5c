#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "rack.hpp"
#include "report.hpp"
#include "text_io.hpp"

namespace rackbeads {

/// A family of bead operations a ·_{x,y} b on the bead set {1..k}, one k×k
/// table for each ordered pair (x, y) of rack elements.
///
/// Stored in the (nk)×(nk) block layout: row (x−1)k + a, column (y−1)k + b
/// holds a ·_{x,y} b.
class DynamicalCocycle {
 public:
  DynamicalCocycle() = default;

  DynamicalCocycle(int rack_size, int beads, const std::vector<std::vector<int>>& block_matrix)
      : n_(rack_size), k_(beads) {
    if (n_ < 1 || k_ < 1) throw StructuralError("cocycle needs n >= 1 and k >= 1");
    const auto dim = static_cast<std::size_t>(n_) * k_;
    if (block_matrix.size() != dim)
      throw StructuralError("cocycle block matrix has " + std::to_string(block_matrix.size()) +
                            " rows, expected " + std::to_string(dim));
    entries_.resize(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
      if (block_matrix[r].size() != dim)
        throw StructuralError("cocycle block matrix row " + std::to_string(r + 1) + " has " +
                              std::to_string(block_matrix[r].size()) + " entries, expected " +
                              std::to_string(dim));
      for (std::size_t c = 0; c < dim; ++c) {
        int v = block_matrix[r][c];
        if (v < 1 || v > k_)
          throw StructuralError("cocycle entry (" + std::to_string(r + 1) + "," +
                                std::to_string(c + 1) + ") = " + std::to_string(v) +
                                " is outside 1.." + std::to_string(k_));
        entries_[r * dim + c] = v;
      }
    }
    rebuild_inverse();
  }

  /// a ·_{x,y} b = a for every x, y, a, b.
  static DynamicalCocycle trivial(int rack_size, int beads) {
    const int dim = rack_size * beads;
    std::vector<std::vector<int>> m(dim, std::vector<int>(dim));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m[r][c] = r % beads + 1;
    return DynamicalCocycle(rack_size, beads, m);
  }

  int rack_size() const { return n_; }
  int beads() const { return k_; }

  /// a ·_{x,y} b
  int op(int x, int y, int a, int b) const {
    check(x, y, a, b);
    return entries_[pos(x, y, a, b)];
  }

  /// The bead a with a ·_{x,y} b = c. Requires a ↦ a ·_{x,y} b to be a bijection.
  int inv_op(int x, int y, int c, int b) const {
    check(x, y, c, b);
    int a = inverse_[pos(x, y, c, b)];
    if (a == 0)
      throw VerificationError("bead operation for (x,y,b) = (" + std::to_string(x) + "," +
                              std::to_string(y) + "," + std::to_string(b) + ") is not invertible");
    return a;
  }

  /// ρ_x(a) = a ·_{x,x} a
  int kink(int x, int a) const { return op(x, x, a, a); }

  void set(int x, int y, int a, int b, int value) {
    check(x, y, a, b);
    if (value < 1 || value > k_) throw StructuralError("bead value out of range");
    entries_[pos(x, y, a, b)] = value;
    rebuild_inverse();
  }

  bool column_is_bijection(int x, int y, int b) const {
    for (int c = 1; c <= k_; ++c)
      if (inverse_[pos(x, y, c, b)] == 0) return false;
    return true;
  }

  std::vector<std::vector<int>> block_matrix() const {
    const int dim = n_ * k_;
    std::vector<std::vector<int>> m(dim, std::vector<int>(dim));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m[r][c] = entries_[static_cast<std::size_t>(r) * dim + c];
    return m;
  }

  friend bool operator==(const DynamicalCocycle& a, const DynamicalCocycle& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t pos(int x, int y, int a, int b) const {
    const std::size_t dim = static_cast<std::size_t>(n_) * k_;
    return (static_cast<std::size_t>(x - 1) * k_ + (a - 1)) * dim +
           static_cast<std::size_t>(y - 1) * k_ + (b - 1);
  }

  void check(int x, int y, int a, int b) const {
    if (x < 1 || x > n_ || y < 1 || y > n_)
      throw std::out_of_range("rack index outside 1.." + std::to_string(n_));
    if (a < 1 || a > k_ || b < 1 || b > k_)
      throw std::out_of_range("bead index outside 1.." + std::to_string(k_));
  }

  void rebuild_inverse() {
    inverse_.assign(entries_.size(), 0);
    for (int x = 1; x <= n_; ++x)
      for (int y = 1; y <= n_; ++y)
        for (int b = 1; b <= k_; ++b) {
          std::vector<int> pre(k_ + 1, 0);
          bool bijective = true;
          for (int a = 1; a <= k_; ++a) {
            int c = entries_[pos(x, y, a, b)];
            if (pre[c]) bijective = false;
            pre[c] = a;
          }
          if (!bijective) continue;
          for (int c = 1; c <= k_; ++c) inverse_[pos(x, y, c, b)] = pre[c];
        }
  }

  int n_ = 0;
  int k_ = 0;
  std::vector<int> entries_;
  std::vector<int> inverse_;  // inverse_[pos(x,y,c,b)] = a with a·b = c, 0 if not bijective
};

inline void check_shape(const RackTable& r, const DynamicalCocycle& alpha) {
  if (alpha.rack_size() != r.size())
    throw StructuralError("cocycle is indexed by " + std::to_string(alpha.rack_size()) +
                          " rack elements but the rack has " + std::to_string(r.size()));
}

/// Checks bijectivity of every a ↦ a ·_{x,y} b and the mixed
/// self-distributivity law
///   (a·_{x,y}b)·_{x▷y,z}c = (a·_{x,z}c)·_{x▷z,y▷z}(b·_{y,z}c).
inline VerificationReport verify_cocycle(const RackTable& r, const DynamicalCocycle& alpha) {
  check_shape(r, alpha);
  VerificationReport report;
  const int n = r.size();
  const int k = alpha.beads();
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int b = 1; b <= k; ++b)
        if (!alpha.column_is_bijection(x, y, b)) report.add("bead-bijectivity", {x, y, b});
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int z = 1; z <= n; ++z) {
        const int xy = r.op(x, y), xz = r.op(x, z), yz = r.op(y, z);
        for (int a = 1; a <= k; ++a)
          for (int b = 1; b <= k; ++b)
            for (int c = 1; c <= k; ++c) {
              int lhs = alpha.op(xy, z, alpha.op(x, y, a, b), c);
              int rhs = alpha.op(xz, yz, alpha.op(x, z, a, c), alpha.op(y, z, b, c));
              if (lhs != rhs) report.add("bead-distributivity", {x, y, z, a, b, c});
            }
      }
  report.canonicalize();
  return report;
}

/// Checks that ρ_{π^{N−1}(x)} ∘ ⋯ ∘ ρ_{π(x)} ∘ ρ_x is the identity on beads for
/// every x, where N is the rack rank.
inline VerificationReport verify_n_reduced(const RackTable& r, const DynamicalCocycle& alpha) {
  check_shape(r, alpha);
  VerificationReport report;
  const auto pi = kink_map(r);
  for (int x = 1; x <= r.size(); ++x)
    for (int a = 1; a <= alpha.beads(); ++a) {
      int bead = a;
      int label = x;
      for (int i = 0; i < pi.order; ++i) {
        bead = alpha.kink(label, bead);
        label = pi(label);
      }
      if (bead != a) report.add("n-reduced", {x, a});
    }
  report.canonicalize();
  return report;
}

inline void require_cocycle(const RackTable& r, const DynamicalCocycle& alpha, bool n_reduced = true) {
  auto report = verify_cocycle(r, alpha);
  if (!report.valid()) throw VerificationError("not a dynamical cocycle: " + report.to_string(3));
  if (n_reduced) {
    auto red = verify_n_reduced(r, alpha);
    if (!red.valid()) throw VerificationError("cocycle is not N-reduced: " + red.to_string(3));
  }
}

/// The rack on X × S with (x,a) ▷ (y,b) = (x▷y, a·_{x,y}b); pair (x,a) has
/// index (x−1)k + a.
inline RackTable extension_rack(const RackTable& r, const DynamicalCocycle& alpha) {
  check_shape(r, alpha);
  auto report = verify_cocycle(r, alpha);
  if (!report.valid()) throw VerificationError("not a dynamical cocycle: " + report.to_string(3));
  const int n = r.size();
  const int k = alpha.beads();
  std::vector<std::vector<int>> rows(n * k, std::vector<int>(n * k));
  for (int x = 1; x <= n; ++x)
    for (int a = 1; a <= k; ++a)
      for (int y = 1; y <= n; ++y)
        for (int b = 1; b <= k; ++b)
          rows[(x - 1) * k + a - 1][(y - 1) * k + b - 1] = (r.op(x, y) - 1) * k + alpha.op(x, y, a, b);
  return RackTable(rows);
}

// Cocycle file: first line "n k", then n·k rows of n·k integers.

inline DynamicalCocycle parse_cocycle(const std::string& text, const std::string& source = "<cocycle>") {
  auto lines = io::int_lines(text, source);
  if (lines.empty() || lines[0].values.size() != 2)
    throw StructuralError(source + ": first line must be \"n k\"");
  const long long n = lines[0].values[0];
  const long long k = lines[0].values[1];
  if (n < 1 || k < 1) throw StructuralError(io::where(source, lines[0].number) + "n and k must be positive");
  const auto dim = static_cast<std::size_t>(n * k);
  if (lines.size() != dim + 1)
    throw StructuralError(source + ": expected " + std::to_string(dim) + " rows, found " +
                          std::to_string(lines.size() - 1));
  std::vector<std::vector<int>> m;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (lines[i].values.size() != dim)
      throw StructuralError(io::where(source, lines[i].number) + "expected " + std::to_string(dim) +
                            " entries");
    m.emplace_back(lines[i].values.begin(), lines[i].values.end());
  }
  try {
    return DynamicalCocycle(static_cast<int>(n), static_cast<int>(k), m);
  } catch (const StructuralError& e) {
    throw StructuralError(source + ": " + e.what());
  }
}

inline DynamicalCocycle read_cocycle(const std::string& path) {
  return parse_cocycle(io::read_file(path), path);
}

inline std::string format_cocycle(const DynamicalCocycle& alpha) {
  std::ostringstream out;
  out << alpha.rack_size() << ' ' << alpha.beads() << '\n';
  for (const auto& row : alpha.block_matrix()) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
  return out.str();
}

}  // namespace rackbeads
