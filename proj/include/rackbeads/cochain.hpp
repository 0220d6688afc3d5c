#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "rack.hpp"
#include "report.hpp"
#include "text_io.hpp"

namespace rackbeads {

/// An integer-valued function on X^degree, stored row-major:
/// (x_1, …, x_d) ↦ values[((x_1−1)·n + (x_2−1))·n + …].
struct Cochain {
  int rack_size = 0;
  int degree = 0;
  std::vector<long long> values;

  static Cochain zero(int rack_size, int degree) {
    Cochain c{rack_size, degree, {}};
    std::size_t count = 1;
    for (int i = 0; i < degree; ++i) count *= static_cast<std::size_t>(rack_size);
    c.values.assign(count, 0);
    return c;
  }

  std::size_t index(const std::vector<int>& xs) const {
    if (static_cast<int>(xs.size()) != degree) throw StructuralError("cochain arity mismatch");
    std::size_t i = 0;
    for (int x : xs) {
      if (x < 1 || x > rack_size) throw std::out_of_range("cochain argument out of range");
      i = i * rack_size + (x - 1);
    }
    return i;
  }

  long long operator()(const std::vector<int>& xs) const { return values[index(xs)]; }
  long long& operator()(const std::vector<int>& xs) { return values[index(xs)]; }

  /// Decodes a flat index back to its 1-based argument tuple.
  std::vector<int> arguments(std::size_t flat) const {
    std::vector<int> xs(degree);
    for (int i = degree - 1; i >= 0; --i) {
      xs[i] = static_cast<int>(flat % rack_size) + 1;
      flat /= rack_size;
    }
    return xs;
  }

  bool is_zero() const {
    for (auto v : values)
      if (v != 0) return false;
    return true;
  }
};

/// (δf)(x_1, …, x_{d+1}) = Σ_{k=2}^{d+1} (−1)^k [ f(x_1, …, x̂_k, …, x_{d+1})
///                          − f(x_1▷x_k, …, x_{k−1}▷x_k, x_{k+1}, …, x_{d+1}) ]
inline Cochain coboundary(const Cochain& f, const RackTable& r) {
  if (f.rack_size != r.size()) throw StructuralError("cochain and rack sizes differ");
  if (f.degree < 1) throw StructuralError("coboundary needs degree >= 1");
  Cochain out = Cochain::zero(r.size(), f.degree + 1);
  const int d1 = f.degree + 1;
  std::vector<int> plain(f.degree), acted(f.degree);
  for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
    const auto xs = out.arguments(flat);
    long long total = 0;
    for (int k = 2; k <= d1; ++k) {
      int p = 0;
      for (int i = 1; i <= d1; ++i) {
        if (i == k) continue;
        plain[p] = xs[i - 1];
        acted[p] = i < k ? r.op(xs[i - 1], xs[k - 1]) : xs[i - 1];
        ++p;
      }
      const long long sign = (k % 2 == 0) ? 1 : -1;
      total += sign * (f(plain) - f(acted));
    }
    out.values[flat] = total;
  }
  return out;
}

/// A 2-cochain φ given as an n×n integer table, φ(x, y) = phi[x−1][y−1].
class TwoCocycle {
 public:
  TwoCocycle() = default;
  explicit TwoCocycle(const std::vector<std::vector<long long>>& table)
      : c_(Cochain::zero(static_cast<int>(table.size()), 2)) {
    const int n = c_.rack_size;
    if (n == 0) throw StructuralError("2-cocycle table is empty");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(table[i].size()) != n)
        throw StructuralError("2-cocycle table is not square at row " + std::to_string(i + 1));
      for (int j = 0; j < n; ++j) c_.values[static_cast<std::size_t>(i) * n + j] = table[i][j];
    }
  }
  explicit TwoCocycle(Cochain c) : c_(std::move(c)) {
    if (c_.degree != 2) throw StructuralError("2-cocycle must have degree 2");
  }

  int rack_size() const { return c_.rack_size; }
  long long operator()(int x, int y) const { return c_({x, y}); }
  const Cochain& cochain() const { return c_; }

 private:
  Cochain c_;
};

/// Checks δ²φ = 0 pointwise and the degeneracy condition
/// Σ_{k=1}^{N} φ(π^k(x), π^{k+1}(x)) = 0 for every x.
inline VerificationReport verify_2cocycle_reduced(const RackTable& r, const TwoCocycle& phi) {
  if (phi.rack_size() != r.size()) throw StructuralError("2-cocycle and rack sizes differ");
  VerificationReport report;
  const auto delta = coboundary(phi.cochain(), r);
  for (std::size_t flat = 0; flat < delta.values.size(); ++flat)
    if (delta.values[flat] != 0) report.add("coboundary-nonzero", delta.arguments(flat));
  const auto pi = kink_map(r);
  for (int x = 1; x <= r.size(); ++x) {
    long long sum = 0;
    for (int k = 1; k <= pi.order; ++k) sum += phi(pi.power(x, k), pi.power(x, k + 1));
    if (sum != 0) report.add("degenerate-orbit", {x});
  }
  report.canonicalize();
  return report;
}

inline void require_2cocycle(const RackTable& r, const TwoCocycle& phi) {
  auto report = verify_2cocycle_reduced(r, phi);
  if (!report.valid()) throw VerificationError("not an N-reduced 2-cocycle: " + report.to_string(3));
}

// 2-cocycle file: n rows of n integers.

inline TwoCocycle parse_2cocycle(const std::string& text, const std::string& source = "<2-cocycle>") {
  auto lines = io::int_lines(text, source);
  if (lines.empty()) throw StructuralError(source + ": empty 2-cocycle file");
  const auto n = lines.size();
  std::vector<std::vector<long long>> table;
  for (const auto& line : lines) {
    if (line.values.size() != n)
      throw StructuralError(io::where(source, line.number) + "expected " + std::to_string(n) + " entries");
    table.push_back(line.values);
  }
  return TwoCocycle(table);
}

inline TwoCocycle read_2cocycle(const std::string& path) {
  return parse_2cocycle(io::read_file(path), path);
}

inline std::string format_2cocycle(const TwoCocycle& phi) {
  std::ostringstream out;
  for (int x = 1; x <= phi.rack_size(); ++x) {
    for (int y = 1; y <= phi.rack_size(); ++y) out << (y > 1 ? " " : "") << phi(x, y);
    out << '\n';
  }
  return out.str();
}

}  // namespace rackbeads
