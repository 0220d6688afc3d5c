#pragma once

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cocycle.hpp"
#include "rack.hpp"
#include "report.hpp"
#include "text_io.hpp"

namespace rackbeads {

/// An X-module structure on Z_m: coefficients t_{x,y} (units) and s_{x,y},
/// acting on beads by a ·_{x,y} b = t_{x,y}·a + s_{x,y}·b.
class XModuleStructure {
 public:
  XModuleStructure() = default;

  XModuleStructure(int modulus, const std::vector<std::vector<long long>>& t,
                   const std::vector<std::vector<long long>>& s)
      : n_(static_cast<int>(t.size())), m_(modulus) {
    if (m_ < 1) throw StructuralError("module modulus must be positive");
    if (n_ < 1) throw StructuralError("module tables are empty");
    if (static_cast<int>(s.size()) != n_) throw StructuralError("T and S have different sizes");
    t_.reserve(static_cast<std::size_t>(n_) * n_);
    s_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
      if (static_cast<int>(t[i].size()) != n_ || static_cast<int>(s[i].size()) != n_)
        throw StructuralError("module table row " + std::to_string(i + 1) + " is not of length " +
                              std::to_string(n_));
      for (int j = 0; j < n_; ++j) {
        t_.push_back(detail::mod(t[i][j], m_));
        s_.push_back(detail::mod(s[i][j], m_));
      }
    }
  }

  /// t ≡ 1, s ≡ 0.
  static XModuleStructure trivial(int rack_size, int modulus) {
    return XModuleStructure(modulus,
                            std::vector<std::vector<long long>>(rack_size, std::vector<long long>(rack_size, 1)),
                            std::vector<std::vector<long long>>(rack_size, std::vector<long long>(rack_size, 0)));
  }

  int rack_size() const { return n_; }
  int modulus() const { return m_; }
  long long t(int x, int y) const { return t_[idx(x, y)]; }
  long long s(int x, int y) const { return s_[idx(x, y)]; }

  std::vector<std::vector<long long>> t_table() const { return table(t_); }
  std::vector<std::vector<long long>> s_table() const { return table(s_); }

  friend bool operator==(const XModuleStructure&, const XModuleStructure&) = default;

 private:
  std::size_t idx(int x, int y) const {
    if (x < 1 || x > n_ || y < 1 || y > n_)
      throw std::out_of_range("module index outside 1.." + std::to_string(n_));
    return static_cast<std::size_t>(x - 1) * n_ + (y - 1);
  }

  std::vector<std::vector<long long>> table(const std::vector<long long>& flat) const {
    std::vector<std::vector<long long>> out(n_, std::vector<long long>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[i][j] = flat[static_cast<std::size_t>(i) * n_ + j];
    return out;
  }

  int n_ = 0;
  int m_ = 1;
  std::vector<long long> t_;
  std::vector<long long> s_;
};

/// Checks that every t_{x,y} is a unit mod m and that the rack-algebra
/// relators vanish:
///   t_{x▷y,z} t_{x,y} − t_{x▷z,y▷z} t_{x,z}
///   t_{x▷y,z} s_{x,y} − s_{x▷z,y▷z} t_{y,z}
///   s_{x▷y,z} − s_{x▷z,y▷z} s_{y,z} − t_{x▷z,y▷z} s_{x,z}
///   1 − ∏_{k<N} (t_{π^k x, π^k x} + s_{π^k x, π^k x})
inline VerificationReport verify_xmodule(const RackTable& r, const XModuleStructure& mod) {
  if (mod.rack_size() != r.size())
    throw StructuralError("module tables are " + std::to_string(mod.rack_size()) + "x" +
                          std::to_string(mod.rack_size()) + " but the rack has " +
                          std::to_string(r.size()) + " elements");
  VerificationReport report;
  const int n = r.size();
  const long long m = mod.modulus();
  auto zero = [m](long long v) { return detail::mod(v, m) == 0; };
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      if (m > 1 && std::gcd(mod.t(x, y), m) != 1) report.add("t-not-unit", {x, y});
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int z = 1; z <= n; ++z) {
        const int xy = r.op(x, y), xz = r.op(x, z), yz = r.op(y, z);
        if (!zero(mod.t(xy, z) * mod.t(x, y) - mod.t(xz, yz) * mod.t(x, z)))
          report.add("relator-tt", {x, y, z});
        if (!zero(mod.t(xy, z) * mod.s(x, y) - mod.s(xz, yz) * mod.t(y, z)))
          report.add("relator-ts", {x, y, z});
        if (!zero(mod.s(xy, z) - mod.s(xz, yz) * mod.s(y, z) - mod.t(xz, yz) * mod.s(x, z)))
          report.add("relator-ss", {x, y, z});
      }
  const auto pi = kink_map(r);
  for (int x = 1; x <= n; ++x) {
    long long product = 1 % m;
    int label = x;
    for (int k = 0; k < pi.order; ++k) {
      product = detail::mod(product * (mod.t(label, label) + mod.s(label, label)), m);
      label = pi(label);
    }
    if (!zero(1 - product)) report.add("relator-kink", {x});
  }
  report.canonicalize();
  return report;
}

inline void require_xmodule(const RackTable& r, const XModuleStructure& mod) {
  auto report = verify_xmodule(r, mod);
  if (!report.valid()) throw VerificationError("not an X-module: " + report.to_string(3));
}

/// The dynamical cocycle a ·_{x,y} b = t_{x,y}a + s_{x,y}b on Z_m; residue 0
/// is bead m.
inline DynamicalCocycle cocycle_from_module(const RackTable& r, const XModuleStructure& mod) {
  require_xmodule(r, mod);
  const int n = r.size();
  const int m = mod.modulus();
  std::vector<std::vector<int>> blocks(n * m, std::vector<int>(n * m));
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= m; ++b)
          blocks[(x - 1) * m + a - 1][(y - 1) * m + b - 1] =
              detail::element_of_residue(mod.t(x, y) * a + mod.s(x, y) * b, m);
  return DynamicalCocycle(n, m, blocks);
}

// Module file: first line "n m", then n rows of 2n integers (row of T, then row of S).

inline XModuleStructure parse_module(const std::string& text, const std::string& source = "<module>") {
  auto lines = io::int_lines(text, source);
  if (lines.empty() || lines[0].values.size() != 2)
    throw StructuralError(source + ": first line must be \"n m\"");
  const long long n = lines[0].values[0];
  const long long m = lines[0].values[1];
  if (n < 1 || m < 1) throw StructuralError(io::where(source, lines[0].number) + "n and m must be positive");
  if (lines.size() != static_cast<std::size_t>(n) + 1)
    throw StructuralError(source + ": expected " + std::to_string(n) + " rows, found " +
                          std::to_string(lines.size() - 1));
  std::vector<std::vector<long long>> t, s;
  for (long long i = 1; i <= n; ++i) {
    const auto& v = lines[i].values;
    if (static_cast<long long>(v.size()) != 2 * n)
      throw StructuralError(io::where(source, lines[i].number) + "expected " + std::to_string(2 * n) +
                            " entries (T row then S row)");
    t.emplace_back(v.begin(), v.begin() + n);
    s.emplace_back(v.begin() + n, v.end());
  }
  return XModuleStructure(static_cast<int>(m), t, s);
}

inline XModuleStructure read_module(const std::string& path) {
  return parse_module(io::read_file(path), path);
}

inline std::string format_module(const XModuleStructure& mod) {
  std::ostringstream out;
  out << mod.rack_size() << ' ' << mod.modulus() << '\n';
  auto t = mod.t_table();
  auto s = mod.s_table();
  for (int i = 0; i < mod.rack_size(); ++i) {
    for (int j = 0; j < mod.rack_size(); ++j) out << (j ? " " : "") << t[i][j];
    for (int j = 0; j < mod.rack_size(); ++j) out << ' ' << s[i][j];
    out << '\n';
  }
  return out.str();
}

}  // namespace rackbeads
