#pragma once

#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "report.hpp"
#include "text_io.hpp"

namespace rackbeads {

/// A finite binary operation table on {1..n}: entry (i, j) = k means
/// x_k = x_i ▷ x_j. Construction checks shape and range only; the rack axioms
/// are checked by verify_rack().
class RackTable {
 public:
  RackTable() = default;

  explicit RackTable(const std::vector<std::vector<int>>& rows) : n_(static_cast<int>(rows.size())) {
    if (n_ == 0) throw StructuralError("rack table is empty");
    entries_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
      if (static_cast<int>(rows[i].size()) != n_)
        throw StructuralError("rack table is not square: row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(n_));
      for (int j = 0; j < n_; ++j) {
        int v = rows[i][j];
        if (v < 1 || v > n_)
          throw StructuralError("rack table entry (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") = " + std::to_string(v) +
                                " is outside 1.." + std::to_string(n_));
        entries_.push_back(v);
      }
    }
    build_inverse();
  }

  int size() const { return n_; }

  /// i ▷ j
  int op(int i, int j) const {
    check_index(i);
    check_index(j);
    return entries_[idx(i, j)];
  }

  /// i ▷⁻¹ j, the unique k with k ▷ j = i. Requires column j to be a
  /// permutation.
  int inv_op(int i, int j) const {
    check_index(i);
    check_index(j);
    int k = inverse_[idx(i, j)];
    if (k == 0)
      throw VerificationError("column " + std::to_string(j) + " is not a permutation; ▷⁻¹ undefined");
    return k;
  }

  bool column_is_permutation(int j) const {
    for (int i = 1; i <= n_; ++i)
      if (inverse_[idx(i, j)] == 0) return false;
    return true;
  }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) out[i - 1][j - 1] = entries_[idx(i, j)];
    return out;
  }

  friend bool operator==(const RackTable& a, const RackTable& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i - 1) * n_ + (j - 1); }

  void check_index(int i) const {
    if (i < 1 || i > n_)
      throw std::out_of_range("rack element " + std::to_string(i) + " outside 1.." +
                              std::to_string(n_));
  }

  void build_inverse() {
    inverse_.assign(entries_.size(), 0);
    for (int j = 1; j <= n_; ++j) {
      std::vector<int> seen(n_ + 1, 0);
      bool perm = true;
      for (int i = 1; i <= n_; ++i) {
        int k = entries_[idx(i, j)];
        if (seen[k]) perm = false;
        seen[k] = i;
      }
      if (!perm) continue;
      for (int k = 1; k <= n_; ++k) inverse_[idx(k, j)] = seen[k];
    }
  }

  int n_ = 0;
  std::vector<int> entries_;
  std::vector<int> inverse_;  // 0 where the column is not a permutation
};

/// Checks both rack axioms, reporting every non-permutation column and every
/// failing self-distributivity triple (i, j, k).
inline VerificationReport verify_rack(const RackTable& r) {
  VerificationReport report;
  const int n = r.size();
  for (int j = 1; j <= n; ++j)
    if (!r.column_is_permutation(j)) report.add("column-not-permutation", {j});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        if (r.op(r.op(i, j), k) != r.op(r.op(i, k), r.op(j, k)))
          report.add("self-distributivity", {i, j, k});
  report.canonicalize();
  return report;
}

/// Raw-table overload: malformed tables raise StructuralError.
inline VerificationReport verify_rack(const std::vector<std::vector<int>>& rows) {
  return verify_rack(RackTable(rows));
}

inline void require_rack(const RackTable& r) {
  auto report = verify_rack(r);
  if (!report.valid()) throw VerificationError("not a rack: " + report.to_string(3));
}

/// The kink map π(x) = x ▷ x and its order N (the rack rank).
struct KinkPermutation {
  std::vector<int> perm;  // perm[x-1] = π(x)
  int order = 1;

  int operator()(int x) const { return perm.at(x - 1); }

  /// π^k(x) for k ≥ 0.
  int power(int x, int k) const {
    for (int i = 0; i < k; ++i) x = perm[x - 1];
    return x;
  }

  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(perm.size() + 1, false);
    for (int x = 1; x <= static_cast<int>(perm.size()); ++x) {
      if (seen[x]) continue;
      std::vector<int> cycle;
      for (int y = x; !seen[y]; y = perm[y - 1]) {
        seen[y] = true;
        cycle.push_back(y);
      }
      out.push_back(std::move(cycle));
    }
    return out;
  }

  /// Cycle notation omitting fixed points, e.g. "(13)(24)"; "id" for the identity.
  std::string cycle_string() const {
    std::ostringstream out;
    const bool wide = perm.size() >= 10;
    for (const auto& c : cycles()) {
      if (c.size() < 2) continue;
      out << '(';
      for (std::size_t i = 0; i < c.size(); ++i) out << (wide && i ? "," : "") << c[i];
      out << ')';
    }
    auto s = out.str();
    return s.empty() ? "id" : s;
  }
};

inline KinkPermutation kink_map(const RackTable& r) {
  KinkPermutation k;
  const int n = r.size();
  k.perm.resize(n);
  std::vector<bool> hit(n + 1, false);
  for (int x = 1; x <= n; ++x) {
    k.perm[x - 1] = r.op(x, x);
    hit[k.perm[x - 1]] = true;
  }
  for (int x = 1; x <= n; ++x)
    if (!hit[x]) throw VerificationError("diagonal of the table is not a permutation");
  long long order = 1;
  for (const auto& c : k.cycles()) order = std::lcm(order, static_cast<long long>(c.size()));
  k.order = static_cast<int>(order);
  return k;
}

inline int rack_rank(const RackTable& r) { return kink_map(r).order; }

inline bool is_quandle(const RackTable& r) {
  for (int x = 1; x <= r.size(); ++x)
    if (r.op(x, x) != x) return false;
  return true;
}

/// Smallest subset containing `seed` and closed under ▷ and ▷⁻¹, sorted.
inline std::vector<int> subrack_closure(const RackTable& r, const std::vector<int>& seed) {
  if (seed.empty()) throw StructuralError("subrack closure needs a nonempty seed");
  std::set<int> members;
  for (int x : seed) {
    if (x < 1 || x > r.size()) throw std::out_of_range("seed element " + std::to_string(x));
    members.insert(x);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> current(members.begin(), members.end());
    for (int a : current)
      for (int b : current) {
        grew |= members.insert(r.op(a, b)).second;
        grew |= members.insert(r.inv_op(a, b)).second;
      }
  }
  return {members.begin(), members.end()};
}

/// The table restricted to a ▷-closed subset, relabelled 1..|subset| in
/// increasing order.
inline RackTable restrict_rack(const RackTable& r, const std::vector<int>& subset) {
  std::vector<int> position(r.size() + 1, 0);
  for (std::size_t i = 0; i < subset.size(); ++i) position[subset[i]] = static_cast<int>(i) + 1;
  std::vector<std::vector<int>> rows(subset.size(), std::vector<int>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j) {
      int v = position[r.op(subset[i], subset[j])];
      if (v == 0) throw StructuralError("subset is not closed under the operation");
      rows[i][j] = v;
    }
  return RackTable(rows);
}

namespace detail {
inline long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}
/// Residue r in Z_m as a 1-based element: 0 is represented by m.
inline int element_of_residue(long long r, long long m) {
  r = mod(r, m);
  return static_cast<int>(r == 0 ? m : r);
}
}  // namespace detail

/// The (t,s)-rack x ▷ y = t·x + s·y on Z_m, elements 1..m with m standing for 0.
inline RackTable ts_rack(int m, long long t, long long s) {
  if (m < 1) throw StructuralError("modulus must be positive");
  if (std::gcd(detail::mod(t, m), static_cast<long long>(m)) != 1 && m > 1)
    throw VerificationError("t = " + std::to_string(t) + " is not a unit mod " + std::to_string(m));
  if (detail::mod(s * s - (1 - t) * s, m) != 0)
    throw VerificationError("s^2 = (1-t)s fails mod " + std::to_string(m) + " for t = " +
                            std::to_string(t) + ", s = " + std::to_string(s));
  std::vector<std::vector<int>> rows(m, std::vector<int>(m));
  for (int x = 1; x <= m; ++x)
    for (int y = 1; y <= m; ++y) rows[x - 1][y - 1] = detail::element_of_residue(t * x + s * y, m);
  return RackTable(rows);
}

/// x ▷ y = 2y − x on Z_m.
inline RackTable dihedral_quandle(int m) {
  if (m < 1) throw StructuralError("dihedral quandle order must be positive");
  std::vector<std::vector<int>> rows(m, std::vector<int>(m));
  for (int x = 1; x <= m; ++x)
    for (int y = 1; y <= m; ++y) rows[x - 1][y - 1] = detail::element_of_residue(2LL * y - x, m);
  return RackTable(rows);
}

// Rack file: first line n, then n rows of n integers. '#' starts a comment.

inline RackTable parse_rack(const std::string& text, const std::string& source = "<rack>") {
  auto lines = io::int_lines(text, source);
  if (lines.empty()) throw StructuralError(source + ": empty rack file");
  if (lines[0].values.size() != 1 || lines[0].values[0] < 1)
    throw StructuralError(io::where(source, lines[0].number) + "expected a positive size n");
  const auto n = static_cast<std::size_t>(lines[0].values[0]);
  if (lines.size() != n + 1)
    throw StructuralError(source + ": expected " + std::to_string(n) + " table rows, found " +
                          std::to_string(lines.size() - 1));
  std::vector<std::vector<int>> rows;
  for (std::size_t i = 1; i <= n; ++i) {
    if (lines[i].values.size() != n)
      throw StructuralError(io::where(source, lines[i].number) + "expected " + std::to_string(n) +
                            " entries");
    rows.emplace_back(lines[i].values.begin(), lines[i].values.end());
  }
  try {
    return RackTable(rows);
  } catch (const StructuralError& e) {
    throw StructuralError(source + ": " + e.what());
  }
}

inline RackTable read_rack(const std::string& path) { return parse_rack(io::read_file(path), path); }

inline std::string format_rack(const RackTable& r) {
  std::ostringstream out;
  out << r.size() << '\n';
  for (const auto& row : r.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
  return out.str();
}

}  // namespace rackbeads
