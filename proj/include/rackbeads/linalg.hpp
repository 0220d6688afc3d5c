#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "report.hpp"

namespace rackbeads {

/// Dense integer matrix, row-major.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<long long> entries;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c, 0) {}
  IntMatrix(const std::vector<std::vector<long long>>& data)
      : rows(static_cast<int>(data.size())), cols(data.empty() ? 0 : static_cast<int>(data[0].size())) {
    for (const auto& row : data) {
      if (static_cast<int>(row.size()) != cols) throw StructuralError("ragged matrix");
      entries.insert(entries.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  long long& operator()(int r, int c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
  long long operator()(int r, int c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }

  std::vector<std::vector<long long>> to_rows() const {
    std::vector<std::vector<long long>> out(rows, std::vector<long long>(cols));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) out[r][c] = (*this)(r, c);
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

namespace detail {
inline long long checked_mul(long long a, long long b) {
  long long out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in matrix reduction");
  return out;
}
inline long long checked_add(long long a, long long b) {
  long long out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow in matrix reduction");
  return out;
}
}  // namespace detail

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw StructuralError("matrix product dimension mismatch");
  IntMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols; ++j)
        out(i, j) = detail::checked_add(out(i, j), detail::checked_mul(a(i, k), b(k, j)));
    }
  return out;
}

/// Matrix over Z_m with entries kept in 0..m−1.
class ZmMatrix {
 public:
  ZmMatrix() = default;
  ZmMatrix(int rows, int cols, long long modulus)
      : rows_(rows), cols_(cols), m_(modulus), entries_(static_cast<std::size_t>(rows) * cols, 0) {
    if (m_ < 1) throw StructuralError("modulus must be positive");
  }
  ZmMatrix(const std::vector<std::vector<long long>>& data, long long modulus)
      : ZmMatrix(static_cast<int>(data.size()), data.empty() ? 0 : static_cast<int>(data[0].size()), modulus) {
    for (int r = 0; r < rows_; ++r) {
      if (static_cast<int>(data[r].size()) != cols_) throw StructuralError("ragged matrix");
      for (int c = 0; c < cols_; ++c) set(r, c, data[r][c]);
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long long modulus() const { return m_; }

  long long operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
  void set(int r, int c, long long v) {
    v %= m_;
    if (v < 0) v += m_;
    entries_[static_cast<std::size_t>(r) * cols_ + c] = v;
  }
  void add(int r, int c, long long v) { set(r, c, (*this)(r, c) + v % m_); }

  /// Appends a zero row and returns its index.
  int append_row() {
    entries_.resize(entries_.size() + cols_, 0);
    return rows_++;
  }

  std::vector<std::vector<long long>> to_rows() const {
    std::vector<std::vector<long long>> out(rows_, std::vector<long long>(cols_));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
    return out;
  }

  IntMatrix lift() const {
    IntMatrix out(rows_, cols_);
    out.entries = entries_;
    return out;
  }

  /// One row per line, comma separated.
  std::string to_csv() const {
    std::ostringstream out;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) out << (c ? "," : "") << (*this)(r, c);
      out << '\n';
    }
    return out.str();
  }

  friend bool operator==(const ZmMatrix&, const ZmMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  long long m_ = 1;
  std::vector<long long> entries_;
};

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace detail {
inline long long inverse_mod(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, a1 = a % m;
  if (a1 < 0) a1 += m;
  long long b = a1;
  while (b != 0) {
    long long q = g / b;
    std::tie(g, b) = std::make_pair(b, g - q * b);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw StructuralError("element is not invertible");
  x %= m;
  return x < 0 ? x + m : x;
}
}  // namespace detail

struct RowReduction {
  ZmMatrix reduced;  // reduced row echelon form
  int rank = 0;
};

/// Reduced row echelon form over the field Z_p.
inline RowReduction row_reduce_prime(const ZmMatrix& a, long long p) {
  if (!is_prime(p)) throw StructuralError("row_reduce_prime needs a prime modulus, got " + std::to_string(p));
  ZmMatrix m(a.rows(), a.cols(), p);
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m.set(r, c, a(r, c));
  int pivot_row = 0;
  for (int c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    int found = -1;
    for (int r = pivot_row; r < m.rows(); ++r)
      if (m(r, c) != 0) {
        found = r;
        break;
      }
    if (found < 0) continue;
    if (found != pivot_row)
      for (int j = 0; j < m.cols(); ++j) {
        auto tmp = m(found, j);
        m.set(found, j, m(pivot_row, j));
        m.set(pivot_row, j, tmp);
      }
    const long long inv = detail::inverse_mod(m(pivot_row, c), p);
    for (int j = 0; j < m.cols(); ++j) m.set(pivot_row, j, m(pivot_row, j) * inv);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || m(r, c) == 0) continue;
      const long long f = m(r, c);
      for (int j = 0; j < m.cols(); ++j) m.set(r, j, m(r, j) - f * m(pivot_row, j));
    }
    ++pivot_row;
  }
  return {m, pivot_row};
}

/// U·A·V = D with U, V unimodular and D diagonal, d_1 | d_2 | … (d_i ≥ 0).
struct SmithForm {
  std::vector<long long> diagonal;  // length min(rows, cols)
  IntMatrix left;                   // U
  IntMatrix right;                  // V
};

inline SmithForm smith_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const int rows = a.rows, cols = a.cols;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  using detail::checked_add;
  using detail::checked_mul;
  auto row_combine = [&](IntMatrix& m, int target, int source, long long f) {
    for (int j = 0; j < m.cols; ++j) m(target, j) = checked_add(m(target, j), checked_mul(-f, m(source, j)));
  };
  auto col_combine = [&](IntMatrix& m, int target, int source, long long f) {
    for (int i = 0; i < m.rows; ++i) m(i, target) = checked_add(m(i, target), checked_mul(-f, m(i, source)));
  };
  auto swap_rows = [](IntMatrix& m, int p, int q) {
    for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(q, j));
  };
  auto swap_cols = [](IntMatrix& m, int p, int q) {
    for (int i = 0; i < m.rows; ++i) std::swap(m(i, p), m(i, q));
  };
  auto negate_row = [](IntMatrix& m, int p) {
    for (int j = 0; j < m.cols; ++j) m(p, j) = -m(p, j);
  };

  const int diag = std::min(rows, cols);
  for (int t = 0; t < diag; ++t) {
    // Pivot: smallest nonzero |entry| in the trailing block.
    for (;;) {
      int pr = -1, pc = -1;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pr < 0 || std::llabs(a(i, j)) < std::llabs(a(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr < 0) break;  // trailing block is zero
      if (pr != t) {
        swap_rows(a, pr, t);
        swap_rows(u, pr, t);
      }
      if (pc != t) {
        swap_cols(a, pc, t);
        swap_cols(v, pc, t);
      }
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        long long q = a(i, t) / a(t, t);
        if (q != 0) {
          row_combine(a, i, t, q);
          row_combine(u, i, t, q);
        }
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        long long q = a(t, j) / a(t, t);
        if (q != 0) {
          col_combine(a, j, t, q);
          col_combine(v, j, t, q);
        }
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: pivot must divide the whole trailing block.
      int bad_row = -1;
      for (int i = t + 1; i < rows && bad_row < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      for (int j = 0; j < cols; ++j) a(t, j) = checked_add(a(t, j), a(bad_row, j));
      for (int j = 0; j < rows; ++j) u(t, j) = checked_add(u(t, j), u(bad_row, j));
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      negate_row(u, t);
    }
  }

  SmithForm out;
  out.diagonal.resize(diag);
  for (int t = 0; t < diag; ++t) out.diagonal[t] = a(t, t);
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

namespace detail {
inline std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i)
    if (__builtin_mul_overflow(out, base, &out)) throw std::overflow_error("kernel size exceeds 64 bits");
  return out;
}
}  // namespace detail

/// |{v ∈ Z_m^cols : A·v ≡ 0 (mod m)}|.
inline std::uint64_t count_kernel(const ZmMatrix& a) {
  const long long m = a.modulus();
  if (m == 1) return 1;
  if (a.rows() == 0) return detail::checked_pow(static_cast<std::uint64_t>(m), a.cols());
  if (is_prime(m)) {
    auto rr = row_reduce_prime(a, m);
    return detail::checked_pow(static_cast<std::uint64_t>(m), a.cols() - rr.rank);
  }
  const auto snf = smith_normal_form(a.lift());
  std::uint64_t count = detail::checked_pow(static_cast<std::uint64_t>(m), a.cols() - static_cast<int>(snf.diagonal.size()));
  for (long long d : snf.diagonal) {
    const auto g = static_cast<std::uint64_t>(std::gcd(d, m));  // gcd(0, m) = m
    if (__builtin_mul_overflow(count, g, &count)) throw std::overflow_error("kernel size exceeds 64 bits");
  }
  return count;
}

}  // namespace rackbeads
