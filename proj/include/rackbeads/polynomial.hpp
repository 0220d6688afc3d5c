#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace rackbeads {

/// Σ c_e u^e with positive multiplicities c_e; exponents may be negative.
class InvariantPolynomial {
 public:
  void add(long long exponent, std::uint64_t multiplicity = 1) {
    if (multiplicity) terms_[exponent] += multiplicity;
  }

  void merge(const InvariantPolynomial& other) {
    for (const auto& [e, c] : other.terms_) add(e, c);
  }

  const std::map<long long, std::uint64_t>& terms() const { return terms_; }

  /// Value at u = 1.
  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (const auto& [e, c] : terms_) n += c;
    return n;
  }

  /// Constant term first as a bare integer, then "Cu^E" in ascending E,
  /// joined by '+'; "0" for the empty polynomial. Example: "6+3u^9".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    if (auto it = terms_.find(0); it != terms_.end()) {
      out << it->second;
      first = false;
    }
    for (const auto& [e, c] : terms_) {
      if (e == 0) continue;
      out << (first ? "" : "+") << c << "u^" << e;
      first = false;
    }
    return out.str();
  }

  friend bool operator==(const InvariantPolynomial&, const InvariantPolynomial&) = default;

 private:
  std::map<long long, std::uint64_t> terms_;
};

/// Σ c_w q_1^{w_1} ⋯ q_c^{w_c} over framing vectors w.
class WrithePolynomial {
 public:
  void add(const std::vector<int>& w, std::uint64_t count = 1) {
    if (count) terms_[w] += count;
  }

  void merge(const WrithePolynomial& other) {
    for (const auto& [w, c] : other.terms_) add(w, c);
  }

  const std::map<std::vector<int>, std::uint64_t>& terms() const { return terms_; }

  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (const auto& [w, c] : terms_) n += c;
    return n;
  }

  /// Terms in lexicographic order of w, each "C" followed by q<i> or q<i>^<w_i>
  /// for nonzero w_i; e.g. "4q1q2", "2+1q1^2". "0" when empty.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      out << (first ? "" : "+") << c;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) continue;
        out << 'q' << i + 1;
        if (w[i] != 1) out << '^' << w[i];
      }
      first = false;
    }
    return out.str();
  }

  friend bool operator==(const WrithePolynomial&, const WrithePolynomial&) = default;

 private:
  std::map<std::vector<int>, std::uint64_t> terms_;
};

}  // namespace rackbeads
