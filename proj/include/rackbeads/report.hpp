#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rackbeads {

/// Raised for malformed input: wrong shape, out-of-range entries, unparsable
/// text. Distinct from an axiom failure, which is reported through a
/// VerificationReport instead.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation requires verified data (a rack, cocycle or module
/// satisfying its axioms) and receives data that fails verification.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One failing instance of an axiom, with the indices that witness it.
struct Violation {
  std::string rule;
  std::vector<int> witness;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation& a, const Violation& b) {
    if (auto c = a.rule <=> b.rule; c != 0) return c;
    return a.witness <=> b.witness;
  }
};

/// Every violation found by a verifier, not just the first one.
class VerificationReport {
 public:
  void add(std::string rule, std::vector<int> witness) {
    violations_.push_back({std::move(rule), std::move(witness)});
  }

  void merge(const VerificationReport& other) {
    violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
  }

  /// Sorts violations lexicographically so reports compare deterministically.
  void canonicalize() { std::sort(violations_.begin(), violations_.end()); }

  bool valid() const { return violations_.empty(); }
  const std::vector<Violation>& violations() const { return violations_; }

  bool has_rule(const std::string& rule) const {
    return std::any_of(violations_.begin(), violations_.end(),
                       [&](const Violation& v) { return v.rule == rule; });
  }

  std::string to_string(std::size_t max_lines = 20) const {
    std::ostringstream out;
    if (valid()) {
      out << "valid\n";
      return out.str();
    }
    out << "invalid: " << violations_.size() << " violation(s)\n";
    std::size_t shown = 0;
    for (const auto& v : violations_) {
      if (shown++ == max_lines) {
        out << "  ...\n";
        break;
      }
      out << "  " << v.rule << " (";
      for (std::size_t i = 0; i < v.witness.size(); ++i) out << (i ? "," : "") << v.witness[i];
      out << ")\n";
    }
    return out.str();
  }

 private:
  std::vector<Violation> violations_;
};

}  // namespace rackbeads
