#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "report.hpp"

namespace rackbeads {

/// A finite constraint system over variables 1..V with values 1..d, built
/// from three kinds of table-driven relations:
///   equality   v_a = v_b
///   unary      v_result = table[v_arg]
///   binary     v_result = table[v_left][v_right]
/// Used both for rack labelings (one shared binary table) and for bead
/// labelings (one table per crossing, chosen by the rack labels).
class ConstraintSystem {
 public:
  using Table = std::shared_ptr<const std::vector<int>>;

  ConstraintSystem(int variables, int domain) : vars_(variables), dom_(domain) {
    if (variables < 0 || domain < 1) throw StructuralError("constraint system needs V >= 0 and d >= 1");
  }

  int variables() const { return vars_; }
  int domain() const { return dom_; }

  void add_equality(int a, int b) {
    check_var(a);
    check_var(b);
    equalities_.push_back({a, b});
  }

  /// `table` has d entries, table[v − 1] in 1..d.
  void add_unary(int result, int arg, Table table) {
    check_var(result);
    check_var(arg);
    check_table(*table, static_cast<std::size_t>(dom_));
    unary_.push_back({result, arg, table, invert_unary(*table)});
  }

  /// `table` has d² entries, table[(l − 1)·d + (r − 1)] in 1..d.
  void add_binary(int result, int left, int right, Table table) {
    check_var(result);
    check_var(left);
    check_var(right);
    check_table(*table, static_cast<std::size_t>(dom_) * dom_);
    binary_.push_back({result, left, right, table, cached_inverse(table)});
  }

  /// Whether a full assignment (index v − 1 holds v's value) satisfies every relation.
  bool satisfied(const std::vector<int>& a) const {
    if (static_cast<int>(a.size()) != vars_) return false;
    for (int v : a)
      if (v < 1 || v > dom_) return false;
    for (const auto& e : equalities_)
      if (a[e.a - 1] != a[e.b - 1]) return false;
    for (const auto& u : unary_)
      if (a[u.result - 1] != (*u.table)[a[u.arg - 1] - 1]) return false;
    for (const auto& b : binary_)
      if (a[b.result - 1] != (*b.table)[bin(a[b.left - 1], a[b.right - 1])]) return false;
    return true;
  }

  /// All solutions in lexicographic order.
  std::vector<std::vector<int>> solutions() const {
    std::vector<std::vector<int>> out;
    search([&](const std::vector<int>& s) { out.push_back(s); });
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint64_t count() const {
    std::uint64_t n = 0;
    search([&](const std::vector<int>&) { ++n; });
    return n;
  }

  /// Exhaustive filter over all d^V assignments, in lexicographic order.
  std::vector<std::vector<int>> solutions_brute_force() const {
    std::vector<std::vector<int>> out;
    std::vector<int> a(vars_, 1);
    while (true) {
      if (satisfied(a)) out.push_back(a);
      int i = vars_ - 1;
      while (i >= 0 && a[i] == dom_) a[i--] = 1;
      if (i < 0) break;
      ++a[i];
    }
    return out;
  }

 private:
  struct Eq {
    int a, b;
  };
  struct Unary {
    int result, arg;
    Table table;
    std::vector<int> inverse;  // inverse[c − 1] = unique preimage, 0 if several, −1 if none
  };
  struct Binary {
    int result, left, right;
    Table table;
    std::shared_ptr<const std::vector<int>> inverse;  // indexed by (c, r) like table
  };

  std::size_t bin(int l, int r) const { return static_cast<std::size_t>(l - 1) * dom_ + (r - 1); }

  void check_var(int v) const {
    if (v < 1 || v > vars_)
      throw StructuralError("constraint variable " + std::to_string(v) + " outside 1.." + std::to_string(vars_));
  }

  void check_table(const std::vector<int>& t, std::size_t size) const {
    if (t.size() != size) throw StructuralError("constraint table has wrong size");
    for (int v : t)
      if (v < 1 || v > dom_) throw StructuralError("constraint table value outside domain");
  }

  std::vector<int> invert_unary(const std::vector<int>& t) const {
    std::vector<int> inv(dom_, -1);
    for (int a = 1; a <= dom_; ++a) {
      int& slot = inv[t[a - 1] - 1];
      slot = slot == -1 ? a : 0;
    }
    return inv;
  }

  std::shared_ptr<const std::vector<int>> cached_inverse(const Table& t) {
    for (const auto& b : binary_)
      if (b.table == t) return b.inverse;
    auto inv = std::make_shared<std::vector<int>>(static_cast<std::size_t>(dom_) * dom_, -1);
    for (int l = 1; l <= dom_; ++l)
      for (int r = 1; r <= dom_; ++r) {
        int& slot = (*inv)[bin((*t)[bin(l, r)], r)];
        slot = slot == -1 ? l : 0;
      }
    return inv;
  }

  // Union-find over equalities, then depth-first search on class
  // representatives with propagation through unary and binary relations in
  // both directions where the inverse is unique.
  void search(const std::function<void(const std::vector<int>&)>& emit) const {
    std::vector<int> parent(vars_ + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (const auto& e : equalities_) {
      int a = find(e.a), b = find(e.b);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> rep(vars_ + 1);
    for (int v = 1; v <= vars_; ++v) rep[v] = find(v);

    struct U {
      int result, arg;
      const std::vector<int>* table;
      const std::vector<int>* inverse;
    };
    struct B {
      int result, left, right;
      const std::vector<int>* table;
      const std::vector<int>* inverse;
    };
    std::vector<U> us;
    std::vector<B> bs;
    for (const auto& u : unary_) us.push_back({rep[u.result], rep[u.arg], u.table.get(), &u.inverse});
    for (const auto& b : binary_)
      bs.push_back({rep[b.result], rep[b.left], rep[b.right], b.table.get(), b.inverse.get()});

    std::vector<int> roots;
    for (int v = 1; v <= vars_; ++v)
      if (rep[v] == v) roots.push_back(v);

    std::vector<int> value(vars_ + 1, 0);
    std::vector<int> trail;

    auto assign = [&](int v, int x) {
      if (value[v] == 0) {
        value[v] = x;
        trail.push_back(v);
        return true;
      }
      return value[v] == x;
    };

    auto propagate = [&]() {
      bool changed = true;
      while (changed) {
        changed = false;
        const auto before = trail.size();
        for (const auto& u : us) {
          const int a = value[u.arg], c = value[u.result];
          if (a) {
            if (!assign(u.result, (*u.table)[a - 1])) return false;
          } else if (c) {
            const int pre = (*u.inverse)[c - 1];
            if (pre < 0) return false;
            if (pre > 0 && !assign(u.arg, pre)) return false;
          }
        }
        for (const auto& b : bs) {
          const int l = value[b.left], r = value[b.right], c = value[b.result];
          if (l && r) {
            if (!assign(b.result, (*b.table)[bin(l, r)])) return false;
          } else if (c && r) {
            const int pre = (*b.inverse)[bin(c, r)];
            if (pre < 0) return false;
            if (pre > 0 && !assign(b.left, pre)) return false;
          }
        }
        changed = trail.size() != before;
      }
      return true;
    };

    std::vector<int> full(vars_);
    std::function<void()> dfs = [&]() {
      const auto mark = trail.size();
      auto undo = [&] {
        while (trail.size() > mark) {
          value[trail.back()] = 0;
          trail.pop_back();
        }
      };
      if (!propagate()) {
        undo();
        return;
      }
      int branch = 0;
      for (int v : roots)
        if (value[v] == 0) {
          branch = v;
          break;
        }
      if (branch == 0) {
        for (int v = 1; v <= vars_; ++v) full[v - 1] = value[rep[v]];
        // relations with no unique inverse may still be unchecked
        bool ok = true;
        for (const auto& b : bs)
          if (value[b.result] != (*b.table)[bin(value[b.left], value[b.right])]) ok = false;
        for (const auto& u : us)
          if (value[u.result] != (*u.table)[value[u.arg] - 1]) ok = false;
        if (ok) emit(full);
        undo();
        return;
      }
      for (int x = 1; x <= dom_; ++x) {
        const auto inner = trail.size();
        assign(branch, x);
        dfs();
        while (trail.size() > inner) {
          value[trail.back()] = 0;
          trail.pop_back();
        }
      }
      undo();
    };
    if (vars_ == 0) {
      emit({});
      return;
    }
    dfs();
  }

  int vars_;
  int dom_;
  std::vector<Eq> equalities_;
  std::vector<Unary> unary_;
  std::vector<Binary> binary_;
};

}  // namespace rackbeads
