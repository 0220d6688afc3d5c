#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cocycle.hpp"
#include "invariants.hpp"
#include "module.hpp"
#include "rack.hpp"

namespace rackbeads {

/// Name of the generator behind every seeded stream, for output metadata.
inline constexpr const char* kGeneratorName = "mt19937_64";

enum class SearchMode { Random, Exhaustive };

struct SearchConfig {
  RackTable rack;
  int beads = 1;  // bead count k, or the modulus m for module search
  std::uint64_t seed = 0;
  SearchMode mode = SearchMode::Random;
  // Random: number of candidates drawn. Exhaustive: cap on results returned.
  std::uint64_t max_candidates = 1000;
  bool require_n_reduced = true;
};

template <class T>
struct Found {
  std::uint64_t candidate = 0;  // 0-based position in the candidate stream
  T value;
};

namespace detail {

/// Uniform draw from 0..bound−1 by rejection, independent of the standard
/// library's distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do v = g();
  while (v >= limit);
  return v % bound;
}

inline std::vector<int> random_permutation(std::mt19937_64& g, int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 1);
  for (int i = k - 1; i > 0; --i) std::swap(p[i], p[uniform_below(g, static_cast<std::uint64_t>(i) + 1)]);
  return p;
}

inline void check_config(const SearchConfig& cfg) {
  if (cfg.beads < 1) throw StructuralError("search needs at least one bead");
  if (cfg.max_candidates < 1) throw StructuralError("max_candidates must be positive");
  require_rack(cfg.rack);
}

// Columns of a cocycle are indexed c = ((x−1)·n + (y−1))·k + (b−1); column c
// holds the permutation a ↦ a ·_{x,y} b.
struct ColumnLayout {
  int n, k;
  int count() const { return n * n * k; }
  int index(int x, int y, int b) const { return ((x - 1) * n + (y - 1)) * k + (b - 1); }
};

inline DynamicalCocycle cocycle_from_columns(const ColumnLayout& lay, const std::vector<std::vector<int>>& cols) {
  const int n = lay.n, k = lay.k;
  std::vector<std::vector<int>> m(n * k, std::vector<int>(n * k));
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int b = 1; b <= k; ++b)
        for (int a = 1; a <= k; ++a) m[(x - 1) * k + a - 1][(y - 1) * k + b - 1] = cols[lay.index(x, y, b)][a - 1];
  return DynamicalCocycle(n, k, m);
}

inline bool accept_cocycle(const SearchConfig& cfg, const DynamicalCocycle& a) {
  if (!verify_cocycle(cfg.rack, a).valid()) return false;
  return !cfg.require_n_reduced || verify_n_reduced(cfg.rack, a).valid();
}

}  // namespace detail

/// Random mode draws every column as a uniform permutation, so bijectivity
/// holds by construction. Exhaustive mode walks column choices in
/// lexicographic order (columns by (x, y, b), permutations lexicographic),
/// cutting branches as soon as an instance of mixed self-distributivity with
/// all its columns chosen fails.
inline std::vector<Found<DynamicalCocycle>> search_cocycles(const SearchConfig& cfg) {
  detail::check_config(cfg);
  const detail::ColumnLayout lay{cfg.rack.size(), cfg.beads};
  const int n = lay.n, k = lay.k;
  std::vector<Found<DynamicalCocycle>> out;

  if (cfg.mode == SearchMode::Random) {
    std::mt19937_64 g(cfg.seed);
    std::vector<std::vector<int>> cols(lay.count());
    for (std::uint64_t i = 0; i < cfg.max_candidates; ++i) {
      for (auto& c : cols) c = detail::random_permutation(g, k);
      auto a = detail::cocycle_from_columns(lay, cols);
      if (detail::accept_cocycle(cfg, a)) out.push_back({i, std::move(a)});
    }
    return out;
  }

  std::vector<int> base(k);
  std::iota(base.begin(), base.end(), 1);
  std::vector<std::vector<int>> perms;
  do perms.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  const auto P = static_cast<std::uint64_t>(perms.size());
  if (static_cast<double>(lay.count()) * std::log2(static_cast<double>(P)) >= 63.0)
    throw StructuralError("exhaustive cocycle search space is too large to index");

  std::vector<int> choice(lay.count(), -1);
  // value of a ·_{x,y} b, or 0 when that column is still open
  auto val = [&](int x, int y, int a, int b) {
    const int c = choice[lay.index(x, y, b)];
    return c < 0 ? 0 : perms[c][a - 1];
  };
  auto consistent = [&]() {
    const RackTable& r = cfg.rack;
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y)
        for (int z = 1; z <= n; ++z) {
          const int xy = r.op(x, y), xz = r.op(x, z), yz = r.op(y, z);
          for (int a = 1; a <= k; ++a)
            for (int b = 1; b <= k; ++b) {
              const int ab = val(x, y, a, b);
              if (!ab) continue;
              for (int c = 1; c <= k; ++c) {
                const int lhs = val(xy, z, ab, c);
                const int ac = val(x, z, a, c), bc = val(y, z, b, c);
                if (!lhs || !ac || !bc) continue;
                const int rhs = val(xz, yz, ac, bc);
                if (rhs && lhs != rhs) return false;
              }
            }
        }
    return true;
  };
  // Candidate number = mixed-radix value of the choice vector.
  std::function<bool(int, std::uint64_t)> walk = [&](int col, std::uint64_t prefix) {
    if (col == lay.count()) {
      std::vector<std::vector<int>> cols(lay.count());
      for (int i = 0; i < lay.count(); ++i) cols[i] = perms[choice[i]];
      auto a = detail::cocycle_from_columns(lay, cols);
      if (detail::accept_cocycle(cfg, a)) out.push_back({prefix, std::move(a)});
      return out.size() < cfg.max_candidates;
    }
    for (std::uint64_t p = 0; p < P; ++p) {
      choice[col] = static_cast<int>(p);
      if (consistent() && !walk(col + 1, prefix * P + p)) return false;
    }
    choice[col] = -1;
    return true;
  };
  walk(0, 0);
  return out;
}

/// T entries range over units of Z_m and S entries over Z_m. Random mode
/// draws them uniformly; exhaustive mode enumerates T (row-major) then S in
/// lexicographic order of residues.
inline std::vector<Found<XModuleStructure>> search_modules(const SearchConfig& cfg) {
  detail::check_config(cfg);
  const int n = cfg.rack.size();
  const int m = cfg.beads;
  std::vector<long long> units;
  for (long long u = 0; u < m; ++u)
    if (std::gcd(u, static_cast<long long>(m)) == 1 || m == 1) units.push_back(u);
  const int cells = n * n;
  auto build = [&](const std::vector<long long>& t, const std::vector<long long>& s) {
    std::vector<std::vector<long long>> T(n, std::vector<long long>(n)), S = T;
    for (int i = 0; i < cells; ++i) {
      T[i / n][i % n] = t[i];
      S[i / n][i % n] = s[i];
    }
    return XModuleStructure(m, T, S);
  };
  std::vector<Found<XModuleStructure>> out;
  std::vector<long long> t(cells), s(cells);

  if (cfg.mode == SearchMode::Random) {
    std::mt19937_64 g(cfg.seed);
    for (std::uint64_t i = 0; i < cfg.max_candidates; ++i) {
      for (auto& v : t) v = units[detail::uniform_below(g, units.size())];
      for (auto& v : s) v = static_cast<long long>(detail::uniform_below(g, static_cast<std::uint64_t>(m)));
      auto mod = build(t, s);
      if (verify_xmodule(cfg.rack, mod).valid()) out.push_back({i, std::move(mod)});
    }
    return out;
  }

  // odometer over 2·cells digits: T digits index into `units`, S digits are residues
  std::vector<std::size_t> digit(2 * cells, 0);
  std::uint64_t index = 0;
  while (true) {
    for (int i = 0; i < cells; ++i) {
      t[i] = units[digit[i]];
      s[i] = static_cast<long long>(digit[cells + i]);
    }
    auto mod = build(t, s);
    if (verify_xmodule(cfg.rack, mod).valid()) {
      out.push_back({index, std::move(mod)});
      if (out.size() >= cfg.max_candidates) break;
    }
    ++index;
    int i = 2 * cells - 1;
    while (i >= 0) {
      const std::size_t radix = i < cells ? units.size() : static_cast<std::size_t>(m);
      if (++digit[i] < radix) break;
      digit[i--] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

struct NamedDiagram {
  std::string id;
  LinkDiagram diagram;
};

struct DistinguishingRow {
  std::size_t cocycle = 0;     // position in the input list
  std::uint64_t separated = 0;  // link pairs with different values
  std::vector<std::pair<std::string, std::vector<std::string>>> classes;  // value, link ids
};

/// For each cocycle, the partition of the links by Φ_{X,α}. Rows sorted by
/// separated pairs descending, then by input position; classes by value string.
inline std::vector<DistinguishingRow> distinguishing_report(const std::vector<DynamicalCocycle>& cocycles,
                                                            const std::vector<NamedDiagram>& links,
                                                            const RackTable& r) {
  std::vector<DistinguishingRow> rows;
  for (std::size_t i = 0; i < cocycles.size(); ++i) {
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& l : links) groups[dynamical_invariant(l.diagram, r, cocycles[i]).to_string()].push_back(l.id);
    DistinguishingRow row;
    row.cocycle = i;
    const std::uint64_t total = links.size();
    std::uint64_t same = 0;
    for (auto& [value, ids] : groups) {
      same += static_cast<std::uint64_t>(ids.size()) * (ids.size() - 1) / 2;
      row.classes.emplace_back(value, std::move(ids));
    }
    row.separated = total * (total - (total ? 1 : 0)) / 2 - same;
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const DistinguishingRow& a, const DistinguishingRow& b) { return a.separated > b.separated; });
  return rows;
}

/// Tab-separated: cocycle index, separated pairs, then one column per class
/// as "value:id,id,...".
inline std::string format_distinguishing_report(const std::vector<DistinguishingRow>& rows) {
  std::ostringstream out;
  out << "cocycle\tseparated\tclasses\n";
  for (const auto& row : rows) {
    out << row.cocycle << '\t' << row.separated;
    for (const auto& [value, ids] : row.classes) {
      out << '\t' << value << ':';
      for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? "," : "") << ids[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace rackbeads
