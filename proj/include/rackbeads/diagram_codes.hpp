#pragma once

#include <array>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "report.hpp"
#include "text_io.hpp"

namespace rackbeads {

enum class DiagramFormat { Native, PD, Gauss };

inline DiagramFormat parse_format_name(const std::string& name) {
  if (name == "native") return DiagramFormat::Native;
  if (name == "pd") return DiagramFormat::PD;
  if (name == "gauss") return DiagramFormat::Gauss;
  throw StructuralError("unknown diagram format '" + name + "' (expected native, pd or gauss)");
}

inline std::string format_name(DiagramFormat f) {
  switch (f) {
    case DiagramFormat::Native: return "native";
    case DiagramFormat::PD: return "pd";
    case DiagramFormat::Gauss: return "gauss";
  }
  return "?";
}

// Native format, one record per line:
//   V                                  virtual diagram
//   C <sign> <under_in> <over_in> <under_out> <over_out>
//   P <in> <out>                       positive kink node
//   K <semi-arc> ...                   component, in traversal order
// '#' starts a comment. The semi-arc count is the largest id mentioned.

inline LinkDiagram parse_native(const std::string& text, const std::string& source = "<native>") {
  std::vector<Crossing> crossings;
  std::vector<KinkNode> kinks;
  std::vector<std::vector<int>> components;
  bool is_virtual = false;
  int max_id = 0;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  auto ints = [&](std::istringstream& fields, std::size_t want, const std::string& what) {
    std::vector<int> out;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(v);
      } catch (const std::exception&) {
        throw StructuralError(io::where(source, number) + "'" + tok + "' is not an integer");
      }
    }
    if (want && out.size() != want)
      throw StructuralError(io::where(source, number) + what + " needs " + std::to_string(want) +
                            " integers, found " + std::to_string(out.size()));
    for (std::size_t i = (what == "crossing" ? 1 : 0); i < out.size(); ++i) {
      if (out[i] < 1) throw StructuralError(io::where(source, number) + "semi-arc ids must be positive");
      max_id = std::max(max_id, out[i]);
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++number;
    line = io::trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "V") {
      is_virtual = true;
    } else if (tag == "C") {
      auto v = ints(fields, 5, "crossing");
      crossings.push_back({v[0], v[1], v[2], v[3], v[4]});
    } else if (tag == "P") {
      auto v = ints(fields, 2, "kink");
      kinks.push_back({v[0], v[1]});
    } else if (tag == "K") {
      auto v = ints(fields, 0, "component");
      if (v.empty()) throw StructuralError(io::where(source, number) + "empty component");
      components.push_back(v);
    } else {
      throw StructuralError(io::where(source, number) + "unknown record '" + tag + "'");
    }
  }
  if (max_id == 0) throw StructuralError(source + ": diagram mentions no semi-arcs");
  try {
    return LinkDiagram(max_id, crossings, kinks, components, is_virtual);
  } catch (const StructuralError& e) {
    throw StructuralError(source + ": " + e.what());
  }
}

inline std::string format_native(const LinkDiagram& d) {
  std::ostringstream out;
  if (d.is_virtual()) out << "V\n";
  for (const auto& c : d.crossings())
    out << "C " << (c.sign > 0 ? "+1" : "-1") << ' ' << c.under_in << ' ' << c.over_in << ' ' << c.under_out
        << ' ' << c.over_out << '\n';
  for (const auto& k : d.kinks()) out << "P " << k.in << ' ' << k.out << '\n';
  for (const auto& comp : d.components()) {
    out << 'K';
    for (int s : comp) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

/// PD code: X[a,b,c,d] (or X(a,b,c,d)) per crossing, a the incoming under
/// edge, edges counterclockwise. Edge labels must be exactly 1..E. The over
/// strand's direction is propagated from the under strands; a component that
/// never passes under falls back to edge-number succession. Positive iff the
/// over strand runs d → b. An empty code is the unknot.
inline LinkDiagram parse_pd(const std::string& text, const std::string& source = "<pd>") {
  static const std::regex cross_re(R"(X\s*[\[(]([^\])]*)[\])])");
  std::vector<std::array<int, 4>> xs;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), cross_re); it != std::sregex_iterator(); ++it) {
    const std::string body = (*it)[1];
    std::vector<int> v;
    std::string tok;
    std::istringstream fields(body);
    while (std::getline(fields, tok, ',')) {
      tok = io::trim(tok);
      try {
        std::size_t used = 0;
        v.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw StructuralError(source + ": crossing " + std::to_string(xs.size() + 1) + " has non-integer entry '" +
                              tok + "'");
      }
    }
    if (v.size() != 4)
      throw StructuralError(source + ": crossing " + std::to_string(xs.size() + 1) + " has " +
                            std::to_string(v.size()) + " entries, expected 4");
    xs.push_back({v[0], v[1], v[2], v[3]});
  }
  if (xs.empty()) {
    std::string rest = std::regex_replace(text, std::regex(R"(PD|[\s\[\]()])"), "");
    if (!rest.empty()) throw StructuralError(source + ": no crossings found in PD code");
    return LinkDiagram::unknot();
  }

  std::map<int, int> uses;
  for (const auto& x : xs)
    for (int e : x) ++uses[e];
  const int edges = static_cast<int>(uses.size());
  for (const auto& [e, n] : uses) {
    if (e < 1 || e > edges)
      throw StructuralError(source + ": edge labels must be 1.." + std::to_string(edges) + ", found " +
                            std::to_string(e));
    if (n != 2)
      throw StructuralError(source + ": edge " + std::to_string(e) + " is dangling (appears " +
                            std::to_string(n) + " time" + (n == 1 ? "" : "s") + ", expected 2)");
  }

  // head[e]: crossing where e ends; tail[e]: crossing where e starts.
  std::vector<int> head(edges + 1, -1), tail(edges + 1, -1);
  auto set_end = [&](std::vector<int>& v, int e, int i) {
    if (v[e] >= 0 && v[e] != i)
      throw StructuralError(source + ": edge " + std::to_string(e) + " has inconsistent orientation");
    v[e] = i;
  };
  const int n = static_cast<int>(xs.size());
  for (int i = 0; i < n; ++i) {
    set_end(head, xs[i][0], i);
    set_end(tail, xs[i][2], i);
  }
  std::vector<int> over_in_b(n, -1);  // 1: b incoming (negative), 0: d incoming (positive)
  auto orient = [&](int i, bool b_in) {
    over_in_b[i] = b_in;
    const int b = xs[i][1], d = xs[i][3];
    if (b == d) throw StructuralError(source + ": over strand of crossing " + std::to_string(i + 1) + " closes on itself");
    if (b_in) {
      set_end(head, b, i);
      set_end(tail, d, i);
    } else {
      set_end(head, d, i);
      set_end(tail, b, i);
    }
  };
  auto settle = [&] {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        if (over_in_b[i] >= 0) continue;
        const int b = xs[i][1], d = xs[i][3];
        if ((tail[b] >= 0 && tail[b] != i) || (head[d] >= 0 && head[d] != i)) {
          orient(i, true);
          changed = true;
        } else if ((head[b] >= 0 && head[b] != i) || (tail[d] >= 0 && tail[d] != i)) {
          orient(i, false);
          changed = true;
        }
      }
    }
  };
  settle();
  for (int i = 0; i < n; ++i) {
    if (over_in_b[i] >= 0) continue;
    const int b = xs[i][1], d = xs[i][3];
    orient(i, d == b + 1 || b > d + 1);
    settle();
  }

  std::vector<Crossing> crossings;
  for (int i = 0; i < n; ++i) {
    const auto& [a, b, c, d] = xs[i];
    if (over_in_b[i])
      crossings.push_back({-1, a, b, c, d});
    else
      crossings.push_back({1, a, d, c, b});
  }
  try {
    return LinkDiagram(edges, crossings, {});
  } catch (const StructuralError& e) {
    throw StructuralError(source + ": " + e.what());
  }
}

inline std::string format_pd(const LinkDiagram& d) {
  if (!d.kinks().empty()) throw StructuralError("PD output does not support kink nodes");
  std::ostringstream out;
  out << "PD[";
  bool first = true;
  for (const auto& c : d.crossings()) {
    out << (first ? "" : ", ") << "X[" << c.under_in << ',';
    if (c.sign > 0)
      out << c.over_out << ',' << c.under_out << ',' << c.over_in;
    else
      out << c.over_in << ',' << c.under_out << ',' << c.over_out;
    out << ']';
    first = false;
  }
  out << "]\n";
  return out.str();
}

/// Signed Gauss code, one component per line, tokens O<id><sign> and
/// U<id><sign>. Semi-arcs are numbered along each component in turn; the
/// semi-arc leaving the j-th passage of a component is the next id, the last
/// one closing back to the first passage. Virtual crossings are not listed.
inline LinkDiagram parse_gauss(const std::string& text, const std::string& source = "<gauss>",
                               bool is_virtual = true) {
  static const std::regex token_re(R"(([OU])(\d+)([+-]))");
  struct Pass {
    bool over;
    int id;
    int sign;
  };
  std::vector<std::vector<Pass>> comps;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = io::trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    std::vector<Pass> passes;
    std::string leftover = line;
    for (auto it = std::sregex_iterator(line.begin(), line.end(), token_re); it != std::sregex_iterator(); ++it)
      passes.push_back({(*it)[1] == "O", std::stoi((*it)[2]), (*it)[3] == "+" ? 1 : -1});
    leftover = std::regex_replace(line, token_re, "");
    leftover = std::regex_replace(leftover, std::regex(R"([\s,]+)"), "");
    if (leftover == "-" || leftover == "0") leftover.clear();  // "-" or "0" marks a crossing-free component
    if (!leftover.empty())
      throw StructuralError(io::where(source, number) + "unrecognised Gauss tokens '" + leftover + "'");
    comps.push_back(passes);
  }
  if (comps.empty()) throw StructuralError(source + ": empty Gauss code");

  struct Seen {
    int under_in = 0, under_out = 0, over_in = 0, over_out = 0, sign = 0;
    bool has_over = false, has_under = false;
  };
  std::map<int, Seen> seen;
  std::vector<std::vector<int>> components;
  int offset = 0;
  for (const auto& passes : comps) {
    const int m = static_cast<int>(passes.size());
    if (m == 0) {
      components.push_back({++offset});
      continue;
    }
    std::vector<int> cycle;
    for (int p = 0; p < m; ++p) {
      const int in_arc = offset + (p == 0 ? m : p);
      const int out_arc = offset + p + 1;
      cycle.push_back(out_arc);
      auto& s = seen[passes[p].id];
      if (s.sign != 0 && s.sign != passes[p].sign)
        throw StructuralError(source + ": crossing " + std::to_string(passes[p].id) + " has inconsistent signs");
      s.sign = passes[p].sign;
      bool& slot = passes[p].over ? s.has_over : s.has_under;
      if (slot)
        throw StructuralError(source + ": crossing " + std::to_string(passes[p].id) + " is passed " +
                              (passes[p].over ? "over" : "under") + " twice");
      slot = true;
      if (passes[p].over) {
        s.over_in = in_arc;
        s.over_out = out_arc;
      } else {
        s.under_in = in_arc;
        s.under_out = out_arc;
      }
    }
    offset += m;
    components.push_back(cycle);
  }
  std::vector<Crossing> crossings;
  for (const auto& [id, s] : seen) {
    if (!s.has_over || !s.has_under)
      throw StructuralError(source + ": crossing " + std::to_string(id) + " lacks its " +
                            (s.has_over ? "under" : "over") + " passage");
    crossings.push_back({s.sign, s.under_in, s.over_in, s.under_out, s.over_out});
  }
  try {
    return LinkDiagram(offset, crossings, {}, components, is_virtual);
  } catch (const StructuralError& e) {
    throw StructuralError(source + ": " + e.what());
  }
}

inline LinkDiagram parse_diagram(const std::string& text, DiagramFormat format,
                                 const std::string& source = "<diagram>") {
  switch (format) {
    case DiagramFormat::Native: return parse_native(text, source);
    case DiagramFormat::PD: return parse_pd(text, source);
    case DiagramFormat::Gauss: return parse_gauss(text, source);
  }
  throw StructuralError("unknown diagram format");
}

/// Format from the file extension: .pd, .gauss, anything else native.
inline DiagramFormat format_from_path(const std::string& path) {
  auto ends = [&](const std::string& suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends(".pd")) return DiagramFormat::PD;
  if (ends(".gauss")) return DiagramFormat::Gauss;
  return DiagramFormat::Native;
}

inline LinkDiagram read_diagram(const std::string& path) {
  return parse_diagram(io::read_file(path), format_from_path(path), path);
}

}  // namespace rackbeads
