#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "diagram_codes.hpp"
#include "report.hpp"
#include "text_io.hpp"

namespace rackbeads {

struct CorpusEntry {
  std::string id;
  DiagramFormat format = DiagramFormat::Native;
  std::string file;  // relative to the corpus directory
  int crossings = 0;
  int components = 1;
  bool is_virtual = false;
  LinkDiagram diagram;
};

/// Orders strings with embedded numbers numerically: "8_2" < "8_10" < "L2a1".
inline bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      auto na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
      nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

/// Crossing count, then natural id order.
inline bool corpus_order(const CorpusEntry& a, const CorpusEntry& b) {
  if (a.crossings != b.crossings) return a.crossings < b.crossings;
  if (a.id != b.id && !natural_less(a.id, b.id) && !natural_less(b.id, a.id)) return a.id < b.id;
  return natural_less(a.id, b.id);
}

// index.tsv columns: id, format, file, crossings, components, classical|virtual.

/// Loads and parses every entry of `dir`/index.tsv, checking the declared
/// crossing and component counts and the classical/virtual kind against the
/// parsed diagram. Entries come back in corpus order.
inline std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  const auto index_path = (fs::path(dir) / "index.tsv").string();
  std::istringstream in(io::read_file(index_path));
  std::vector<CorpusEntry> out;
  std::set<std::string> ids;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, '\t')) f.push_back(io::trim(cell));
    if (f.size() != 6)
      throw StructuralError(io::where(index_path, number) + "expected 6 tab-separated fields, found " +
                            std::to_string(f.size()));
    CorpusEntry e;
    e.id = f[0];
    if (!ids.insert(e.id).second) throw StructuralError(io::where(index_path, number) + "duplicate id " + e.id);
    e.format = parse_format_name(f[1]);
    e.file = f[2];
    try {
      e.crossings = std::stoi(f[3]);
      e.components = std::stoi(f[4]);
    } catch (const std::exception&) {
      throw StructuralError(io::where(index_path, number) + "crossing and component counts must be integers");
    }
    if (f[5] != "classical" && f[5] != "virtual")
      throw StructuralError(io::where(index_path, number) + "kind must be classical or virtual");
    e.is_virtual = f[5] == "virtual";
    const auto path = (fs::path(dir) / e.file).string();
    e.diagram = parse_diagram(io::read_file(path), e.format, path);
    if (e.format != DiagramFormat::Native) {
      // PD and Gauss codes carry no flag of their own; the index decides
      const auto& d = e.diagram;
      e.diagram = LinkDiagram(d.semi_arc_count(), d.crossings(), d.kinks(), d.components(), e.is_virtual);
    } else if (e.diagram.is_virtual() != e.is_virtual) {
      throw StructuralError(io::where(index_path, number) + e.id + " is listed as " + f[5] +
                            " but its native file says otherwise");
    }
    if (e.diagram.crossing_count() != e.crossings)
      throw StructuralError(io::where(index_path, number) + e.id + " declares " + std::to_string(e.crossings) +
                            " crossings but its diagram has " + std::to_string(e.diagram.crossing_count()));
    if (e.diagram.component_count() != e.components)
      throw StructuralError(io::where(index_path, number) + e.id + " declares " + std::to_string(e.components) +
                            " components but its diagram has " + std::to_string(e.diagram.component_count()));
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(), corpus_order);
  return out;
}

inline const CorpusEntry& find_entry(const std::vector<CorpusEntry>& corpus, const std::string& id) {
  for (const auto& e : corpus)
    if (e.id == id) return e;
  throw StructuralError("link '" + id + "' is not in the corpus");
}

}  // namespace rackbeads
