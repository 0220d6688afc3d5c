#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "report.hpp"

namespace rackbeads::io {

/// A non-blank, non-comment line split into integers.
struct IntLine {
  int number = 0;  // 1-based line number in the source
  std::vector<long long> values;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw StructuralError(path + ": cannot write file");
  out << contents;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Lines with '#' comments and blank lines removed, each parsed as integers.
/// `source` names the file in error messages.
inline std::vector<IntLine> int_lines(const std::string& text, const std::string& source) {
  std::vector<IntLine> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    IntLine parsed{number, {}};
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        parsed.values.push_back(v);
      } catch (const std::exception&) {
        throw StructuralError(source + ":" + std::to_string(number) + ": expected integer, got '" +
                              token + "'");
      }
    }
    out.push_back(std::move(parsed));
  }
  return out;
}

inline std::string where(const std::string& source, int line) {
  return source + ":" + std::to_string(line) + ": ";
}

}  // namespace rackbeads::io
