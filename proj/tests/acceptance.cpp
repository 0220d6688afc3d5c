// One line per acceptance criterion. A criterion that cannot be met with the
// data available is reported as FAIL and marked known, with the reason; any
// other failure makes the exit status nonzero.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <thread>

#include "oracles.hpp"
#include "rackbeads/rackbeads.hpp"

using namespace rackbeads;
namespace fs = std::filesystem;

namespace {

const std::string root = RACKBEADS_SOURCE_DIR "/";

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  std::string known;  // reason when the failure is expected and explained

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::string value_of(const std::vector<CorpusEntry>& corpus, const std::string& id, const RackTable& r,
                     const DynamicalCocycle& a) {
  return dynamical_invariant(find_entry(corpus, id).diagram, r, a).to_string();
}

std::string run_cli(const std::string& args) {
  const std::string cmd = "cd " + root + " && " RACKBEADS_CLI " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int st = pclose(p);
  if (!WIFEXITED(st) || WEXITSTATUS(st) != 0) out += "<exit " + std::to_string(WEXITSTATUS(st)) + ">";
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> expand(const std::string& prefix, int from, int to) {
  std::vector<std::string> out;
  for (int i = from; i <= to; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto r = ts_rack(4, 1, 2);
  const std::vector<std::vector<int>> printed{{3, 1, 3, 1}, {4, 2, 4, 2}, {1, 3, 1, 3}, {2, 4, 2, 4}};
  o.check(r.rows() == printed, "ts_rack(4,1,2) differs from the printed matrix");
  const auto pi = kink_map(r);
  o.check(pi.order == 2, "rank " + std::to_string(pi.order) + " != 2");
  o.check(pi.cycle_string() == "(13)(24)", "kink map is " + pi.cycle_string() + ", expected (13)(24)");
  if (!o.pass && r.rows() == printed && pi.order == 2)
    o.known = "the printed matrix has diagonal 3,2,1,4, so pi(2)=2 and pi=(13); the stated (13)(24) "
              "contradicts the matrix and x|>x = 3x mod 4";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto corpus = load_corpus(root + "corpus/links");
  const auto r = read_rack(root + "corpus/racks/ex26.rack");
  o.check(r.rows() == std::vector<std::vector<int>>{{2, 2}, {1, 1}}, "ex26.rack is not [[2,2],[1,1]]");
  for (const auto& [id, want] : std::vector<std::pair<std::string, std::uint64_t>>{{"L2a1", 4}, {"L4a1", 4}, {"unknot", 2}}) {
    const auto got = counting_invariant(find_entry(corpus, id).diagram, r);
    o.check(got == want, id + " = " + std::to_string(got));
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto corpus = load_corpus(root + "corpus/links");
  const auto r = read_rack(root + "corpus/racks/ex26.rack");
  for (const auto& [id, want] : std::vector<std::pair<std::string, std::string>>{{"L4a1", "4"}, {"L2a1", "4q1q2"}}) {
    const auto got = writhe_invariant(find_entry(corpus, id).diagram, r).to_string();
    o.check(got == want, id + " = " + got);
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto r = read_rack(root + "corpus/racks/ex26.rack");
  const auto mod = read_module(root + "corpus/modules/ex217.mod");
  const auto d = read_diagram(root + "corpus/diagrams/hopf_kinked.link");
  std::vector<std::vector<long long>> want{{2, 2, 0, 0}, {0, 1, 2, 1}, {1, 2, 1, 0}, {0, 0, 2, 2}};
  std::sort(want.begin(), want.end());
  bool matched = false;
  for (const auto& f : enumerate_labelings(d, r)) {
    const auto m = presentation_matrix(d, f, mod);
    auto rows = m.to_rows();
    std::sort(rows.begin(), rows.end());
    if (rows != want) continue;
    matched = true;
    o.check(count_kernel(m) == 3, "kernel count " + std::to_string(count_kernel(m)));
    o.check(oracle::kernel_size(m.to_rows(), m.cols(), 3) == 3, "enumerated kernel differs");
  }
  o.check(matched, "no labeling gives the printed presentation matrix");
  const auto corpus = load_corpus(root + "corpus/links");
  const auto got = module_invariant(find_entry(corpus, "L2a1").diagram, r, mod).to_string();
  o.check(got == "4u^3", "L2a1 = " + got);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto corpus = load_corpus(root + "corpus/links");
  const auto r = read_rack(root + "corpus/racks/ex41.rack");
  const auto a = read_cocycle(root + "corpus/cocycles/ex41.coc");
  for (const auto& [id, want] :
       std::vector<std::pair<std::string, std::string>>{{"unknot", "2u^3"}, {"v3.7", "2u^9"}, {"v4.85", "2u^3"}}) {
    const auto got = value_of(corpus, id, r, a);
    o.check(got == want, id + " = " + got);
  }
  int labelings = 0;
  for (const auto& cls : labelings_by_framing(find_entry(corpus, "v3.7").diagram, r))
    for (const auto& f : cls.labelings) {
      ++labelings;
      const auto n = bead_count(cls.diagram, f, a);
      o.check(n == 9, "3.7 labeling with " + std::to_string(n) + " bead labelings");
    }
  o.check(labelings == 2, "3.7 has " + std::to_string(labelings) + " X-labelings");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto corpus = load_corpus(root + "corpus/links");
  const auto r = read_rack(root + "corpus/racks/dihedral3.rack");
  const auto a = read_cocycle(root + "corpus/cocycles/sec4.coc");
  std::map<std::string, std::vector<std::string>> table;
  auto& t3 = table["3u^3"];
  t3 = {"unknot", "4_1", "5_1", "5_2", "6_2", "6_3", "7_1", "7_2", "7_3", "7_5", "7_6"};
  for (auto s : expand("8_", 1, 4)) t3.push_back(s);
  for (auto s : expand("8_", 6, 9)) t3.push_back(s);
  for (auto s : expand("8_", 12, 14)) t3.push_back(s);
  for (auto s : {"8_16", "8_17", "L2a1", "L4a1", "L5a1", "L6a2", "L6a4", "L6n1"}) t3.push_back(s);
  for (auto s : expand("L7a", 2, 4)) t3.push_back(s);
  for (auto s : {"L7a6", "L7a7", "L7n1", "L7n2"}) t3.push_back(s);
  table["6+3u^9"] = {"3_1", "7_4", "7_7", "8_5", "8_15", "8_19", "8_21", "L6a1", "L6a3", "L6a5", "L7a1"};
  table["9u^9"] = {"6_1", "8_10", "8_11", "8_20", "L7a5"};
  table["24+3u^27"] = {"8_18"};
  std::size_t listed = 0;
  for (const auto& [want, ids] : table)
    for (const auto& id : ids) {
      ++listed;
      const auto got = value_of(corpus, id, r, a);
      o.check(got == want, id + " = " + got + ", expected " + want);
    }
  std::size_t classical = 0;
  for (const auto& e : corpus) classical += !e.is_virtual;
  o.check(listed == classical, std::to_string(listed) + " listed vs " + std::to_string(classical) +
                                   " classical corpus entries");
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto corpus = load_corpus(root + "corpus/links");
  const auto r = read_rack(root + "corpus/racks/dihedral3.rack");
  const auto a = read_cocycle(root + "corpus/cocycles/sec4.coc");
  std::map<std::string, std::string> listed;
  for (auto id : {"v3.6", "v3.7", "v4.61", "v4.98"}) listed[id] = "6+3u^9";
  for (auto id : expand("v4.", 63, 68)) listed[id] = "6+3u^9";
  listed["v4.99"] = "9u^9";
  std::vector<std::string> missing;
  bool wrong = false;
  for (const auto& [id, want] : listed) {
    if (std::none_of(corpus.begin(), corpus.end(), [&](const CorpusEntry& e) { return e.id == id; })) {
      missing.push_back(id);
      continue;
    }
    const auto got = value_of(corpus, id, r, a);
    if (got != want) wrong = true;
    o.check(got == want, id + " = " + got + ", expected " + want);
  }
  for (const auto& e : corpus) {
    if (!e.is_virtual || e.crossings > 4 || listed.count(e.id)) continue;
    const auto got = dynamical_invariant(e.diagram, r, a).to_string();
    if (got != "3u^3") wrong = true;
    o.check(got == "3u^3", e.id + " = " + got + ", expected 3u^3");
  }
  if (!missing.empty()) {
    std::string ids;
    for (const auto& id : missing) ids += (ids.empty() ? "" : ",") + id;
    o.check(false, "not in the corpus: " + ids);
    if (!wrong)
      o.known = "no Gauss codes for " + ids +
                " were reachable offline; every virtual knot that is present matches";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto corpus = load_corpus(root + "corpus/links");
  const auto r = read_rack(root + "corpus/racks/ex26.rack");
  const auto mod = read_module(root + "corpus/modules/ex217.mod");
  const auto alpha = cocycle_from_module(r, mod);
  int n = 0;
  for (const auto& e : corpus) {
    if (e.crossings > 8) continue;
    ++n;
    const auto lin = module_invariant(e.diagram, r, mod).to_string();
    const auto comb = dynamical_invariant(e.diagram, r, alpha).to_string();
    o.check(lin == comb, e.id + ": module " + lin + " vs beads " + comb);
  }
  o.check(n == static_cast<int>(corpus.size()), "some corpus entries exceed 8 crossings");
  return o;
}

// (a) bundled cocycles accepted, 100 axiom-breaking mutations of each rejected
void property_mutations(Outcome& o) {
  const std::vector<std::pair<std::string, std::string>> pairs{{"ex41.rack", "ex41.coc"}, {"dihedral3.rack", "sec4.coc"}};
  for (const auto& [rf, cf] : pairs) {
    const auto r = read_rack(root + "corpus/racks/" + rf);
    const auto a = read_cocycle(root + "corpus/cocycles/" + cf);
    o.check(verify_cocycle(r, a).valid() && verify_n_reduced(r, a).valid(), cf + " rejected");
    std::mt19937_64 g(20240917);
    const auto base = a.block_matrix();
    const int dim = static_cast<int>(base.size()), k = a.beads();
    int rejected = 0, tries = 0;
    while (rejected < 100 && ++tries < 10000) {
      auto m = base;
      const int i = static_cast<int>(detail::uniform_below(g, dim)), j = static_cast<int>(detail::uniform_below(g, dim));
      m[i][j] = (m[i][j] + static_cast<int>(detail::uniform_below(g, k - 1))) % k + 1;
      const DynamicalCocycle mut(r.size(), k, m);
      const bool oracle_ok = oracle::is_cocycle(r.rows(), k, m) && oracle::is_n_reduced(r.rows(), k, m);
      const bool lib_ok = verify_cocycle(r, mut).valid() && verify_n_reduced(r, mut).valid();
      if (oracle_ok != lib_ok) o.check(false, cf + " mutation disagrees with the oracle");
      rejected += !oracle_ok;
    }
    o.check(rejected == 100, cf + ": only " + std::to_string(rejected) + " breaking mutations");
  }
}

// (b) extension racks of every verified cocycle
void property_extensions(Outcome& o) {
  const auto ex26 = read_rack(root + "corpus/racks/ex26.rack");
  std::vector<std::pair<RackTable, DynamicalCocycle>> all{
      {read_rack(root + "corpus/racks/ex41.rack"), read_cocycle(root + "corpus/cocycles/ex41.coc")},
      {read_rack(root + "corpus/racks/dihedral3.rack"), read_cocycle(root + "corpus/cocycles/sec4.coc")},
      {ex26, cocycle_from_module(ex26, read_module(root + "corpus/modules/ex217.mod"))}};
  for (int k : {2, 3}) {
    SearchConfig cfg;
    cfg.rack = ex26;
    cfg.beads = k;
    cfg.mode = SearchMode::Exhaustive;
    cfg.max_candidates = 1u << 20;
    cfg.require_n_reduced = false;
    for (const auto& f : search_cocycles(cfg)) all.emplace_back(ex26, f.value);
  }
  for (const auto& [r, a] : all) {
    const auto ext = extension_rack(r, a);
    o.check(verify_rack(ext).valid() && oracle::is_rack(ext.rows()), "an extension rack fails the axioms");
  }
}

// (c) every enhancement sums to the counting invariant
void property_sums(Outcome& o) {
  const auto corpus = load_corpus(root + "corpus/links");
  const auto ex26 = read_rack(root + "corpus/racks/ex26.rack");
  const auto d3 = read_rack(root + "corpus/racks/dihedral3.rack");
  const auto alpha = read_cocycle(root + "corpus/cocycles/ex41.coc");
  const auto beta = read_cocycle(root + "corpus/cocycles/sec4.coc");
  const auto mod = read_module(root + "corpus/modules/ex217.mod");
  const TwoCocycle phi({{1, 1}, {-1, -1}});
  for (const auto& e : corpus) {
    const auto& d = e.diagram;
    const auto n = counting_invariant(d, ex26);
    const bool ok = image_invariant(d, ex26).total() == n && writhe_invariant(d, ex26).total() == n &&
                    module_invariant(d, ex26, mod).total() == n && dynamical_invariant(d, ex26, alpha).total() == n &&
                    cocycle_invariant(d, ex26, phi).total() == n &&
                    dynamical_invariant(d, d3, beta).total() == counting_invariant(d, d3) &&
                    image_invariant(d, d3).total() == counting_invariant(d, d3);
    o.check(ok, e.id + ": coefficient sum differs from the count");
  }
}

// (d) solver against brute force wherever the search space is at most 10^6
void property_brute_force(Outcome& o) {
  const auto corpus = load_corpus(root + "corpus/links");
  const auto ex26 = read_rack(root + "corpus/racks/ex26.rack");
  const std::vector<std::pair<RackTable, DynamicalCocycle>> inputs{
      {read_rack(root + "corpus/racks/ex41.rack"), read_cocycle(root + "corpus/cocycles/ex41.coc")},
      {read_rack(root + "corpus/racks/dihedral3.rack"), read_cocycle(root + "corpus/cocycles/sec4.coc")},
      {ex26, cocycle_from_module(ex26, read_module(root + "corpus/modules/ex217.mod"))}};
  auto small = [](int domain, int vars) { return std::pow(static_cast<double>(domain), vars) <= 1e6; };
  int labelings = 0, beads = 0;
  for (const auto& r : {ex26, read_rack(root + "corpus/racks/dihedral3.rack"), ts_rack(4, 1, 2)})
    for (const auto& e : corpus)
      for (const auto& w : framing_classes(e.diagram.component_count(), rack_rank(r))) {
        const auto framed = with_framing(e.diagram, w, rack_rank(r));
        if (!small(r.size(), framed.semi_arc_count())) continue;
        ++labelings;
        o.check(enumerate_labelings(framed, r) == oracle::labelings(framed, r), e.id + ": labelings differ");
      }
  for (const auto& [r, a] : inputs)
    for (const auto& e : corpus)
      for (const auto& cls : labelings_by_framing(e.diagram, r)) {
        if (!small(a.beads(), cls.diagram.semi_arc_count())) continue;
        for (const auto& f : cls.labelings) {
          ++beads;
          o.check(bead_count(cls.diagram, f, a) == oracle::beads(cls.diagram, f, a), e.id + ": bead counts differ");
        }
      }
  o.check(labelings > 0 && beads > 0, "no inputs small enough for brute force");
}

// (e) Reidemeister II variants of three knots
void property_diagram_independence(Outcome& o) {
  const auto corpus = load_corpus(root + "corpus/links");
  const auto ex26 = read_rack(root + "corpus/racks/ex26.rack");
  const auto d3 = read_rack(root + "corpus/racks/dihedral3.rack");
  const auto alpha = read_cocycle(root + "corpus/cocycles/ex41.coc");
  const auto beta = read_cocycle(root + "corpus/cocycles/sec4.coc");
  const auto mod = read_module(root + "corpus/modules/ex217.mod");
  auto values = [&](const LinkDiagram& d) {
    return std::vector<std::string>{std::to_string(counting_invariant(d, ex26)), image_invariant(d, ts_rack(4, 1, 2)).to_string(),
                                    writhe_invariant(d, ex26).to_string(), module_invariant(d, ex26, mod).to_string(),
                                    dynamical_invariant(d, ex26, alpha).to_string(),
                                    dynamical_invariant(d, d3, beta).to_string()};
  };
  for (const char* id : {"3_1", "4_1", "5_2"}) {
    const auto& d = find_entry(corpus, id).diagram;
    const auto base = values(d);
    const int e = d.semi_arc_count();
    for (const auto& v : {reidemeister_two(d, 1, 2, 1), reidemeister_two(d, 2, e, -1),
                          reidemeister_two(reidemeister_two(d, 1, 3, 1), 4, 1, -1)})
      o.check(values(v) == base, std::string(id) + ": a Reidemeister II variant changes a value");
  }
}

// (f) kernel counts over Z_6
void property_kernels(Outcome& o) {
  std::mt19937_64 g(6);
  int agree = 0;
  for (int rep = 0; rep < 100; ++rep) {
    ZmMatrix a(4, 4, 6);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) a.set(r, c, static_cast<long long>(detail::uniform_below(g, 6)));
    agree += count_kernel(a) == oracle::kernel_size(a.to_rows(), 4, 6);
  }
  o.check(agree == 100, std::to_string(100 - agree) + " of 100 kernel counts differ");
}

Outcome criterion9() {
  Outcome o;
  property_mutations(o);
  property_extensions(o);
  property_sums(o);
  property_brute_force(o);
  property_diagram_independence(o);
  property_kernels(o);
  return o;
}

Outcome criterion10() {
  Outcome o;
  const std::string batch = "batch --rack corpus/racks/dihedral3.rack --cocycle corpus/cocycles/sec4.coc";
  const auto one = run_cli(batch + " --workers 1");
  const auto many = run_cli(batch + " --workers " + std::to_string(std::max(4u, std::thread::hardware_concurrency())));
  o.check(one == many, "batch output depends on the worker count");
  o.check(one.find("8_18\t24+3u^27\n") != std::string::npos, "batch output is missing 8_18");
  const auto base = fs::temp_directory_path() / "rackbeads_acceptance";
  fs::remove_all(base);
  const std::string search = "search cocycles --rack corpus/racks/ex26.rack --beads 2 --seed 2024 --count 2000 --out ";
  const auto ra = run_cli(search + (base / "a").string());
  const auto rb = run_cli(search + (base / "b").string());
  o.check(ra == rb, "search listings differ between runs");
  auto names = [](const fs::path& dir) {
    std::set<std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) out.insert(e.path().filename().string());
    return out;
  };
  const auto files = names(base / "a");
  o.check(!files.empty() && files == names(base / "b"), "search wrote different file sets");
  for (const auto& f : files) o.check(slurp(base / "a" / f) == slurp(base / "b" / f), f + " differs");
  fs::remove_all(base);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
      {"rack construction and kink map", criterion1},
      {"counting invariant", criterion2},
      {"writhe enhancement", criterion3},
      {"module enhancement on the Hopf link", criterion4},
      {"dynamical enhancement with the two-element rack", criterion5},
      {"dihedral-3 table for classical knots and links", criterion6},
      {"dihedral-3 values for virtual knots", criterion7},
      {"module vs bead enumeration", criterion8},
      {"property suites", criterion9},
      {"determinism", criterion10},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
    if (!o.pass) {
      std::cout << " --";
      for (std::size_t j = 0; j < o.notes.size() && j < 5; ++j) std::cout << (j ? "; " : " ") << o.notes[j];
      if (o.notes.size() > 5) std::cout << "; ... " << o.notes.size() - 5 << " more";
      if (!o.known.empty())
        std::cout << " [known: " << o.known << "]";
      else
        ++unexpected;
    }
    std::cout << std::endl;
  }
  return unexpected == 0 ? 0 : 1;
}
