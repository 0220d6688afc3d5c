#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rackbeads/rackbeads.hpp"

using namespace rackbeads;
using json = nlohmann::json;

namespace {

constexpr int kInvalidInput = 1;
constexpr int kVerificationFailed = 2;
constexpr int kBadCommand = 3;

struct Inputs {
  std::string rack, cocycle, module, phi;
};

/// Evaluates one invariant kind on diagrams, holding the parsed algebraic data.
class Evaluator {
 public:
  Evaluator(std::string kind, const Inputs& in) : kind_(std::move(kind)) {
    if (in.rack.empty()) throw CLI::ValidationError("--rack", "is required");
    rack_ = read_rack(in.rack);
    require_rack(rack_);
    auto need = [&](const std::string& value, const char* flag) {
      if (value.empty()) throw CLI::ValidationError(flag, "is required for '" + kind_ + "'");
    };
    if (kind_ == "dynamical") {
      need(in.cocycle, "--cocycle");
      cocycle_ = read_cocycle(in.cocycle);
      require_cocycle(rack_, *cocycle_, true);
    } else if (kind_ == "module") {
      need(in.module, "--module");
      module_ = read_module(in.module);
      require_xmodule(rack_, *module_);
    } else if (kind_ == "cocycle2") {
      need(in.phi, "--phi");
      phi_ = read_2cocycle(in.phi);
      require_2cocycle(rack_, *phi_);
    } else if (kind_ != "counting" && kind_ != "image" && kind_ != "writhe") {
      throw CLI::ValidationError("kind", "unknown invariant '" + kind_ + "'");
    }
  }

  const std::string& kind() const { return kind_; }

  /// Canonical value string and structured term list.
  std::pair<std::string, json> evaluate(const LinkDiagram& d) const {
    auto poly = [](const InvariantPolynomial& p) {
      json terms = json::array();
      for (const auto& [e, c] : p.terms()) terms.push_back({e, c});
      return std::make_pair(p.to_string(), terms);
    };
    if (kind_ == "counting") {
      const auto n = counting_invariant(d, rack_);
      return {std::to_string(n), json::array({json::array({0, n})})};
    }
    if (kind_ == "image") return poly(image_invariant(d, rack_));
    if (kind_ == "writhe") {
      const auto p = writhe_invariant(d, rack_);
      json terms = json::array();
      for (const auto& [w, c] : p.terms()) terms.push_back({w, c});
      return {p.to_string(), terms};
    }
    if (kind_ == "cocycle2") return poly(cocycle_invariant(d, rack_, *phi_));
    if (kind_ == "module") return poly(module_invariant(d, rack_, *module_));
    return poly(dynamical_invariant(d, rack_, *cocycle_));
  }

  /// Lists every X-labeling per framing class and, for module and dynamical
  /// kinds, every bead labeling over it.
  void print_solutions(const LinkDiagram& d, std::ostream& out) const {
    auto join = [](const std::vector<int>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s;
    };
    std::optional<DynamicalCocycle> beads = cocycle_;
    if (module_) beads = cocycle_from_module(rack_, *module_);
    for (const auto& cls : labelings_by_framing(d, rack_)) {
      for (const auto& f : cls.labelings) {
        out << "labeling\tw=" << join(cls.framing) << "\t" << join(f) << '\n';
        if (!beads) continue;
        for (const auto& b : bead_system(cls.diagram, f, *beads).solutions()) out << "beads\t" << join(b) << '\n';
      }
    }
  }

 private:
  std::string kind_;
  RackTable rack_;
  std::optional<DynamicalCocycle> cocycle_;
  std::optional<XModuleStructure> module_;
  std::optional<TwoCocycle> phi_;
};

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RACKBEADS_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw StructuralError(std::string("RACKBEADS_WORKERS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string id;
  while (std::getline(in, id, ',')) {
    id = io::trim(id);
    if (!id.empty()) out.push_back(id);
  }
  return out;
}

std::vector<CorpusEntry> select(const std::vector<CorpusEntry>& corpus, const std::string& filter, int max_crossings,
                                const std::string& ids) {
  if (!filter.empty() && filter != "classical" && filter != "virtual")
    throw CLI::ValidationError("--filter", "must be classical or virtual");
  std::vector<CorpusEntry> out;
  const auto wanted = split_ids(ids);
  for (const auto& id : wanted) find_entry(corpus, id);
  for (const auto& e : corpus) {
    if (filter == "classical" && e.is_virtual) continue;
    if (filter == "virtual" && !e.is_virtual) continue;
    if (max_crossings >= 0 && e.crossings > max_crossings) continue;
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), e.id) == wanted.end()) continue;
    out.push_back(e);
  }
  return out;
}

/// Emits a record per line; either "id\tvalue" or one JSON object.
std::string record(const std::string& id, const std::string& kind, const std::pair<std::string, json>& value,
                   bool as_json) {
  if (!as_json) return id + "\t" + value.first + "\n";
  json j{{"link", id}, {"invariant", kind}, {"value", value.first}, {"terms", value.second}};
  return j.dump() + "\n";
}

int print_report(const std::string& title, const VerificationReport& r) {
  std::cout << title << ": " << (r.valid() ? "valid" : "INVALID") << '\n';
  if (!r.valid()) std::cout << r.to_string(50);
  return r.valid() ? 0 : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rack counting invariants and their enhancements for knots and links"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Check the axioms of a rack, cocycle, module or 2-cocycle");
  std::string verify_what;
  std::vector<std::string> verify_files;
  verify->add_option("what", verify_what, "rack | cocycle | module | 2cocycle")
      ->required()
      ->check(CLI::IsMember({"rack", "cocycle", "module", "2cocycle"}));
  verify->add_option("files", verify_files, "rack file, then the cocycle/module/2-cocycle file")->required();

  // invariant
  auto* invariant = app.add_subcommand("invariant", "Evaluate an invariant on one link");
  std::string kind;
  Inputs inputs;
  std::string link_id, diagram_file, corpus_dir = "corpus/links";
  bool as_json = false;
  invariant->add_option("kind", kind, "counting | image | writhe | cocycle2 | module | dynamical")->required();
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--rack", inputs.rack, "rack file")->required();
    sub->add_option("--cocycle", inputs.cocycle, "dynamical cocycle file");
    sub->add_option("--module", inputs.module, "X-module file");
    sub->add_option("--phi", inputs.phi, "2-cocycle file");
    sub->add_option("--corpus", corpus_dir, "corpus directory containing index.tsv");
    sub->add_flag("--json", as_json, "emit JSON lines records");
  };
  add_inputs(invariant);
  auto* link_opt = invariant->add_option("--link", link_id, "corpus link id");
  auto* diagram_opt = invariant->add_option("--diagram", diagram_file, "diagram file (.pd, .gauss or native)");
  bool show_solutions = false;
  invariant->add_flag("--solutions", show_solutions, "also list labelings and bead labelings; bead m stands for residue 0");
  link_opt->excludes(diagram_opt);

  // batch
  auto* batch = app.add_subcommand("batch", "Evaluate an invariant over a corpus");
  std::string batch_kind, filter, ids;
  int max_crossings = -1, workers = 0;
  add_inputs(batch);
  batch->add_option("--kind", batch_kind, "invariant kind (default: dynamical with --cocycle, else counting)");
  batch->add_option("--filter", filter, "classical | virtual");
  batch->add_option("--max-crossings", max_crossings, "skip links with more crossings");
  batch->add_option("--ids", ids, "comma-separated link ids");
  batch->add_option("--workers", workers, "worker threads (default: RACKBEADS_WORKERS or all cores)");

  // search
  auto* search = app.add_subcommand("search", "Seeded search for dynamical cocycles or X-modules");
  std::string search_what, out_dir;
  int beads = 0, modulus = 0;
  std::uint64_t seed = 0, count = 1000;
  bool exhaustive = false, allow_unreduced = false, report = false;
  search->add_option("what", search_what, "cocycles | modules")->required()->check(CLI::IsMember({"cocycles", "modules"}));
  search->add_option("--rack", inputs.rack, "rack file")->required();
  search->add_option("--beads", beads, "bead count k (cocycles)");
  search->add_option("--modulus", modulus, "modulus m (modules)");
  search->add_option("--seed", seed, "generator seed");
  search->add_option("--count", count, "candidates drawn (random) or results wanted (exhaustive)");
  search->add_flag("--exhaustive", exhaustive, "enumerate in lexicographic order");
  search->add_flag("--allow-unreduced", allow_unreduced, "keep cocycles that are not N-reduced");
  search->add_option("--out", out_dir, "directory for result files");
  search->add_flag("--report", report, "print a distinguishing report over --corpus/--ids");
  search->add_option("--corpus", corpus_dir, "corpus directory for --report");
  search->add_option("--ids", ids, "comma-separated link ids for --report");

  // convert
  auto* convert = app.add_subcommand("convert", "Convert a PD or Gauss code to another format");
  std::string from = "pd", to = "native", input, output;
  bool classical = false;
  convert->add_option("--from", from, "pd | gauss | native")->check(CLI::IsMember({"pd", "gauss", "native"}));
  convert->add_option("--to", to, "native | pd")->check(CLI::IsMember({"native", "pd"}));
  convert->add_option("input", input, "input file")->required();
  convert->add_option("-o,--output", output, "output file (default stdout)");
  convert->add_flag("--classical", classical, "mark a Gauss-code diagram as classical");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Parse and check every corpus entry");
  selftest->add_option("--corpus", corpus_dir, "corpus directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadCommand;
  }

  try {
    if (*verify) {
      auto need = [&](std::size_t n) {
        if (verify_files.size() != n)
          throw CLI::ValidationError("files", "verify " + verify_what + " takes " + std::to_string(n) + " file(s)");
      };
      if (verify_what == "rack") {
        need(1);
        auto r = read_rack(verify_files[0]);
        const int code = print_report("rack", verify_rack(r));
        if (code == 0) {
          const auto pi = kink_map(r);
          std::cout << "size " << r.size() << ", kink map " << pi.cycle_string() << ", rank " << pi.order
                    << (is_quandle(r) ? ", quandle" : "") << '\n';
        }
        return code;
      }
      need(2);
      auto r = read_rack(verify_files[0]);
      require_rack(r);
      if (verify_what == "cocycle") {
        auto a = read_cocycle(verify_files[1]);
        check_shape(r, a);
        const int c1 = print_report("cocycle", verify_cocycle(r, a));
        const int c2 = print_report("n-reduced", verify_n_reduced(r, a));
        return std::max(c1, c2);
      }
      if (verify_what == "module") return print_report("module", verify_xmodule(r, read_module(verify_files[1])));
      return print_report("2-cocycle", verify_2cocycle_reduced(r, read_2cocycle(verify_files[1])));
    }

    if (*invariant) {
      if (link_id.empty() && diagram_file.empty())
        throw CLI::ValidationError("--link/--diagram", "one of them is required");
      Evaluator eval(kind, inputs);
      LinkDiagram d;
      std::string id = link_id;
      if (!link_id.empty()) {
        d = find_entry(load_corpus(corpus_dir), link_id).diagram;
      } else {
        d = read_diagram(diagram_file);
        id = std::filesystem::path(diagram_file).stem().string();
      }
      const auto value = eval.evaluate(d);
      std::cout << (as_json ? record(id, kind, value, true) : value.first + "\n");
      if (show_solutions) eval.print_solutions(d, std::cout);
      return 0;
    }

    if (*batch) {
      if (batch_kind.empty()) batch_kind = inputs.cocycle.empty() ? "counting" : "dynamical";
      Evaluator eval(batch_kind, inputs);
      const auto entries = select(load_corpus(corpus_dir), filter, max_crossings, ids);
      std::vector<std::string> lines(entries.size());
      std::atomic<std::size_t> next{0};
      std::vector<std::string> errors(entries.size());
      auto work = [&] {
        for (std::size_t i; (i = next++) < entries.size();) {
          try {
            lines[i] = record(entries[i].id, batch_kind, eval.evaluate(entries[i].diagram), as_json);
          } catch (const std::exception& e) {
            errors[i] = entries[i].id + ": " + e.what();
          }
        }
      };
      const int n = std::min<int>(worker_count(workers), std::max<std::size_t>(1, entries.size()));
      std::vector<std::thread> pool;
      for (int t = 1; t < n; ++t) pool.emplace_back(work);
      work();
      for (auto& t : pool) t.join();
      for (const auto& e : errors)
        if (!e.empty()) throw StructuralError(e);
      for (const auto& l : lines) std::cout << l;
      return 0;
    }

    if (*search) {
      SearchConfig cfg;
      cfg.rack = read_rack(inputs.rack);
      cfg.seed = seed;
      cfg.mode = exhaustive ? SearchMode::Exhaustive : SearchMode::Random;
      cfg.max_candidates = count;
      cfg.require_n_reduced = !allow_unreduced;
      const bool cocycles = search_what == "cocycles";
      cfg.beads = cocycles ? beads : modulus;
      if (cfg.beads < 1)
        throw CLI::ValidationError(cocycles ? "--beads" : "--modulus", "must be a positive integer");
      if (report && (allow_unreduced || !cocycles))
        throw CLI::ValidationError("--report", "needs N-reduced cocycle search");
      if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
      std::cout << "# generator " << kGeneratorName << " seed " << seed << " mode "
                << (exhaustive ? "exhaustive" : "random") << " count " << count << '\n';
      auto emit = [&](std::uint64_t candidate, const std::string& ext, const std::string& text) {
        std::string name = "seed" + std::to_string(seed) + "-" + std::to_string(candidate) + ext;
        if (!out_dir.empty()) io::write_file((std::filesystem::path(out_dir) / name).string(), text);
        std::cout << candidate << '\t' << name << '\n';
      };
      if (cocycles) {
        const auto found = search_cocycles(cfg);
        std::vector<DynamicalCocycle> list;
        for (const auto& f : found) {
          emit(f.candidate, ".coc", format_cocycle(f.value));
          list.push_back(f.value);
        }
        std::cout << "# found " << found.size() << '\n';
        if (report) {
          std::vector<NamedDiagram> links;
          for (const auto& e : select(load_corpus(corpus_dir), "", -1, ids)) links.push_back({e.id, e.diagram});
          auto rows = distinguishing_report(list, links, cfg.rack);
          // name cocycles by candidate number, as in the file names
          for (auto& row : rows) row.cocycle = found[row.cocycle].candidate;
          std::cout << format_distinguishing_report(rows);
        }
      } else {
        const auto found = search_modules(cfg);
        for (const auto& f : found) emit(f.candidate, ".mod", format_module(f.value));
        std::cout << "# found " << found.size() << '\n';
      }
      return 0;
    }

    if (*convert) {
      const auto text = io::read_file(input);
      LinkDiagram d = from == "gauss" ? parse_gauss(text, input, !classical)
                                      : parse_diagram(text, parse_format_name(from), input);
      const auto out = to == "pd" ? format_pd(d) : format_native(d);
      if (output.empty())
        std::cout << out;
      else
        io::write_file(output, out);
      return 0;
    }

    if (*selftest) {
      const auto corpus = load_corpus(corpus_dir);
      int failures = 0;
      for (const auto& e : corpus) {
        std::vector<std::string> problems;
        if (parse_native(format_native(e.diagram)) != e.diagram) problems.push_back("native round trip differs");
        for (int n = 1; n <= 3; ++n)
          for (const auto& w : framing_classes(e.diagram.component_count(), n)) {
            const auto sw = self_writhe(with_framing(e.diagram, w, n));
            for (std::size_t i = 0; i < w.size(); ++i)
              if (((sw[i] - w[i]) % n + n) % n != 0) problems.push_back("framing not realised");
          }
        if (e.is_virtual != e.diagram.is_virtual()) problems.push_back("virtual flag disagrees with index");
        for (const auto& p : problems) std::cout << e.id << ": " << p << '\n';
        failures += !problems.empty();
      }
      std::cout << corpus.size() << " entries, " << failures << " with problems\n";
      return failures ? kVerificationFailed : 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadCommand;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kBadCommand;
}
