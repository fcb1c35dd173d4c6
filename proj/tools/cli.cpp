#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "flagstrata/error.hpp"
#include "flagstrata/pieces.hpp"
#include "flagstrata/verify.hpp"
#include "flagstrata/words.hpp"

namespace flagstrata::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxFailuresShown = 20;

struct JobConfig {
  std::string cartan;
  std::string delta = "id";
  std::string J;
  std::string command;
  std::optional<std::string> w;
  std::string format = "text";
  unsigned parallelism = 1;
};

// Everything a command needs, built and validated before any computation.
struct Job {
  JobConfig cfg;
  CartanDatum cartan;
  std::unique_ptr<GroupTable> group;
  std::unique_ptr<TwistedGroup> twisted;
  ParabolicSubset J;
  std::optional<ElementId> w;
};

Job prepare(const JobConfig& cfg) {
  Job job{cfg, parse_cartan(cfg.cartan), nullptr, nullptr, {}, std::nullopt};
  DiagramAutomorphism delta = parse_automorphism(cfg.delta, job.cartan);
  job.J = parse_subset(cfg.J, job.cartan.rank);
  if (cfg.format == "dot" && cfg.command != "poset") {
    throw PreconditionError("--format dot is only available for poset");
  }
  if ((cfg.command == "sequence" || cfg.command == "closure") && !cfg.w) {
    throw PreconditionError(cfg.command + " requires --w");
  }
  job.group = std::make_unique<GroupTable>(build_root_system(job.cartan));
  job.twisted = std::make_unique<TwistedGroup>(*job.group, std::move(delta));
  if (cfg.w) job.w = parse_element(*job.group, *cfg.w);
  if (cfg.command == "sequence" && !is_min_rep(*job.group, *job.w, job.J, Side::right)) {
    throw PreconditionError("--w " + *cfg.w + " is not in W^J (it has a right descent in J)");
  }
  return job;
}

Json json_subset(ParabolicSubset s) { return Json(one_based(s)); }

Json json_words(const GroupTable& g, const std::vector<ElementId>& ws) {
  Json arr = Json::array();
  for (ElementId w : ws) arr.push_back(format_element(g, w));
  return arr;
}

std::string joined(const GroupTable& g, const std::vector<ElementId>& ws) {
  std::string s;
  for (ElementId w : ws) s += (s.empty() ? "" : ";") + format_element(g, w);
  return s;
}

Json header(const Job& job) {
  Json j;
  j["cartan"] = job.cartan.name();
  j["delta"] = job.twisted->automorphism().name();
  j["J"] = json_subset(job.J);
  return j;
}

std::string text_header(const Job& job) {
  return "# " + job.cartan.name() + " delta=" + job.twisted->automorphism().name() +
         " J=" + format_subset_braced(job.J) + "\n";
}

std::string irreducible_text(const std::optional<bool>& irr) {
  if (!irr) return "n/a: J=I";
  return *irr ? "true" : "false";
}

Json irreducible_json(const std::optional<bool>& irr) { return irr ? Json(*irr) : Json(nullptr); }

int cmd_pieces(const Job& job, std::ostream& out) {
  const GroupTable& g = *job.group;
  const TwistedAction action(*job.twisted, job.J);
  const ClosurePoset poset = closure_poset(action);
  if (job.cfg.format == "json") {
    Json j = header(job);
    j["pieces"] = Json::array();
    for (const PieceRecord& p : poset.nodes) {
      Json rec;
      rec["word"] = format_element(g, p.index_w);
      rec["inverse"] = format_element(g, p.inv_w);
      rec["length"] = g.length(p.index_w);
      rec["stabilizer"] = json_subset(p.stabilizer_set);
      rec["orbit_min"] = json_words(g, p.orbit_min);
      rec["irreducible"] = irreducible_json(p.irreducible);
      j["pieces"].push_back(rec);
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << text_header(job);
  for (const PieceRecord& p : poset.nodes) {
    out << format_element(g, p.index_w) << "  length=" << g.length(p.index_w)
        << "  stabilizer=" << format_subset_braced(p.stabilizer_set) << "  orbit_min=" << joined(g, p.orbit_min)
        << "  irreducible=" << irreducible_text(p.irreducible) << "\n";
  }
  out << poset.nodes.size() << " pieces\n";
  return kOk;
}

void poset_dot(const Job& job, const ClosurePoset& poset, std::ostream& out) {
  const GroupTable& g = *job.group;
  out << "digraph \"" << job.cartan.name() << " " << job.twisted->automorphism().name() << " J="
      << format_subset_braced(job.J) << "\" {\n";
  out << "  rankdir=BT;\n  node [shape=box];\n";
  std::map<int, std::vector<std::size_t>> ranks;
  for (std::size_t k = 0; k < poset.nodes.size(); ++k) {
    const PieceRecord& p = poset.nodes[k];
    out << "  n" << k << " [label=\"" << format_element(g, p.index_w) << "\"];\n";
    ranks[g.length(p.orbit_min.front())].push_back(k);
  }
  for (const auto& [len, ids] : ranks) {
    out << "  { rank=same;";
    for (std::size_t k : ids) out << " n" << k << ";";
    out << " }  // length " << len << "\n";
  }
  for (const auto& [a, b] : poset.hasse) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
}

int cmd_poset(const Job& job, std::ostream& out) {
  const GroupTable& g = *job.group;
  const TwistedAction action(*job.twisted, job.J);
  const ClosurePoset poset = closure_poset(action);
  if (job.cfg.format == "dot") {
    poset_dot(job, poset, out);
    return kOk;
  }
  if (job.cfg.format == "json") {
    Json j = header(job);
    j["nodes"] = Json::array();
    for (std::size_t k = 0; k < poset.nodes.size(); ++k) {
      const PieceRecord& p = poset.nodes[k];
      Json node;
      node["id"] = k;
      node["word"] = format_element(g, p.index_w);
      node["length"] = g.length(p.index_w);
      node["stabilizer"] = json_subset(p.stabilizer_set);
      node["irreducible"] = irreducible_json(p.irreducible);
      node["orbit_min"] = json_words(g, p.orbit_min);
      j["nodes"].push_back(node);
    }
    j["hasse"] = Json::array();
    for (const auto& [a, b] : poset.hasse) j["hasse"].push_back(Json::array({a, b}));
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << text_header(job);
  for (std::size_t k = 0; k < poset.nodes.size(); ++k) {
    out << k << "  " << format_element(g, poset.nodes[k].index_w) << "\n";
  }
  for (const auto& [a, b] : poset.hasse) out << a << " < " << b << "\n";
  return kOk;
}

int cmd_orbits(const Job& job, std::ostream& out) {
  const GroupTable& g = *job.group;
  const TwistedAction action(*job.twisted, job.J);
  const Partition shift = cyclic_shift_classes(action);
  Json j = header(job);
  j["orbits"] = Json::array();
  if (job.cfg.format == "text") out << text_header(job);
  std::size_t index = 0;
  for (const auto& block : action.orbits().blocks) {
    std::vector<std::vector<ElementId>> classes;
    std::vector<char> seen(shift.blocks.size(), 0);
    for (ElementId y : block) {
      const std::size_t b = shift.block_of[y];
      if (!seen[b]) {
        seen[b] = 1;
        classes.push_back(shift.blocks[b]);
      }
    }
    const auto& mins = action.orbit_min(block.front());
    if (job.cfg.format == "json") {
      Json o;
      o["size"] = block.size();
      o["members"] = json_words(g, block);
      o["min"] = json_words(g, mins);
      o["shift_classes"] = Json::array();
      for (const auto& c : classes) o["shift_classes"].push_back(json_words(g, c));
      j["orbits"].push_back(o);
    } else {
      out << "orbit " << index << "  size=" << block.size() << "  min=" << joined(g, mins) << "  members=" << joined(g, block)
          << "  shift_classes=";
      for (std::size_t c = 0; c < classes.size(); ++c) out << (c ? " " : "") << "[" << joined(g, classes[c]) << "]";
      out << "\n";
    }
    ++index;
  }
  if (job.cfg.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << index << " orbits\n";
  }
  return kOk;
}

int cmd_sequence(const Job& job, std::ostream& out) {
  const GroupTable& g = *job.group;
  const TwistedSequence seq = sequence_for(*job.twisted, job.J, *job.w);
  if (job.cfg.format == "json") {
    Json j = header(job);
    j["w"] = format_element(g, *job.w);
    j["steps"] = Json::array();
    for (const SequenceStep& s : seq.steps) j["steps"].push_back({{"J", json_subset(s.J)}, {"w", format_element(g, s.w)}});
    j["stable_J"] = json_subset(seq.stable_J);
    j["stable_w"] = format_element(g, seq.stable_w);
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << text_header(job);
  for (std::size_t n = 0; n < seq.steps.size(); ++n) {
    out << n << "  " << format_subset_braced(seq.steps[n].J) << "  " << format_element(g, seq.steps[n].w) << "\n";
  }
  return kOk;
}

int cmd_closure(const Job& job, std::ostream& out) {
  const GroupTable& g = *job.group;
  const TwistedAction action(*job.twisted, job.J);
  const auto strata = piece_closure(action, *job.w);
  if (job.cfg.format == "json") {
    Json j = header(job);
    j["w"] = format_element(g, *job.w);
    j["strata"] = json_words(g, strata);
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << text_header(job);
  for (ElementId s : strata) out << format_element(g, s) << "\n";
  return kOk;
}

int cmd_verify(const Job& job, std::ostream& out) {
  VerifyOptions options;
  options.parallelism = job.cfg.parallelism;
  const auto reports = run_verification(*job.twisted, options);
  bool all = true;
  for (const auto& r : reports) all = all && r.passed();
  if (job.cfg.format == "json") {
    Json j;
    j["cartan"] = job.cartan.name();
    j["delta"] = job.twisted->automorphism().name();
    j["passed"] = all;
    j["checks"] = Json::array();
    for (const auto& r : reports) {
      Json c;
      c["name"] = r.check_name;
      c["passed"] = r.passed();
      c["instances"] = r.instances_checked;
      c["note"] = r.note;
      c["failures"] = Json::array();
      for (std::size_t k = 0; k < r.failures.size() && k < kMaxFailuresShown; ++k) {
        const auto& f = r.failures[k];
        c["failures"].push_back({{"input", f.input}, {"expected", f.expected}, {"got", f.got}});
      }
      c["failure_count"] = r.failures.size();
      j["checks"].push_back(c);
    }
    out << j.dump(2) << "\n";
    return all ? kOk : kVerifyFailed;
  }
  out << "# " << job.cartan.name() << " delta=" << job.twisted->automorphism().name() << "\n";
  std::size_t passed = 0;
  for (const auto& r : reports) {
    passed += r.passed();
    out << (r.passed() ? "PASS  " : "FAIL  ") << r.check_name << "  (" << r.instances_checked << " instances";
    if (!r.passed()) out << ", " << r.failures.size() << " failures";
    out << ")";
    if (!r.note.empty()) out << "  [" << r.note << "]";
    out << "\n";
    for (std::size_t k = 0; k < r.failures.size() && k < kMaxFailuresShown; ++k) {
      const auto& f = r.failures[k];
      out << "      " << f.input << ": expected " << f.expected << ", got " << f.got << "\n";
    }
  }
  out << passed << "/" << reports.size() << " checks passed\n";
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobConfig cfg;
  CLI::App app{"Combinatorics of stable pieces of partial flag varieties", "flagstrata"};
  app.add_option("--cartan", cfg.cartan, "Cartan type, e.g. A3, B2, D4, G2")->required();
  app.add_option("--delta", cfg.delta, "Diagram automorphism: id, flip, tri, tri2, or a 1-based permutation")
      ->capture_default_str();
  app.add_option("--j", cfg.J, "Subset J as comma-separated 1-based indices (empty for the full flag variety)");
  app.add_option("--w", cfg.w, "Group element as a comma-separated word, or e");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "dot", "text"}))
      ->capture_default_str();
  app.add_option("--parallelism", cfg.parallelism, "Worker count for verify")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("command", cfg.command, "pieces | poset | orbits | sequence | closure | verify")
      ->required()
      ->check(CLI::IsMember({"pieces", "poset", "orbits", "sequence", "closure", "verify"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadConfig;
  }

  try {
    const Job job = prepare(cfg);
    if (cfg.command == "pieces") return cmd_pieces(job, out);
    if (cfg.command == "poset") return cmd_poset(job, out);
    if (cfg.command == "orbits") return cmd_orbits(job, out);
    if (cfg.command == "sequence") return cmd_sequence(job, out);
    if (cfg.command == "closure") return cmd_closure(job, out);
    return cmd_verify(job, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const LimitError& e) {
    err << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kVerifyFailed;
  }
}

}  // namespace flagstrata::cli
