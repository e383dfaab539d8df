// mucalc: prove Believes!/Perceives! problems and run the regression corpus.
//
//   mucalc prove <file> [flags]    verdict for one problem
//   mucalc corpus <dir> [flags]    run every manifest entry, compare verdicts
//
// Exit codes: 0 proved / all verdicts match, 1 not proved / mismatch,
// 2 usage, unreadable input, or parse error.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <semaphore>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mucalc/kernel.hpp"
#include "mucalc/parser.hpp"
#include "mucalc/proof.hpp"
#include "mucalc/prover.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  double timeout_seconds = 10.0;
  int max_modal_depth = 4;
  std::string format = "text";
  bool trace = false;
  bool check_kernel = true;
  bool reflexive_belief_time = false;
};

mucalc::ProverOptions prover_options(const RunConfig& cfg) {
  mucalc::ProverOptions options;
  options.max_depth = cfg.max_modal_depth;
  options.reflexive_belief_time = cfg.reflexive_belief_time;
  options.timeout =
      std::chrono::milliseconds(static_cast<long long>(cfg.timeout_seconds * 1000.0));
  return options;
}

// ---------------------------------------------------------------------------
// Trace rendering: one line per rule application, in the order the kernel
// replays them (premise subproofs first, then the node's own rule; inside a
// first-order node, sources first, then each refutation step).

void append_trace(const mucalc::ProofPtr& node, int depth, std::vector<std::string>& out) {
  using Kind = mucalc::ProofNode::Kind;
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (node->kind) {
    case Kind::Assumption:
      out.push_back(pad + "assumption " + node->label + ": " + node->conclusion->render());
      break;
    case Kind::Theory:
      out.push_back(pad + "theory: " + node->conclusion->render());
      break;
    case Kind::Perception:
      append_trace(node->premise, depth + 1, out);
      out.push_back(pad + "R_P: " + node->conclusion->render());
      break;
    case Kind::BeliefClosure:
      for (const auto& p : node->premises) append_trace(p, depth + 1, out);
      append_trace(node->derivation, depth + 1, out);
      out.push_back(pad + "R_B: " + node->conclusion->render());
      break;
    case Kind::Fo: {
      const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
      for (const auto& src : node->sources) {
        std::string tag;
        switch (src.kind) {
          case mucalc::FoSource::Kind::Assumption:
            tag = "source " + src.label;
            break;
          case mucalc::FoSource::Kind::Theory:
            tag = "source theory";
            break;
          case mucalc::FoSource::Kind::NegatedGoal:
            tag = "source negated-goal";
            break;
        }
        out.push_back(inner + tag + ": " + src.formula->render());
      }
      for (std::size_t i = 0; i < node->refutation.steps.size(); ++i) {
        const auto& step = node->refutation.steps[i];
        const std::string rendered =
            step.rendered.empty() ? step.clause.render() : step.rendered;
        std::ostringstream line;
        line << inner << '#' << i << ' ';
        switch (step.kind) {
          case mucalc::TraceClause::Kind::Input:
            line << "input premise " << step.premise_index;
            break;
          case mucalc::TraceClause::Kind::Resolve:
            line << "resolve #" << step.parent_a << '[' << step.literal_a << "] #"
                 << step.parent_b << '[' << step.literal_b << ']';
            break;
          case mucalc::TraceClause::Kind::Factor:
            line << "factor #" << step.parent_a << '[' << step.literal_a << ','
                 << step.literal_b << ']';
            break;
        }
        line << ": " << rendered;
        out.push_back(line.str());
      }
      out.push_back(pad + "resolution: " + node->conclusion->render());
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// One problem run.

struct RunOutcome {
  std::string problem;
  bool proved = false;
  std::string reason;  // empty when proved
  long long elapsed_ms = 0;
  mucalc::ProofPtr proof;         // present when proved
  std::string kernel_error;       // non-empty if the checker rejected the proof
};

RunOutcome run_problem(const mucalc::Problem& problem, const RunConfig& cfg) {
  RunOutcome out;
  out.problem = problem.name;
  mucalc::Prover prover(problem, prover_options(cfg));
  mucalc::Verdict verdict = prover.prove();
  out.elapsed_ms = verdict.elapsed.count();
  out.proved = verdict.proved;
  out.reason = verdict.reason;
  out.proof = verdict.proof;
  if (verdict.proved && cfg.check_kernel) {
    mucalc::CheckResult check =
        mucalc::check_proof(problem, verdict.proof, prover_options(cfg));
    if (!check.ok) {
      out.proved = false;
      out.reason = "kernel-rejected";
      out.kernel_error = check.error;
    }
  }
  return out;
}

json verdict_json(const RunOutcome& out, bool include_proof) {
  json doc;
  doc["problem"] = out.problem;
  doc["verdict"] = out.proved ? "proved" : "not-proved";
  doc["elapsedMs"] = out.elapsed_ms;
  if (include_proof && out.proved && out.proof) doc["proof"] = mucalc::proof_to_json(out.proof);
  return doc;
}

// ---------------------------------------------------------------------------
// Subcommand: prove.

int run_prove(const std::string& path, const RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  mucalc::Problem problem;
  try {
    problem = mucalc::parse_problem(buffer.str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return 2;
  }

  RunOutcome out = run_problem(problem, cfg);
  if (!out.kernel_error.empty())
    std::cerr << "error: kernel rejected the proof: " << out.kernel_error << "\n";

  if (cfg.format == "json") {
    std::cout << verdict_json(out, /*include_proof=*/true).dump(2) << "\n";
  } else {
    std::cout << "problem: " << out.problem << "\n";
    std::cout << "verdict: " << (out.proved ? "proved" : "not-proved") << "\n";
    if (!out.proved && !out.reason.empty()) std::cout << "reason: " << out.reason << "\n";
    std::cout << "elapsed: " << out.elapsed_ms << " ms\n";
    if (cfg.trace && out.proved && out.proof) {
      std::vector<std::string> lines;
      append_trace(out.proof, 0, lines);
      std::cout << "proof:\n";
      for (const auto& line : lines) std::cout << "  " << line << "\n";
    }
  }
  return out.proved ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Subcommand: corpus.

struct ManifestEntry {
  std::string name;
  bool expect_proved = false;
};

int run_corpus(const std::string& dir, const RunConfig& cfg) {
  namespace fs = std::filesystem;
  const fs::path manifest_path = fs::path(dir) / "expected.tsv";
  std::ifstream manifest(manifest_path);
  if (!manifest) {
    std::cerr << "error: no manifest at '" << manifest_path.string() << "'\n";
    return 2;
  }

  std::vector<ManifestEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(manifest, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    const std::string name = tab == std::string::npos ? line : line.substr(0, tab);
    const std::string verdict = tab == std::string::npos ? "" : line.substr(tab + 1);
    if (name.empty() || (verdict != "proved" && verdict != "not-proved")) {
      std::cerr << "error: " << manifest_path.string() << ":" << line_no
                << ": expected '<name>\\t(proved|not-proved)'\n";
      return 2;
    }
    entries.push_back({name, verdict == "proved"});
  }
  if (entries.empty()) {
    std::cerr << "error: manifest '" << manifest_path.string() << "' lists no problems\n";
    return 2;
  }

  std::vector<mucalc::Problem> problems;
  problems.reserve(entries.size());
  for (const auto& entry : entries) {
    const fs::path path = fs::path(dir) / (entry.name + ".mucalc");
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot read '" << path.string() << "'\n";
      return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      problems.push_back(mucalc::parse_problem(buffer.str()));
    } catch (const std::exception& e) {
      std::cerr << "error: " << path.string() << ": " << e.what() << "\n";
      return 2;
    }
  }

  // Independent prover instances may run concurrently; results are
  // reported in manifest order regardless of completion order.
  const unsigned n_workers =
      std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
  std::counting_semaphore<64> slots(n_workers);
  std::vector<std::future<RunOutcome>> futures;
  futures.reserve(entries.size());
  for (const auto& problem : problems) {
    futures.push_back(std::async(std::launch::async, [&problem, &cfg, &slots] {
      slots.acquire();
      RunOutcome out = run_problem(problem, cfg);
      slots.release();
      return out;
    }));
  }

  bool all_match = true;
  json docs = json::array();
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    RunOutcome out = futures[i].get();
    const bool match = out.proved == entries[i].expect_proved;
    all_match = all_match && match;
    if (!out.kernel_error.empty())
      std::cerr << "error: " << entries[i].name
                << ": kernel rejected the proof: " << out.kernel_error << "\n";
    if (cfg.format == "json") {
      docs.push_back(verdict_json(out, /*include_proof=*/false));
    } else {
      std::ostringstream row;
      row << std::left << std::setw(28) << entries[i].name << ' ' << std::setw(11)
          << (entries[i].expect_proved ? "proved" : "not-proved") << ' ' << std::setw(11)
          << (out.proved ? "proved" : "not-proved") << ' ' << std::setw(8)
          << (std::to_string(out.elapsed_ms) + "ms") << (match ? "ok" : "MISMATCH");
      rows.push_back(row.str());
    }
  }

  if (cfg.format == "json") {
    std::cout << docs.dump(2) << "\n";
  } else {
    std::ostringstream header;
    header << std::left << std::setw(28) << "problem" << ' ' << std::setw(11) << "expected"
           << ' ' << std::setw(11) << "actual" << ' ' << std::setw(8) << "elapsed"
           << "status";
    std::cout << header.str() << "\n";
    for (const auto& row : rows) std::cout << row << "\n";
    const std::size_t matches =
        static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) {
          return r.find("MISMATCH") == std::string::npos;
        }));
    if (cfg.format != "json")
      std::cout << matches << "/" << rows.size() << " verdicts match\n";
  }
  return all_match ? 0 : 1;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--timeout", cfg.timeout_seconds, "Prover budget in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-modal-depth", cfg.max_modal_depth,
                  "Maximum nesting of modal rule applications")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_flag("--trace", cfg.trace,
                "List rule applications in kernel-replay order (text format)");
  cmd->add_flag_callback(
      "--no-check", [&cfg] { cfg.check_kernel = false; },
      "Skip the kernel check of returned proofs");
  cmd->add_flag("--reflexive-belief-time", cfg.reflexive_belief_time,
                "Belief closure also admits premises at the goal time");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prover for sorted first-order logic with time-indexed belief "
               "and perception operators"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string prove_path;
  std::string corpus_dir;

  CLI::App* prove = app.add_subcommand("prove", "Prove one problem file");
  prove->add_option("file", prove_path, "Problem file")->required();
  add_common_flags(prove, cfg);

  CLI::App* corpus = app.add_subcommand("corpus", "Run a corpus directory against its manifest");
  corpus->add_option("dir", corpus_dir, "Directory with expected.tsv and .mucalc files")
      ->required();
  add_common_flags(corpus, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (prove->parsed()) return run_prove(prove_path, cfg);
  return run_corpus(corpus_dir, cfg);
}
