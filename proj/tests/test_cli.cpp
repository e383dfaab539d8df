#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "support/schema.hpp"
#include "support/subprocess.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using testsup::CommandResult;
using testsup::run_command;

namespace {

std::string bin() { return std::string(MUCALC_BIN_PATH); }
std::string repo_root() { return std::string(MUCALC_ROOT_PATH); }

std::string quoted(const std::string& s) { return "'" + s + "'"; }

// Scratch directory wiped on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "mucalc-cli-XXXXXX").string();
    REQUIRE(mkdtemp(tmpl.data()) != nullptr);
    path = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
};

const char* kProvable = R"((define-problem cli-mp
  :assumptions ((a1 (P c)) (a2 (implies (P c) (Q c))))
  :goal (Q c)))";

const char* kUnprovable = R"((define-problem cli-open
  :assumptions ((a1 (P c)))
  :goal (Q c)))";

const char* kModal = R"((define-problem cli-modal
  :assumptions ((a1 (Believes! alice t1 (Wet grass)))
                (a2 (Believes! alice t1 (implies (Wet grass) (Slippery grass)))))
  :goal (Believes! alice t2 (Slippery grass))))";

json load_schema() {
  std::ifstream in(fs::path(repo_root()) / "docs" / "verdict.schema.json");
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("prove exits 0 on a proved problem and prints the verdict") {
  TempDir dir;
  const fs::path p = dir.file("mp.mucalc", kProvable);
  CommandResult r = run_command(bin() + " prove " + quoted(p.string()));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("problem: cli-mp") != std::string::npos);
  CHECK(r.output.find("verdict: proved") != std::string::npos);
  CHECK(r.output.find("elapsed: ") != std::string::npos);
}

TEST_CASE("prove exits 1 on an unprovable problem with a reason") {
  TempDir dir;
  const fs::path p = dir.file("open.mucalc", kUnprovable);
  CommandResult r = run_command(bin() + " prove " + quoted(p.string()));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("verdict: not-proved") != std::string::npos);
  CHECK(r.output.find("reason: ") != std::string::npos);
}

TEST_CASE("prove exits 2 on unreadable or malformed input") {
  TempDir dir;
  SUBCASE("missing file") {
    CommandResult r =
        run_command(bin() + " prove " + quoted((dir.path / "absent.mucalc").string()) + " 2>&1");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") != std::string::npos);
  }
  SUBCASE("syntax error") {
    const fs::path p = dir.file("broken.mucalc", "(define-problem broken :goal (and P");
    CommandResult r = run_command(bin() + " prove " + quoted(p.string()) + " 2>&1");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") != std::string::npos);
  }
  SUBCASE("no subcommand") {
    CommandResult r = run_command(bin() + " 2>&1");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("bad flag value") {
    const fs::path p = dir.file("mp.mucalc", kProvable);
    CommandResult r =
        run_command(bin() + " prove " + quoted(p.string()) + " --format yaml 2>&1");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("json output validates against the published schema") {
  TempDir dir;
  const testsup::SchemaChecker checker(load_schema());

  SUBCASE("proved, with proof attached") {
    const fs::path p = dir.file("mp.mucalc", kModal);
    CommandResult r = run_command(bin() + " prove " + quoted(p.string()) + " --format json");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    const auto violation = checker.validate(doc);
    CHECK_MESSAGE(!violation.has_value(), violation.value_or(""));
    CHECK(doc.at("verdict") == "proved");
    REQUIRE(doc.contains("proof"));
    CHECK(doc.at("proof").at("version") == 1);
  }
  SUBCASE("not proved, no proof attached") {
    const fs::path p = dir.file("open.mucalc", kUnprovable);
    CommandResult r = run_command(bin() + " prove " + quoted(p.string()) + " --format json");
    CHECK(r.exit_code == 1);
    const json doc = json::parse(r.output);
    const auto violation = checker.validate(doc);
    CHECK_MESSAGE(!violation.has_value(), violation.value_or(""));
    CHECK(doc.at("verdict") == "not-proved");
    CHECK_FALSE(doc.contains("proof"));
  }
}

TEST_CASE("trace mode walks the proof in replay order") {
  TempDir dir;
  const fs::path p = dir.file("modal.mucalc", kModal);
  CommandResult r = run_command(bin() + " prove " + quoted(p.string()) + " --trace");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("proof:") != std::string::npos);
  CHECK(r.output.find("R_B: (Believes! alice t2 (Slippery grass))") != std::string::npos);
  CHECK(r.output.find("assumption a1:") != std::string::npos);
  CHECK(r.output.find("resolve #") != std::string::npos);
  // The derivation lines precede the closing R_B line.
  CHECK(r.output.find("resolve #") < r.output.find("R_B: (Believes! alice t2"));
}

TEST_CASE("prover flags reach the engine") {
  TempDir dir;
  SUBCASE("reflexive belief time flips a same-time closure") {
    const char* same_time = R"((define-problem cli-reflexive
  :assumptions ((a1 (Believes! alice t1 (Wet grass)))
                (a2 (Believes! alice t1 (implies (Wet grass) (Slippery grass)))))
  :goal (Believes! alice t1 (Slippery grass))))";
    const fs::path p = dir.file("reflexive.mucalc", same_time);
    CHECK(run_command(bin() + " prove " + quoted(p.string())).exit_code == 1);
    CHECK(run_command(bin() + " prove " + quoted(p.string()) + " --reflexive-belief-time")
              .exit_code == 0);
  }
  SUBCASE("max modal depth cuts nested closures") {
    // Two closure layers: proving the outer belief needs a subproof of the
    // inner one, so depth 1 is not enough.
    const char* nested = R"((define-problem cli-nested
  :assumptions ((a1 (Believes! alice t1 (Believes! bob t0 (Boiling kettle))))
                (a2 (Believes! alice t1 (Believes! bob t0 (implies (Boiling kettle) (Hot kettle))))))
  :goal (Believes! alice t2 (Believes! bob t1 (Hot kettle)))))";
    const fs::path p = dir.file("nested.mucalc", nested);
    CHECK(run_command(bin() + " prove " + quoted(p.string())).exit_code == 0);
    CommandResult r =
        run_command(bin() + " prove " + quoted(p.string()) + " --max-modal-depth 1");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("reason: depth-limit") != std::string::npos);
  }
}

TEST_CASE("corpus runs the shipped manifest clean") {
  CommandResult r =
      run_command(bin() + " corpus " + quoted(repo_root() + "/corpus"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("MISMATCH") == std::string::npos);
  CHECK(r.output.find("verdicts match") != std::string::npos);
  CHECK(r.output.find("teleport-default") != std::string::npos);
}

TEST_CASE("corpus flags mismatches and exits 1") {
  TempDir dir;
  dir.file("mp.mucalc", kProvable);
  dir.file("open.mucalc", kUnprovable);
  dir.file("expected.tsv", "mp\tproved\nopen\tproved\n");
  CommandResult r = run_command(bin() + " corpus " + quoted(dir.path.string()));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("MISMATCH") != std::string::npos);
  CHECK(r.output.find("1/2 verdicts match") != std::string::npos);
}

TEST_CASE("corpus JSON output is an array of verdict objects") {
  TempDir dir;
  dir.file("mp.mucalc", kProvable);
  dir.file("open.mucalc", kUnprovable);
  dir.file("expected.tsv", "mp\tproved\nopen\tnot-proved\n");
  CommandResult r =
      run_command(bin() + " corpus " + quoted(dir.path.string()) + " --format json");
  CHECK(r.exit_code == 0);
  const json docs = json::parse(r.output);
  REQUIRE(docs.is_array());
  REQUIRE(docs.size() == 2);
  const testsup::SchemaChecker checker(load_schema());
  for (const auto& doc : docs) {
    const auto violation = checker.validate(doc);
    CHECK_MESSAGE(!violation.has_value(), violation.value_or(""));
    CHECK_FALSE(doc.contains("proof"));
  }
  CHECK(docs[0].at("verdict") == "proved");
  CHECK(docs[1].at("verdict") == "not-proved");
}

TEST_CASE("corpus rejects broken setups with exit 2") {
  TempDir dir;
  SUBCASE("missing manifest") {
    CommandResult r = run_command(bin() + " corpus " + quoted(dir.path.string()) + " 2>&1");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") != std::string::npos);
  }
  SUBCASE("empty manifest") {
    dir.file("expected.tsv", "");
    CommandResult r = run_command(bin() + " corpus " + quoted(dir.path.string()) + " 2>&1");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("manifest row without verdict") {
    dir.file("expected.tsv", "mp\n");
    CommandResult r = run_command(bin() + " corpus " + quoted(dir.path.string()) + " 2>&1");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("expected '<name>") != std::string::npos);
  }
  SUBCASE("manifest names a missing file") {
    dir.file("expected.tsv", "ghost\tproved\n");
    CommandResult r = run_command(bin() + " corpus " + quoted(dir.path.string()) + " 2>&1");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("cannot read") != std::string::npos);
  }
}

TEST_CASE("help is reachable and exits 0") {
  CommandResult r = run_command(bin() + " --help");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("prove") != std::string::npos);
  CHECK(r.output.find("corpus") != std::string::npos);
}
