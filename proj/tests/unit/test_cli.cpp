#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "paradox/search.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with the given arguments; stderr is folded into out.
Run cli(const std::string& args) {
  const std::string cmd = std::string(PARADOX_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

bool has(const Run& r, const std::string& text) { return r.out.find(text) != std::string::npos; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "paradox_test_cli";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("poset export") {
  const Run r = cli("poset 4 2");
  CHECK(r.status == 0);
  CHECK(has(r, "digraph"));
  CHECK(has(r, "nodes: 6"));
  CHECK(has(r, "edges: 6"));
  CHECK(has(r, "minimal: 1"));
  CHECK(cli("poset 3 5").status != 0);
}

TEST_CASE("bounds subcommands") {
  CHECK(has(cli("bounds heuristic 42 3"), "cap: 17396"));
  const Run c = cli("bounds convergents 7");
  CHECK(c.status == 0);
  CHECK(has(c, "5/8"));
  CHECK(has(c, "41/65"));
  CHECK(has(cli("bounds rhin 8 5"), "yes"));
  CHECK(has(cli("bounds mean 12"), "(expected 3)"));
  CHECK(has(cli("bounds extremes 8 5"), "lower: 211/256"));
  CHECK(cli("bounds rhin 1 1").status == 2);
}

TEST_CASE("search writes csv and census") {
  const auto dir = scratch_dir();
  const auto csv = dir / "hits.csv";
  const Run r = cli("search --range 3..10000 --no-timestamp --out " + csv.string());
  CHECK(r.status == 0);
  CHECK(has(r, "593 hits"));
  CHECK(has(r, "near-cycles: 20"));
  CHECK(has(r, "distinct starts: 550"));

  const std::string text = slurp(csv);
  std::istringstream lines(text);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == paradox::kHitCsvHeader);
  std::size_t rows = 0;
  while (std::getline(lines, row)) {
    if (row.empty() || row[0] == '#') continue;
    paradox::parse_csv_row(row);
    ++rows;
  }
  CHECK(rows == 593);

  auto census = csv;
  census += ".census.txt";
  CHECK(slurp(census).find("C truncated to 3 decimals") != std::string::npos);

  // Same output again, byte for byte, on more threads.
  const auto csv2 = dir / "hits4.csv";
  CHECK(cli("search --range 3..10000 --threads 4 --no-timestamp --out " + csv2.string()).status ==
        0);
  CHECK(slurp(csv2) == text);
}

TEST_CASE("search resumes from a checkpoint file") {
  const auto dir = scratch_dir();
  const auto ckpt = dir / "run.ckpt";
  const std::string base = "search --range 3..200000 --formalism classic --no-timestamp";
  const Run cut = cli(base + " --checkpoint " + ckpt.string() + " --stop-after-blocks 1 --out " +
                      (dir / "partial.csv").string());
  CHECK(cut.status == 0);
  CHECK(std::filesystem::exists(ckpt));
  CHECK(cli(base + " --checkpoint " + ckpt.string() + " --out " + (dir / "resumed.csv").string())
            .status == 0);
  CHECK(cli(base + " --out " + (dir / "full.csv").string()).status == 0);
  CHECK(slurp(dir / "resumed.csv") == slurp(dir / "full.csv"));
}

TEST_CASE("cst and records") {
  const Run c = cli("cst --range 2..2");
  CHECK(c.status == 0);
  CHECK(has(c, "counterexamples: 0"));
  const Run r = cli("records --kind maxexc-t --limit 100");
  CHECK(r.status == 0);
  CHECK(has(r, "27 4616"));
}

TEST_CASE("bad arguments fail with nonzero status") {
  CHECK(cli("search --range 5..3").status != 0);
  CHECK(cli("search --range 3..x").status != 0);
  CHECK(cli("search --range 3..10 --formalism bogus").status != 0);
  CHECK(cli("records --kind nope --limit 10").status != 0);
  CHECK(cli("frobnicate").status != 0);
  CHECK(cli("cst --range 1..5").status != 0);
}

TEST_CASE("exhausted budgets use their own exit code") {
  CHECK(cli("cst --range 27..27 --budget 5").status == 3);
}
