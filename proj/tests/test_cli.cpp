// End-to-end runs of the installed command-line surface: exit codes, output
// formats, file emission, determinism.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  fs::path tmp = fs::temp_directory_path() / "flutekit_cli_out.txt";
  std::string cmd = std::string(FLUTEKIT_BIN) + " " + args + " > " + tmp.string() + " 2>&1";
  int raw = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  int code = (raw == -1) ? -1 : WEXITSTATUS(raw);
  return {code, ss.str()};
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("analyze: zero-twist families and exit code 0") {
  auto para = run_cli("analyze --generator plog:2 --pattern none --truncate 3000");
  CHECK(para.exit_code == 0);
  CHECK(para.output.find("Parabolic") != std::string::npos);

  auto notp = run_cli("analyze --generator plog:3 --truncate 3000");
  CHECK(notp.exit_code == 0);
  CHECK(notp.output.find("NotParabolic") != std::string::npos);
}

TEST_CASE("analyze: structured reports embed the config and are deterministic") {
  std::string args =
      "analyze --generator pairs-of:plog:1 --pattern all --truncate 400 --format structured "
      "--seed 7";
  auto first = run_cli(args);
  auto second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(first.output.find("\"command\": \"analyze\"") != std::string::npos);
  CHECK(first.output.find("\"seed\": 7") != std::string::npos);
  CHECK(first.output.find("\"verdict\": \"Parabolic\"") != std::string::npos);
}

TEST_CASE("analyze: input documents, inconclusive mixed rows, refusals") {
  fs::path flute = write_temp("flute_mixed.json", R"({
    "kind": "flute",
    "generator": "power:1:1.5",
    "half_twist_pattern": "arith:2:7",
    "truncation": 2000
  })");
  auto mixed = run_cli("analyze --input " + flute.string());
  CHECK(mixed.exit_code == 0);
  CHECK(mixed.output.find("Inconclusive") != std::string::npos);
  CHECK(mixed.output.find("sufficient") != std::string::npos);

  fs::path finite = write_temp("flute_finite.json", R"({
    "kind": "flute",
    "lengths": [1, 2, 3, 4],
    "half_twist_indices": [1, 3],
    "truncation": 4
  })");
  auto refused = run_cli("analyze --input " + finite.string());
  CHECK(refused.exit_code == 4);
  CHECK(refused.output.find("hypothesis refused") != std::string::npos);

  auto missing = run_cli("analyze --input /nonexistent/file.json");
  CHECK(missing.exit_code == 2);

  fs::path bad = write_temp("bad.json", "{ not json");
  CHECK(run_cli("analyze --input " + bad.string()).exit_code == 2);
}

TEST_CASE("develop: trace and drawing files, precision failure exit code") {
  fs::path trace = fs::temp_directory_path() / "gap_trace.tsv";
  fs::path svg = fs::temp_directory_path() / "chain.svg";
  auto dev = run_cli("develop --generator pairs-of:plog:1 --pattern all --truncate 200 --out " +
                     trace.string() + " --svg-out " + svg.string());
  CHECK(dev.exit_code == 0);
  {
    std::ifstream in(trace);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n\tgap\tlog_gap");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 400);  // 2N geodesics from 2N-1 shears
  }
  {
    std::ifstream in(svg);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("<svg") != std::string::npos);
    CHECK(ss.str().find("final gap") != std::string::npos);
  }

  // Huge lengths at low precision: the development degenerates immediately.
  auto exhausted =
      run_cli("develop --generator exp:1:3 --pattern all --truncate 60 --precision-bits 64");
  CHECK(exhausted.exit_code == 3);
  CHECK(exhausted.output.find("precision") != std::string::npos);
}

TEST_CASE("synthesize: raise and lower plans with verification") {
  auto raise = run_cli("synthesize --generator vals:1,2,3,4,5,6 --pattern all --truncate 6");
  CHECK(raise.exit_code == 0);
  CHECK(raise.output.find("l_1: 1 -> 2") != std::string::npos);
  CHECK(raise.output.find("Parabolic") != std::string::npos);

  auto lower = run_cli(
      "synthesize --mode lower --generator vals:1,2,3,4,5,6 --pattern all --truncate 6 "
      "--format structured");
  CHECK(lower.exit_code == 0);
  CHECK(lower.output.find("\"mode\": \"lower\"") != std::string::npos);
  CHECK(lower.output.find("\"verdict\": \"Parabolic\"") != std::string::npos);

  auto odd = run_cli("synthesize --generator vals:1,2,3 --pattern list:1,2,3 --truncate 3 "
                     "--declared-infinite");
  CHECK(odd.exit_code == 0);
  CHECK(odd.output.find("trailing unpaired half-twist at 3") != std::string::npos);
}

TEST_CASE("endtree: aggregation and refusal exit codes") {
  fs::path tree = write_temp("tree.json", R"({
    "kind": "end-tree",
    "root": {
      "kind": "basic-end",
      "generator": "pairs-of:plog:2",
      "half_twist_pattern": "all",
      "truncation": 800,
      "beta_constant": 1.0,
      "beta_bound": 2.0,
      "children": [
        {"attach_at": 1, "node": {"kind": "flute", "generator": "plog:2", "half_twist_pattern": "none", "truncation": 800}},
        {"attach_at": 2, "node": {"kind": "flute", "generator": "plog:1.5", "half_twist_pattern": "none", "truncation": 800}}
      ]
    }
  })");
  auto ok = run_cli("endtree --input " + tree.string() + " --format structured");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("\"aggregate\": \"Parabolic\"") != std::string::npos);

  fs::path bad_tree = write_temp("tree_bad_beta.json", R"({
    "kind": "end-tree",
    "root": {
      "kind": "basic-end",
      "generator": "pairs-of:plog:2",
      "half_twist_pattern": "all",
      "truncation": 100,
      "beta_lengths": [1, 1, 5, 1],
      "beta_bound": 2.0
    }
  })");
  auto refused = run_cli("endtree --input " + bad_tree.string());
  CHECK(refused.exit_code == 4);
  CHECK(refused.output.find("beta border 3") != std::string::npos);
}
