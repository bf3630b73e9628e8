#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_path = "test_cli_stdout.txt";
  const std::string err_path = "test_cli_stderr.txt";
  const std::string cmd =
      env + (env.empty() ? "" : " ") + QFLAG_BIN " " + args + " >" + out_path + " 2>" + err_path;
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  const auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::vector<std::string> mask_elapsed(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(" elapsed-ms=");
    lines.push_back(pos == std::string::npos ? line : line.substr(0, pos));
  }
  return lines;
}

}  // namespace

TEST_CASE("dimension table for the full calculus on the projective plane") {
  const RunResult r = run_cli("dims --type A --rank 2 --node 1 --calculus d --max-degree 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\t1\n1\t4\n2\t6\n3\t4\n4\t1\n5\t0\n");
}

TEST_CASE("non-cominuscule node is a configuration error") {
  const RunResult r = run_cli("dims --type B --rank 2 --node 2");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("NotIrreducibleFlag") != std::string::npos);
}

TEST_CASE("verify exits clean on passing suites") {
  const RunResult r = run_cli("verify --type A --rank 1 --node 1 --suite ybe,crels");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ybe") != std::string::npos);
  CHECK(r.out.find("crels") != std::string::npos);
  CHECK(r.out.find("fail") == std::string::npos);
}

TEST_CASE("unknown suite and bad flags are usage errors") {
  CHECK(run_cli("verify --type A --rank 1 --node 1 --suite nosuch").exit_code == 2);
  CHECK(run_cli("verify --type A --rank 1 --node 1 --format yaml").exit_code == 2);
  CHECK(run_cli("nosubcommand").exit_code == 2);
  CHECK(run_cli("rmatrix --type A --rank 1 --node 1 --kind bogus").exit_code == 2);
}

TEST_CASE("rank guard reads the environment") {
  CHECK(run_cli("dims --type A --rank 3 --node 1", "QFLAG_MAX_RANK=2").exit_code == 2);
  CHECK(run_cli("dims --type A --rank 3 --node 1 --calculus del", "QFLAG_MAX_RANK=3").exit_code == 0);
}

TEST_CASE("braiding matrix output is exact and frozen") {
  const RunResult r = run_cli("rmatrix --type A --rank 1 --node 1 --kind rg");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "matrix rg rows 4 cols 4\n"
        "0 0 (q)/(1)\n"
        "0 3 (q - q^-3)/(1)\n"
        "1 2 (q^-1)/(1)\n"
        "2 1 (q^-1)/(1)\n"
        "3 3 (q)/(1)\n");
}

TEST_CASE("record output is deterministic once timings are masked") {
  const std::string args = "verify --type A --rank 2 --node 1 --format record";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  const auto la = mask_elapsed(a.out);
  const auto lb = mask_elapsed(b.out);
  CHECK(la == lb);
  CHECK(la.size() == 8);
  for (const auto& line : la) {
    CHECK(line.rfind("suite=", 0) == 0);
    CHECK(line.find("ctx=A2:1") != std::string::npos);
    CHECK(line.find("verdict=pass") != std::string::npos);
  }
  // every record line carries the timing field at the end
  CHECK(a.out.find(" elapsed-ms=") != std::string::npos);
}

TEST_CASE("human output is byte identical across runs and parallelism") {
  const std::string args = "verify --type A --rank 2 --node 1";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  const RunResult c = run_cli(args + " --parallel");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("output flag writes the same bytes to a file") {
  const std::string path = "test_cli_file_out.txt";
  const RunResult direct = run_cli("irrep --type A --rank 2 --node 2");
  const RunResult filed = run_cli("irrep --type A --rank 2 --node 2 --output " + path);
  CHECK(filed.exit_code == 0);
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == direct.out);
  std::remove(path.c_str());
}
