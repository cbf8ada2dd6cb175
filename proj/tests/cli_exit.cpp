#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

const std::string kTool = PBUNDLE_PATH;
const std::string kDir = PB_WORK_DIR;

std::string file(const std::string& name, const std::string& body) {
  const std::string path = kDir + "/" + name;
  std::ofstream(path) << body;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args, const std::string& out = "/dev/null") {
  const int status = std::system((kTool + " " + args + " > " + out + " 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("classification exit codes") {
  CHECK(run("classify -i " + file("good.json", R"({"A": [[1,0],[0,1]], "B": [[1,0],[0,3]]})")) == 0);
  CHECK(run("classify -i " + file("big.json", R"({"A": [[1,0,0],[0,1,0],[0,0,1]], "B": [[0,0],[0,0]]})")) == 1);
  CHECK(run("classify -i " + file("broken.json", R"({"A": [[1,0],[0,1]], )")) == 1);
  CHECK(run("classify -i " + kDir + "/does_not_exist.json") == 1);
  const double t = 1e-3;
  std::ostringstream amb;
  amb.precision(17);
  amb << R"({"A": [[1,0],[0,[)" << std::cos(t) << "," << std::sin(t) << R"(]]], "B": [[0,0],[0,0]]})";
  CHECK(run("classify -i " + file("ambiguous.json", amb.str())) == 2);
}

TEST_CASE("classification output") {
  const std::string out = kDir + "/good.out";
  REQUIRE(run("classify -i " + kDir + "/good.json", out) == 0);
  const std::string s = slurp(out);
  CHECK(s.find("\"identity/diag_ad\"") != std::string::npos);
  CHECK(s.find("\"ambiguous\": false") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run("--no-such-flag") == 1);
  CHECK(run("dim not_a/label") == 1);
  CHECK(run("verify bounds --trials 0") == 1);
  CHECK(run("verify no_such_suite") == 1);
  CHECK(run("mc zero/zero --epsilon 0.5") == 1);
}

TEST_CASE("verification failures exit with 3") {
  CHECK(run("verify dims") == 0);
  CHECK(run("verify witness") == 3);
}

TEST_CASE("equal options give identical reports") {
  const std::string a = kDir + "/bounds_a.json", b = kDir + "/bounds_b.json";
  REQUIRE(run("--seed 5 verify bounds --trials 300", a) == 0);
  REQUIRE(run("--seed 5 verify bounds --trials 300", b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("output file option") {
  const std::string path = kDir + "/taxonomy.json";
  std::remove(path.c_str());
  CHECK(run("taxonomy -o " + path) == 0);
  CHECK(slurp(path).find("one_theta/full_hermitian_like") != std::string::npos);
}

TEST_CASE("closure queries") {
  CHECK(run("closure path zero/zero one_theta/zero") == 0);
  CHECK(run("closure export --graph psi1 --format dot") == 0);
  CHECK(run("witness verify W1") == 0);
}
