#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(PUISEUX_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int rc = pclose(p);
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string spec_dir() {
  static std::string dir = [] {
    std::string d = "/tmp/puiseux_cli_" + std::to_string(getpid());
    if (std::system(("mkdir -p " + d).c_str()) != 0) std::abort();
    return d;
  }();
  return dir;
}

std::string write_spec(const std::string& name, const std::string& body) {
  std::string path = spec_dir() + "/" + name;
  std::ofstream(path) << body;
  return path;
}

const std::string& kFg23() {
  static std::string p =
      write_spec("fg23.json", R"({"type":"finitely_generated","generators":["2","3"]})");
  return p;
}
const std::string& kPr() {
  static std::string p = write_spec("pr.json", R"({"type":"prime_reciprocal"})");
  return p;
}
const std::string& kPr5() {
  static std::string p =
      write_spec("pr5.json", R"({"type":"prime_reciprocal","prime_bound":5})");
  return p;
}
const std::string& kSilver() {
  static std::string p = write_spec(
      "silver.json", R"({"type":"irrational_threshold","alpha":{"a":"1","b":"1","c":2}})");
  return p;
}
const std::string& kDense() {
  static std::string p = write_spec("dense.json", R"({"type":"dense_threshold","sigma":"1"})");
  return p;
}
const std::string& kGeo() {
  static std::string p = write_spec("geo.json", R"({"type":"geometric","ratio":"3/2"})");
  return p;
}
const std::string& kLat() {
  static std::string p = write_spec(
      "lat.json", R"({"type":"lattice_union","alphas":{"kind":"thm312"},"bs":{"kind":"pow2"}})");
  return p;
}

}  // namespace

TEST_CASE("lengths matches the documented shape byte for byte") {
  RunResult r = run("lengths --spec " + kFg23() + " --x 6");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"lengths\":[2,3],\"exact\":true}\n");

  RunResult again = run("lengths --spec " + kFg23() + " --x 6");
  CHECK(again.out == r.out);  // byte-identical across runs
}

TEST_CASE("membership and divisibility") {
  RunResult a = run("member --spec " + kFg23() + " --x 1");
  CHECK(a.exit_code == 0);
  CHECK(a.out == "{\"x\":\"1\",\"member\":false}\n");

  RunResult b = run("member --spec " + kFg23() + " --x 5");
  CHECK(b.out == "{\"x\":\"5\",\"member\":true}\n");

  RunResult c = run("divides --spec " + kFg23() + " --u 2 --x 7");
  CHECK(c.exit_code == 0);
  CHECK(c.out == "{\"u\":\"2\",\"x\":\"7\",\"divides\":true}\n");

  RunResult d = run("divides --spec " + kFg23() + " --u 1 --x 7");
  CHECK(d.exit_code == 1);  // 1 is not a member: input error with diagnostic
}

TEST_CASE("factorize carries certificates and budgets; dense Z(x) is refused") {
  RunResult a = run("factorize --spec " + kFg23() + " --x 6");
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("\"count\":2") != std::string::npos);
  CHECK(a.out.find("\"exact\":true") != std::string::npos);
  CHECK(a.out.find("\"budget\":{\"value_cap\":\"200\"") != std::string::npos);
  CHECK(a.out.find("{\"atom\":\"2\",\"mult\":3}") != std::string::npos);

  RunResult b = run("factorize --spec " + kSilver() + " --x 10");
  CHECK(b.exit_code == 1);  // factorization sets are infinite here

  RunResult c = run("lengths --spec " + kFg23() + " --x 1");
  CHECK(c.exit_code == 1);  // non-member
}

TEST_CASE("closed-form length sets of the irrational threshold family") {
  RunResult a = run("lengths --spec " + kSilver() + " --x 121/25");
  CHECK(a.exit_code == 0);
  CHECK(a.out == "{\"lengths\":[2,3],\"exact\":true}\n");

  RunResult b = run("lengths --spec " + kSilver() + " --x 10");
  CHECK(b.out == "{\"lengths\":[3,4,5,6,7,10],\"exact\":true}\n");

  RunResult c = run("rho-k --spec " + kSilver() + " --k 5");
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("\"rho_k\":17") != std::string::npos);
}

TEST_CASE("classification, conductor, and closure reports") {
  RunResult a = run("classify --spec " + kPr());
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("\"bf\":\"No\"") != std::string::npos);

  RunResult b = run("conductor --spec " + kDense());
  CHECK(b.exit_code == 0);
  // attained: sigma sits in the closure but not in H (strict threshold)
  CHECK(b.out == "{\"status\":\"Threshold\",\"sigma\":\"1\",\"attained\":true}\n");

  RunResult c = run("closure --spec " + kFg23());
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("\"scale_n\":1") != std::string::npos);

  RunResult d = run("classify --spec " + kGeo());
  CHECK(d.exit_code == 0);
  CHECK(d.out.find("\"strongly_primary\":\"No\"") != std::string::npos);
}

TEST_CASE("truncated scans exit 2") {
  RunResult a = run("delta --spec " + kFg23());
  CHECK(a.exit_code == 2);  // window scans are never exact
  CHECK(a.out.find("\"observed\":[1]") != std::string::npos);
  CHECK(a.out.find("\"exact\":false") != std::string::npos);

  RunResult b = run("atoms --spec " + kLat() + " --bound 4");
  CHECK(b.exit_code == 0);
  CHECK(b.out.find("\"complete\":true") != std::string::npos);
  CHECK(b.out.find("\"1/2\"") != std::string::npos);
}

TEST_CASE("invariant reports at an element") {
  RunResult a = run("omega --spec " + kFg23() + " --u 2");
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("\"invariant\":\"omega\"") != std::string::npos);
  CHECK(a.out.find("\"certified\":true") != std::string::npos);

  RunResult b = run("big-m --spec " + kFg23() + " --u 2");
  CHECK(b.exit_code == 0);
  CHECK(b.out.find("\"invariant\":\"M\"") != std::string::npos);

  RunResult c = run("catenary --spec " + kFg23() + " --x 6");
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("\"catenary\":3") != std::string::npos);

  // unbounded prime reciprocals: strong primarity is not certified, so the
  // engine refuses to accept a value and the process signals truncation
  RunResult d = run("elasticity --spec " + kPr());
  CHECK(d.exit_code == 2);
  CHECK(d.out == "{\"elasticity\":null,\"accepted\":\"Unknown\"}\n");

  RunResult d2 = run("elasticity --spec " + kLat());
  CHECK(d2.exit_code == 0);
  CHECK(d2.out.find("\"elasticity\":{\"infinite\":true,\"certified\":true}") !=
        std::string::npos);

  RunResult e = run("lengths --spec " + kPr5() + " --x 1");
  CHECK(e.out == "{\"lengths\":[2,3,5],\"exact\":true}\n");
}

TEST_CASE("tsv output flattens objects") {
  RunResult a = run("lengths --spec " + kFg23() + " --x 6 --format tsv");
  CHECK(a.exit_code == 0);
  CHECK(a.out == "lengths\t[2,3]\nexact\ttrue\n");
}

TEST_CASE("input errors exit 1 with diagnostics") {
  std::string bad = write_spec("bad.json", R"({"type":"mystery"})");
  CHECK(run("classify --spec " + bad).exit_code == 1);

  std::string broken = write_spec("broken.json", "{\"type\":");
  CHECK(run("classify --spec " + broken).exit_code == 1);

  CHECK(run("classify --spec " + spec_dir() + "/missing.json").exit_code == 1);
  CHECK(run("lengths --spec " + kFg23()).exit_code == 1);  // missing --x
  CHECK(run("lengths --spec " + kFg23() + " --x 6 --denom-cap 0").exit_code == 1);
}

TEST_CASE("thread cap environment variable is validated") {
  std::string base = "member --spec " + kFg23() + " --x 5";
  {
    std::string cmd = "PUISEUX_KIT_THREADS=0 " + std::string(PUISEUX_BIN) + " " + base +
                      " >/dev/null 2>&1; echo $?";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[16] = {0};
    REQUIRE(fgets(buf, sizeof buf, p) != nullptr);
    pclose(p);
    CHECK(std::string(buf) == "1\n");
  }
  {
    std::string cmd = "PUISEUX_KIT_THREADS=4 " + std::string(PUISEUX_BIN) + " " + base +
                      " >/dev/null 2>&1; echo $?";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[16] = {0};
    REQUIRE(fgets(buf, sizeof buf, p) != nullptr);
    pclose(p);
    CHECK(std::string(buf) == "0\n");
  }
}

TEST_CASE("verify-paper single claims") {
  RunResult a = run("verify-paper --family ex44 --alpha \"1+1*sqrt(2)\" --n 5");
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("\"claim_id\":\"rho-formula/ex44/n=005\"") != std::string::npos);
  CHECK(a.out.find("\"verdict\":\"Pass\"") != std::string::npos);
  CHECK(a.out.find("rho_5 = 17") != std::string::npos);

  RunResult b = run("verify-paper --family prop39 --n 3");
  CHECK(b.exit_code == 0);
  CHECK(b.out.find("\"claim_id\":\"tau-lower/prop39/n=003\"") != std::string::npos);

  RunResult c = run("verify-paper --family thm312 --i 1");
  CHECK(c.exit_code == 3);  // honest failure: the first level pair is reducible
  CHECK(c.out.find("\"verdict\":\"Fail\"") != std::string::npos);

  RunResult d = run("verify-paper --family thm312 --i 1 --bs 4,8,16");
  CHECK(d.exit_code == 0);

  RunResult e = run("verify-paper --family ex36c");
  CHECK(e.exit_code == 0);
  CHECK(e.out.find("unique-power-sums") != std::string::npos);

  RunResult f = run("verify-paper --family ex44 --claim union --n 324");
  CHECK(f.exit_code == 0);

  CHECK(run("verify-paper --family ex44").exit_code == 1);          // --n missing
  CHECK(run("verify-paper --family nosuch --n 1").exit_code == 1);  // unknown family
}

TEST_CASE("verify-paper full suite reports the two honest failures") {
  RunResult r = run("verify-paper");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("\"two-in-lengths/thm312/i=001\"") != std::string::npos);
  CHECK(r.out.find("\"two-in-lengths/thm312/i=002\"") != std::string::npos);
  std::size_t fails = 0, pos = 0;
  while ((pos = r.out.find("\"verdict\":\"Fail\"", pos)) != std::string::npos) {
    ++fails;
    ++pos;
  }
  CHECK(fails == 2);

  RunResult t = run("verify-paper --format tsv");
  CHECK(t.exit_code == 3);
  CHECK(t.out.rfind("claim_id\tverdict\tparams\tdetail\n", 0) == 0);
}
