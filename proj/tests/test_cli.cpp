#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "squeeze/domain.hpp"

using namespace squeeze;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::string& work_dir() {
  static const std::string dir = [] {
    std::string tmpl = "/tmp/squeeze_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl.data()) != nullptr);
    return tmpl;
  }();
  return dir;
}

/// run the CLI binary with the given arguments, capturing streams
RunResult run_cli(const std::string& args) {
  const std::string out_path = work_dir() + "/stdout.txt";
  const std::string err_path = work_dir() + "/stderr.txt";
  const std::string cmd = std::string(SQUEEZE_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  return res;
}

std::string write_domain(const std::string& name, const ConvexDomain& dom) {
  const std::string path = work_dir() + "/" + name + ".json";
  std::ofstream out(path);
  out << dom.to_json().dump(2) << "\n";
  return path;
}

double parse_field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string k;
    double v = 0.0;
    if ((ls >> k >> v) && k == key) return v;
  }
  FAIL("field " << key << " not found in: " << text);
  return 0.0;
}

}  // namespace

TEST_CASE("bound-convex prints the certified bound and exits zero") {
  const auto path = write_domain("ball2", test::unit_ball(2));
  const auto res = run_cli("bound-convex --domain " + path + " --point '0,0;0,0'");
  REQUIRE(res.exit_code == 0);
  CHECK(res.err.empty());
  const double bound = parse_field(res.out, "bound");
  CHECK(bound == doctest::Approx(1.0 / (3.0 * std::sqrt(2.0))).epsilon(5e-3));

  // byte-identical across runs
  const auto again = run_cli("bound-convex --domain " + path + " --point '0,0;0,0'");
  CHECK(again.out == res.out);
}

TEST_CASE("bound-convex --json emits a loadable certificate") {
  const auto path = write_domain("ell", test::flat_ellipsoid());
  const auto res =
      run_cli("bound-convex --domain " + path + " --point '0.1,0;0,0.2' --json");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("format").get<std::string>() == "squeeze-certificate-v1");
  CHECK(j.at("pipeline").get<std::string>() == "convex");
  CHECK(j.at("bound").get<double>() > 0.0);
}

TEST_CASE("verify round trip and tamper detection") {
  const auto path = write_domain("ball2v", test::unit_ball(2));
  const std::string cert = work_dir() + "/cert.json";
  const auto made = run_cli("bound-strict --domain " + path +
                            " --point '0.9,0;0,0' --out " + cert);
  REQUIRE(made.exit_code == 0);

  const auto ok = run_cli("verify --certificate " + cert);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("replay ok") != std::string::npos);

  // inflate the claimed bound by five percent, keep everything else
  auto j = nlohmann::json::parse(slurp(cert));
  j["bound"] = j["bound"].get<double>() * 1.05;
  j["inner_radius"] = j["bound"];
  {
    std::ofstream out(cert);
    out << j.dump();
  }
  const auto bad = run_cli("verify --certificate " + cert);
  CHECK(bad.exit_code == 3);
  CHECK(bad.err.find("ReplayMismatch") != std::string::npos);
}

TEST_CASE("missing domain file exits 2 with the error name") {
  const auto res = run_cli("bound-convex --domain /nonexistent.json --point 0,0");
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("InvalidInput") != std::string::npos);
}

TEST_CASE("unparseable point exits 2") {
  const auto path = write_domain("ball1", test::unit_ball(1));
  const auto res = run_cli("bound-convex --domain " + path + " --point zebra");
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("InvalidInput") != std::string::npos);
}

TEST_CASE("dimension mismatch exits 2 instead of crashing") {
  const auto path = write_domain("ball2d", test::unit_ball(2));
  const auto res = run_cli("bound-convex --domain " + path + " --point 0,0");
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("InvalidInput") != std::string::npos);
}

TEST_CASE("exterior base point exits 2 with a pipeline error") {
  const auto path = write_domain("ball2e", test::unit_ball(2));
  const auto res =
      run_cli("bound-convex --domain " + path + " --point '2,0;0,0'");
  CHECK(res.exit_code == 2);
  CHECK(!res.err.empty());
}

TEST_CASE("limit-scan writes a deterministic csv") {
  const auto path = write_domain("ellscan", test::flat_ellipsoid());
  const std::string csv = work_dir() + "/scan.csv";
  const auto res = run_cli("limit-scan --domain " + path +
                           " --boundary-point '1,0;0,0' --ts 0.3,0.1,0.03 --csv " +
                           csv);
  REQUIRE(res.exit_code == 0);
  const std::string text = slurp(csv);
  CHECK(text.find("t,lambda_q,r_in,r_out,bound") == 0);
  // header plus one line per distance
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);

  const auto again = run_cli("limit-scan --domain " + path +
                             " --boundary-point '1,0;0,0' --ts 0.3,0.1,0.03 --csv " +
                             csv);
  REQUIRE(again.exit_code == 0);
  CHECK(slurp(csv) == text);
}

TEST_CASE("frame subcommand prints radii as json") {
  const auto path = write_domain("ellframe", test::flat_ellipsoid());
  const auto res = run_cli("frame --domain " + path + " --point '0,0;0,0'");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  REQUIRE(j.at("radii").size() == 2);
  CHECK(j.at("radii").at(0).get<double>() == doctest::Approx(1.0));
  CHECK(j.at("radii").at(1).get<double>() == doctest::Approx(2.0));
}

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(run_cli("bound-convex --no-such-flag").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("bound-convex --help").exit_code == 0);
}
