#include "doctest.h"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "heismin/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = heismin::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("classify reports TypeI for c2 > 0") {
  const auto r = call({"classify", "--alpha", "general", "--c1", "0", "--c2", "1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["type"] == "TypeI");
}

TEST_CASE("verify-graph finds the singular line of u = xy") {
  const auto r = call({"verify-graph", "--u", "x*y"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pmge"]["max"].get<double>() == 0.0);
  REQUIRE(j["singular_set"]["components"].size() == 1);
  const auto& c = j["singular_set"]["components"][0];
  CHECK(c["kind"] == "curve");
  for (const auto& p : c["points"]) CHECK(std::abs(p[0].get<double>()) <= 1e-10);
}

TEST_CASE("construct from zeta1 = 0, zeta2 = 1") {
  const std::string obj = "test_cli_construct.obj";
  const auto r = call({"construct", "--zeta1", "0", "--zeta2", "1", "--obj", obj, "--nu", "5", "--nv", "7"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["invariants"]["zeta2"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["invariants"]["zeta1"].get<double>() == doctest::Approx(0.0));
  CHECK(j["immersion"]["immersed_everywhere"] == true);
  CHECK(j["max_abs_H"].get<double>() <= 1e-6);
  const std::string text = slurp(obj);
  std::istringstream lines(text);
  std::string line;
  int v = 0, f = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
    CHECK(line.find("vn") == std::string::npos);
  }
  CHECK(v == 35);
  CHECK(f == 24);
  CHECK(text.find("f 1 8 9 2\n") != std::string::npos);
  std::remove(obj.c_str());
}

TEST_CASE("construct from an explicit curve") {
  const auto r = call({"construct", "--curve", "x=0,y=0,z=theta"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["invariants"]["zeta2"].get<double>() == doctest::Approx(1.0));
  CHECK(call({"construct", "--curve", "x=0,y=0"}).code == 1);
  CHECK(call({"construct", "--curve", "x=0,y=0,z=theta", "--zeta1", "0", "--zeta2", "1"}).code == 1);
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::vector<std::vector<std::string>> cmds{
      {"metric", "--alpha", "special1", "--c1", "2+sin(y)", "--nx", "9", "--ny", "7"},
      {"phase-field", "--nx", "5", "--nv", "4"},
      {"solve-lienard", "--alpha0", "0.5", "--v0", "0.1", "--x1", "0.5"},
      {"verify-graph", "--u", "x*y+y^2"}};
  for (const auto& c : cmds) {
    const auto a = call(c), b = call(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  const std::string p1 = "test_cli_a.obj", p2 = "test_cli_b.obj";
  call({"examples", "helicoid", "--theta", "-t", "--obj", p1});
  call({"examples", "helicoid", "--theta", "-t", "--obj", p2});
  CHECK(slurp(p1) == slurp(p2));
  CHECK(!slurp(p1).empty());
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("csv layout") {
  const auto m = call({"metric", "--alpha", "special1", "--c1", "1", "--nx", "2", "--ny", "2", "--x-range=-3,1"});
  REQUIRE(m.code == 0);
  std::istringstream in(m.out);
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "x,y,alpha,a,b");
  std::getline(in, row);
  CHECK(row.rfind("-3,-1,-0.5,", 0) == 0);
  const auto p = call({"phase-field", "--nx", "2", "--nv", "2"});
  CHECK(p.out.rfind("x,v,dx,dv\n", 0) == 0);
  const auto s = call({"solve-lienard", "--mode", "evaluate", "--family", "special1", "--c1", "0",
                       "--x0=-1", "--x1", "1", "--n", "3"});
  CHECK(s.out == "x,alpha,v\n-1,-1,-1\n0,nan,nan\n1,1,-1\n");
  // 17 significant digits
  const auto t = call({"solve-lienard", "--mode", "evaluate", "--family", "special1", "--c1", "2",
                       "--x0", "1", "--x1", "2", "--n", "2"});
  CHECK(t.out.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("fit and go-through reports") {
  const json f = json::parse(call({"solve-lienard", "--fit", "--alpha0", "0.5", "--v0", "0"}).out);
  CHECK(f["family"] == "General");
  // v = 0 where (x + c1)^2 = c2, and there alpha = 1 / (2 (x + c1))
  CHECK(f["c2"].get<double>() == doctest::Approx(1.0));
  CHECK(f["c1"].get<double>() == doctest::Approx(1.0));
  const auto g = call({"go-through", "--u", "x*y", "--point", "0,0.5"});
  REQUIRE(g.code == 0);
  const json j = json::parse(g.out);
  CHECK(j["flip_detected"] == true);
  CHECK(j["cos_plus"].get<double>() == doctest::Approx(-j["cos_minus"].get<double>()));
}

TEST_CASE("integrability reports carry their tolerances") {
  const auto r = call({"integrability", "--alpha", "general", "--c1", "y", "--c2", "1+y^2", "--k", "y",
                       "--h", "cos(y)"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["tolerances"]["residual"].get<double>() == 1e-6);
  const auto q = call({"integrability", "--lienard", "0.3,0.1", "--H", "2", "--x-range=-0.3,2.8"});
  REQUIRE(q.code == 0);
  CHECK(json::parse(q.out)["passed"] == true);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 1);
  CHECK(call({"classify", "--nope"}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
  CHECK(call({"examples", "torus"}).code == 1);
  const auto p = call({"classify", "--c1", "2*^3"});
  CHECK(p.code == 3);
  CHECK(p.err.find("offset 2") != std::string::npos);
  CHECK(call({"classify", "--c2", "y"}).code == 2);
  CHECK(call({"solve-lienard", "--alpha0", "10", "--v0", "0", "--H", "1", "--x1", "1000", "--step", "0.1"}).code == 2);
  CHECK(call({"metric", "--x-range", "1,0"}).code == 1);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("output does not depend on the worker count") {
  const std::vector<std::string> cmd{"metric", "--alpha", "general", "--c1", "y", "--c2", "1+y^2",
                                     "--nx", "31", "--ny", "17"};
  setenv("HEISMIN_THREADS", "1", 1);
  const auto one = call(cmd);
  setenv("HEISMIN_THREADS", "5", 1);
  const auto five = call(cmd);
  unsetenv("HEISMIN_THREADS");
  CHECK(one.code == 0);
  CHECK(one.out == five.out);
}
