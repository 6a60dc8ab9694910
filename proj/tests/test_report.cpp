#include "test_util.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dntau/cli.hpp"
#include "dntau/report.hpp"

using namespace dntau;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = run_cli(args, o, e);
  return {c, o.str(), e.str()};
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("FNV-1a reference vectors") {
    CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
    CHECK(hex64(fnv1a64("foobar")) == "85944171f73967e8");
  }

  TEST_CASE("canonical dump sorts keys and drops whitespace") {
    nlohmann::json j = {{"b", 1}, {"a", {{"y", 2}, {"x", "s"}}}};
    CHECK(canonical_dump(j) == R"({"a":{"x":"s","y":2},"b":1})");
  }

  TEST_CASE("hash ignores timings and thread count") {
    Report r;
    r.command = "x";
    r.params = {{"N", 2}, {"threads", 1}};
    r.checks.push_back({"c", true, {{"window", 4}}});
    std::string h = r.content_hash();
    r.timings["step"] = 1.5;
    r.include_timings = true;
    r.params["threads"] = 8;
    CHECK(r.content_hash() == h);
    CHECK(r.to_json().contains("timings"));
    r.checks[0].data["window"] = 5;
    CHECK(r.content_hash() != h);
    r.checks[0].pass = false;
    CHECK_FALSE(r.pass());
  }

  TEST_CASE("cli: success and determinism") {
    auto a = cli({"wave", "--N", "2", "--order", "12"});
    auto b = cli({"wave", "--N", "2", "--order", "12", "--threads", "1"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["command"] == "wave");
    CHECK(j["pass"] == true);
    CHECK(j["hash"].get<std::string>().size() == 16);
    CHECK_FALSE(j.contains("timings"));
    auto t = cli({"wave", "--N", "2", "--order", "12", "--timings"});
    CHECK(nlohmann::json::parse(t.out).contains("timings"));
    CHECK(nlohmann::json::parse(t.out)["hash"] == j["hash"]);
  }

  TEST_CASE("cli: usage errors exit with 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"nonsense"}).code == 2);
    CHECK(cli({"wave", "--N", "1"}).code == 2);
    CHECK(cli({"wave", "--N", "2", "--format", "xml"}).code == 2);
    CHECK(cli({"tau", "--N", "2", "--weight", "6", "--N1", "1", "--N2", "1"}).code == 2);
    CHECK(cli({"twopoint", "--N", "2", "--a", "2", "--b", "1"}).code == 2);
  }

  TEST_CASE("cli: failed checks exit with 1") {
    auto dir = std::filesystem::temp_directory_path() / "dntau_empty_golden";
    std::filesystem::create_directories(dir);
    auto r = cli({"golden", "--dir", dir.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("missing") != std::string::npos);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("cli: unsupported parameters are usage errors") {
    // Watson quadrature needs h = 2 mod 4
    CHECK(cli({"verify", "quadrature", "--N", "3"}).code == 2);
    CHECK(cli({"mirror", "correlator", "--N", "3", "--ins", "e2"}).code != 0);
  }

  TEST_CASE("cli: verify and mirror commands") {
    auto s = cli({"verify", "string", "--N", "2", "--weight", "6"});
    CHECK(s.code == 0);
    auto c = cli({"mirror", "correlator", "--N", "3", "--g", "0", "--ins", "e0,e0,e1"});
    CHECK(c.code == 0);
    auto j = nlohmann::json::parse(c.out);
    CHECK(j["pass"] == true);
    auto csv = cli({"tau", "--N", "2", "--weight", "4", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find(',') != std::string::npos);
  }

  TEST_CASE("cli: --out writes the same bytes") {
    auto path = std::filesystem::temp_directory_path() / "dntau_report_test.json";
    auto a = cli({"basis", "--N", "2", "--K", "2", "--order", "6", "--out", path.string()});
    CHECK(a.code == 0);
    std::ifstream f(path);
    std::stringstream got;
    got << f.rdbuf();
    CHECK(got.str() == cli({"basis", "--N", "2", "--K", "2", "--order", "6"}).out);
    std::filesystem::remove(path);
  }

  TEST_CASE("golden case list") {
    CHECK(golden_cases().size() >= 10);
    for (auto& g : golden_cases()) CHECK_FALSE(g.args.empty());
  }
}
