#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "greedylab/cli.hpp"
#include "greedylab/error.hpp"
#include "greedylab/instance.hpp"
#include "greedylab/verify.hpp"
#include "support.hpp"

using namespace greedylab;

namespace {

const std::string kFixtures = GREEDYLAB_FIXTURES;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> r;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) r.push_back(l);
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> r;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      r.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  r.push_back(cur);
  return r;
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1.5) == "-1.5");
}

TEST_CASE("instance parsing") {
  const auto inst = parse_instance(R"({
    "space": {"kind": "lp", "p": "inf"},
    "vectors": {"b": {"3": 2, "1": -1}, "a": [1, 0, 2]}
  })");
  CHECK(std::isinf(*inst.space.exponent()));
  REQUIRE(inst.vectors.size() == 2);
  CHECK(inst.vectors[0].first == "a");
  CHECK(*inst.find("a") == CoeffVector::sparse({{1, 1.0}, {3, 2.0}}));
  CHECK(*inst.find("b") == CoeffVector::sparse({{1, -1.0}, {3, 2.0}}));
  CHECK(inst.find("c") == nullptr);
  CHECK_FALSE(inst.family);
}

TEST_CASE("instance rejects bad input and names the field") {
  auto message = [](const char* text) {
    try {
      parse_instance(text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"space": {"kind": "lp", "p": 2}, "extra": 1})").find("'extra'") !=
        std::string::npos);
  CHECK(message(R"({"space": {"kind": "lp", "p": 2, "colour": 1}})").find("'space.colour'") !=
        std::string::npos);
  CHECK(message(R"({"space": {"kind": "lp", "p": 2}, "family": {"universe": 4, "size": 2}})")
            .find("'family.size'") != std::string::npos);
  CHECK(message(R"({"vectors": {}})").find("'space'") != std::string::npos);
  CHECK(message(R"({"space": {"kind": "banach"}})").find("'space.kind'") != std::string::npos);
  CHECK(message(R"({"space": {"kind": "lp", "p": 2}, "vectors": {"x": {"0": 1}}})")
            .find("'vectors.x.0'") != std::string::npos);
  CHECK(message("{not json") != "no error");
}

TEST_CASE("instance round trip") {
  for (const char* name : {"lp2", "weighted_democracy", "summing", "hilbert", "tampered"}) {
    const auto inst = load_instance(kFixtures + "/" + name + ".json");
    const auto text = serialize_instance(inst);
    const auto back = parse_instance(text);
    CHECK(back.space == inst.space);
    CHECK(back.vectors == inst.vectors);
    CHECK(back.verify == inst.verify);
    CHECK(back.scope.has_value() == inst.scope.has_value());
    CHECK(back.family.has_value() == inst.family.has_value());
    CHECK(serialize_instance(back) == text);
  }
}

TEST_CASE("instance round trip on random vectors") {
  testing::Gen gen(11);
  for (int i = 0; i < 50; ++i) {
    InstanceFile inst;
    inst.space = SpaceSpec::lp(1.0 + gen.uniform(0, 3));
    inst.vectors.emplace_back("v", gen.vector(12, 6));
    const auto back = parse_instance(serialize_instance(inst));
    CHECK(back.space == inst.space);
    CHECK(back.vectors == inst.vectors);
  }
}

TEST_CASE("greedy table") {
  const auto r = run({"greedy", "--in", kFixtures + "/lp2.json", "--vector", "x"});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "m,selected,residual,sigma,D,Dstar");
  const auto r0 = split(rows[1], ',');
  REQUIRE(r0.size() == 6);
  CHECK(std::stod(r0[2]) == doctest::Approx(std::sqrt(14.0)));
  CHECK(r0[2] == r0[3]);
  CHECK(r0[4].empty());
  CHECK(r0[5].empty());
  const double expect[] = {std::sqrt(5.0), 1.0, 0.0};
  for (int m = 1; m <= 3; ++m) {
    const auto c = split(rows[m + 1], ',');
    CHECK(std::stod(c[2]) == doctest::Approx(expect[m - 1]));
  }
  CHECK(split(rows[3], ',')[1] == "1 2");
  CHECK(run({"greedy", "--in", kFixtures + "/lp2.json", "--vector", "x"}).out == r.out);
}

TEST_CASE("greedy errors") {
  const auto missing = run({"greedy", "--in", kFixtures + "/lp2.json", "--vector", "nope"});
  CHECK(missing.code == exit_code::kUsage);
  CHECK(missing.out.empty());
  CHECK(missing.err.find("'vector'") != std::string::npos);
  CHECK(run({"greedy", "--in", kFixtures + "/unknown_field.json", "--vector", "x"}).code ==
        exit_code::kUsage);
  CHECK(run({"greedy", "--in", kFixtures + "/absent.json", "--vector", "x"}).code ==
        exit_code::kUsage);
  CHECK(run({"greedy", "--in", kFixtures + "/lp2.json"}).code == exit_code::kUsage);
  const auto cap = run({"greedy", "--in", kFixtures + "/weighted_democracy.json", "--vector",
                        "head", "--max-scope", "4"});
  CHECK(cap.code == exit_code::kScope);
  CHECK(cap.err.find("CapExceeded") != std::string::npos);
}

TEST_CASE("curve tables") {
  const auto r = run({"curve", "--p", "2", "--N", "4", "--m-min", "1", "--m-max", "8"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == "m,closed_form,D,Dstar,abs_delta");
  CHECK(std::stod(split(rows[2], ',')[1]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(split(rows[i], ',')[4]) <= 1e-9);

  const auto l1 = run({"curve", "--p", "1", "--N", "3", "--m-max", "7"});
  REQUIRE(l1.code == 0);
  const auto l1rows = lines(l1.out);
  const double expect[] = {2, 1, 0, 1, 2, 3, 3};
  REQUIRE(l1rows.size() == 8);
  for (int m = 1; m <= 7; ++m) {
    const auto c = split(l1rows[m], ',');
    CHECK(std::stod(c[1]) == expect[m - 1]);
    CHECK(std::stod(c[2]) == expect[m - 1]);
  }
  CHECK(run({"curve", "--p", "0.5"}).code == exit_code::kUsage);
  CHECK(run({"curve", "--p", "two"}).code == exit_code::kUsage);
}

TEST_CASE("constants report") {
  const auto r = run({"constants", "--in", kFixtures + "/lp2.json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"verdict\": \"exact-case: pass\"") != std::string::npos);
  CHECK(r.out.find("\"lower_bound\": 1.0") != std::string::npos);
  CHECK(run({"constants", "--in", kFixtures + "/lp2.json"}).out == r.out);
  CHECK(run({"constants", "--in", kFixtures + "/hilbert.json"}).code == exit_code::kUsage);
  CHECK(run({"constants"}).code == exit_code::kUsage);
}

TEST_CASE("summing basis constants report") {
  const auto r = run({"constants", "--in", kFixtures + "/summing.json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"verdict\": \"lower-bounds: reported\"") != std::string::npos);
}

TEST_CASE("verify exit codes") {
  const auto hilbert = run({"verify", "--in", kFixtures + "/hilbert.json", "--seed", "7"});
  CHECK(hilbert.code == 0);
  CHECK(lines(hilbert.out).back() == "result: pass");
  const auto tampered = run({"verify", "--in", kFixtures + "/tampered.json"});
  CHECK(tampered.code == exit_code::kVerifyFailed);
  CHECK(lines(tampered.out).back() == "result: fail");
  CHECK(tampered.err.find("closed form") != std::string::npos);
}

TEST_CASE("verify report is deterministic and seed dependent") {
  InstanceFile inst;
  VerifySettings small;
  small.hilbert_samples = 20;
  small.chain_samples = 40;
  inst.verify = small;
  const auto a = run_verify(inst, {.seed = 3}).render();
  CHECK(run_verify(inst, {.seed = 3}).render() == a);
  CHECK(run_verify(inst, {.seed = 4}).render() != a);
}

TEST_CASE("help and usage") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"curve", "--help"}).out.find("--m-max") != std::string::npos);
  CHECK(run({}).code == exit_code::kUsage);
  CHECK(run({"frobnicate"}).code == exit_code::kUsage);
  CHECK(run({"verify", "--seed", "x"}).code == exit_code::kUsage);
}
