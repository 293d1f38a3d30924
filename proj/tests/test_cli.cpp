#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "starclean/decide.hpp"
#include "starclean/errors.hpp"

using namespace starclean;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(STARCLEAN_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("group specs") {
  auto q8 = build_group("Q8");
  REQUIRE(q8.slc);
  CHECK(q8.slc->params.type == Presentation::D2);
  CHECK(q8.slc->params.k == 1);
  CHECK(q8.text == "Q8");
  auto q56 = build_group("Q8xC7");
  CHECK(q56.group->order() == 56);
  CHECK(q56.text == "Q8xC7");
  auto d5 = build_group("D5[k=1,k2=1,k3=1]");
  REQUIRE(d5.slc);
  CHECK(d5.slc->params.type == Presentation::D5);
  CHECK(is_slc(d5.group));
  CHECK(build_group("D2[k=2]").group->order() == 16);
  CHECK(build_group("D1[k=1]xC3").group->order() == 24);
  auto ab = build_group("C2xC4");
  CHECK_FALSE(ab.slc);
  CHECK(ab.group->order() == 8);
  auto cfg = build_group(R"({type: "D2", k: 1, abelian: [3]})");
  CHECK(cfg.text == "Q8xC3");
  CHECK(cfg.group->order() == 24);
  try {
    parse_group_spec("Q8xQ8");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
  CHECK_THROWS_AS(parse_group_spec("D6[k=1]"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("D1[k=1"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("D1[q=1]"), ParseError);
  CHECK_THROWS_AS(parse_group_spec(""), ParseError);
  CHECK_THROWS_AS(build_group("C5000"), CapacityError);
}

TEST_CASE("exit codes") {
  const auto d = run_cli("decide --group Q8xC7 --ring Q");
  CHECK(d.code == 0);
  CHECK(d.out.find("CorollaryA.2") != std::string::npos);
  const auto b = run_cli("brute --group Q8 --ring F3 --involution canonical --json");
  CHECK(b.code == 1);
  CHECK(json::parse(b.out)["star_clean"].contains("counterexample"));
  const auto l = run_cli("levels --prime 23");
  CHECK(l.code == 0);
  CHECK(l.out.find("Level4") != std::string::npos);
  CHECK(run_cli("decide --group Q8xC3 --ring Q").code == 1);
  CHECK(run_cli("decide --group Q8xC2 --ring Z/45").code == 1);
  CHECK(run_cli("decide --group Q8xC3x --ring Q").code > 2);
  CHECK(run_cli("decide --group Q8 --ring Z/4").code > 2);
  CHECK(run_cli("decide --group Q8").code > 2);
  CHECK(run_cli("frobnicate").code > 2);
}

TEST_CASE("JSON reports round trip and are deterministic") {
  for (const char* args : {"decide --group Q8xC3 --ring Q --json", "decide --group Q8xC7 --ring Q --json --explain",
                           "decide --group D1[k=1] --ring F3 --json",
                           "crossval --group Q8 --ring F3 --json",
                           "brute --group Q8xC2 --ring F3 --budget 1000 --samples 300 --seed 9 --json",
                           "lift --group C2 --ring F3 --involution identity --count 20 --json"}) {
    CAPTURE(args);
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.out == b.out);
    const auto rep = json::parse(a.out);
    if (rep.contains("reasons")) {
      const auto v = verdict_from_json(rep);
      CHECK(to_json(v)["verdict"] == rep["verdict"]);
      CHECK(to_json(v)["reasons"] == rep["reasons"]);
      CHECK(to_json(v)["certificates"] == rep["certificates"]);
    }
  }
}
