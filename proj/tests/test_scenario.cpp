#include "doctest.h"

#include <filesystem>
#include <string>

#include "lvsim/scenario.hpp"
#include "support.hpp"

using namespace lvsim;

TEST_CASE("bundled scenarios round-trip") {
  int count = 0;
  for (const auto &entry : std::filesystem::directory_iterator(testing::kDataDir / "scenarios")) {
    CAPTURE(entry.path().string());
    const Scenario first = load_scenario(entry.path());
    const std::string text = serialize_scenario(first);
    const Scenario second = parse_scenario(text);
    CHECK(first == second);
    CHECK(serialize_scenario(second) == text);
    CHECK(entry.path().stem().string() == first.name);
    ++count;
  }
  CHECK(count == 10);
}

TEST_CASE("bundled scenario contents") {
  const Scenario influencer = testing::scenario("influencer");
  CHECK(std::get<double>(influencer.aggression) == 0.814112);
  CHECK(influencer.p == 0.149);
  CHECK(influencer.c1 == 0.175);
  const State s = influencer.initial_state();
  CHECK(std::abs(s.u - 0.13669) < 5e-5);
  CHECK(std::abs(s.v - 0.8633) < 5e-5);

  const Scenario inaction = testing::scenario("inaction");
  const State i = inaction.initial_state();
  CHECK(i.u + i.v == 1.0);

  const Scenario spike = testing::scenario("taliban_spike_98_influencer");
  CHECK(spike.initial_state() == State{0.13669, 0.98});

  const Scenario stochastic = testing::scenario("stochastic_influencer");
  CHECK(stochastic.stochastic());
  CHECK(stochastic.aggression_model() == AggressionModel{0.814112, 0.027464});
  CHECK(stochastic.params(1) == stochastic.params(1));
  CHECK(testing::scenario("mitigation").aggression_model() == AggressionModel{1.0, 0.0});
}

TEST_CASE("parsing rules") {
  const std::string base = "name = s\na = 0.5\np = 0.149\nc1 = 0.175\nu0 = 0.2\nv0 = 0.3\n";
  const Scenario s = parse_scenario(base);
  CHECK(s.opts == IntegrationOptions{});
  CHECK(s.outputs.size() == 4);
  CHECK_FALSE(s.seed);

  const Scenario full = parse_scenario(base +
                                       "# comment\n\nt_end = 20\nrel_tol = 1e-9\n"
                                       "extinction_eps = 0.01\nseed = 12\n"
                                       "outputs = trajectory, summary\n");
  CHECK(full.opts.t_end == 20.0);
  CHECK(full.opts.rel_tol == 1e-9);
  CHECK(full.opts.extinction_eps == 0.01);
  CHECK(full.seed == 12u);
  CHECK(full.outputs == std::vector<Artifact>{Artifact::Trajectory, Artifact::Summary});
  CHECK(parse_scenario(serialize_scenario(full)) == full);

  CHECK_THROWS_AS(parse_scenario(base + "bogus = 1\n"), io::FormatError);
  CHECK_THROWS_AS(parse_scenario(base + "a = 0.4\n"), io::FormatError);
  CHECK_THROWS_AS(parse_scenario("name = s\na = 0.5\np = 0.149\nu0 = 0.2\nv0 = 0.3\n"),
                  io::FormatError);
  CHECK_THROWS_AS(parse_scenario(base + "u0_raw = 3\n"), io::FormatError);
  CHECK_THROWS_AS(parse_scenario(base + "a_mean = 0.5\n"), io::FormatError);
  CHECK_THROWS_AS(parse_scenario(base + "outputs = movie\n"), io::FormatError);
  CHECK_THROWS_AS(parse_scenario(base + "extinction_eps = 0.5\n"), io::FormatError);
  CHECK_THROWS_AS(parse_scenario(base + "t_end = abc\n"), io::FormatError);
  CHECK_THROWS_AS(parse_scenario("name = s\na = 1.5\np = 0.149\nc1 = 0.175\nu0 = 0.2\nv0 = 0.3\n"),
                  io::FormatError);
  CHECK_THROWS_AS(parse_scenario("name = s\na = 0.5\np = 0.149\nc1 = 0.175\nu0 = 1.2\nv0 = 0.3\n"),
                  io::FormatError);
  CHECK_THROWS_AS(parse_scenario("name = s\na = stochastic\np = 0.149\nc1 = 0.175\n"
                                 "u0 = 0.2\nv0 = 0.3\n"),
                  io::FormatError);
}

TEST_CASE("text helpers") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(io::parse_double(io::format_double(1.0 / 3.0), "x") == 1.0 / 3.0);
  CHECK(io::format_double(2.5, 15) == "2.5");
  CHECK_THROWS_AS(io::parse_double("1.0x", "x"), io::FormatError);
  CHECK_THROWS_AS(io::parse_uint("-3", "n"), io::FormatError);

  const auto table = io::parse_csv("\xEF\xBB\xBFx,y\n1,2\n\n3,4\n");
  CHECK(table.header == std::vector<std::string>{"x", "y"});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[1].line == 4);
  CHECK_THROWS_AS(table.column("z"), io::FormatError);
  CHECK_THROWS_AS(io::parse_csv("x,y\n1\n"), io::FormatError);
}
