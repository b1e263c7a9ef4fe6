#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "dspsrl/core/episode_log.hpp"
#include "dspsrl/core/errors.hpp"
#include "dspsrl/core/rng.hpp"
#include "dspsrl/core/tabular_mdp.hpp"
#include "oracles.hpp"

using namespace dspsrl;

TEST_CASE("seeded streams are reproducible") {
  Rng a = seeded_rng(42);
  Rng b = seeded_rng(42);
  for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
  Rng c = seeded_rng(42);
  Rng d = seeded_rng(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(c.uniform() == d.uniform());
    CHECK(c.normal() == d.normal());
    CHECK(c.gamma(0.7) == d.gamma(0.7));
  }
}

TEST_CASE("sub-streams are separated by purpose, run index and seed") {
  Rng env = substream(42, 0, "env");
  Rng agent = substream(42, 0, "agent");
  Rng other_run = substream(42, 1, "env");
  const auto e = env();
  CHECK(e != agent());
  CHECK(e != other_run());
  CHECK(seeded_rng(1)() != seeded_rng(2)());
  Rng again = substream(42, 0, "env");
  CHECK(again() == e);
}

TEST_CASE("uniform variates lie in [0, 1)") {
  Rng rng = seeded_rng(3);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
}

TEST_CASE("categorical sampling") {
  Rng rng = seeded_rng(7);
  SUBCASE("degenerate row") {
    const std::vector<double> p{1.0, 0.0};
    for (int i = 0; i < 1000; ++i) CHECK(categorical_sample(p, rng) == 0);
  }
  SUBCASE("fair coin frequency") {
    const std::vector<double> p{0.5, 0.5};
    int zeros = 0;
    for (int i = 0; i < 100000; ++i) zeros += categorical_sample(p, rng) == 0;
    CHECK(std::abs(zeros / 1e5 - 0.5) <= 0.01);
  }
  SUBCASE("three categories pass a chi-square fit") {
    const std::vector<double> p{0.2, 0.3, 0.5};
    std::vector<std::size_t> counts(3, 0);
    for (int i = 0; i < 100000; ++i) ++counts[categorical_sample(p, rng)];
    CHECK(oracle::gof_p_value(counts, p) > 1e-3);
  }
  SUBCASE("malformed rows are rejected") {
    const std::vector<double> negative{-0.1, 1.1};
    const std::vector<double> off{0.5, 0.6};
    const std::vector<double> empty;
    CHECK_THROWS_AS(categorical_sample(negative, rng), ValidationError);
    CHECK_THROWS_AS(categorical_sample(off, rng), ValidationError);
    CHECK_THROWS_AS(categorical_sample(empty, rng), ValidationError);
  }
}

TEST_CASE("TabularMdp validates its tensor") {
  CHECK_NOTHROW(TabularMdp(1, 1, {1.0}, {0.0}));
  CHECK_THROWS_AS(TabularMdp(2, 1, {0.5, 0.6, 1.0, 0.0}, {0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(TabularMdp(2, 1, {-0.5, 1.5, 1.0, 0.0}, {0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(TabularMdp(1, 1, {1.0}, {std::numeric_limits<double>::infinity()}), ValidationError);
  CHECK_THROWS_AS(TabularMdp(1, 1, {1.0}, {0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(TabularMdp(0, 1, {}, {}), ValidationError);
}

TEST_CASE("TabularMdp successor lists match the dense rows") {
  boost::random::mt19937 gen(5);
  const TabularMdp mdp = oracle::random_mdp(gen, 4, 3);
  for (StateId s = 0; s < 4; ++s) {
    for (ActionId a = 0; a < 3; ++a) {
      double total = 0.0;
      for (const auto& succ : mdp.successors(s, a)) {
        CHECK(succ.probability == mdp.probability(s, a, succ.state));
        total += succ.probability;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("ScalarParamFamily invariants") {
  const TabularMdp a(1, 1, {1.0}, {1.0});
  const TabularMdp b(1, 1, {1.0}, {2.0});
  CHECK_THROWS_AS(ScalarParamFamily({1.0, 1.0}, {a, a}), ValidationError);
  CHECK_THROWS_AS(ScalarParamFamily({1.0, 2.0}, {a, b}), ValidationError);
  CHECK_NOTHROW(ScalarParamFamily({1.0, 2.0}, {a, b}, false));
  const ScalarParamFamily family({1.0, 2.0}, {a, a});
  CHECK(family.index_of(2.0) == 1);
  CHECK_THROWS_AS(family.index_of(3.0), ValidationError);
}

TEST_CASE("EpisodeLog validation and parameter lookup") {
  EpisodeLog log;
  log.switch_times = {1, 2, 4};
  log.sampled_params = {1.0, 2.0, 1.0};
  log.transitions = {{1, 0, 0, 0, 0.0}, {2, 0, 0, 0, 1.0}, {3, 0, 0, 0, 0.0}, {4, 0, 0, 0, 2.0}};
  CHECK_NOTHROW(log.validate());
  CHECK(log.param_at(1) == 1.0);
  CHECK(log.param_at(3) == 2.0);
  CHECK(log.param_at(4) == 1.0);
  CHECK(log.rewards() == std::vector<double>{0.0, 1.0, 0.0, 2.0});

  EpisodeLog bad = log;
  bad.switch_times = {2, 4};
  bad.sampled_params = {1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = log;
  bad.switch_times = {1, 4, 4};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = log;
  bad.sampled_params.pop_back();
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = log;
  bad.transitions[2].t = 2;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
