#include <doctest.h>

#include <algorithm>

#include "ndschaos/error.hpp"
#include "ndschaos/harness.hpp"

using namespace ndschaos;

namespace {

NDSystem logistic_family() {
  return NDSystem(Space::unit_interval(), ParametricFamily{FamilyKind::Logistic, {ParamDecay::Harmonic, 4.0, -0.5}});
}

const Check* find(const ExperimentReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("report status rollup and serialization") {
  ExperimentReport r;
  r.id = "demo";
  r.system = "sys";
  r.param("k", "2");
  r.add("a", CheckStatus::Info, "x");
  CHECK(r.overall() == CheckStatus::Pass);
  r.add("b", CheckStatus::Exploratory, "y");
  CHECK(r.overall() == CheckStatus::Exploratory);
  r.add("c", true, "z");
  CHECK(r.overall() == CheckStatus::Pass);
  r.add("d", CheckStatus::HypothesisUnmet, "w");
  CHECK(r.overall() == CheckStatus::HypothesisUnmet);
  r.add("e", false, "v");
  CHECK(r.overall() == CheckStatus::Fail);
  CHECK_FALSE(r.passed());
  const std::string s = r.serialize();
  CHECK(s.rfind("experiment demo\nsystem sys\nparam k 2\n", 0) == 0);
  CHECK(s.find("check fail e | v\n") != std::string::npos);
  CHECK(s.find("overall fail\n") != std::string::npos);
}

TEST_CASE("uniform convergence check") {
  const auto c = check_uniform_convergence(logistic_family());
  CHECK(c.has_limit);
  CHECK(c.decays);
  // |f_n - g| = 0.5/n * max x(1-x) = 1/(8n).
  CHECK(c.gaps[1].second == doctest::Approx(1.0 / 800).epsilon(1e-9));
  const auto b = check_uniform_convergence(open_question_system());
  CHECK(b.has_limit);
  CHECK_FALSE(b.decays);
  CHECK_FALSE(check_uniform_convergence(build_counterexample()).has_limit);
}

TEST_CASE("Li-Yorke invariance on a convergent logistic family") {
  LiYorkeInvarianceParams p;
  p.pairs = 24;
  p.horizon = 20000;
  const auto r = run_liyorke_invariance(logistic_family(), 2, p);
  CHECK(r.overall() == CheckStatus::Pass);
  CHECK(find(r, "forward")->status == CheckStatus::Pass);
  CHECK(find(r, "backward")->status == CheckStatus::Pass);
  CHECK(run_liyorke_invariance(open_question_system(), 2, p).overall() == CheckStatus::HypothesisUnmet);
  CHECK_THROWS_AS(run_liyorke_invariance(logistic_family(), 0, p), Error);
}

TEST_CASE("modulus estimate matches the Lipschitz bound of the tent map") {
  const auto tent = autonomous(Space::unit_interval(), MapSpec::tent(2.0));
  // Slope 2 per step: two steps need |x - y| < s / 4.
  CHECK(estimate_modulus(tent, 2, 0.5, 8) == 0.125);
  CHECK(estimate_modulus(autonomous(Space::unit_interval(), MapSpec::identity()), 5, 0.5, 8) == 0.25);
}

TEST_CASE("DC2' invariance relations hold on the logistic family") {
  Dc2PrimeParams p;
  p.horizon = 4000;
  const auto r = run_dc2prime_invariance(logistic_family(), 3, p);
  CHECK(r.overall() == CheckStatus::Pass);
  CHECK(find(r, "floor count relation")->status == CheckStatus::Pass);
  CHECK(std::count_if(r.checks.begin(), r.checks.end(),
                      [](const Check& c) { return c.name.rfind("modulus relation", 0) == 0; }) == 4);
  REQUIRE(r.artifacts.size() == 2);
  CHECK(r.artifacts[1].profile.horizon == 4000 / 3);
  CHECK(run_dc2prime_invariance(open_question_system(), 2, p).overall() == CheckStatus::HypothesisUnmet);
}

TEST_CASE("Kato invariance experiment") {
  KatoParams p;
  p.access_horizon = 300;
  const auto r = run_kato_invariance(autonomous(Space::unit_interval(), MapSpec::tent(1.9)), {2, 3}, p);
  CHECK(r.overall() == CheckStatus::Pass);
  CHECK(find(r, "iterate k=3") != nullptr);
  CHECK(run_kato_invariance(build_counterexample(), {2}, p).overall() == CheckStatus::HypothesisUnmet);
}

TEST_CASE("sequence chaos construction at a short horizon") {
  SequenceChaosParams p;
  p.horizon = 720;
  p.count = 10;
  const auto r = run_sequence_chaos_construction(p);
  CHECK(r.overall() == CheckStatus::Pass);
  for (const char* cp : {"checkpoint 1", "checkpoint 2", "checkpoint 6", "checkpoint 24", "checkpoint 120",
                         "checkpoint 720"})
    CHECK(find(r, cp) != nullptr);
  CHECK(find(r, "checkpoint 5040") == nullptr);
  CHECK(r.artifacts.size() == 4);
}

TEST_CASE("counterexample experiment") {
  Dc3Params p;
  p.identity_n = 60;
  p.identity_points = 10;
  const auto r = run_dc3_counterexample(p);
  CHECK(r.overall() == CheckStatus::Pass);
  for (const char* c : {"(a)", "(b)", "(c)", "(d)", "(e)"}) {
    REQUIRE(find(r, c) != nullptr);
    CHECK(find(r, c)->status == CheckStatus::Pass);
  }
  CHECK(find(r, "factorial-block pair")->status == CheckStatus::Info);
  p.horizon = 100;
  CHECK_THROWS_AS(run_dc3_counterexample(p), Error);
}

TEST_CASE("open question probe is exploratory only") {
  OpenQuestionParams p;
  p.horizon = 4000;
  p.pairs = 2;
  const auto r = run_open_question_probe(open_question_system(), p);
  CHECK(r.overall() == CheckStatus::Exploratory);
  CHECK(std::all_of(r.checks.begin(), r.checks.end(),
                    [](const Check& c) { return c.status == CheckStatus::Exploratory; }));
  CHECK(r.checks.size() == 1 + 2 * 3);
}
