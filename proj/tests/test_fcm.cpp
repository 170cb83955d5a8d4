#include <doctest.h>

#include <cmath>

#include "firecast/errors.hpp"
#include "firecast/fcm.hpp"
#include "firecast/rng.hpp"

#include "oracles.hpp"

using namespace firecast;

namespace {

const std::vector<std::vector<double>> kSanitaryWeights = {
    {0, 0, 0.6, 0.9, 0, 0, 0},  //
    {1, 0, 0, 0, 0, 0, 0},      //
    {0, 0.7, 0, 0, 0.9, 0, 0},  //
    {0, 0, 0, 0, 0, 0, 0.9},    //
    {0, 0, 0, 0, 0, -0.9, 0.9}, //
    {-0.3, 0, 0, 0, 0, 0, 0},   //
    {0, 0, 0, 0, 0, 0.8, 0}};

std::vector<Concept> sanitary_concepts() {
  const char* names[] = {"population of the city",
                         "migration of the population to the city",
                         "level of modernization of production",
                         "number of urban landfills",
                         "frequency of wildfires",
                         "diseases per thousand people",
                         "prevalence of bacteria in the environment"};
  std::vector<Concept> concepts;
  for (std::size_t i = 0; i < 7; ++i) concepts.push_back({i, names[i]});
  return concepts;
}

Fcm sanitary_fcm(FcmConfig config = {}) {
  return fcm_build(sanitary_concepts(), CognitiveMatrix::from_rows(kSanitaryWeights),
                   config);
}

std::vector<Concept> numbered_concepts(std::size_t n) {
  std::vector<Concept> concepts;
  for (std::size_t i = 0; i < n; ++i) concepts.push_back({i, "c" + std::to_string(i)});
  return concepts;
}

}  // namespace

TEST_CASE("fcm_build accepts the sanitary-condition matrix") {
  const Fcm fcm = sanitary_fcm();
  CHECK(fcm.size() == 7);
  CHECK(fcm.weight(1, 0) == 1.0);
  CHECK(fcm.weight(4, 5) == -0.9);
  CHECK(fcm.weight(5, 0) == -0.3);
}

TEST_CASE("fcm_build rejects weights outside [-1,1], naming the entry") {
  auto weights = kSanitaryWeights;
  weights[2][4] = 1.5;
  CHECK_THROWS_WITH_AS(
      fcm_build(sanitary_concepts(), CognitiveMatrix::from_rows(weights), {}),
      doctest::Contains("(2,4)"), ValidationError);
}

TEST_CASE("fcm_build enforces the zero-diagonal rule unless self-loops are on") {
  CognitiveMatrix identity(3);
  for (std::size_t i = 0; i < 3; ++i) identity.at(i, i) = 1.0;
  CHECK_THROWS_AS(fcm_build(numbered_concepts(3), identity, {}), ValidationError);

  FcmConfig loops;
  loops.allow_self_loops = true;
  CHECK(fcm_build(numbered_concepts(3), identity, loops).size() == 3);
}

TEST_CASE("fcm_build validates concepts and matrix shape") {
  CHECK_THROWS_AS(fcm_build(numbered_concepts(3), CognitiveMatrix(4), {}),
                  ValidationError);
  CHECK_THROWS_AS(
      CognitiveMatrix::from_rows({{0, 0}, {0, 0, 0}}),  // ragged
      ValidationError);

  std::vector<Concept> dup{{0, "a"}, {0, "b"}};
  CHECK_THROWS_AS(fcm_build(dup, CognitiveMatrix(2), {}), ValidationError);

  std::vector<Concept> unnamed{{0, ""}};
  CHECK_THROWS_AS(fcm_build(unnamed, CognitiveMatrix(1), {}), ValidationError);
}

TEST_CASE("resolve_linguistic is an exact lookup") {
  const LinguisticScale scale{{"extremely weak", 0.1}, {"moderately", 0.5}};
  CHECK(resolve_linguistic(scale, "moderately") == 0.5);
  CHECK_THROWS_WITH_AS(resolve_linguistic(scale, "huge"),
                       doctest::Contains("extremely weak"), InputError);

  const LinguisticScale negative{{"inhibits strongly", -0.9}};
  CHECK(resolve_linguistic(negative, "inhibits strongly") == -0.9);

  CHECK(resolve_linguistic(default_linguistic_scale(), "negative: strong") == -0.9);
  CHECK(resolve_linguistic(default_linguistic_scale(), "strong") == 0.9);
  CHECK_THROWS_AS(resolve_linguistic({}, "strong"), InputError);
}

TEST_CASE("fcm_step on the zero matrix lands every component on 0.5") {
  const Fcm fcm = fcm_build(numbered_concepts(4), CognitiveMatrix(4), {});
  const ActivationVector next = fcm_step(fcm, {0.1, 0.9, 0.0, 1.0});
  for (double v : next) CHECK(v == 0.5);
}

TEST_CASE("fcm_step from the wildfire-only state matches the closed form") {
  const Fcm fcm = sanitary_fcm();
  const ActivationVector next = fcm_step(fcm, {0, 0, 0, 0, 1, 0, 0});
  for (std::size_t j = 0; j < 5; ++j) CHECK(next[j] == 0.5);
  CHECK(std::abs(next[5] - 1.0 / (1.0 + std::exp(0.9))) < 1e-12);
  CHECK(std::abs(next[6] - 1.0 / (1.0 + std::exp(-0.9))) < 1e-12);
}

TEST_CASE("fcm_step validates the state vector") {
  const Fcm fcm = sanitary_fcm();
  CHECK_THROWS_AS(fcm_step(fcm, {0.5, 0.5}), DimensionError);
  CHECK_THROWS_AS(fcm_step(fcm, {0.5, 0.5, 0.5, 0.5, 1.5, 0.5, 0.5}), DomainError);
}

TEST_CASE("relabeling the concepts permutes the step output") {
  Rng rng(51);
  const std::size_t n = 4;
  std::vector<std::size_t> perm{2, 0, 3, 1};

  CognitiveMatrix weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) weights.at(i, j) = rng.uniform(-1.0, 1.0);
    }
  }
  CognitiveMatrix permuted(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      permuted.at(perm[i], perm[j]) = weights.at(i, j);
    }
  }
  ActivationVector state{0.2, 0.9, 0.4, 0.7};
  ActivationVector state_perm(n);
  for (std::size_t i = 0; i < n; ++i) state_perm[perm[i]] = state[i];

  const Fcm base = fcm_build(numbered_concepts(n), weights, {});
  const Fcm relabeled = fcm_build(numbered_concepts(n), permuted, {});
  const ActivationVector next = fcm_step(base, state);
  const ActivationVector next_perm = fcm_step(relabeled, state_perm);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(next_perm[perm[i]] == doctest::Approx(next[i]).epsilon(1e-12));
  }
}

TEST_CASE("fcm_run on the zero matrix fixes at the 0.5 vector") {
  const Fcm fcm = fcm_build(numbered_concepts(3), CognitiveMatrix(3), {});
  const Trajectory traj = fcm_run(fcm, {0.2, 0.8, 0.0});
  CHECK(traj.verdict == Verdict::FixedPoint);
  CHECK(traj.states.size() == 3);  // C(0) plus two iterates
  for (double v : traj.states.back()) CHECK(v == 0.5);

  // Starting at the fixed point converges one step earlier.
  const Trajectory at_fp = fcm_run(fcm, {0.5, 0.5, 0.5});
  CHECK(at_fp.verdict == Verdict::FixedPoint);
  CHECK(at_fp.states.size() == 2);
}

TEST_CASE("fcm_run with a zero iteration budget is exhausted at C(0)") {
  FcmConfig config;
  config.max_iters = 0;
  const Fcm fcm = fcm_build(numbered_concepts(2), CognitiveMatrix(2), config);
  const Trajectory traj = fcm_run(fcm, {0.3, 0.6});
  CHECK(traj.verdict == Verdict::Exhausted);
  REQUIRE(traj.states.size() == 1);
  CHECK(traj.states[0] == ActivationVector{0.3, 0.6});
}

TEST_CASE("sanitary map run matches the straight-line oracle") {
  const Fcm fcm = sanitary_fcm();
  const ActivationVector start(7, 0.5);
  const Trajectory traj = fcm_run(fcm, start);
  CHECK(traj.verdict == Verdict::FixedPoint);
  CHECK(traj.states.size() <= 101);

  const auto expected =
      oracles::fcm_oracle(kSanitaryWeights, start, 1.0, traj.states.size() - 1);
  REQUIRE(expected.size() == traj.states.size());
  for (std::size_t t = 0; t < expected.size(); ++t) {
    for (std::size_t j = 0; j < 7; ++j) {
      CHECK(std::abs(expected[t][j] - traj.states[t][j]) < 1e-9);
    }
  }
}

TEST_CASE("a high-gain self-inhibiting concept settles into a 2-cycle") {
  FcmConfig config;
  config.allow_self_loops = true;
  config.lambda = 20.0;
  CognitiveMatrix weights(1);
  weights.at(0, 0) = -1.0;
  const Fcm fcm = fcm_build(numbered_concepts(1), weights, config);

  const Trajectory traj = fcm_run(fcm, {1.0});
  CHECK(traj.verdict == Verdict::LimitCycle);
  CHECK(traj.period == 2);

  FcmConfig tiny = config;
  tiny.max_iters = 3;
  const Fcm short_run = fcm_build(numbered_concepts(1), weights, tiny);
  CHECK(fcm_run(short_run, {1.0}).verdict == Verdict::Exhausted);
}

TEST_CASE("trajectories are deterministic, stay in (0,1), and fixed points hold") {
  Rng rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    CognitiveMatrix weights(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) weights.at(i, j) = rng.uniform(-1.0, 1.0);
      }
    }
    ActivationVector initial(n);
    for (double& v : initial) v = rng.uniform();

    const Fcm fcm = fcm_build(numbered_concepts(n), weights, {});
    const Trajectory traj = fcm_run(fcm, initial);
    const Trajectory again = fcm_run(fcm, initial);
    CHECK(traj.states == again.states);
    CHECK(traj.verdict == again.verdict);

    for (std::size_t t = 1; t < traj.states.size(); ++t) {
      for (double v : traj.states[t]) {
        CHECK(v > 0.0);
        CHECK(v < 1.0);
      }
    }
    if (traj.verdict == Verdict::FixedPoint) {
      const ActivationVector re = fcm_step(fcm, traj.states.back());
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(re[j] - traj.states.back()[j]) < fcm.config.eps);
      }
    }
  }
}

TEST_CASE("scenario_compare with an identical perturbation is a no-op") {
  const Fcm fcm = sanitary_fcm();
  const ActivationVector base(7, 0.5);
  const ScenarioComparison cmp = scenario_compare(fcm, base, base);
  CHECK(cmp.comparable);
  for (double d : cmp.deltas) CHECK(d == 0.0);
}

TEST_CASE("scenario_compare against the oracle fixed points") {
  const Fcm fcm = sanitary_fcm();
  ActivationVector base(7, 0.5);
  ActivationVector raised = base;
  raised[4] = 1.0;
  const ScenarioComparison cmp = scenario_compare(fcm, base, raised);
  CHECK(cmp.comparable);

  const Trajectory base_traj = fcm_run(fcm, base);
  const Trajectory raised_traj = fcm_run(fcm, raised);
  const auto base_oracle =
      oracles::fcm_oracle(kSanitaryWeights, base, 1.0, base_traj.states.size() - 1);
  const auto raised_oracle = oracles::fcm_oracle(kSanitaryWeights, raised, 1.0,
                                                 raised_traj.states.size() - 1);
  for (std::size_t j = 0; j < 7; ++j) {
    const double expected = raised_oracle.back()[j] - base_oracle.back()[j];
    CHECK(std::abs(cmp.deltas[j] - expected) < 1e-9);
  }
}

TEST_CASE("scenario_compare on the zero matrix erases the initial state") {
  const Fcm fcm = fcm_build(numbered_concepts(3), CognitiveMatrix(3), {});
  const ScenarioComparison cmp =
      scenario_compare(fcm, {0.1, 0.2, 0.3}, {0.9, 0.8, 0.7});
  CHECK(cmp.comparable);
  for (double d : cmp.deltas) CHECK(d == 0.0);
}

TEST_CASE("validation totality over fuzzed matrices") {
  Rng rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    CognitiveMatrix weights(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) weights.at(i, j) = rng.uniform(-1.0, 1.0);
      }
    }
    // Every in-range, zero-diagonal matrix is accepted.
    CHECK(fcm_build(numbered_concepts(n), weights, {}).size() == n);

    // Any single out-of-range entry is rejected.
    CognitiveMatrix bad = weights;
    const std::size_t i = rng.below(n);
    const std::size_t j = rng.below(n);
    bad.at(i, j) = (rng.below(2) == 0 ? 1.0 : -1.0) * (1.0 + rng.uniform(1e-9, 10.0));
    CHECK_THROWS_AS(fcm_build(numbered_concepts(n), bad, {}), ValidationError);
  }
}
