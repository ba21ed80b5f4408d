#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "ctxlab/hidden_variable.hpp"
#include "ctxlab/spce.hpp"

using namespace ctxlab;
using namespace ctxlab::spce;
using std::numbers::pi;

namespace {

Direction deg(double d) { return Direction::in_plane_degrees(d); }

// p12 = (1 - a.b) / 4 is linear in a and b, and the cap mean of a is
// (1 - eps/2) times the axis, so the cap average is closed-form.
double passage_oracle(double eps_a, double eps_b, double theta) {
  return (1.0 - (1.0 - eps_a / 2.0) * (1.0 - eps_b / 2.0) * std::cos(theta)) / 4.0;
}

}  // namespace

TEST_CASE("singlet table") {
  for (double t : {0.0, 30.0, 90.0, 123.0, 180.0}) {
    const auto p = singlet_joint_probs(deg(0), deg(t));
    const double th = t * pi / 180.0;
    CHECK(p.sum() == doctest::Approx(1.0));
    CHECK(p.pp == doctest::Approx(std::sin(th / 2) * std::sin(th / 2) / 2));
    CHECK(p.mm == doctest::Approx(p.pp));
    CHECK(p.pm == doctest::Approx(std::cos(th / 2) * std::cos(th / 2) / 2));
    CHECK(p.mp == doctest::Approx(p.pm));
  }
}

TEST_CASE("perfect anti-correlation without smearing") {
  const Polarizer a(deg(20), 0.0), b(deg(20), 0.0);
  const auto run = run_experiment(a, b, 5000, 1);
  CHECK(same_outcome_fraction(run) == 0.0);
  CHECK(empirical_correlator(run) == 1.0);
  CHECK(correlator_stderr(run) == 0.0);
}

TEST_CASE("correlator matches the smeared cosine law") {
  struct Case {
    double ea, eb, theta_deg;
  };
  for (const Case c : {Case{0, 0, 45}, Case{0.3, 0.3, 45}, Case{0.1, 0.5, 120}, Case{1.0, 0.2, 10}}) {
    const auto run = run_experiment(Polarizer(deg(0), c.ea), Polarizer(deg(c.theta_deg), c.eb), 200000, 17);
    const double expected = (1 - c.ea / 2) * (1 - c.eb / 2) * std::cos(c.theta_deg * pi / 180);
    CHECK(std::abs(empirical_correlator(run) - expected) < 5 * correlator_stderr(run));
  }
}

TEST_CASE("runs are reproducible and independent of the worker count") {
  const Polarizer a(deg(0), 0.2), b(deg(60), 0.4);
  const auto one = run_experiment(a, b, 3001, 99, {false, 1});
  const auto four = run_experiment(a, b, 3001, 99, {false, 4});
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one.records[i].a == four.records[i].a);
    REQUIRE(one.records[i].b == four.records[i].b);
    REQUIRE(one.records[i].s1 == four.records[i].s1);
    REQUIRE(one.records[i].s2 == four.records[i].s2);
  }
  CHECK(run_experiment(a, b, 10, 99).statistically_weak());
  CHECK_FALSE(one.statistically_weak());
}

TEST_CASE("microscopic settings stay in their caps; freezing pins them") {
  const Polarizer a(deg(0), 0.3), b(Direction::from_components(0, 1, 1), 0.6);
  const auto run = run_experiment(a, b, 2000, 5);
  for (const auto& r : run.records) {
    REQUIRE(a.cap.contains(r.a));
    REQUIRE(b.cap.contains(r.b));
  }
  CHECK_FALSE(run.records[0].a == run.records[1].a);

  const auto frozen = run_experiment(a, b, 2000, 5, {true, 1});
  for (const auto& r : frozen.records) {
    REQUIRE(r.a == frozen.records[0].a);
    REQUIRE(r.b == frozen.records[0].b);
  }
}

TEST_CASE("passage probability: quadrature equals the closed form") {
  for (double ea : {0.0, 0.1, 0.5, 2.0}) {
    for (double eb : {0.0, 0.3, 1.2}) {
      for (double t : {0.0, 37.0, 90.0, 180.0}) {
        const auto q = passage_probability(Polarizer(deg(0), ea), Polarizer(deg(t), eb), Quadrature{});
        CHECK(q.value == doctest::Approx(passage_oracle(ea, eb, t * pi / 180)).epsilon(1e-10));
        CHECK(q.std_error == 0.0);
      }
    }
  }
  // matched axes at eps = 0.1: half the same-outcome rate 0.04875
  const auto matched = passage_probability(Polarizer(deg(0), 0.1), Polarizer(deg(0), 0.1), Quadrature{});
  CHECK(matched.value == doctest::Approx(0.024375).epsilon(1e-10));
}

TEST_CASE("passage probability: Monte Carlo agrees with quadrature") {
  const Polarizer a(deg(0), 0.4), b(deg(70), 0.8);
  const auto q = passage_probability(a, b, Quadrature{});
  const auto mc = passage_probability(a, b, MonteCarlo{200000, 3});
  CHECK(mc.std_error > 0.0);
  CHECK(std::abs(mc.value - q.value) < 5 * mc.std_error);
}

TEST_CASE("CHSH validates correlators") {
  CHECK(chsh(1, -1, 1, 1) == 4.0);
  CHECK(chsh(0.5, -0.5, 0.5, 0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(chsh(1.01, 0, 0, 0), std::domain_error);
  CHECK_THROWS_AS(chsh(0, NAN, 0, 0), std::domain_error);
  const double r = std::sqrt(0.5);
  CHECK(chsh(r, -r, r, r) == doctest::Approx(2 * std::sqrt(2.0)));
}

TEST_CASE("per-sample CHSH term is bounded by 2") {
  for (int x : {-1, 1})
    for (int xp : {-1, 1})
      for (int y : {-1, 1})
        for (int yp : {-1, 1}) CHECK(chsh_sample_term(x, xp, y, yp) == 2.0);

  RngStream rng(4, 0);
  for (int i = 0; i < 100000; ++i) {
    const double m1 = 2 * rng.uniform() - 1, m1p = 2 * rng.uniform() - 1;
    const double m2 = 2 * rng.uniform() - 1, m2p = 2 * rng.uniform() - 1;
    REQUIRE(chsh_sample_term(m1, m1p, m2, m2p) <= 2.0 + 1e-15);
    const auto b = independent_bound_check(m1, m1p, m2, m2p);
    REQUIRE(b.bound_holds);
    REQUIRE(b.lhs <= b.middle + 1e-15);
    REQUIRE(b.middle <= 2.0 + 1e-15);
    REQUIRE(b.middle == doctest::Approx(std::abs(m2 - m2p) + std::abs(m2 + m2p)));
  }
}

TEST_CASE("shared-lambda sign model: linear correlator and S <= 2") {
  const auto settings = SettingQuad::in_plane_degrees(0, 90, 45, 135);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto res = run_shared_lambda_model(settings, 20000, seed);
    CHECK(res.correlators.chsh() <= 2.0 + 1e-12);
    CHECK(res.run.lambdas.size() == 20000);
  }
  const auto big = run_shared_lambda_model(settings, 200000, 42, 3);
  const double se = 1.0 / std::sqrt(200000.0);
  CHECK(std::abs(big.correlators.ab - 0.5) < 5 * se);
  CHECK(std::abs(big.correlators.ab_prime + 0.5) < 5 * se);
  CHECK(std::abs(big.correlators.a_prime_b - 0.5) < 5 * se);
  CHECK(std::abs(big.correlators.a_prime_b_prime - 0.5) < 5 * se);

  const auto one = run_shared_lambda_model(settings, 999, 8, 1);
  const auto many = run_shared_lambda_model(settings, 999, 8, 4);
  CHECK(one.correlators.ab == many.correlators.ab);
  CHECK(one.correlators.a_prime_b_prime == many.correlators.a_prime_b_prime);
}

TEST_CASE("factorized sign model: p(A, B) = theta / (2 pi)") {
  const auto model = sign_detection_model();
  for (double t : {0.0, 45.0, 90.0, 150.0, 180.0}) {
    const auto est = ch_factorized_probability(model, deg(0), deg(t), MonteCarlo{200000, 1});
    const double expected = t / 360.0;
    CHECK(std::abs(est.value - expected) < 5 * est.std_error + 1e-12);
  }
}

TEST_CASE("factorized model with p2 = [B.lambda > 0]: p = (pi - theta) / (2 pi)") {
  auto model = sign_detection_model();
  model.p2 = [](const Direction& l, const Direction& s) { return s.dot(l) > 0 ? 1.0 : 0.0; };
  for (double t : {0.0, 60.0, 90.0, 180.0}) {
    const auto est = ch_factorized_probability(model, deg(0), deg(t), MonteCarlo{200000, 2});
    CHECK(std::abs(est.value - (180.0 - t) / 360.0) < 5 * est.std_error + 1e-12);
  }
}

TEST_CASE("factorized model: discrete priors are exact and validated") {
  FactorizedModel model = sign_detection_model();
  model.prior = DiscretePrior{{deg(10), deg(100), deg(190), deg(280)}, {0.25, 0.25, 0.25, 0.25}};
  // A = 0 deg detects lambda at 10 and 280; B = 90 deg misses at 190 and 280.
  const auto est = ch_factorized_probability(model, deg(0), deg(90));
  CHECK(est.value == doctest::Approx(0.25));
  CHECK(est.std_error == 0.0);

  model.prior = DiscretePrior{{deg(10), deg(100)}, {0.5, 0.4}};
  CHECK_THROWS_AS(ch_factorized_probability(model, deg(0), deg(90)), std::domain_error);
  model.prior = DiscretePrior{{deg(10)}, {-0.5}};
  CHECK_THROWS_AS(ch_factorized_probability(model, deg(0), deg(90)), std::domain_error);

  FactorizedModel bad = sign_detection_model();
  bad.p1 = [](const Direction&, const Direction&) { return 1.5; };
  CHECK_THROWS_AS(ch_factorized_probability(bad, deg(0), deg(90), MonteCarlo{100, 0}), std::domain_error);
}

TEST_CASE("factorized correlators obey the CHSH bound") {
  const auto settings = SettingQuad::in_plane_degrees(0, 90, 45, 135);
  const auto q = ch_correlators(sign_detection_model(), settings, MonteCarlo{100000, 6});
  CHECK(q.chsh() <= 2.0);
  CHECK(std::abs(q.ab - 0.5) < 5.0 / std::sqrt(100000.0));
}

TEST_CASE("singlet table is exchange- and rotation-invariant") {
  RngStream rng(30, 0);
  for (int i = 0; i < 500; ++i) {
    const auto a = sample_sphere(rng), b = sample_sphere(rng);
    const auto p = singlet_joint_probs(a, b);
    REQUIRE(p.pp >= 0.0);
    REQUIRE(p.pm >= 0.0);
    REQUIRE(p.mp >= 0.0);
    REQUIRE(p.mm >= 0.0);
    REQUIRE(p.sum() == doctest::Approx(1.0));
    const auto swapped = singlet_joint_probs(b, a);
    REQUIRE(swapped.pp == doctest::Approx(p.pp));
    REQUIRE(swapped.pm == doctest::Approx(p.mp));
    const auto axis = sample_sphere(rng);
    const double angle = 2 * pi * rng.uniform();
    const auto rot = singlet_joint_probs(a.rotated(axis, angle), b.rotated(axis, angle));
    REQUIRE(rot.pp == doctest::Approx(p.pp).epsilon(1e-9));
    REQUIRE(rot.pm == doctest::Approx(p.pm).epsilon(1e-9));
  }
  const auto q = singlet_joint_probs(deg(0), deg(90));
  for (double v : {q.pp, q.pm, q.mp, q.mm}) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("no signalling: Alice's marginal ignores Bob's setting") {
  const std::size_t n = 100000;
  const Polarizer a(deg(0), 0.2);
  double plus[2] = {0, 0};
  int k = 0;
  for (double tb : {10.0, 130.0}) {
    const auto run = run_experiment(a, Polarizer(deg(tb), 0.4), n, 31 + k);
    for (const auto& r : run.records) plus[k] += r.s1 > 0;
    ++k;
  }
  const double se = std::sqrt(2 * 0.25 / n);
  CHECK(std::abs(plus[0] / n - plus[1] / n) < 4 * se);
  CHECK(std::abs(plus[0] / n - 0.5) < 4 * std::sqrt(0.25 / n));
}

TEST_CASE("correlator law over an angle and smearing grid") {
  const std::size_t n = 40000;
  std::uint64_t seed = 40;
  for (double eps : {0.0, 0.1, 0.3}) {
    for (double t : {0.0, 30.0, 60.0, 90.0, 120.0, 180.0}) {
      const auto run = run_experiment(Polarizer(deg(0), eps), Polarizer(deg(t), eps), n, seed++);
      const double expected = (1 - eps / 2) * (1 - eps / 2) * std::cos(t * pi / 180);
      CHECK(std::abs(empirical_correlator(run) - expected) < 4 / std::sqrt(double(n)));
    }
  }
  const auto matched = run_experiment(Polarizer(deg(0), 0.2), Polarizer(deg(0), 0.2), 100000, 41);
  CHECK(std::abs(empirical_correlator(matched) - 0.81) < 4 / std::sqrt(100000.0));
  CHECK_THROWS_AS(run_experiment(Polarizer(deg(0), 0.0), Polarizer(deg(0), 0.0), 0, 1), std::domain_error);
}

TEST_CASE("shared-lambda sign model is perfectly correlated at equal settings") {
  const auto res = run_shared_lambda_model(SettingQuad::in_plane_degrees(20, 20, 20, 20), 5000, 3);
  CHECK(res.correlators.ab == 1.0);
  CHECK(res.correlators.a_prime_b_prime == 1.0);
}

TEST_CASE("factorized model with constant detection maps") {
  FactorizedModel model = sign_detection_model();
  model.p1 = [](const Direction&, const Direction&) { return 1.0; };
  model.p2 = model.p1;
  CHECK(ch_factorized_probability(model, deg(0), deg(50), MonteCarlo{1000, 1}).value == 1.0);
  model.p1 = [](const Direction&, const Direction&) { return 0.5; };
  model.p2 = model.p1;
  const auto half = ch_factorized_probability(model, deg(0), deg(50), MonteCarlo{1000, 1});
  CHECK(half.value == 0.25);
  CHECK(half.std_error == 0.0);
}

TEST_CASE("independent bound examples") {
  const auto extremal = independent_bound_check(1, 1, 1, -1);
  CHECK(extremal.lhs == 2.0);
  CHECK(extremal.bound_holds);
  const auto zero = independent_bound_check(0, 0, 0.3, -0.7);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.bound_holds);
  CHECK_THROWS_AS(independent_bound_check(0, 0, 1.5, 0), std::domain_error);
}
