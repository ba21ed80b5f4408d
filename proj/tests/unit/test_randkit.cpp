#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "ctxlab/parallel.hpp"
#include "ctxlab/randkit.hpp"

using namespace ctxlab;

TEST_CASE("philox4x32-10 known-answer vectors") {
  using philox::Counter;
  using philox::Key;
  CHECK(philox::philox4x32_10(Counter{0, 0, 0, 0}, Key{0, 0}) ==
        Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox::philox4x32_10(Counter{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, Key{0xffffffff, 0xffffffff}) ==
        Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox::philox4x32_10(Counter{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, Key{0xa4093822, 0x299f31d0}) ==
        Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::vector<std::uint64_t> va, vc, vd;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    va.push_back(x);
    vc.push_back(c.next_u64());
    vd.push_back(d.next_u64());
  }
  CHECK(va != vc);
  CHECK(va != vd);
  CHECK(a.position() == 64);
  CHECK(a.master_seed() == 42);
  CHECK(a.stream_id() == 7);
}

TEST_CASE("uniform, uniform_open and below stay in range") {
  RngStream rng(1, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = rng.uniform_open();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    sum += u;
  }
  // mean of U[0,1) has sd 1/sqrt(12 n)
  CHECK(std::abs(sum / n - 0.5) < 5.0 / std::sqrt(12.0 * n));

  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) hist[rng.below(7)]++;
  for (int h : hist) CHECK(std::abs(h - 10000) < 5 * std::sqrt(10000 * 6.0 / 7.0));
  CHECK_THROWS_AS(rng.below(0), std::domain_error);
  CHECK(rng.below(1) == 0);
}

TEST_CASE("derive_seed separates tags") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t tag = 0; tag < 1000; ++tag) seen.insert(derive_seed(5, tag));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(5, 1) == derive_seed(5, 1));
  CHECK(derive_seed(5, 1) != derive_seed(6, 1));
}

TEST_CASE("Direction normalizes and rejects degenerate input") {
  const auto d = Direction::from_components(3, 0, 4);
  CHECK(d.x() == doctest::Approx(0.6));
  CHECK(d.z() == doctest::Approx(0.8));
  CHECK(std::abs(d.dot(d) - 1.0) < 1e-12);
  CHECK_THROWS_AS(Direction::from_components(0, 0, 0), std::domain_error);
  CHECK_THROWS_AS(Direction::from_components(NAN, 0, 1), std::domain_error);

  const auto e = Direction::in_plane_degrees(90);
  CHECK(std::abs(e.y() - 1.0) < 1e-12);
  CHECK(angle_between(Direction::in_plane_degrees(0), Direction::in_plane_degrees(45)) ==
        doctest::Approx(std::numbers::pi / 4));
  CHECK(angle_between(d, -d) == doctest::Approx(std::numbers::pi));
  CHECK(angle_between(d, d) == 0.0);
}

TEST_CASE("rotation and orthonormal complement") {
  const auto z = Direction::from_components(0, 0, 1);
  const auto x = Direction::from_components(1, 0, 0);
  const auto r = x.rotated(z, std::numbers::pi / 2);
  CHECK(r.y() == doctest::Approx(1.0));
  CHECK(std::abs(r.x()) < 1e-12);

  RngStream rng(9, 0);
  for (int i = 0; i < 100; ++i) {
    const auto v = sample_sphere(rng);
    const auto [u, w] = v.orthonormal_complement();
    CHECK(std::abs(u.dot(v)) < 1e-12);
    CHECK(std::abs(w.dot(v)) < 1e-12);
    CHECK(std::abs(u.dot(w)) < 1e-12);
    // right-handed: u x w = v
    const double cx = u.y() * w.z() - u.z() * w.y();
    const double cy = u.z() * w.x() - u.x() * w.z();
    const double cz = u.x() * w.y() - u.y() * w.x();
    CHECK(cx * v.x() + cy * v.y() + cz * v.z() == doctest::Approx(1.0));
  }
}

TEST_CASE("CapSpec bounds") {
  const auto z = Direction::from_components(0, 0, 1);
  CHECK_NOTHROW(CapSpec(z, 0.0));
  CHECK_NOTHROW(CapSpec(z, 2.0));
  CHECK_THROWS_AS(CapSpec(z, -0.01), std::domain_error);
  CHECK_THROWS_AS(CapSpec(z, 2.01), std::domain_error);
  CHECK_THROWS_AS(CapSpec(z, NAN), std::domain_error);
}

TEST_CASE("cap sampling: membership and moments of a.axis") {
  RngStream rng(3, 1);
  const auto axis = Direction::from_components(1, 2, -2);
  for (double eps : {0.05, 0.3, 1.0, 2.0}) {
    const CapSpec cap(axis, eps);
    const int n = 100000;
    double sum = 0.0;
    int upper = 0;
    for (int i = 0; i < n; ++i) {
      const auto a = sample_cap(cap, rng);
      REQUIRE(cap.contains(a));
      const double c = a.dot(axis);
      sum += c;
      if (c >= 1.0 - eps / 2.0) ++upper;
    }
    // cos(theta) ~ U[1 - eps, 1]: mean 1 - eps/2, sd eps/sqrt(12)
    const double sd = eps / std::sqrt(12.0);
    CHECK(std::abs(sum / n - (1.0 - eps / 2.0)) < 5.0 * sd / std::sqrt(n));
    CHECK(std::abs(upper - n / 2) < 5.0 * std::sqrt(n / 4.0));
  }
  const CapSpec point(axis, 0.0);
  CHECK(sample_cap(point, rng) == axis);
}

TEST_CASE("sphere sampling is isotropic to first and second order") {
  RngStream rng(11, 0);
  const int n = 100000;
  double mx = 0, my = 0, mz = 0, zz = 0;
  for (int i = 0; i < n; ++i) {
    const auto v = sample_sphere(rng);
    mx += v.x();
    my += v.y();
    mz += v.z();
    zz += v.z() * v.z();
  }
  const double tol = 5.0 / std::sqrt(3.0 * n);
  CHECK(std::abs(mx / n) < tol);
  CHECK(std::abs(my / n) < tol);
  CHECK(std::abs(mz / n) < tol);
  CHECK(std::abs(zz / n - 1.0 / 3.0) < 0.01);
}

TEST_CASE("hypergeometric step probability") {
  CHECK(hypergeometric_step_prob(0, 0, 51) == doctest::Approx(0.5));
  CHECK(hypergeometric_step_prob(1, 1, 51) == doctest::Approx(50.0 / 101.0));
  CHECK(hypergeometric_step_prob(1, 0, 51) == doctest::Approx(51.0 / 101.0));
  CHECK(hypergeometric_step_prob(3, 2, 2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(hypergeometric_step_prob(4, 2, 2), std::domain_error);
  CHECK_THROWS_AS(hypergeometric_step_prob(2, 3, 2), std::domain_error);
  CHECK_THROWS_AS(hypergeometric_step_prob(3, 0, 2), std::domain_error);
}

TEST_CASE("parallel_for output does not depend on worker count") {
  auto run = [](unsigned workers) {
    std::vector<std::uint64_t> out(1001);
    parallel_for(out.size(), workers, [&](std::size_t i) { out[i] = substream(77, i).next_u64(); });
    return out;
  };
  const auto one = run(1);
  CHECK(run(2) == one);
  CHECK(run(3) == one);
  CHECK(run(8) == one);
  CHECK(run(0) == one);

  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 57) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("hypergeometric step probability matches path enumeration") {
  // Enumerate every distinguishable draw order of an N/N urn and count, for each
  // (k, m) prefix, how often draw k+1 is blue.
  for (std::uint64_t n = 1; n <= 4; ++n) {
    std::vector<int> coins(2 * n, 0);
    for (std::uint64_t i = 0; i < n; ++i) coins[i] = 1;
    std::vector<int> idx(2 * n);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::vector<std::vector<double>> blue(2 * n, std::vector<double>(n + 1, 0.0));
    std::vector<std::vector<double>> seen(2 * n, std::vector<double>(n + 1, 0.0));
    do {
      std::uint64_t m = 0;
      for (std::uint64_t k = 0; k < 2 * n; ++k) {
        seen[k][m] += 1;
        const int c = coins[static_cast<std::size_t>(idx[k])];
        blue[k][m] += c;
        m += static_cast<std::uint64_t>(c);
      }
    } while (std::next_permutation(idx.begin(), idx.end()));
    for (std::uint64_t k = 0; k < 2 * n; ++k) {
      for (std::uint64_t m = 0; m <= std::min(k, n); ++m) {
        if (seen[k][m] == 0) continue;
        CHECK(hypergeometric_step_prob(k, m, n) == doctest::Approx(blue[k][m] / seen[k][m]));
      }
    }
  }
  CHECK(hypergeometric_step_prob(100, 50, 51) == doctest::Approx(0.5));
  CHECK(hypergeometric_step_prob(51, 51, 51) == 0.0);
}

TEST_CASE("full-sphere cap has no preferred direction") {
  RngStream rng(21, 0);
  const CapSpec cap(Direction::from_components(0.3, -0.2, 0.9), 2.0);
  const int n = 1000000;
  double mx = 0, my = 0, mz = 0;
  for (int i = 0; i < n; ++i) {
    const auto v = sample_cap(cap, rng);
    mx += v.x();
    my += v.y();
    mz += v.z();
  }
  CHECK(std::sqrt(mx * mx + my * my + mz * mz) / n < 0.005);
}

TEST_CASE("angle_between is symmetric and orthogonal vectors give pi/2") {
  RngStream rng(22, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto a = sample_sphere(rng), b = sample_sphere(rng);
    const double t = angle_between(a, b);
    REQUIRE(t == angle_between(b, a));
    REQUIRE(t >= 0.0);
    REQUIRE(t <= std::numbers::pi);
    const auto [u, w] = a.orthonormal_complement();
    REQUIRE(angle_between(a, u) == doctest::Approx(std::numbers::pi / 2));
  }
}

TEST_CASE("random caps contain their samples") {
  RngStream rng(23, 0);
  for (int c = 0; c < 200; ++c) {
    const CapSpec cap(sample_sphere(rng), 2.0 * rng.uniform());
    for (int i = 0; i < 200; ++i) REQUIRE(cap.contains(sample_cap(cap, rng)));
  }
}

TEST_CASE("stream output passes a runs test on its low bit") {
  // Wald-Wolfowitz on 1e4 bits, two-sided at alpha = 0.01
  for (std::uint64_t stream = 0; stream < 4; ++stream) {
    RngStream rng(31, stream);
    const int n = 10000;
    int ones = 0, runs = 1, prev = -1;
    for (int i = 0; i < n; ++i) {
      const int bit = static_cast<int>(rng.next_u64() & 1u);
      ones += bit;
      if (prev >= 0 && bit != prev) ++runs;
      prev = bit;
    }
    const double n1 = ones, n0 = n - ones;
    const double mu = 2 * n1 * n0 / n + 1;
    const double var = 2 * n1 * n0 * (2 * n1 * n0 - n) / (double(n) * n * (n - 1));
    CHECK(std::abs((runs - mu) / std::sqrt(var)) < 2.5758);
  }
}
