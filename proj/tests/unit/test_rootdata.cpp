#include <algorithm>
#include <numeric>
#include <random>

#include "berezin/error.hpp"
#include "berezin/rootdata.hpp"
#include "doctest.h"

using namespace berezin;

namespace {

RootSystemData make(int r, std::vector<int> p, std::vector<int> q, std::vector<double> b, std::vector<double> gamma) {
  RootSystemData d;
  d.r = r;
  d.p = std::move(p);
  d.q = std::move(q);
  for (double v : b) d.b.push_back(HalfInteger::from_double(v));
  d.gamma = std::move(gamma);
  return d;
}

RootSystemData disk_data() { return make(1, {0}, {0}, {0}, {2}); }
RootSystemData rank2_data() { return make(2, {0, 1}, {1, 0}, {0, 0}, {3, 3}); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected berezin::Error");
  return ErrorKind::ConfigError;
}

}  // namespace

TEST_CASE("HalfInteger is exact and rejects other fractions") {
  CHECK(HalfInteger::from_double(1.5).twice() == 3);
  CHECK(HalfInteger::from_double(-2.0).value() == -2.0);
  CHECK(kind_of([] { HalfInteger::from_double(0.3); }) == ErrorKind::InvalidRootData);
}

TEST_CASE("lambda0 reference values") {
  CHECK(lambda0(disk_data()) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lambda0(make(1, {0}, {0}, {1}, {3})) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(lambda0(rank2_data()) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("is_nontrivial is strict at the threshold") {
  CHECK(is_nontrivial(disk_data(), 0.6));
  CHECK_FALSE(is_nontrivial(disk_data(), 0.5));
  CHECK(at_threshold(disk_data(), 0.5));
  CHECK_FALSE(at_threshold(disk_data(), 0.6));
  CHECK(is_nontrivial(rank2_data(), 0.7));
  CHECK_FALSE(is_nontrivial(rank2_data(), 0.66));
  CHECK(kind_of([] { is_nontrivial(disk_data(), 0.0); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { is_nontrivial(disk_data(), -1.0); }) == ErrorKind::DomainError);
}

TEST_CASE("nontriviality_bound is the exact half-integer 1 + p + b + q/2") {
  const auto d = make(2, {0, 3}, {1, 0}, {0.5, 0.5}, {4, 4});
  CHECK(nontriviality_bound(d, 0).twice() == 2 + 0 + 1 + 1);
  CHECK(nontriviality_bound(d, 1).twice() == 2 + 6 + 1 + 0);
}

TEST_CASE("symmetric_root_data reference values") {
  const auto d1 = symmetric_root_data({1, 7.0, 0.0});
  CHECK(d1.p == std::vector<int>{0});
  CHECK(d1.q == std::vector<int>{0});
  CHECK(d1.b == std::vector<HalfInteger>{HalfInteger::from_twice(0)});
  CHECK(d1.gamma == std::vector<double>{2.0});

  const auto d2 = symmetric_root_data({2, 1.0, 0.0});
  CHECK(d2.p == std::vector<int>{0, 1});
  CHECK(d2.q == std::vector<int>{1, 0});
  CHECK(d2.gamma == std::vector<double>{3.0, 3.0});

  const auto d3 = symmetric_root_data({3, 2.0, 1.0});
  CHECK(d3.p == std::vector<int>{0, 2, 4});
  CHECK(d3.q == std::vector<int>{4, 2, 0});
  CHECK(d3.b == std::vector<HalfInteger>(3, HalfInteger::from_twice(2)));
  CHECK(d3.gamma == std::vector<double>{7.0, 7.0, 7.0});
  CHECK(std::abs(lambda0(d3) - 6.0 / 7.0) < 1e-15);
}

TEST_CASE("symmetric_root_data rejects invalid parameters") {
  CHECK(kind_of([] { symmetric_root_data({0, 1.0, 0.0}); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { symmetric_root_data({2, 0.5, 0.0}); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { symmetric_root_data({2, -1.0, 0.0}); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { symmetric_root_data({2, 1.0, 0.3}); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { symmetric_root_data({2, 1.0, -0.5}); }) == ErrorKind::InvalidRootData);
}

TEST_CASE("lambda0 of symmetric data is (gamma - 1)/gamma over a parameter grid") {
  for (int r = 1; r <= 6; ++r) {
    for (int a = 0; a <= 4; ++a) {
      for (int b2 = 0; b2 <= 8; ++b2) {
        const double b = 0.5 * b2;
        const double gamma = (r - 1) * a + b + 2.0;
        CHECK(std::abs(lambda0(symmetric_root_data({r, double(a), b})) - (gamma - 1.0) / gamma) < 1e-12);
      }
    }
  }
}

TEST_CASE("bergman_gamma reference values and length check") {
  const auto h = [](double v) { return HalfInteger::from_double(v); };
  CHECK(bergman_gamma({0}, {0}, {h(0)}) == std::vector<double>{2.0});
  CHECK(bergman_gamma({0}, {0}, {h(1)}) == std::vector<double>{3.0});
  CHECK(bergman_gamma({0, 1}, {1, 0}, {h(0), h(0)}) == std::vector<double>{3.0, 3.0});
  CHECK(kind_of([&] { bergman_gamma({0, 1}, {1}, {h(0), h(0)}); }) == ErrorKind::InvalidRootData);
}

TEST_CASE("projective_range_bounds reference values") {
  const auto disk = projective_range_bounds(disk_data());
  CHECK(disk.c0 == 0.0);
  CHECK(disk.discrete_candidates == std::vector<double>{0.0});

  const auto rank2 = projective_range_bounds(rank2_data());
  CHECK(rank2.c0 == doctest::Approx(1.0 / 6.0));
  REQUIRE(rank2.discrete_candidates.size() == 2);
  CHECK(rank2.discrete_candidates[0] == 0.0);
  CHECK(rank2.discrete_candidates[1] == doctest::Approx(1.0 / 6.0));

  CHECK(projective_range_bounds(symmetric_root_data({3, 2.0, 1.0})).c0 == doctest::Approx(2.0 / 7.0));
}

TEST_CASE("validate rejects inconsistent data") {
  CHECK(kind_of([] { make(2, {0}, {1, 0}, {0, 0}, {3, 3}).validate(); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { make(1, {0}, {0}, {0}, {0}).validate(); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { make(1, {0}, {0}, {0}, {-2}).validate(); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { make(2, {1, 1}, {1, 0}, {0, 0}, {3, 3}).validate(); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { make(2, {0, 1}, {1, 1}, {0, 0}, {3, 3}).validate(); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { make(1, {-1}, {0}, {0}, {2}).validate(); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { make(0, {}, {}, {}, {}).validate(); }) == ErrorKind::InvalidRootData);
  CHECK(kind_of([] { lambda0(make(1, {0}, {0}, {0}, {0})); }) == ErrorKind::InvalidRootData);
}

TEST_CASE("scaled multiplies gamma only") {
  const auto d = rank2_data().scaled(2.0);
  CHECK(d.gamma == std::vector<double>{6.0, 6.0});
  CHECK(d.p == rank2_data().p);
  CHECK(lambda0(d) == doctest::Approx(lambda0(rank2_data()) / 2.0));
}

namespace {

RootSystemData random_root_data(std::mt19937_64& rng) {
  const int r = 1 + static_cast<int>(rng() % 5);
  RootSystemData d;
  d.r = r;
  for (int k = 0; k < r; ++k) {
    const bool end = k == 0 || k == r - 1;
    d.p.push_back(end ? 0 : static_cast<int>(rng() % 5));
    d.q.push_back(end ? 0 : static_cast<int>(rng() % 5));
    d.b.push_back(HalfInteger::from_twice(static_cast<int>(rng() % 6)));
    d.gamma.push_back(0.5 + std::uniform_real_distribution<double>(0.0, 8.0)(rng));
  }
  return d;
}

}  // namespace

TEST_CASE("nontriviality is monotone in lambda and agrees with lambda0") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_root_data(rng);
    const double l0 = lambda0(d);
    CHECK(is_nontrivial(d, l0 * (1.0 + 1e-9)));
    CHECK_FALSE(is_nontrivial(d, l0 * (1.0 - 1e-9)));
    double prev = 0.05;
    bool seen = false;
    for (double lambda = 0.05; lambda < 4.0 * l0; lambda *= 1.3) {
      const bool ok = is_nontrivial(d, lambda);
      if (seen) CHECK(ok);
      seen = seen || ok;
      prev = lambda;
    }
    CHECK(prev > 0.0);
  }
}

TEST_CASE("lambda0 is invariant under simultaneous permutation of indices") {
  // Zero the entries a permutation moves to p_1 and q_r in both copies.
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = random_root_data(rng);
    std::vector<int> perm(d.r);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    RootSystemData e = d;
    for (int k = 0; k < d.r; ++k) {
      e.p[k] = d.p[perm[k]];
      e.q[k] = d.q[perm[k]];
      e.b[k] = d.b[perm[k]];
      e.gamma[k] = d.gamma[perm[k]];
    }
    e.p.front() = e.q.back() = 0;
    d.p[perm.front()] = 0;
    d.q[perm.back()] = 0;
    CHECK(lambda0(e) == lambda0(d));
  }
}
