#include <cmath>
#include <numbers>
#include <random>

#include "berezin/bergman.hpp"
#include "berezin/error.hpp"
#include "berezin/projective.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace berezin;
using berezin::testing::rel_err;
using berezin::testing::standard_models;
using std::numbers::pi;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected berezin::Error");
  return ErrorKind::ConfigError;
}

// ||z^m||^2 on the disk straight from the measure: pi mu int_0^1 t^m (1-t)^{lambda mu - 2} dt.
double disk_norm_oracle(double mu, double lambda, int m) {
  return pi * mu * testing::graded_riemann([m](double t) { return std::pow(t, m); }, lambda * mu - 2.0, 400'000);
}

// int over the disk of F(w) e^{-lambda Phi} det(d dbar Phi) dV.
template <class F>
Complex disk_integral(double mu, double lambda, int order, int angles, F&& f) {
  const auto rule = numerics::gauss_jacobi(order, lambda * mu - 2.0);
  const auto theta = numerics::angular_nodes(angles);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = std::sqrt(rule.nodes[i]);
    for (double th : theta) sum += rule.weights[i] * f(std::polar(r, th));
  }
  return sum * pi * mu / static_cast<double>(angles);
}

}  // namespace

TEST_CASE("disk monomial norms against the Beta-integral oracle") {
  const auto disk = DomainModel::disk();
  const int m0[1] = {0};
  const int m1[1] = {1};
  CHECK(std::abs(monomial_norm_sq(disk, 1.0, m0) - 2.0 * pi) < 1e-12);
  CHECK(std::abs(monomial_norm_sq(disk, 1.0, m1) - pi) < 1e-12);
  CHECK(rel_err(monomial_norm_sq(disk, 1.0, m0), disk_norm_oracle(2.0, 1.0, 0)) < 1e-9);
  for (double lambda : {0.6, 1.0, 2.0, 7.5}) {
    for (int m : {0, 1, 2, 5, 17}) {
      const int idx[1] = {m};
      CHECK(rel_err(monomial_norm_sq(disk, lambda, idx), disk_norm_oracle(2.0, lambda, m)) < 1e-8);
    }
  }
  CHECK(kind_of([&] { monomial_norm_sq(disk, 0.5, m0); }) == ErrorKind::TrivialSpace);
  CHECK(kind_of([&] { monomial_norm_sq(disk, 0.3, m0); }) == ErrorKind::TrivialSpace);
}

TEST_CASE("ball norms on a single coordinate reduce to a Beta integral") {
  // int_{B^2} |z_1|^{2k} (1-|z|^2)^{3 lambda - 3} 3^2 dV = 9 pi^2 k! Gamma(3 lambda - 2) / Gamma(3 lambda + k)
  const auto ball = DomainModel::ball(2);
  for (double lambda : {0.7, 1.0, 2.0}) {
    for (int k : {0, 1, 4}) {
      const int m[2] = {k, 0};
      const double want =
          9.0 * pi * pi * std::tgamma(k + 1.0) * std::tgamma(3 * lambda - 2.0) / std::tgamma(3 * lambda + k);
      CHECK(rel_err(monomial_norm_sq(ball, lambda, m), want) < 1e-12);
    }
  }
}

TEST_CASE("quadrature backend matches the closed form") {
  std::mt19937_64 rng(71);
  for (const auto& model : standard_models()) {
    for (double lambda : {0.7, 1.0, 2.0}) {
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<int> m(model.dim());
        for (int& v : m) v = static_cast<int>(rng() % 12);
        CHECK(rel_err(monomial_norm_sq_quadrature(model, lambda, m, 64), monomial_norm_sq(model, lambda, m)) < 1e-12);
      }
    }
    const BergmanBasis closed(model, 1.0, 8);
    const BergmanBasis quad(model, 1.0, 8, NormBackend::Quadrature, 32);
    REQUIRE(closed.size() == quad.size());
    for (std::size_t j = 0; j < closed.size(); ++j) CHECK(rel_err(quad.norms_sq()[j], closed.norms_sq()[j]) < 1e-12);
  }
}

TEST_CASE("monomials are orthogonal under the disk measure") {
  const double lambda = 1.3;
  const BergmanBasis basis(DomainModel::disk(), lambda, 12);
  for (int j = 0; j <= 12; ++j) {
    for (int k = 0; k <= 12; ++k) {
      const Complex g = disk_integral(2.0, lambda, 16, 64, [&](Complex w) {
        const Point p = make_point({w});
        const Eigen::VectorXcd s = basis.evaluate(p);
        return s(j) * std::conj(s(k));
      });
      CHECK(std::abs(g - (j == k ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("basis sizes and grading") {
  CHECK(BergmanBasis(DomainModel::disk(), 1.0, 10).size() == 11);
  CHECK(BergmanBasis(DomainModel::ball(2), 1.0, 10).size() == 66);
  CHECK(BergmanBasis(DomainModel::polydisk(2), 1.0, 10).size() == 121);
  const BergmanBasis ball(DomainModel::ball(3), 1.0, 4);
  int prev = 0;
  for (std::size_t j = 0; j < ball.size(); ++j) {
    int k = 0;
    for (int v : ball.index(j)) k += v;
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("basis construction errors") {
  CHECK(kind_of([] { BergmanBasis(DomainModel::disk(), 0.5, 10); }) == ErrorKind::TrivialSpace);
  CHECK(kind_of([] { BergmanBasis(DomainModel::ball(2), 2.0 / 3.0, 10); }) == ErrorKind::TrivialSpace);
  CHECK(kind_of([] { BergmanBasis(DomainModel::disk(), 1.0, -1); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { BergmanBasis(DomainModel::disk().with_gauge({{0, 0, 1}}), 1.0, 10); }) ==
        ErrorKind::UnsupportedModel);
  CHECK(kind_of([] { BergmanBasis(DomainModel::polydisk(4), 1.0, 100); }) == ErrorKind::TruncationInsufficient);
  const BergmanBasis basis(DomainModel::disk(), 1.0, 10);
  CHECK(kind_of([&] { basis.evaluate(make_point({1.0})); }) == ErrorKind::OutsideDomain);
}

TEST_CASE("kernel_closed reference values") {
  const auto disk = DomainModel::disk();
  const Point o = make_point({0.0});
  CHECK(std::abs(kernel_closed(disk, 1.0, o, o) - 1.0 / (2.0 * pi)) < 1e-15);
  CHECK(std::abs(kernel_closed(disk, 2.0, o, o) - 3.0 / (2.0 * pi)) < 1e-15);
  CHECK(c_lambda(disk, 1.0) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-15));
  for (const auto& model : standard_models()) {
    for (double lambda : {0.7, 1.0, 2.0}) {
      CHECK(rel_err(BergmanBasis(model, lambda, 2).c_lambda_observed(), c_lambda(model, lambda)) < 1e-13);
    }
  }
  CHECK(kind_of([&] { kernel_closed(disk, 0.4, o, o); }) == ErrorKind::TrivialSpace);
  CHECK(kind_of([&] { kernel_closed(disk, 1.0, make_point({2.0}), o); }) == ErrorKind::OutsideDomain);
}

TEST_CASE("kernel_series matches kernel_closed off the diagonal") {
  std::mt19937_64 rng(73);
  for (const auto& model : standard_models()) {
    for (double lambda : {0.7, 1.0, 2.0}) {
      const BergmanBasis basis = BergmanBasis::for_radius(model, lambda);
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        const Point z = sample_interior(model, rng);
        const Point w = sample_interior(model, rng);
        worst = std::max(worst, rel_err(kernel_series(basis, z, w), kernel_closed(model, lambda, z, w)));
      }
      CHECK_MESSAGE(worst < 1e-8, to_string(model.kind()), " lambda=", lambda, " worst=", worst);
    }
  }
  const auto disk = DomainModel::disk();
  const BergmanBasis b06 = BergmanBasis::for_radius(disk, 0.6);
  const Point z = make_point({Complex(0.5, -0.6)});
  const Point w = make_point({Complex(-0.8, 0.1)});
  CHECK(rel_err(kernel_series(b06, z, w), kernel_closed(disk, 0.6, z, w)) < 1e-8);
}

TEST_CASE("kernel_series diagonal is real, positive and Hermitian") {
  std::mt19937_64 rng(79);
  const BergmanBasis basis = BergmanBasis::for_radius(DomainModel::ball(2), 1.0);
  for (int i = 0; i < 100; ++i) {
    const Point z = sample_interior(basis.model(), rng);
    const Point w = sample_interior(basis.model(), rng);
    const Complex d = kernel_series(basis, z, z);
    CHECK(d.imag() == 0.0);
    CHECK(d.real() > 0.0);
    const Complex a = kernel_series(basis, z, w);
    const Complex b = kernel_series(basis, w, z);
    CHECK(std::abs(a - std::conj(b)) <= 1e-15 * std::abs(a));
  }
}

TEST_CASE("partial sums of the diagonal increase") {
  const BergmanBasis basis(DomainModel::disk(), 1.0, 60);
  const Eigen::VectorXcd s = basis.evaluate(make_point({Complex(0.6, 0.3)}));
  double partial = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const double next = partial + std::norm(s(j));
    CHECK(next >= partial);
    partial = next;
  }
}

TEST_CASE("truncation tail bound dominates the actual truncation error") {
  for (const auto& model : standard_models()) {
    for (double lambda : {0.7, 1.0, 2.0}) {
      for (int degree : {10, 40, 80}) {
        const BergmanBasis basis(model, lambda, degree);
        // Every coordinate active: the polydisk tail compounds across factors.
        // 5e-14 absorbs rounding in the closed form and the partial sum.
        Point z = Point::Constant(model.dim(), model.kind() == DomainKind::Ball ? 0.8 / std::sqrt(model.dim()) : 0.8);
        const double exact = kernel_closed(model, lambda, z, z).real();
        const double truncated = kernel_series(basis, z, z).real();
        const double actual = (exact - truncated) / truncated;
        CHECK(actual >= -1e-14);
        CHECK_MESSAGE(actual <= relative_tail_bound(model, lambda, degree, 0.8) * (1.0 + 1e-9) + 5e-14,
                      to_string(model.kind()), " lambda=", lambda, " N=", degree);
      }
    }
  }
}

TEST_CASE("choose_truncation meets tol and fails past the cap") {
  const auto disk = DomainModel::disk();
  const int n = choose_truncation(disk, 1.0, {0.9, 1e-15, 400});
  CHECK(relative_tail_bound(disk, 1.0, n, 0.9) < 1e-15);
  CHECK(relative_tail_bound(disk, 1.0, n - 1, 0.9) >= 1e-15);
  CHECK(choose_truncation(disk, 1.0, {0.5, 1e-15, 400}) < n);
  CHECK(kind_of([&] { choose_truncation(disk, 40.0, {0.9, 1e-15, 400}); }) == ErrorKind::TruncationInsufficient);
  CHECK(kind_of([&] { choose_truncation(disk, 1.0, {1.0, 1e-15, 400}); }) == ErrorKind::OutsideDomain);
}

TEST_CASE("epsilon reference values") {
  const auto disk = DomainModel::disk();
  CHECK(std::abs(epsilon(disk, 1.0, make_point({0.0})) - 1.0 / (2.0 * pi)) < 1e-15);
  CHECK(std::abs(epsilon(disk, 1.0, make_point({0.5})) - 1.0 / (2.0 * pi)) < 1e-8);
  CHECK(kind_of([&] { epsilon(disk, 0.5, make_point({0.0})); }) == ErrorKind::TrivialSpace);
  CHECK(kind_of([&] { epsilon(disk, 1.0, make_point({1.0})); }) == ErrorKind::OutsideDomain);
}

TEST_CASE("norm of 1 diverges like 1/delta at the disk threshold") {
  const auto disk = DomainModel::disk();
  const int m[1] = {0};
  const double n1 = monomial_norm_sq(disk, 0.6, m);
  const double n2 = monomial_norm_sq(disk, 0.55, m);
  const double n3 = monomial_norm_sq(disk, 0.525, m);
  CHECK(std::abs(n2 / n1 - 2.0) < 0.2);
  CHECK(std::abs(n3 / n2 - 2.0) < 0.2);
}

TEST_CASE("reproducing property on the disk") {
  const double lambda = 1.5;
  const BergmanBasis basis(DomainModel::disk(), lambda, 30);
  const Point z = make_point({Complex(0.3, -0.2)});
  for (int m : {0, 3, 15}) {
    const Complex got = disk_integral(2.0, lambda, 40, 96, [&](Complex w) {
      return std::pow(w, m) * kernel_series(basis, z, make_point({w}));
    });
    CHECK(rel_err(got, std::pow(z(0), m)) < 1e-6);
  }
}

TEST_CASE("balanced verdict on the disk") {
  const auto disk = DomainModel::disk();
  const BalancedReport ok = balanced_verdict(disk, 1.0, {50, 20, 1e-6, 0, 1e-12});
  CHECK(ok.is_balanced);
  CHECK_FALSE(ok.reason.has_value());
  CHECK(ok.samples.size() == 70);
  CHECK(rel_err(ok.mean_epsilon, 1.0 / (2.0 * pi)) < 1e-10);
  CHECK(ok.max_rel_dev < 1e-6);

  const BalancedReport trivial = balanced_verdict(disk, 0.5);
  CHECK_FALSE(trivial.is_balanced);
  CHECK(trivial.at_threshold);
  REQUIRE(trivial.reason.has_value());
  CHECK(*trivial.reason == "TrivialSpace");

  const BalancedReport below = balanced_verdict(disk, 0.2);
  CHECK_FALSE(below.is_balanced);
  CHECK(*below.reason == "TrivialSpace");
  CHECK(kind_of([&] { balanced_verdict(disk, 1.0, {1, 20, 1e-6, 0, 1e-12}); }) == ErrorKind::DomainError);
}

TEST_CASE("balanced verdict on ball and polydisk") {
  for (const auto& model : {DomainModel::ball(2), DomainModel::polydisk(2)}) {
    for (double lambda : {0.7, 1.0, 2.0}) {
      const BalancedReport r = balanced_verdict(model, lambda);
      CHECK(r.is_balanced);
      CHECK(rel_err(r.mean_epsilon, c_lambda(model, lambda)) < 1e-10);
    }
  }
}

TEST_CASE("epsilon is invariant along Mobius orbits") {
  std::mt19937_64 rng(83);
  const auto disk = DomainModel::disk();
  const BergmanBasis basis = BergmanBasis::for_radius(disk, 1.0, {0.95, 1e-15, 400});
  for (int i = 0; i < 20; ++i) {
    const Complex a(testing::uniform(rng, -0.6, 0.6), testing::uniform(rng, -0.6, 0.6));
    const Point z = sample_interior(disk, rng, 0.3);
    const Point hz = apply_automorphism(mobius(a), z);
    CHECK(rel_err(epsilon(basis, hz), epsilon(basis, z)) < 1e-8);
  }
}

TEST_CASE("gauge change leaves epsilon and the diastasis unchanged") {
  const auto disk = DomainModel::disk();
  std::mt19937_64 rng(89);
  for (const HolomorphicGauge& gauge : {HolomorphicGauge{{0, 0, 0, 2.0}}, HolomorphicGauge{{0, 0, 0, 1.0}}}) {
    const auto gauged = disk.with_gauge(gauge);
    for (double lambda : {0.7, 1.0, 2.0}) {
      const int degree = choose_truncation(disk, lambda, {});
      const GaugedKernel kernel(gauged, lambda, degree);
      for (int i = 0; i < 30; ++i) {
        const Point z = sample_interior(disk, rng);
        const Point w = sample_interior(disk, rng);
        CHECK(rel_err(kernel.epsilon(z), c_lambda(disk, lambda)) < 1e-8);
        CHECK(std::abs(diastasis(gauged, z, w) - diastasis(disk, z, w)) < 1e-8);
      }
    }
  }
}

TEST_CASE("ungauged GaugedKernel reproduces the monomial basis") {
  const auto disk = DomainModel::disk();
  const GaugedKernel kernel(disk, 1.0, 40, 32);
  CHECK((kernel.gram() - Eigen::MatrixXcd::Identity(41, 41)).norm() < 1e-12);
  const BergmanBasis basis(disk, 1.0, 40);
  const Point z = make_point({Complex(0.2, 0.5)});
  const Point w = make_point({Complex(-0.4, 0.1)});
  CHECK(rel_err(kernel.kernel(z, w), kernel_series(basis, z, w)) < 1e-12);
  CHECK(kind_of([] { GaugedKernel(DomainModel::ball(2), 1.0, 10); }) == ErrorKind::UnsupportedModel);
  CHECK(kind_of([] { GaugedKernel(DomainModel::disk(), 0.5, 10); }) == ErrorKind::TrivialSpace);
}
