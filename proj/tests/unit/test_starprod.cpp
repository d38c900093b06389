#include <cmath>
#include <random>

#include "berezin/error.hpp"
#include "berezin/projective.hpp"
#include "berezin/starprod.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace berezin;

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

Complex one(const Point&) { return 1.0; }
Complex re_z(const Point& z) { return z(0).real(); }
Complex im_z(const Point& z) { return z(0).imag(); }
Complex abs2(const Point& z) { return std::norm(z(0)); }
double re_z_r(const Point& z) { return z(0).real(); }
double im_z_r(const Point& z) { return z(0).imag(); }

std::vector<Point> disk_samples(int count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) out.push_back(sample_interior(DomainModel::disk(), rng, radius));
  return out;
}

}  // namespace

TEST_CASE("Toeplitz operators of simple symbols") {
  const auto disk = DomainModel::disk();
  const QuantContext ctx = QuantContext::create(disk, 3.0, 0.5);
  const Operator I = toeplitz_operator(ctx, one);
  CHECK((I - Operator::Identity(ctx.n_op(), ctx.n_op())).cwiseAbs().maxCoeff() < 1e-12);

  const Operator R = toeplitz_operator(ctx, abs2);
  const double lm = ctx.lambda() * disk.mu();
  for (int m = 0; m < ctx.n_op(); ++m) {
    CHECK(std::abs(R(m, m) - (m + 1.0) / (m + lm)) < 1e-12);
  }
  CHECK((R - Operator(R.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);

  const Operator X = toeplitz_operator(ctx, re_z);
  CHECK((X - X.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(std::abs(X(1, 0) - X(0, 1)) < 1e-14);
  CHECK(std::abs(X(0, 1)) > 0.1);
}

TEST_CASE("covariant symbols") {
  const QuantContext ctx = QuantContext::create(DomainModel::disk(), 4.0, 0.6);
  const Operator I = Operator::Identity(ctx.n_op(), ctx.n_op());
  const Operator C = Complex(2.0, -1.0) * I;
  for (const Point& z : disk_samples(20, 0.6, 3)) {
    CHECK(std::abs(covariant_symbol(ctx, I, z) - 1.0) < 1e-13);
    CHECK(std::abs(covariant_symbol(ctx, C, z) - Complex(2.0, -1.0)) < 1e-13);
  }

  const Point origin = make_point({0.0});
  double previous = 1.0;
  for (double lambda : {5.0, 10.0, 20.0}) {
    const QuantContext c = QuantContext::create(DomainModel::disk(), lambda, 0.3);
    const double value = covariant_symbol(c, toeplitz_operator(c, abs2), origin).real();
    CHECK(value > 0.0);
    CHECK(value < previous);
    previous = value;
  }
}

TEST_CASE("operator algebra") {
  const QuantContext ctx = QuantContext::create(DomainModel::disk(), 5.0, 0.5);
  const Operator A = toeplitz_operator(ctx, re_z);
  const Operator B = toeplitz_operator(ctx, im_z);
  const Operator C = toeplitz_operator(ctx, abs2);
  const Operator I = Operator::Identity(ctx.n_op(), ctx.n_op());
  const auto samples = disk_samples(20, 0.5, 5);
  const auto sigma_a = star(ctx, I, A);
  for (const Point& z : samples) {
    CHECK(std::abs(sigma_a(z) - covariant_symbol(ctx, A, z)) < 1e-13);
    const Complex left = covariant_symbol(ctx, compose(ctx, compose(ctx, A, B), C), z);
    const Complex right = covariant_symbol(ctx, compose(ctx, A, compose(ctx, B, C)), z);
    CHECK(std::abs(left - right) < 1e-12);
    const Complex s = covariant_symbol(ctx, A + Complex(0, 1) * B, z);
    const Complex s_adj = covariant_symbol(ctx, (A + Complex(0, 1) * B).adjoint(), z);
    CHECK(std::abs(s_adj - std::conj(s)) < 1e-13);
  }
  double noncommutative = 0.0;
  for (const Point& z : samples) noncommutative = std::max(noncommutative, std::abs(star(ctx, A, B)(z) - star(ctx, B, A)(z)));
  CHECK(noncommutative > 1e-3);
}

TEST_CASE("covariant symbol of a Toeplitz operator stays within the range of the symbol") {
  const QuantContext ctx = QuantContext::create(DomainModel::disk(), 2.0, 0.7);
  const Operator A = toeplitz_operator(ctx, abs2);
  const Operator X = toeplitz_operator(ctx, re_z);
  for (const Point& z : disk_samples(50, 0.7, 7)) {
    const Complex s = covariant_symbol(ctx, A, z);
    CHECK(s.real() > 0.0);
    CHECK(s.real() < 1.0);
    CHECK(std::abs(s.imag()) < 1e-13);
    const Complex x = covariant_symbol(ctx, X, z);
    CHECK(std::abs(x.real()) < 1.0);
  }
}

TEST_CASE("Poisson bracket") {
  const auto disk = DomainModel::disk();
  CHECK(std::abs(poisson(disk, re_z_r, im_z_r, make_point({0.0})) - 0.5) < 1e-8);
  auto f = [](const Point& z) { return std::norm(z(0)) + z(0).real(); };
  auto g = [](const Point& z) { return z(0).imag() * z(0).real(); };
  auto fg = [&](const Point& z) { return f(z) * g(z); };
  auto h = [](const Point& z) { return std::sin(z(0).imag()); };
  for (const Point& z : disk_samples(20, 0.8, 11)) {
    CHECK(std::abs(poisson(disk, f, g, z) + poisson(disk, g, f, z)) < 1e-10);
    CHECK(std::abs(poisson(disk, f, f, z)) == 0.0);
    const double leibniz = poisson(disk, fg, h, z) - f(z) * poisson(disk, g, h, z) - g(z) * poisson(disk, f, h, z);
    CHECK(std::abs(leibniz) < 1e-6);
    const double r2 = std::norm(z(0));
    CHECK(std::abs(poisson(disk, re_z_r, im_z_r, z) - 0.5 * (1 - r2) * (1 - r2)) < 1e-7);
  }
  const auto poly = DomainModel::polydisk(2);
  auto x2 = [](const Point& z) { return z(1).real(); };
  auto y2 = [](const Point& z) { return z(1).imag(); };
  CHECK(std::abs(poisson(poly, x2, y2, make_point({0.3, 0.0})) - 0.5) < 1e-8);
  CHECK(kind_of([] {
          poisson(DomainModel::ball(2), re_z_r, im_z_r, make_point({0.0, 0.0}));
        }) == ErrorKind::UnsupportedModel);
}

TEST_CASE("correspondence principle") {
  const auto disk = DomainModel::disk();
  const std::vector<double> lambdas = {5, 10, 20, 40};
  const auto samples = disk_samples(10, 0.5, 13);

  const DecayReport report = correspondence_check(disk, re_z_r, im_z_r, lambdas, samples);
  REQUIRE(report.E1.size() == 4);
  CHECK(report.slope_E1 >= 0.8);
  CHECK(report.slope_E1 <= 1.2);
  CHECK(report.slope_E2 > 0.8);
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    CHECK(report.E1[i] < report.E1[i - 1]);
    CHECK(report.E2[i] < report.E2[i - 1]);
    CHECK(report.n_op[i] >= report.n_op[i - 1]);
  }

  const DecayReport same = correspondence_check(disk, re_z_r, re_z_r, lambdas, samples);
  for (double e : same.E2) CHECK(e < 1e-12);

  auto c1 = [](const Point&) { return 1.0; };
  auto c2 = [](const Point&) { return -3.0; };
  const DecayReport constants = correspondence_check(disk, c1, c2, lambdas, samples);
  for (double e : constants.E1) CHECK(e < 1e-11);

  CorrespondenceOptions wrong;
  wrong.bracket_scale = 1.0;
  const DecayReport flipped = correspondence_check(disk, re_z_r, im_z_r, lambdas, samples, wrong);
  CHECK(flipped.E2.back() > 0.1);

  CHECK(kind_of([&] { correspondence_check(disk, re_z_r, im_z_r, {10, 5}, samples); }) == ErrorKind::DomainError);
  CHECK(kind_of([&] { correspondence_check(disk, re_z_r, im_z_r, {0.3}, samples); }) == ErrorKind::TrivialSpace);
  CHECK(kind_of([&] { correspondence_check(disk, re_z_r, im_z_r, lambdas, {}); }) == ErrorKind::DomainError);
}

TEST_CASE("separation of points by coherent projectors") {
  const auto disk = DomainModel::disk();
  const QuantContext ctx = QuantContext::create(disk, 1.0, 0.6);
  const Point x1 = make_point({0.5});
  const SeparationReport r = separation_check(ctx, x1, make_point({0.0}));
  CHECK(r.separated());
  CHECK(std::abs(r.sigma_x1 - 1.0) < 1e-12);
  CHECK(std::abs(r.gap - 0.4375) < 1e-10);
  CHECK(std::abs(r.expected_gap - 0.4375) < 1e-14);

  const SeparationReport anti = separation_check(ctx, x1, make_point({-0.5}));
  CHECK(std::abs(anti.gap - (1.0 - std::pow(0.36, 2.0))) < 1e-10);

  double previous = 1.0;
  for (double d : {0.4, 0.1, 0.01}) {
    const double gap = separation_check(ctx, x1, make_point({0.5 - d})).gap;
    CHECK(gap > 0.0);
    CHECK(gap < previous);
    previous = gap;
  }

  for (const auto& [x, y] : sample_pairs(disk, 50, 17, 0.6)) {
    const SeparationReport s = separation_check(ctx, x, y);
    const double fs = fs_exp_neg_diastasis(coherent_map(ctx.basis(), x), coherent_map(ctx.basis(), y));
    CHECK(std::abs(s.sigma_x2 - fs) < 1e-10);
    CHECK(std::abs(s.gap - s.expected_gap) < 1e-10);
  }
  CHECK(kind_of([&] { separation_check(ctx, x1, x1); }) == ErrorKind::DomainError);
}

TEST_CASE("context errors") {
  const QuantContext a = QuantContext::create(DomainModel::disk(), 2.0, 0.5);
  const QuantContext b = QuantContext::create(DomainModel::disk(), 8.0, 0.5);
  REQUIRE(a.n_op() != b.n_op());
  const Operator A = toeplitz_operator(a, re_z);
  CHECK(kind_of([&] { covariant_symbol(b, A, make_point({0.1})); }) == ErrorKind::ContextMismatch);
  CHECK(kind_of([&] { compose(b, A, A); }) == ErrorKind::ContextMismatch);
  CHECK(kind_of([] { QuantContext::create(DomainModel::ball(2), 2.0); }) == ErrorKind::UnsupportedModel);
  CHECK(kind_of([] { QuantContext::create(DomainModel::disk(), 0.5); }) == ErrorKind::TrivialSpace);
  CHECK(std::abs(a.hbar() - 0.5) < 1e-16);
}
