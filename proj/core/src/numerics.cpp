#include "berezin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "berezin/error.hpp"

namespace berezin::numerics {
namespace {

constexpr double kNewtonTolerance = 1e-14;
constexpr int kNewtonMaxIterations = 100;

struct JacobiValues {
  double p_n;
  double p_nm1;
};

// Jacobi P_n^{(alpha, beta)} and P_{n-1} on [-1, 1] by the three-term recurrence.
JacobiValues jacobi_recurrence(int n, double alpha, double beta, double x) {
  double p_prev = 1.0;
  double p = 0.5 * ((alpha - beta) + (alpha + beta + 2.0) * x);
  if (n == 1) return {p, p_prev};
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + alpha + beta;
    const double a1 = 2.0 * (k + 1) * (k + alpha + beta + 1.0) * c;
    const double a2 = (c + 1.0) * (alpha * alpha - beta * beta);
    const double a3 = c * (c + 1.0) * (c + 2.0);
    const double a4 = 2.0 * (k + alpha) * (k + beta) * (c + 2.0);
    const double next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
    p_prev = p;
    p = next;
  }
  return {p, p_prev};
}

// (1 - x^2) P_n'(x) from P_n and P_{n-1}.
double jacobi_derivative_times_1mx2(int n, double alpha, double beta, double x,
                                    const JacobiValues& v) {
  const double c = 2.0 * n + alpha + beta;
  return (n * ((alpha - beta) - c * x) * v.p_n + 2.0 * (n + alpha) * (n + beta) * v.p_nm1) / c;
}

// Eigenvalues of the symmetric Jacobi matrix (Golub-Welsch), used as Newton seeds.
std::vector<double> golub_welsch_seeds(int n, double alpha, double beta) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  diag(0) = (beta - alpha) / (alpha + beta + 2.0);
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + alpha + beta;
    diag(k) = (beta * beta - alpha * alpha) / (c * (c + 2.0));
    const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + alpha + beta);
    const double den = c * c * (c + 1.0) * (c - 1.0);
    sub(k - 1) = std::sqrt(num / den);
  }
  if (n == 1) return {diag(0)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

QuadratureRule gauss_jacobi(int order, double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::NonIntegrableWeight,
                "weight (1-t)^alpha needs alpha > -1, got " + std::to_string(alpha));
  }
  if (order < 1) throw Error(ErrorKind::DomainError, "quadrature order must be positive");

  constexpr double beta = 0.0;
  const int n = order;
  const double log_scale = std::lgamma(n + alpha + 1.0) + std::lgamma(n + beta + 1.0) -
                           std::lgamma(n + alpha + beta + 1.0) - std::lgamma(n + 1.0);

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.order = order;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);

  for (double x : golub_welsch_seeds(n, alpha, beta)) {
    x = std::clamp(x, -1.0 + 1e-16, 1.0 - 1e-16);
    JacobiValues v{};
    double deriv = 0.0;
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      v = jacobi_recurrence(n, alpha, beta, x);
      deriv = jacobi_derivative_times_1mx2(n, alpha, beta, x, v) / (1.0 - x * x);
      const double dx = v.p_n / deriv;
      x -= dx;
      if (std::abs(dx) <= kNewtonTolerance) break;
    }
    v = jacobi_recurrence(n, alpha, beta, x);
    deriv = jacobi_derivative_times_1mx2(n, alpha, beta, x, v) / (1.0 - x * x);
    // On [-1,1] the weight carries 2^{alpha+beta+1}; mapping to t = (1+x)/2
    // with (1-t)^alpha removes exactly that factor.
    const double w = std::exp(log_scale) / ((1.0 - x * x) * deriv * deriv);
    rule.nodes.push_back(0.5 * (1.0 + x));
    rule.weights.push_back(w);
  }

  std::vector<std::size_t> idx(rule.nodes.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return rule.nodes[a] < rule.nodes[b]; });
  QuadratureRule sorted = rule;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    sorted.nodes[i] = rule.nodes[idx[i]];
    sorted.weights[i] = rule.weights[idx[i]];
  }
  for (std::size_t i = 0; i < sorted.nodes.size(); ++i) {
    const double t = sorted.nodes[i];
    if (!(t > 0.0 && t < 1.0) || !(sorted.weights[i] > 0.0) || !std::isfinite(sorted.weights[i])) {
      throw Error(ErrorKind::IntegrationError,
                  "Gauss-Jacobi construction failed for order " + std::to_string(order) +
                      ", alpha " + std::to_string(alpha));
    }
  }
  return sorted;
}

double integrate_radial(const std::function<double(double)>& f, double alpha, int order) {
  return gauss_jacobi(order, alpha).integrate(f);
}

std::vector<double> angular_nodes(int count) {
  std::vector<double> theta(count);
  for (int l = 0; l < count; ++l) theta[l] = 2.0 * std::numbers::pi * l / count;
  return theta;
}

double fd_del_delbar(const std::function<double(Complex)>& u, Complex z, double h,
                     const RegionPredicate& inside) {
  if (!(h > 0.0)) throw Error(ErrorKind::DomainError, "finite-difference step must be positive");
  const Complex stencil[4] = {z + h, z - h, z + Complex(0.0, h), z - Complex(0.0, h)};
  if (inside) {
    for (const Complex& p : stencil) {
      if (!inside(p)) throw Error(ErrorKind::StencilOutOfDomain, "stencil leaves the domain");
    }
  }
  double sum = -4.0 * u(z);
  for (const Complex& p : stencil) sum += u(p);
  return sum / (4.0 * h * h);
}

Eigen::MatrixXcd fd_complex_hessian(const std::function<double(const Eigen::VectorXcd&)>& u,
                                    const Eigen::VectorXcd& z, double h,
                                    const VectorRegionPredicate& inside) {
  if (!(h > 0.0)) throw Error(ErrorKind::DomainError, "finite-difference step must be positive");
  const int n = static_cast<int>(z.size());
  const int m = 2 * n;

  auto shifted = [&](std::initializer_list<std::pair<int, double>> moves) {
    Eigen::VectorXcd p = z;
    for (auto [axis, step] : moves) {
      if (axis < n) {
        p(axis) += step;
      } else {
        p(axis - n) += Complex(0.0, step);
      }
    }
    if (inside && !inside(p)) throw Error(ErrorKind::StencilOutOfDomain, "stencil leaves the domain");
    return u(p);
  };

  // Real Hessian over (x_1..x_n, y_1..y_n).
  Eigen::MatrixXd real_hess(m, m);
  const double center = u(z);
  for (int a = 0; a < m; ++a) {
    real_hess(a, a) = (shifted({{a, h}}) - 2.0 * center + shifted({{a, -h}})) / (h * h);
    for (int b = a + 1; b < m; ++b) {
      const double v = (shifted({{a, h}, {b, h}}) - shifted({{a, h}, {b, -h}}) -
                        shifted({{a, -h}, {b, h}}) + shifted({{a, -h}, {b, -h}})) /
                       (4.0 * h * h);
      real_hess(a, b) = v;
      real_hess(b, a) = v;
    }
  }

  Eigen::MatrixXcd hess(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = real_hess(i, j) + real_hess(n + i, n + j);
      const double im = real_hess(i, n + j) - real_hess(n + i, j);
      hess(i, j) = 0.25 * Complex(re, im);
    }
  }
  return hess;
}

double default_fd_step(double boundary_distance) {
  return std::min(1e-3, 1e-3 * boundary_distance);
}

double log_gamma_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::DomainError, "log_gamma_ratio needs positive finite arguments");
  }
  const double shift = a - b;
  if (shift == std::round(shift) && std::abs(shift) <= 64.0) {
    const int k = static_cast<int>(std::abs(shift));
    const double base = std::min(a, b);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += std::log(base + i);
    return shift >= 0.0 ? sum : -sum;
  }
  return std::lgamma(a) - std::lgamma(b);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::DomainError, "log_beta needs positive arguments");
  return std::lgamma(b) - log_gamma_ratio(a + b, a);
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::DomainError, "regression needs two or more paired samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw Error(ErrorKind::DomainError, "regression abscissae are all equal");
  return sxy / sxx;
}

}  // namespace berezin::numerics
