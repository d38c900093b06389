#include "berezin/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "berezin/error.hpp"
#include "berezin/numerics.hpp"

namespace berezin {
namespace {

using numerics::log_gamma_ratio;

constexpr double kMaxBasisSize = 4e6;

int total_degree(std::span<const int> m) {
  int k = 0;
  for (int v : m) k += v;
  return k;
}

// Multi-indices graded by total degree: |m| <= degree, or with `box` every
// part <= degree (total degrees up to n * degree).
std::vector<int> graded_indices(int n, int degree, bool box) {
  std::vector<int> out;
  std::vector<int> cur(n, 0);
  const int cap = box ? degree : std::numeric_limits<int>::max();
  auto emit = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n - 1) {
      if (remaining > cap) return;
      cur[pos] = remaining;
      out.insert(out.end(), cur.begin(), cur.end());
      return;
    }
    for (int v = std::min(remaining, cap); v >= 0; --v) {
      if (remaining - v > cap * (n - 1 - pos)) break;
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  const int top = box ? n * degree : degree;
  for (int k = 0; k <= top; ++k) emit(emit, 0, k);
  return out;
}

// log of the disk norm ||z^m||^2 = pi mu B(m+1, lambda mu - 1).
double log_disk_norm_sq(double mu, double lambda, int m) {
  const double lm = lambda * mu;
  return std::log(std::numbers::pi * mu) + std::lgamma(m + 1.0) - log_gamma_ratio(m + lm, lm - 1.0);
}

// Relative tail bound for the radial (disk/ball) series after degree N.
double radial_relative_tail(const DomainModel& model, double lambda, int degree, double rho) {
  if (rho <= 0.0) return 0.0;
  std::vector<int> m(model.dim(), 0);
  auto log_shell = [&](int k) {
    m[0] = k;
    return 2.0 * k * std::log(rho) - log_monomial_norm_sq(model, lambda, m);
  };
  // Normalize by the largest shell in range to keep the sums finite.
  std::vector<double> logs(degree + 3);
  for (int k = 0; k <= degree + 2; ++k) logs[k] = log_shell(k);
  const double ref = *std::max_element(logs.begin(), logs.begin() + degree + 1);
  double partial = 0.0;
  for (int k = 0; k <= degree; ++k) partial += std::exp(logs[k] - ref);
  const double ratio = std::exp(logs[degree + 2] - logs[degree + 1]);
  if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
  const double tail = std::exp(logs[degree + 1] - ref) / (1.0 - ratio);
  return tail / partial;
}

double log_ball_norm_sq(const DomainModel& model, double lambda, std::span<const int> m) {
  const int n = model.dim();
  const double s1 = lambda * model.mu() - n;  // s + 1
  double log_fact = 0.0;
  for (int v : m) log_fact += std::lgamma(v + 1.0);
  return n * std::log(std::numbers::pi * model.mu()) + log_fact -
         log_gamma_ratio(n + total_degree(m) + s1, s1);
}

}  // namespace

void require_nontrivial(const DomainModel& model, double lambda) {
  const RootSystemData data = model.metric_root_data();
  if (!is_nontrivial(data, lambda)) {
    std::string msg = "weighted Bergman space is trivial for lambda = " + std::to_string(lambda) +
                      " (lambda0 = " + std::to_string(berezin::lambda0(data)) + ")";
    if (at_threshold(data, lambda)) msg += "; lambda sits exactly at the threshold";
    throw Error(ErrorKind::TrivialSpace, msg);
  }
}

double log_monomial_norm_sq(const DomainModel& model, double lambda, std::span<const int> m) {
  if (static_cast<int>(m.size()) != model.dim()) {
    throw Error(ErrorKind::DomainError, "multi-index length must equal the dimension");
  }
  for (int v : m) {
    if (v < 0) throw Error(ErrorKind::DomainError, "multi-index entries must be nonnegative");
  }
  require_nontrivial(model, lambda);
  if (model.kind() == DomainKind::Polydisk) {
    double acc = 0.0;
    for (int v : m) acc += log_disk_norm_sq(model.mu(), lambda, v);
    return acc;
  }
  return log_ball_norm_sq(model, lambda, m);
}

double monomial_norm_sq(const DomainModel& model, double lambda, std::span<const int> m) {
  return std::exp(log_monomial_norm_sq(model, lambda, m));
}

double monomial_norm_sq_quadrature(const DomainModel& model, double lambda, std::span<const int> m,
                                   int order) {
  if (static_cast<int>(m.size()) != model.dim()) {
    throw Error(ErrorKind::DomainError, "multi-index length must equal the dimension");
  }
  require_nontrivial(model, lambda);
  const double mu = model.mu();
  const double pi = std::numbers::pi;
  if (model.kind() == DomainKind::Polydisk) {
    double acc = 1.0;
    for (int v : m) {
      const auto rule = numerics::gauss_jacobi(std::max(order, v / 2 + 1), lambda * mu - 2.0);
      acc *= pi * mu * rule.integrate([v](double t) { return std::pow(t, v); });
    }
    return acc;
  }
  // int_{B^n} |z^m|^2 g(|z|^2) dV = pi^n m!/(|m|+n-1)! int_0^1 t^{|m|+n-1} g(t) dt
  const int n = model.dim();
  const int k = total_degree(m);
  const int power = k + n - 1;
  const auto rule = numerics::gauss_jacobi(std::max(order, power / 2 + 1), lambda * mu - n - 1.0);
  const double radial = rule.integrate([power](double t) { return std::pow(t, power); });
  double log_prefactor = n * std::log(pi * mu) - std::lgamma(power + 1.0);
  for (int v : m) log_prefactor += std::lgamma(v + 1.0);
  return std::exp(log_prefactor) * radial;
}

double relative_tail_bound(const DomainModel& model, double lambda, int degree, double rho) {
  require_nontrivial(model, lambda);
  if (model.kind() != DomainKind::Polydisk) return radial_relative_tail(model, lambda, degree, rho);
  // Box truncation: the kernel is a product of disk series cut at N each.
  // Relative to the partial product: prod (1 + t_i) - 1 <= (1 + t)^n - 1.
  const double t = radial_relative_tail(DomainModel::disk(model.mu()), lambda, degree, rho);
  return std::expm1(model.dim() * std::log1p(t));
}

int choose_truncation(const DomainModel& model, double lambda, const TruncationOptions& options) {
  require_nontrivial(model, lambda);
  if (!(options.max_radius >= 0.0 && options.max_radius < 1.0)) {
    throw Error(ErrorKind::OutsideDomain, "sample radius must lie in [0, 1)");
  }
  for (int degree = 0; degree <= options.max_degree; ++degree) {
    if (relative_tail_bound(model, lambda, degree, options.max_radius) < options.tol) return degree;
  }
  throw Error(ErrorKind::TruncationInsufficient,
              "no truncation degree <= " + std::to_string(options.max_degree) + " reaches tol " +
                  std::to_string(options.tol) + " at radius " + std::to_string(options.max_radius));
}

// ---------------------------------------------------------------------------

BergmanBasis::BergmanBasis(DomainModel model, double lambda, int degree, NormBackend backend,
                           int quad_order)
    : model_(std::move(model)), lambda_(lambda), degree_(degree), backend_(backend) {
  if (model_.gauge()) {
    throw Error(ErrorKind::UnsupportedModel,
                "monomials are not orthogonal under a gauged potential; use GaugedKernel");
  }
  if (degree < 0) throw Error(ErrorKind::DomainError, "truncation degree must be nonnegative");
  require_nontrivial(model_, lambda_);

  const int n = model_.dim();
  double estimate = 1.0;
  for (int i = 1; i <= n; ++i) {
    estimate *= model_.kind() == DomainKind::Polydisk ? degree + 1.0 : (degree + i) / static_cast<double>(i);
  }
  if (estimate > kMaxBasisSize) {
    throw Error(ErrorKind::TruncationInsufficient,
                "truncated basis would hold " + std::to_string(static_cast<long long>(estimate)) + " elements");
  }
  indices_ = graded_indices(n, degree, model_.kind() == DomainKind::Polydisk);
  const std::size_t count = indices_.size() / n;
  norms_sq_.resize(count);

  if (backend == NormBackend::ClosedForm) {
    for (std::size_t j = 0; j < count; ++j) norms_sq_[j] = monomial_norm_sq(model_, lambda_, index(j));
  } else {
    // One rule exact for every degree in range, radial integrals cached per degree.
    const double mu = model_.mu();
    const double pi = std::numbers::pi;
    if (model_.kind() == DomainKind::Polydisk) {
      const auto rule = numerics::gauss_jacobi(std::max(quad_order, degree / 2 + 1), lambda_ * mu - 2.0);
      std::vector<double> factor(degree + 1);
      for (int v = 0; v <= degree; ++v) {
        factor[v] = pi * mu * rule.integrate([v](double t) { return std::pow(t, v); });
      }
      for (std::size_t j = 0; j < count; ++j) {
        double acc = 1.0;
        for (int v : index(j)) acc *= factor[v];
        norms_sq_[j] = acc;
      }
    } else {
      const auto rule =
          numerics::gauss_jacobi(std::max(quad_order, (degree + n) / 2 + 1), lambda_ * mu - n - 1.0);
      std::vector<double> radial(degree + 1);
      for (int k = 0; k <= degree; ++k) {
        const int power = k + n - 1;
        radial[k] = rule.integrate([power](double t) { return std::pow(t, power); });
      }
      for (std::size_t j = 0; j < count; ++j) {
        const auto m = index(j);
        const int k = total_degree(m);
        double log_prefactor = n * std::log(pi * mu) - std::lgamma(k + n * 1.0);
        for (int v : m) log_prefactor += std::lgamma(v + 1.0);
        norms_sq_[j] = std::exp(log_prefactor) * radial[k];
      }
    }
  }

  inv_norms_.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    if (!(norms_sq_[j] > 0.0) || !std::isfinite(norms_sq_[j])) {
      throw Error(ErrorKind::IntegrationError, "monomial norm is not positive and finite");
    }
    inv_norms_[j] = 1.0 / std::sqrt(norms_sq_[j]);
  }
}

BergmanBasis BergmanBasis::for_radius(DomainModel model, double lambda, const TruncationOptions& options,
                                      NormBackend backend, int quad_order) {
  const int degree = choose_truncation(model, lambda, options);
  return BergmanBasis(std::move(model), lambda, degree, backend, quad_order);
}

std::span<const int> BergmanBasis::index(std::size_t j) const {
  const auto n = static_cast<std::size_t>(model_.dim());
  return std::span<const int>(indices_).subspan(j * n, n);
}

Eigen::VectorXcd BergmanBasis::evaluate(const Point& z) const {
  model_.require_interior(z);
  const int n = model_.dim();
  // powers(k, i) = z_i^k
  Eigen::MatrixXcd powers(degree_ + 1, n);
  for (int i = 0; i < n; ++i) {
    powers(0, i) = 1.0;
    for (int k = 1; k <= degree_; ++k) powers(k, i) = powers(k - 1, i) * z(i);
  }
  Eigen::VectorXcd out(static_cast<Eigen::Index>(size()));
  for (std::size_t j = 0; j < size(); ++j) {
    const int* m = indices_.data() + j * n;
    Complex v = inv_norms_[j];
    for (int i = 0; i < n; ++i) v *= powers(m[i], i);
    out(static_cast<Eigen::Index>(j)) = v;
  }
  return out;
}

Complex kernel_series(const BergmanBasis& basis, const Point& z, const Point& w) {
  const Eigen::VectorXcd sz = basis.evaluate(z);
  if (z.size() == w.size() && z == w) return sz.squaredNorm();
  const Eigen::VectorXcd sw = basis.evaluate(w);
  Complex sum = 0.0;
  for (Eigen::Index j = 0; j < sz.size(); ++j) sum += sz(j) * std::conj(sw(j));
  return sum;
}

double c_lambda(const DomainModel& model, double lambda) {
  require_nontrivial(model, lambda);
  const double lm = lambda * model.mu();
  const double log_pi_mu = std::log(std::numbers::pi * model.mu());
  if (model.kind() == DomainKind::Polydisk) {
    return std::exp(model.dim() * (log_gamma_ratio(lm, lm - 1.0) - log_pi_mu));
  }
  const int n = model.dim();
  return std::exp(log_gamma_ratio(lm, lm - n) - n * log_pi_mu);
}

Complex kernel_closed(const DomainModel& model, double lambda, const Point& z, const Point& w) {
  const double c = c_lambda(model, lambda);
  return c * std::exp(lambda * potential_ext(model, z, w));
}

double epsilon(const BergmanBasis& basis, const Point& z) {
  const double k = kernel_series(basis, z, z).real();
  return std::exp(-basis.lambda() * potential(basis.model(), z)) * k;
}

double epsilon(const DomainModel& model, double lambda, const Point& z, const TruncationOptions& options) {
  model.require_interior(z);
  TruncationOptions opts = options;
  opts.max_radius = std::max(opts.max_radius, model.radius(z));
  return epsilon(BergmanBasis::for_radius(model, lambda, opts), z);
}

BalancedReport balanced_verdict(const DomainModel& model, double lambda, const BalancedOptions& options) {
  if (options.sample_count < 2) throw Error(ErrorKind::DomainError, "balanced verdict needs >= 2 samples");
  BalancedReport report;
  report.lambda = lambda;
  report.tol = options.tol;
  const RootSystemData data = model.metric_root_data();
  report.lambda0 = lambda0(data);
  report.at_threshold = lambda > 0.0 && at_threshold(data, lambda);
  if (!(lambda > 0.0) || !is_nontrivial(data, lambda)) {
    report.reason = "TrivialSpace";
    return report;
  }

  std::mt19937_64 rng(options.seed);
  std::vector<EpsilonSample> samples;
  for (int i = 0; i < options.sample_count; ++i) samples.push_back({sample_interior(model, rng, 0.9), 0.0, false});
  Point z0 = Point::Zero(model.dim());
  z0(0) = 0.3;
  for (int i = 0; i < options.orbit_count; ++i) {
    const Automorphism h = random_automorphism(model, rng());
    samples.push_back({h.apply(z0), 0.0, true});
  }

  double rho = 0.0;
  for (const auto& s : samples) rho = std::max(rho, model.radius(s.z));

  try {
    const BergmanBasis basis =
        BergmanBasis::for_radius(model, lambda, {rho, options.truncation_tol, 400});
    report.truncation_degree = basis.degree();
    double sum = 0.0;
    for (auto& s : samples) {
      s.epsilon = epsilon(basis, s.z);
      sum += s.epsilon;
    }
    report.mean_epsilon = sum / static_cast<double>(samples.size());
    for (const auto& s : samples) {
      report.max_rel_dev =
          std::max(report.max_rel_dev, std::abs(s.epsilon - report.mean_epsilon) / report.mean_epsilon);
    }
    report.is_balanced = report.max_rel_dev < options.tol;
    if (!report.is_balanced) report.reason = "EpsilonNotConstant";
  } catch (const Error& e) {
    report.reason = std::string(to_string(e.kind()));
  }
  report.samples = std::move(samples);
  return report;
}

}  // namespace berezin
