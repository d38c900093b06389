#include "berezin/projective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "berezin/error.hpp"
#include "berezin/numerics.hpp"

namespace berezin {

ProjectivePoint::ProjectivePoint(Eigen::VectorXcd coords)
    : coords_(std::move(coords)), norm_sq_(coords_.squaredNorm()) {
  if (!(norm_sq_ > 0.0) || !std::isfinite(norm_sq_)) {
    throw Error(ErrorKind::InvalidProjectivePoint, "the zero vector is not a projective point");
  }
}

double diastasis(const DomainModel& model, const Point& x, const Point& y) {
  return potential(model, x) + potential(model, y) - 2.0 * potential_ext(model, x, y).real();
}

DiastasisReport exp_neg_diastasis_check(const DomainModel& model, std::span<const PointPair> pairs) {
  DiastasisReport report;
  report.pair_count = pairs.size();
  report.min_value = std::numeric_limits<double>::infinity();
  report.max_value = -std::numeric_limits<double>::infinity();
  report.values.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    const double value = std::exp(-diastasis(model, x, y));
    const bool coincident = (x - y).norm() <= kPointTolerance;
    report.values.push_back(value);
    report.min_value = std::min(report.min_value, value);
    report.max_value = std::max(report.max_value, value);
    if (coincident) {
      ++report.coincident_count;
    } else {
      report.max_distinct_value = std::max(report.max_distinct_value, value);
    }

    auto flag = [&](const char* reason) { report.violations.push_back({i, value, reason}); };
    if (!(value > 0.0)) {
      flag("value is not positive");
    } else if (value > 1.0 + kPointTolerance) {
      flag("value exceeds one");
    } else if (coincident && std::abs(1.0 - value) > kPointTolerance) {
      flag("coincident points do not give one");
    } else if (!coincident && std::abs(1.0 - value) <= kPointTolerance) {
      flag("distinct points give one");
    }
  }
  if (pairs.empty()) report.min_value = report.max_value = 0.0;
  return report;
}

double fs_exp_neg_diastasis(const ProjectivePoint& p, const ProjectivePoint& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorKind::InvalidProjectivePoint, "projective points live in different spaces");
  }
  const double overlap = std::norm(q.coords().dot(p.coords()));
  return std::clamp(overlap / (p.norm_sq() * q.norm_sq()), 0.0, 1.0);
}

ProjectivePoint coherent_map(const BergmanBasis& basis, const Point& z) {
  return ProjectivePoint(basis.evaluate(z));
}

ProjectivePoint coherent_map(const GaugedKernel& kernel, const Point& z) {
  return ProjectivePoint(kernel.evaluate(z));
}

double hereditary_check(const BergmanBasis& basis, const Point& x, const Point& y) {
  const double fs = fs_exp_neg_diastasis(coherent_map(basis, x), coherent_map(basis, y));
  const double pulled = std::exp(-basis.lambda() * diastasis(basis.model(), x, y));
  return std::abs(fs - pulled);
}

Eigen::MatrixXd pullback_residual(const DomainModel& model, double lambda,
                                  const std::function<double(const Point&)>& log_kernel_diagonal,
                                  const Point& z, std::optional<double> h) {
  model.require_interior(z);
  const double step = h.value_or(numerics::default_fd_step(model.boundary_distance(z)));
  const int n = model.dim();
  Eigen::MatrixXcd fd(n, n);
  if (n == 1) {
    auto u = [&](Complex c) {
      Point p(1);
      p(0) = c;
      return log_kernel_diagonal(p);
    };
    auto inside = [&](Complex c) { return std::abs(c) < 1.0; };
    fd(0, 0) = numerics::fd_del_delbar(u, z(0), step, inside);
  } else {
    auto inside = [&](const Eigen::VectorXcd& p) { return model.contains(p); };
    fd = numerics::fd_complex_hessian(log_kernel_diagonal, z, step, inside);
  }
  const Eigen::MatrixXcd target = lambda * metric_tensor(model, z);
  double diag_scale = 0.0;
  for (int i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs(target(i, i)));
  Eigen::MatrixXd residual(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double denom = i == j ? std::abs(target(i, j)) : diag_scale;
      residual(i, j) = std::abs(fd(i, j) - target(i, j)) / denom;
    }
  }
  return residual;
}

Eigen::MatrixXd pullback_check(const BergmanBasis& basis, const Point& z, std::optional<double> h) {
  return pullback_residual(
      basis.model(), basis.lambda(),
      [&](const Point& p) { return std::log(basis.evaluate(p).squaredNorm()); }, z, h);
}

Eigen::MatrixXd pullback_check(const GaugedKernel& kernel, const Point& z, std::optional<double> h) {
  return pullback_residual(
      kernel.model(), kernel.lambda(), [&](const Point& p) { return std::log(kernel.diagonal(p)); }, z,
      h);
}

InjectivityReport injectivity_sample(const BergmanBasis& basis, std::span<const PointPair> pairs) {
  const DomainModel& model = basis.model();
  InjectivityReport report;
  report.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    const double d = (x - y).norm();
    if (d < kMinSeparation) {
      ++report.skipped_pairs;
      continue;
    }
    ++report.pair_count;
    report.min_separation = std::min(report.min_separation, d);
    const double r = std::max(model.radius(x), model.radius(y));
    const double margin = d * d * (1.0 - r * r) / (8.0 * model.dim());
    const double value = fs_exp_neg_diastasis(coherent_map(basis, x), coherent_map(basis, y));
    report.max_value = std::max(report.max_value, value);
    if (!(value < 1.0 - margin)) report.violations.push_back(i);
  }
  if (report.pair_count == 0) report.min_separation = 0.0;
  return report;
}

}  // namespace berezin
