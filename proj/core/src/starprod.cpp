#include "berezin/starprod.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "berezin/error.hpp"
#include "berezin/numerics.hpp"

namespace berezin {
namespace {

constexpr double kContextTruncationTol = 1e-14;
constexpr int kDegreeMargin = 10;
constexpr double kMinPairSeparation = 1e-6;

void require_disk(const DomainModel& model) {
  if (model.kind() != DomainKind::Disk) {
    throw Error(ErrorKind::UnsupportedModel, "operator quantization is implemented for the disk only");
  }
}

void require_size(const QuantContext& ctx, const Operator& A) {
  if (A.rows() != ctx.n_op() || A.cols() != ctx.n_op()) {
    throw Error(ErrorKind::ContextMismatch, "operator size does not match the context");
  }
}

}  // namespace

QuantContext QuantContext::create(const DomainModel& model, double lambda, double max_radius,
                                  int quad_order) {
  require_disk(model);
  require_nontrivial(model, lambda);
  TruncationOptions opts;
  opts.max_radius = max_radius;
  opts.tol = kContextTruncationTol;
  const int degree = choose_truncation(model, lambda, opts) + kDegreeMargin;
  return QuantContext(BergmanBasis(model, lambda, degree), quad_order);
}

QuantContext::QuantContext(BergmanBasis basis, int quad_order)
    : basis_(std::move(basis)), hbar_(1.0 / basis_.lambda()), quad_order_(quad_order) {
  require_disk(basis_.model());
  if (quad_order < 1) throw Error(ErrorKind::DomainError, "quadrature order must be positive");
}

Eigen::VectorXcd QuantContext::coherent_vector(const Point& z) const {
  return basis_.evaluate(z).conjugate();
}

Operator toeplitz_operator(const QuantContext& ctx, const Symbol& f) {
  const int n = ctx.n_op();
  const double mu = ctx.model().mu();
  const double lambda = ctx.lambda();
  const int order = std::max(ctx.quad_order(), n / 2 + 16);
  const int angles = 2 * n + 64;
  const auto rule = numerics::gauss_jacobi(order, lambda * mu - 2.0);
  const auto theta = numerics::angular_nodes(angles);

  std::vector<Complex> unit(angles);
  for (int l = 0; l < angles; ++l) unit[l] = std::polar(1.0, -theta[l]);
  std::vector<double> log_norm(n);
  const auto norms = ctx.basis().norms_sq();
  for (int j = 0; j < n; ++j) log_norm[j] = std::log(norms[j]);

  Operator A = Operator::Zero(n, n);
  std::vector<Complex> values(angles);
  std::vector<Complex> fourier(2 * n - 1);
  Eigen::VectorXd c(n);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double r = std::sqrt(t);
    for (int l = 0; l < angles; ++l) {
      Point z(1);
      z(0) = std::polar(r, theta[l]);
      values[l] = f(z);
    }
    for (int nu = -(n - 1); nu <= n - 1; ++nu) {
      Complex acc = 0.0;
      const int step = ((nu % angles) + angles) % angles;
      int idx = 0;
      for (int l = 0; l < angles; ++l) {
        acc += values[l] * unit[idx];
        idx += step;
        if (idx >= angles) idx -= angles;
      }
      fourier[nu + n - 1] = acc / static_cast<double>(angles);
    }
    const double logt = std::log(t);
    for (int j = 0; j < n; ++j) c(j) = std::exp(0.5 * (j * logt - log_norm[j]));
    const double w = rule.weights[i];
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) A(j, k) += w * c(j) * c(k) * fourier[j - k + n - 1];
    }
  }
  A *= std::numbers::pi * mu;
  if (!A.allFinite()) throw Error(ErrorKind::IntegrationError, "Toeplitz quadrature produced non-finite entries");
  return A;
}

Complex covariant_symbol(const QuantContext& ctx, const Operator& A, const Point& z) {
  require_size(ctx, A);
  const Eigen::VectorXcd v = ctx.coherent_vector(z);
  return v.dot(A * v) / v.squaredNorm();
}

Operator compose(const QuantContext& ctx, const Operator& A, const Operator& B) {
  require_size(ctx, A);
  require_size(ctx, B);
  return A * B;
}

Symbol star(const QuantContext& ctx, const Operator& A, const Operator& B) {
  return [ctx, AB = compose(ctx, A, B)](const Point& z) { return covariant_symbol(ctx, AB, z); };
}

double poisson(const DomainModel& model, const RealSymbol& f, const RealSymbol& g, const Point& z) {
  if (model.kind() == DomainKind::Ball) {
    throw Error(ErrorKind::UnsupportedModel, "the Poisson bracket is implemented for one-dimensional factors");
  }
  model.require_interior(z);
  const double h = numerics::default_fd_step(model.boundary_distance(z));
  const Eigen::MatrixXcd g_metric = metric_tensor(model, z);
  double total = 0.0;
  for (int i = 0; i < model.dim(); ++i) {
    auto partial = [&](const RealSymbol& u, Complex dir) {
      Point plus = z;
      Point minus = z;
      plus(i) += dir * h;
      minus(i) -= dir * h;
      return (u(plus) - u(minus)) / (2.0 * h);
    };
    const Complex ex(1.0, 0.0);
    const Complex ey(0.0, 1.0);
    const double fx = partial(f, ex);
    const double fy = partial(f, ey);
    const double gx = partial(g, ex);
    const double gy = partial(g, ey);
    total += (fx * gy - fy * gx) / g_metric(i, i).real();
  }
  return total;
}

DecayReport correspondence_check(const DomainModel& model, const RealSymbol& f, const RealSymbol& g,
                                 const std::vector<double>& lambdas, const std::vector<Point>& samples,
                                 const CorrespondenceOptions& options) {
  if (lambdas.empty() || samples.empty()) {
    throw Error(ErrorKind::DomainError, "correspondence check needs lambdas and sample points");
  }
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > lambdas[i - 1])) throw Error(ErrorKind::DomainError, "lambdas must increase");
  }
  for (double lambda : lambdas) require_nontrivial(model, lambda);
  double radius = 0.0;
  for (const auto& z : samples) {
    model.require_interior(z);
    radius = std::max(radius, model.radius(z));
  }

  std::vector<double> bracket(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) bracket[s] = poisson(model, f, g, samples[s]);

  DecayReport report;
  report.lambdas = lambdas;
  report.bracket_scale = options.bracket_scale;
  const Complex i_unit(0.0, 1.0);
  for (double lambda : lambdas) {
    const QuantContext ctx = QuantContext::create(model, lambda, radius, options.quad_order);
    const Operator A = toeplitz_operator(ctx, f);
    const Operator B = toeplitz_operator(ctx, g);
    const Operator AB = A * B;
    const Operator BA = B * A;
    double e1 = 0.0;
    double e2 = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const Eigen::VectorXcd v = ctx.coherent_vector(samples[s]);
      const double vv = v.squaredNorm();
      const Complex sa = v.dot(A * v) / vv;
      const Complex sb = v.dot(B * v) / vv;
      const Complex sab = v.dot(AB * v) / vv;
      const Complex sba = v.dot(BA * v) / vv;
      e1 = std::max(e1, std::abs(sab - sa * sb));
      e2 = std::max(e2, std::abs(lambda * (sab - sba) - i_unit * options.bracket_scale * bracket[s]));
    }
    report.E1.push_back(e1);
    report.E2.push_back(e2);
    report.n_op.push_back(ctx.n_op());
  }

  auto slope = [&](const std::vector<double>& err) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < err.size(); ++i) {
      if (err[i] > 0.0) {
        x.push_back(std::log(1.0 / lambdas[i]));
        y.push_back(std::log(err[i]));
      }
    }
    return x.size() < 2 ? 0.0 : numerics::regression_slope(x, y);
  };
  report.slope_E1 = slope(report.E1);
  report.slope_E2 = slope(report.E2);
  return report;
}

SeparationReport separation_check(const QuantContext& ctx, const Point& x1, const Point& x2) {
  SeparationReport report;
  report.separation = (x1 - x2).norm();
  if (report.separation < kMinPairSeparation) {
    throw Error(ErrorKind::DomainError, "separation check needs distinct points");
  }
  const Eigen::VectorXcd k = ctx.coherent_vector(x1);
  const Eigen::VectorXcd v = ctx.coherent_vector(x2);
  const double kk = k.squaredNorm();
  report.sigma_x1 = std::norm(k.dot(k)) / (kk * kk);
  report.sigma_x2 = std::norm(v.dot(k)) / (kk * v.squaredNorm());
  report.gap = report.sigma_x1 - report.sigma_x2;
  const double D = potential(ctx.model(), x1) + potential(ctx.model(), x2) -
                   2.0 * potential_ext(ctx.model(), x1, x2).real();
  report.expected_gap = 1.0 - std::exp(-ctx.lambda() * D);
  return report;
}

}  // namespace berezin
