#include <algorithm>
#include <cmath>
#include <numbers>

#include "berezin/bergman.hpp"
#include "berezin/error.hpp"
#include "berezin/numerics.hpp"

namespace berezin {

GaugedKernel::GaugedKernel(DomainModel model, double lambda, int degree, int quad_order)
    : model_(std::move(model)), lambda_(lambda), degree_(degree) {
  if (model_.kind() != DomainKind::Disk) {
    throw Error(ErrorKind::UnsupportedModel, "gauged kernels are implemented for the disk only");
  }
  if (degree < 0) throw Error(ErrorKind::DomainError, "truncation degree must be nonnegative");
  require_nontrivial(model_, lambda_);

  const double mu = model_.mu();
  const DomainModel plain = DomainModel::disk(mu);
  const int dim = degree + 1;
  scale_.resize(dim);
  for (int j = 0; j < dim; ++j) {
    const int m[1] = {j};
    scale_[j] = std::exp(-0.5 * log_monomial_norm_sq(plain, lambda_, m));
  }

  const int gauge_degree = model_.gauge() ? std::max(model_.gauge()->degree(), 0) : 0;
  const int order = std::max(quad_order, degree / 2 + 8 * gauge_degree + 16);
  const int angles = std::max(4 * order, 2 * degree + 64 * std::max(gauge_degree, 1) + 64);
  const auto rule = numerics::gauss_jacobi(order, lambda_ * mu - 2.0);
  const auto theta = numerics::angular_nodes(angles);

  // unit[l] = e^{-i theta_l}; e^{-i nu theta_l} = unit[(nu * l) mod M]
  std::vector<Complex> unit(angles);
  for (int l = 0; l < angles; ++l) unit[l] = std::polar(1.0, -theta[l]);

  gram_ = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Complex> fourier(2 * degree + 1);
  std::vector<double> rpow(2 * degree + 1);
  std::vector<double> modifier(angles);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = std::sqrt(rule.nodes[i]);
    // e^{-lambda Phi'} = e^{-lambda Phi} e^{lambda Re phi}
    for (int l = 0; l < angles; ++l) {
      double mod = 1.0;
      if (model_.gauge()) {
        Point z(1);
        z(0) = std::polar(r, theta[l]);
        mod = std::exp(lambda_ * (*model_.gauge())(z).real());
      }
      modifier[l] = mod;
    }
    for (int nu = -degree; nu <= degree; ++nu) {
      Complex acc = 0.0;
      const int step = ((nu % angles) + angles) % angles;
      int idx = 0;
      for (int l = 0; l < angles; ++l) {
        acc += modifier[l] * unit[idx];
        idx += step;
        if (idx >= angles) idx -= angles;
      }
      fourier[nu + degree] = acc / static_cast<double>(angles);
    }
    rpow[0] = 1.0;
    for (int p = 1; p <= 2 * degree; ++p) rpow[p] = rpow[p - 1] * r;
    const double w = rule.weights[i];
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        gram_(j, k) += w * rpow[j + k] * fourier[k - j + degree];
      }
    }
  }
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) gram_(j, k) *= std::numbers::pi * mu * scale_[j] * scale_[k];
  }
  // Symmetrize away quadrature round-off before factorizing.
  gram_ = 0.5 * (gram_ + gram_.adjoint()).eval();
  llt_.compute(gram_);
  if (llt_.info() != Eigen::Success) {
    throw Error(ErrorKind::IntegrationError, "gauged Gram matrix is not positive definite");
  }
}

Eigen::VectorXcd GaugedKernel::evaluate(const Point& z) const {
  model_.require_interior(z);
  Eigen::VectorXcd b(degree_ + 1);
  Complex zp = 1.0;
  for (int j = 0; j <= degree_; ++j) {
    b(j) = zp * scale_[j];
    zp *= z(0);
  }
  return llt_.matrixL().solve(b);
}

Complex GaugedKernel::kernel(const Point& z, const Point& w) const {
  const Eigen::VectorXcd ez = evaluate(z);
  const Eigen::VectorXcd ew = evaluate(w);
  return ew.dot(ez);
}

double GaugedKernel::diagonal(const Point& z) const { return evaluate(z).squaredNorm(); }

double GaugedKernel::epsilon(const Point& z) const {
  return std::exp(-lambda_ * potential(model_, z)) * diagonal(z);
}

}  // namespace berezin
