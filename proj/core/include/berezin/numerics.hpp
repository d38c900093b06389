#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace berezin {

using Complex = std::complex<double>;

namespace numerics {

/// Gauss rule on (0,1) for the weight (1-t)^alpha.
///
/// An `order`-point rule integrates every polynomial of degree
/// <= 2*order-1 exactly against the weight. Nodes are strictly inside
/// (0,1) and weights are strictly positive. Rules are immutable values.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double alpha = 0.0;
  int order = 0;

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Throws Error{NonIntegrableWeight} when alpha <= -1 and
/// Error{DomainError} when order < 1.
QuadratureRule gauss_jacobi(int order, double alpha);

/// Sum of w_i f(t_i) for gauss_jacobi(order, alpha).
double integrate_radial(const std::function<double(double)>& f, double alpha, int order);

/// Uniform angular nodes 2*pi*l/count, l = 0..count-1. The trapezoid rule on
/// these nodes is exact for trigonometric polynomials of degree < count.
std::vector<double> angular_nodes(int count);

/// Predicate declaring the open region a finite-difference stencil may touch.
using RegionPredicate = std::function<bool(Complex)>;
using VectorRegionPredicate = std::function<bool(const Eigen::VectorXcd&)>;

/// 5-point approximation of d^2u/dz dzbar = (u_xx + u_yy)/4, O(h^2).
/// Throws Error{StencilOutOfDomain} if any stencil point fails `inside`.
double fd_del_delbar(const std::function<double(Complex)>& u, Complex z, double h,
                     const RegionPredicate& inside = {});

/// Complex Hessian H(i,j) = d^2u/dz_i dzbar_j of a real function of n
/// complex variables, assembled from central and mixed 4-point real stencils.
Eigen::MatrixXcd fd_complex_hessian(const std::function<double(const Eigen::VectorXcd&)>& u,
                                    const Eigen::VectorXcd& z, double h,
                                    const VectorRegionPredicate& inside = {});

/// 1e-3 * distance to the boundary, capped at 1e-3.
double default_fd_step(double boundary_distance);

/// log(Gamma(a)/Gamma(b)) for a, b > 0. Integer shifts up to 64 use the
/// recurrence, everything else lgamma. Throws Error{DomainError}.
double log_gamma_ratio(double a, double b);

/// log B(a, b). Throws Error{DomainError} for nonpositive arguments.
double log_beta(double a, double b);

/// Ordinary least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace numerics
}  // namespace berezin
