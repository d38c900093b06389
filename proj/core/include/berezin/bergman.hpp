#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "berezin/domain.hpp"

namespace berezin {

/// Measure convention used throughout: weight e^{-lambda Phi}, density
/// det(d dbar Phi), Lebesgue base measure on C^n. With it
///   disk/ball:  ||z^m||^2 = pi^n mu^n m! Gamma(s+1) / Gamma(n+|m|+s+1),  s = lambda mu - n - 1
///   polydisk:   product of the one-dimensional disk norms.

/// Throws Error{TrivialSpace} when the strict nontriviality criterion fails
/// for (model, lambda); that is when lambda*g is below the balanced range.
void require_nontrivial(const DomainModel& model, double lambda);

/// Closed-form squared norm of z^m via Gamma ratios.
double monomial_norm_sq(const DomainModel& model, double lambda, std::span<const int> m);
double log_monomial_norm_sq(const DomainModel& model, double lambda, std::span<const int> m);

/// Same quantity by Gauss-Jacobi quadrature in t = |z|^2.
double monomial_norm_sq_quadrature(const DomainModel& model, double lambda, std::span<const int> m,
                                   int order);

enum class NormBackend { ClosedForm, Quadrature };

/// Truncation degree control. For the largest sample radius rho, the degree
/// N is the smallest one whose geometric tail bound on the diagonal kernel,
/// relative to the partial sum at rho, is below `tol`. N bounds the total
/// degree on the disk and ball and every factor degree on the polydisk.
struct TruncationOptions {
  double max_radius = 0.9;
  double tol = 1e-15;
  int max_degree = 400;
};

/// Throws Error{TruncationInsufficient} when no N <= max_degree meets tol.
int choose_truncation(const DomainModel& model, double lambda, const TruncationOptions& options);

/// Upper bound on the relative tail of the diagonal series at radius rho
/// after truncation degree N.
double relative_tail_bound(const DomainModel& model, double lambda, int degree, double rho);

/// Truncated orthonormal monomial basis s_m = z^m / ||z^m|| of the weighted
/// Bergman space, graded by total degree. Disk and ball keep |m| <= degree,
/// the polydisk keeps max_i m_i <= degree.
class BergmanBasis {
 public:
  /// Throws Error{TrivialSpace} below threshold, Error{UnsupportedModel}
  /// for gauged models (monomials are no longer orthogonal; see GaugedKernel)
  /// and Error{TruncationInsufficient} past four million basis elements.
  BergmanBasis(DomainModel model, double lambda, int degree,
               NormBackend backend = NormBackend::ClosedForm, int quad_order = 64);

  static BergmanBasis for_radius(DomainModel model, double lambda,
                                 const TruncationOptions& options = {},
                                 NormBackend backend = NormBackend::ClosedForm, int quad_order = 64);

  const DomainModel& model() const { return model_; }
  double lambda() const { return lambda_; }
  int degree() const { return degree_; }
  std::size_t size() const { return norms_sq_.size(); }
  NormBackend backend() const { return backend_; }

  /// Multi-index of basis element j.
  std::span<const int> index(std::size_t j) const;
  std::span<const double> norms_sq() const { return norms_sq_; }
  /// Measured value of the balanced constant: epsilon at the origin.
  double c_lambda_observed() const { return 1.0 / norms_sq_.front(); }

  /// (s_0(z), s_1(z), ...).
  Eigen::VectorXcd evaluate(const Point& z) const;

 private:
  DomainModel model_;
  double lambda_;
  int degree_;
  NormBackend backend_;
  std::vector<int> indices_;  // flat, stride = dim
  std::vector<double> norms_sq_;
  std::vector<double> inv_norms_;
};

/// sum_{|m| <= N} z^m conj(w)^m / ||z^m||^2.
Complex kernel_series(const BergmanBasis& basis, const Point& z, const Point& w);

/// The balanced constant c_lambda with K(z, conj z) = c_lambda e^{lambda Phi(z)}:
///   disk/ball: Gamma(lambda mu) / (mu^n pi^n Gamma(lambda mu - n)); polydisk: product.
double c_lambda(const DomainModel& model, double lambda);

/// c_lambda exp(lambda Phi(z, conj w)). Throws Error{TrivialSpace}, Error{OutsideDomain}.
Complex kernel_closed(const DomainModel& model, double lambda, const Point& z, const Point& w);

/// e^{-lambda Phi(z)} K(z, conj z) with the truncated series.
double epsilon(const BergmanBasis& basis, const Point& z);
double epsilon(const DomainModel& model, double lambda, const Point& z,
               const TruncationOptions& options = {});

struct EpsilonSample {
  Point z;
  double epsilon = 0.0;
  bool orbit = false;
};

struct BalancedReport {
  double lambda = 0.0;
  double lambda0 = 0.0;
  bool is_balanced = false;
  bool at_threshold = false;
  double mean_epsilon = 0.0;
  double max_rel_dev = 0.0;
  double tol = 0.0;
  int truncation_degree = 0;
  std::optional<std::string> reason;
  std::vector<EpsilonSample> samples;
};

struct BalancedOptions {
  int sample_count = 50;
  int orbit_count = 20;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  /// Truncation target for the verdict's kernel series.
  double truncation_tol = 1e-12;
};

/// Samples epsilon at random interior points (radius <= 0.9) and along the
/// orbit h.z0 of z0 = 0.3 e_1 under random automorphisms. Balanced iff the
/// space is nontrivial and the max relative deviation from the mean is < tol.
/// Never throws for lambda below threshold: that is reported as
/// is_balanced = false with reason "TrivialSpace".
BalancedReport balanced_verdict(const DomainModel& model, double lambda,
                                const BalancedOptions& options = {});

/// Reproducing kernel of the span of {z^j : j <= degree} under the weight of a
/// gauged disk potential Phi - Re(phi), built from a Gram matrix computed by
/// radial Gauss-Jacobi x angular trapezoid quadrature. As the degree grows it
/// converges to the kernel of the full weighted Bergman space.
class GaugedKernel {
 public:
  /// Disk models only (Error{UnsupportedModel} otherwise).
  GaugedKernel(DomainModel model, double lambda, int degree, int quad_order = 64);

  const DomainModel& model() const { return model_; }
  double lambda() const { return lambda_; }
  int degree() const { return degree_; }

  /// Orthonormalized basis values at z (Cholesky-whitened monomials).
  Eigen::VectorXcd evaluate(const Point& z) const;
  Complex kernel(const Point& z, const Point& w) const;
  double diagonal(const Point& z) const;
  double epsilon(const Point& z) const;
  /// Gram matrix of the normalized monomials z^j / ||z^j||_ungauged.
  const Eigen::MatrixXcd& gram() const { return gram_; }

 private:
  DomainModel model_;
  double lambda_;
  int degree_;
  std::vector<double> scale_;  // 1/||z^j|| of the ungauged weight
  Eigen::MatrixXcd gram_;
  Eigen::LLT<Eigen::MatrixXcd> llt_;
};

}  // namespace berezin
