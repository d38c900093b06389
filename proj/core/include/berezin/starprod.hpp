#pragma once

#include <functional>
#include <vector>

#include "berezin/bergman.hpp"

namespace berezin {

using Operator = Eigen::MatrixXcd;
using Symbol = std::function<Complex(const Point&)>;
using RealSymbol = std::function<double(const Point&)>;

/// One algebra A_hbar: lambda = 1/hbar and a truncated basis {s_j}, j < N_op.
/// Operators are N_op x N_op matrices in that basis. Disk models only.
class QuantContext {
 public:
  /// Truncation degree from choose_truncation at `max_radius` (tol 1e-14)
  /// plus a margin of 10 degrees. Throws Error{TrivialSpace},
  /// Error{UnsupportedModel}, Error{TruncationInsufficient}.
  static QuantContext create(const DomainModel& model, double lambda, double max_radius = 0.9,
                             int quad_order = 64);

  QuantContext(BergmanBasis basis, int quad_order = 64);

  const BergmanBasis& basis() const { return basis_; }
  const DomainModel& model() const { return basis_.model(); }
  double lambda() const { return basis_.lambda(); }
  double hbar() const { return hbar_; }
  int n_op() const { return static_cast<int>(basis_.size()); }
  int quad_order() const { return quad_order_; }

  /// v_j = conj(s_j(z)).
  Eigen::VectorXcd coherent_vector(const Point& z) const;

 private:
  BergmanBasis basis_;
  double hbar_;
  int quad_order_;
};

/// A_jk = int f s_k conj(s_j) e^{-lambda Phi} det(d dbar Phi) dV, radial
/// Gauss-Jacobi x angular Fourier quadrature.
Operator toeplitz_operator(const QuantContext& ctx, const Symbol& f);

/// v* A v / v* v with v the coherent vector at z.
Complex covariant_symbol(const QuantContext& ctx, const Operator& A, const Point& z);

/// Operator product checked against the context size (Error{ContextMismatch}).
Operator compose(const QuantContext& ctx, const Operator& A, const Operator& B);

/// z -> sigma(AB)(z).
Symbol star(const QuantContext& ctx, const Operator& A, const Operator& B);

/// Bracket of omega = Phi_zzbar dx ^ dy: (f_x g_y - f_y g_x) / Phi_zzbar, summed
/// over factors on the polydisk. Central differences. Error{UnsupportedModel}
/// for the ball.
double poisson(const DomainModel& model, const RealSymbol& f, const RealSymbol& g, const Point& z);

/// lambda (sigma(AB) - sigma(BA)) tends to i * kBracketScale * poisson(f, g).
inline constexpr double kBracketScale = -0.5;

struct DecayReport {
  std::vector<double> lambdas;
  std::vector<double> E1;
  std::vector<double> E2;
  std::vector<int> n_op;
  double slope_E1 = 0.0;
  double slope_E2 = 0.0;
  double bracket_scale = kBracketScale;
};

struct CorrespondenceOptions {
  int quad_order = 64;
  double bracket_scale = kBracketScale;
};

/// E1 = max |sigma(AB) - sigma(A) sigma(B)|,
/// E2 = max |lambda (sigma(AB) - sigma(BA)) - i bracket_scale {f, g}| over the
/// samples, with slopes of log E against log(1/lambda). Lambdas must increase.
DecayReport correspondence_check(const DomainModel& model, const RealSymbol& f, const RealSymbol& g,
                                 const std::vector<double>& lambdas, const std::vector<Point>& samples,
                                 const CorrespondenceOptions& options = {});

struct SeparationReport {
  double separation = 0.0;
  double sigma_x1 = 0.0;
  double sigma_x2 = 0.0;
  double gap = 0.0;
  /// 1 - e^{-lambda D(x1, x2)}
  double expected_gap = 0.0;
  bool separated() const { return gap > 0.0; }
};

/// Coherent projector P at x1; gap = sigma(P)(x1) - sigma(P)(x2).
/// Error{DomainError} when |x1 - x2| < 1e-6.
SeparationReport separation_check(const QuantContext& ctx, const Point& x1, const Point& x2);

}  // namespace berezin
