#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "berezin/bergman.hpp"

namespace berezin {

/// Representative of a point in (truncated) CP^N with its cached squared norm.
class ProjectivePoint {
 public:
  /// Throws Error{InvalidProjectivePoint} for the zero vector.
  explicit ProjectivePoint(Eigen::VectorXcd coords);

  const Eigen::VectorXcd& coords() const { return coords_; }
  double norm_sq() const { return norm_sq_; }
  Eigen::Index size() const { return coords_.size(); }

 private:
  Eigen::VectorXcd coords_;
  double norm_sq_;
};

/// Calabi diastasis Phi(x) + Phi(y) - 2 Re Phi(x, conj y).
double diastasis(const DomainModel& model, const Point& x, const Point& y);

/// Point tolerance deciding whether two points coincide.
inline constexpr double kPointTolerance = 1e-12;

struct DiastasisViolation {
  std::size_t pair_index = 0;
  double value = 0.0;
  std::string reason;
};

struct DiastasisReport {
  std::size_t pair_count = 0;
  std::size_t coincident_count = 0;
  double min_value = 0.0;
  double max_value = 0.0;
  /// max over distinct pairs (how close to 1 a distinct pair gets)
  double max_distinct_value = 0.0;
  std::vector<double> values;
  std::vector<DiastasisViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// e^{-D} must lie in (0, 1], and equal 1 (within 1e-12) exactly on pairs
/// whose points agree within kPointTolerance.
DiastasisReport exp_neg_diastasis_check(const DomainModel& model, std::span<const PointPair> pairs);

/// |<p, q>|^2 / (|p|^2 |q|^2), clamped to [0, 1]. 0 on the cut locus.
double fs_exp_neg_diastasis(const ProjectivePoint& p, const ProjectivePoint& q);

/// Coherent states map z -> [s_0(z) : s_1(z) : ...] on the truncated basis.
ProjectivePoint coherent_map(const BergmanBasis& basis, const Point& z);
ProjectivePoint coherent_map(const GaugedKernel& kernel, const Point& z);

/// |e^{-D_FS(phi(x), phi(y))} - e^{-lambda D(x, y)}|.
double hereditary_check(const BergmanBasis& basis, const Point& x, const Point& y);

/// Entrywise |dd^c log K(z,z) - lambda g(z)| / |lambda g| where the
/// denominator is |lambda g(i,j)| on the diagonal and max_k |lambda g(k,k)|
/// off the diagonal (off-diagonal metric entries may vanish). When `h` is
/// unset the default step is used. Throws Error{StencilOutOfDomain}.
Eigen::MatrixXd pullback_check(const BergmanBasis& basis, const Point& z,
                               std::optional<double> h = std::nullopt);
Eigen::MatrixXd pullback_check(const GaugedKernel& kernel, const Point& z,
                               std::optional<double> h = std::nullopt);

/// Generic form: any log-kernel diagonal against lambda * metric_tensor.
Eigen::MatrixXd pullback_residual(const DomainModel& model, double lambda,
                                  const std::function<double(const Point&)>& log_kernel_diagonal,
                                  const Point& z, std::optional<double> h = std::nullopt);

/// Minimal separation for pairs in the injectivity sample.
inline constexpr double kMinSeparation = 1e-6;

struct InjectivityReport {
  std::size_t pair_count = 0;
  std::size_t skipped_pairs = 0;
  double min_separation = 0.0;
  double max_value = 0.0;
  std::vector<std::size_t> violations;
  bool passed() const { return violations.empty(); }
};

/// For each pair with separation d >= kMinSeparation require
/// e^{-D_FS(phi x, phi y)} < 1 - d^2 (1 - r^2) / (8n), r the larger radius of
/// the pair. Half of that margin, d^2 (1 - r^2) / (4n), bounds
/// 1 - e^{-lambda D} from below on disk, ball and polydisk when lambda*mu >= 1.
InjectivityReport injectivity_sample(const BergmanBasis& basis, std::span<const PointPair> pairs);

}  // namespace berezin
