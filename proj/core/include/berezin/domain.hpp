#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "berezin/numerics.hpp"
#include "berezin/rootdata.hpp"

namespace berezin {

using Point = Eigen::VectorXcd;
using PointPair = std::pair<Point, Point>;

enum class DomainKind { Disk, Ball, Polydisk };

std::string_view to_string(DomainKind kind) noexcept;

/// Holomorphic polynomial phi(z) = sum_k c_k z_1^k in the first coordinate.
/// Replacing the potential by Phi - Re(phi) leaves the metric unchanged.
struct HolomorphicGauge {
  std::vector<Complex> coefficients;

  Complex operator()(const Point& z) const;
  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Unit disk, unit ball B^n or polydisk D^n with potential
/// Phi = -mu log(1 - |z|^2) (summed per factor on the polydisk), optionally
/// shifted by the real part of a holomorphic gauge.
class DomainModel {
 public:
  static DomainModel disk(double mu = 2.0);
  static DomainModel ball(int n, std::optional<double> mu = std::nullopt);
  static DomainModel polydisk(int n, std::optional<double> mu = std::nullopt);

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double mu() const { return mu_; }
  /// mu giving the Bergman metric: 2 for disk and polydisk factors, n+1 for B^n.
  double genus() const;

  /// Multiplicities of the Bergman metric (gamma = bergman_gamma).
  const RootSystemData& root_data() const { return root_data_; }
  /// Root data of the metric actually in use: gamma scaled by mu/genus.
  RootSystemData metric_root_data() const { return root_data_.scaled(mu_ / genus()); }

  DomainModel with_gauge(HolomorphicGauge gauge) const;
  const std::optional<HolomorphicGauge>& gauge() const { return gauge_; }

  bool contains(const Point& z) const;
  /// |z| for disk and ball, max_i |z_i| for the polydisk.
  double radius(const Point& z) const;
  /// Euclidean distance to the boundary.
  double boundary_distance(const Point& z) const;
  /// Throws Error{OutsideDomain} unless contains(z) and the size matches.
  void require_interior(const Point& z) const;

 private:
  DomainModel(DomainKind kind, int dim, double mu);

  DomainKind kind_;
  int dim_;
  double mu_;
  RootSystemData root_data_;
  std::optional<HolomorphicGauge> gauge_;
};

double potential(const DomainModel& model, const Point& z);

/// Sesquianalytic extension Phi(z, conj w), principal logarithm; holomorphic in
/// z, antiholomorphic in w, and equal to potential(z) on the diagonal.
Complex potential_ext(const DomainModel& model, const Point& z, const Point& w);

/// Complex Hessian g(i,j) = d^2 Phi / dz_i dzbar_j.
Eigen::MatrixXcd metric_tensor(const DomainModel& model, const Point& z);

/// det of metric_tensor: the density of omega^n/n! against Lebesgue measure.
double metric_density(const DomainModel& model, const Point& z);

/// Holomorphic automorphism stored as a sequence of elementary steps applied
/// in order. Disk and ball use the involutions
///   phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>),  s_a = sqrt(1 - |a|^2),
/// which swap a and 0; the polydisk applies the disk involution per factor.
class Automorphism {
 public:
  struct Unitary {
    Eigen::MatrixXcd matrix;
  };
  struct Involution {
    Point a;
  };
  using Step = std::variant<Unitary, Involution>;

  Automorphism(DomainKind kind, int dim);
  Automorphism(DomainKind kind, int dim, std::vector<Step> steps);

  Point apply(const Point& z) const;
  /// this, then `next`.
  Automorphism then(const Automorphism& next) const;
  Automorphism inverse() const;

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<Step>& steps() const { return steps_; }

 private:
  DomainKind kind_;
  int dim_;
  std::vector<Step> steps_;
};

/// Throws Error{OutsideDomain} if z is not interior.
Point apply_automorphism(const Automorphism& h, const Point& z);

/// Involution mapping 0 to `target`.
Automorphism transvection_to(const DomainModel& model, const Point& target);

/// Diagonal phase rotation z_i -> e^{i theta_i} z_i (a single phase on the disk).
Automorphism rotation(const DomainModel& model, const std::vector<double>& phases);

/// The disk Moebius map (z - a) / (1 - conj(a) z).
Automorphism mobius(Complex a);

/// Uniformly phased rotation (Haar unitary on the ball) followed by a
/// transvection to a point sampled uniformly from the radius-0.9 region.
Automorphism random_automorphism(const DomainModel& model, std::uint64_t seed);

/// Uniform sample from {radius(z) <= max_radius}.
Point sample_interior(const DomainModel& model, std::mt19937_64& rng, double max_radius = 0.9);

/// `count` independent pairs; seeded, deterministic.
std::vector<PointPair> sample_pairs(const DomainModel& model, int count, std::uint64_t seed,
                                    double max_radius = 0.9);

Point make_point(std::initializer_list<Complex> coords);

}  // namespace berezin
