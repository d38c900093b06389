#include "berezin/domain.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "berezin/error.hpp"

namespace berezin {

std::string_view to_string(DomainKind kind) noexcept {
  switch (kind) {
    case DomainKind::Disk: return "disk";
    case DomainKind::Ball: return "ball";
    case DomainKind::Polydisk: return "polydisk";
  }
  return "unknown";
}

Complex HolomorphicGauge::operator()(const Point& z) const {
  Complex acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z(0) + *it;
  return acc;
}

DomainModel::DomainModel(DomainKind kind, int dim, double mu) : kind_(kind), dim_(dim), mu_(mu) {
  if (dim < 1) throw Error(ErrorKind::DomainError, "dimension must be positive");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw Error(ErrorKind::DomainError, "mu must be positive");
  switch (kind) {
    case DomainKind::Disk: root_data_ = symmetric_root_data({1, 0.0, 0.0}); break;
    case DomainKind::Ball: root_data_ = symmetric_root_data({1, 0.0, dim - 1.0}); break;
    case DomainKind::Polydisk: root_data_ = symmetric_root_data({dim, 0.0, 0.0}); break;
  }
}

DomainModel DomainModel::disk(double mu) { return DomainModel(DomainKind::Disk, 1, mu); }

DomainModel DomainModel::ball(int n, std::optional<double> mu) {
  return DomainModel(DomainKind::Ball, n, mu.value_or(n + 1.0));
}

DomainModel DomainModel::polydisk(int n, std::optional<double> mu) {
  return DomainModel(DomainKind::Polydisk, n, mu.value_or(2.0));
}

double DomainModel::genus() const {
  return kind_ == DomainKind::Ball ? dim_ + 1.0 : 2.0;
}

DomainModel DomainModel::with_gauge(HolomorphicGauge gauge) const {
  DomainModel out = *this;
  out.gauge_ = std::move(gauge);
  return out;
}

double DomainModel::radius(const Point& z) const {
  if (kind_ == DomainKind::Polydisk) return z.cwiseAbs().maxCoeff();
  return z.norm();
}

bool DomainModel::contains(const Point& z) const {
  return z.size() == dim_ && z.allFinite() && radius(z) < 1.0;
}

double DomainModel::boundary_distance(const Point& z) const { return 1.0 - radius(z); }

void DomainModel::require_interior(const Point& z) const {
  if (z.size() != dim_) {
    throw Error(ErrorKind::OutsideDomain, "point has dimension " + std::to_string(z.size()) +
                                              ", domain has " + std::to_string(dim_));
  }
  if (!contains(z)) throw Error(ErrorKind::OutsideDomain, "point is not interior");
}

double potential(const DomainModel& model, const Point& z) {
  model.require_interior(z);
  double value = 0.0;
  if (model.kind() == DomainKind::Polydisk) {
    for (Eigen::Index i = 0; i < z.size(); ++i) value -= model.mu() * std::log1p(-std::norm(z(i)));
  } else {
    value = -model.mu() * std::log1p(-z.squaredNorm());
  }
  if (model.gauge()) value -= (*model.gauge())(z).real();
  return value;
}

Complex potential_ext(const DomainModel& model, const Point& z, const Point& w) {
  model.require_interior(z);
  model.require_interior(w);
  Complex value = 0.0;
  if (model.kind() == DomainKind::Polydisk) {
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      value -= model.mu() * std::log(1.0 - z(i) * std::conj(w(i)));
    }
  } else {
    // w.dot(z) is sum conj(w_i) z_i
    value = -model.mu() * std::log(1.0 - w.dot(z));
  }
  if (model.gauge()) {
    const auto& phi = *model.gauge();
    value -= 0.5 * (phi(z) + std::conj(phi(w)));
  }
  return value;
}

Eigen::MatrixXcd metric_tensor(const DomainModel& model, const Point& z) {
  model.require_interior(z);
  const int n = model.dim();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
  if (model.kind() == DomainKind::Polydisk) {
    for (int i = 0; i < n; ++i) {
      const double s = 1.0 - std::norm(z(i));
      g(i, i) = model.mu() / (s * s);
    }
    return g;
  }
  const double s = 1.0 - z.squaredNorm();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = std::conj(z(i)) * z(j);
      if (i == j) g(i, j) += s;
    }
  }
  return g * (model.mu() / (s * s));
}

double metric_density(const DomainModel& model, const Point& z) {
  model.require_interior(z);
  if (model.kind() == DomainKind::Polydisk) {
    double d = 1.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double s = 1.0 - std::norm(z(i));
      d *= model.mu() / (s * s);
    }
    return d;
  }
  // det(mu [ (1-s) I + zbar z^T ] / (1-s)^2) = mu^n (1-s)^{-(n+1)}
  const int n = model.dim();
  return std::pow(model.mu(), n) * std::pow(1.0 - z.squaredNorm(), -(n + 1));
}

// ---------------------------------------------------------------------------
// Automorphisms

namespace {

Point ball_involution(const Point& a, const Point& z) {
  const double aa = a.squaredNorm();
  if (aa == 0.0) return -z;
  const Complex za = a.dot(z);  // <z, a>
  const Point pz = (za / aa) * a;
  const Point qz = z - pz;
  const double s = std::sqrt(1.0 - aa);
  return (a - pz - s * qz) / (1.0 - za);
}

Point polydisk_involution(const Point& a, const Point& z) {
  Point out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    out(i) = (a(i) - z(i)) / (1.0 - std::conj(a(i)) * z(i));
  }
  return out;
}

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace

Automorphism::Automorphism(DomainKind kind, int dim) : kind_(kind), dim_(dim) {}

Automorphism::Automorphism(DomainKind kind, int dim, std::vector<Step> steps)
    : kind_(kind), dim_(dim), steps_(std::move(steps)) {}

Point Automorphism::apply(const Point& z) const {
  Point out = z;
  for (const Step& step : steps_) {
    if (const auto* u = std::get_if<Unitary>(&step)) {
      out = u->matrix * out;
    } else {
      const auto& inv = std::get<Involution>(step);
      out = kind_ == DomainKind::Polydisk ? polydisk_involution(inv.a, out) : ball_involution(inv.a, out);
    }
  }
  return out;
}

Automorphism Automorphism::then(const Automorphism& next) const {
  if (next.kind_ != kind_ || next.dim_ != dim_) {
    throw Error(ErrorKind::DomainError, "cannot compose automorphisms of different domains");
  }
  std::vector<Step> steps = steps_;
  steps.insert(steps.end(), next.steps_.begin(), next.steps_.end());
  return Automorphism(kind_, dim_, std::move(steps));
}

Automorphism Automorphism::inverse() const {
  std::vector<Step> steps;
  steps.reserve(steps_.size());
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    if (const auto* u = std::get_if<Unitary>(&*it)) {
      steps.emplace_back(Unitary{u->matrix.adjoint()});
    } else {
      steps.push_back(*it);
    }
  }
  return Automorphism(kind_, dim_, std::move(steps));
}

Point apply_automorphism(const Automorphism& h, const Point& z) {
  if (z.size() != h.dim() || !(h.kind() == DomainKind::Polydisk ? z.cwiseAbs().maxCoeff() < 1.0 : z.norm() < 1.0)) {
    throw Error(ErrorKind::OutsideDomain, "automorphisms act on interior points");
  }
  return h.apply(z);
}

Automorphism transvection_to(const DomainModel& model, const Point& target) {
  model.require_interior(target);
  return Automorphism(model.kind(), model.dim(), {Automorphism::Involution{target}});
}

Automorphism rotation(const DomainModel& model, const std::vector<double>& phases) {
  const int n = model.dim();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  if (phases.size() == 1) {
    u *= std::polar(1.0, phases.front());
  } else if (static_cast<int>(phases.size()) == n) {
    for (int i = 0; i < n; ++i) u(i, i) = std::polar(1.0, phases[i]);
  } else {
    throw Error(ErrorKind::DomainError, "rotation needs one phase or one per coordinate");
  }
  return Automorphism(model.kind(), n, {Automorphism::Unitary{u}});
}

Automorphism mobius(Complex a) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::OutsideDomain, "Moebius parameter must be interior");
  Point pa(1);
  pa(0) = a;
  Eigen::MatrixXcd minus_one(1, 1);
  minus_one(0, 0) = -1.0;
  // (z - a)/(1 - conj(a) z) = -phi_a(z)
  return Automorphism(DomainKind::Disk, 1,
                      {Automorphism::Involution{pa}, Automorphism::Unitary{minus_one}});
}

Automorphism random_automorphism(const DomainModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = model.dim();
  Eigen::MatrixXcd u;
  if (model.kind() == DomainKind::Ball) {
    u = haar_unitary(n, rng);
  } else {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    u = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i) u(i, i) = std::polar(1.0, phase(rng));
  }
  const Point target = sample_interior(model, rng, 0.9);
  return Automorphism(model.kind(), n, {Automorphism::Unitary{u}, Automorphism::Involution{target}});
}

Point sample_interior(const DomainModel& model, std::mt19937_64& rng, double max_radius) {
  if (!(max_radius > 0.0 && max_radius < 1.0)) {
    throw Error(ErrorKind::DomainError, "sampling radius must lie in (0, 1)");
  }
  const int n = model.dim();
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Point z(n);
  if (model.kind() == DomainKind::Polydisk) {
    for (int i = 0; i < n; ++i) {
      const double r = max_radius * std::sqrt(uniform(rng));
      z(i) = std::polar(r, 2.0 * std::numbers::pi * uniform(rng));
    }
    return z;
  }
  std::normal_distribution<double> normal;
  for (int i = 0; i < n; ++i) z(i) = Complex(normal(rng), normal(rng));
  const double norm = z.norm();
  const double r = max_radius * std::pow(uniform(rng), 1.0 / (2.0 * n));
  return z * (r / norm);
}

std::vector<PointPair> sample_pairs(const DomainModel& model, int count, std::uint64_t seed,
                                    double max_radius) {
  std::mt19937_64 rng(seed);
  std::vector<PointPair> pairs;
  pairs.reserve(count);
  for (int i = 0; i < count; ++i) {
    Point x = sample_interior(model, rng, max_radius);
    Point y = sample_interior(model, rng, max_radius);
    pairs.emplace_back(std::move(x), std::move(y));
  }
  return pairs;
}

Point make_point(std::initializer_list<Complex> coords) {
  Point z(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const Complex& c : coords) z(i++) = c;
  return z;
}

}  // namespace berezin
