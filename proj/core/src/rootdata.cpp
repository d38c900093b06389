#include "berezin/rootdata.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "berezin/error.hpp"

namespace berezin {

HalfInteger HalfInteger::from_double(double value) {
  const double twice = 2.0 * value;
  if (!std::isfinite(value) || twice != std::round(twice) || std::abs(twice) > 1e9) {
    throw Error(ErrorKind::InvalidRootData,
                "b_k must be a half-integer, got " + std::to_string(value));
  }
  return HalfInteger(static_cast<int>(std::lround(twice)));
}

void RootSystemData::validate() const {
  const auto n = static_cast<std::size_t>(r);
  if (r < 1) throw Error(ErrorKind::InvalidRootData, "rank must be positive");
  if (p.size() != n || q.size() != n || b.size() != n || gamma.size() != n) {
    throw Error(ErrorKind::InvalidRootData, "p, q, b, gamma must all have length r");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (p[k] < 0 || q[k] < 0 || b[k].twice() < 0) {
      throw Error(ErrorKind::InvalidRootData, "multiplicities must be nonnegative");
    }
    if (!(gamma[k] > 0.0) || !std::isfinite(gamma[k])) {
      throw Error(ErrorKind::InvalidRootData, "gamma_k must be positive");
    }
  }
  if (p.front() != 0) throw Error(ErrorKind::InvalidRootData, "p_1 is an empty sum and must be 0");
  if (q.back() != 0) throw Error(ErrorKind::InvalidRootData, "q_r is an empty sum and must be 0");
}

RootSystemData RootSystemData::scaled(double factor) const {
  RootSystemData out = *this;
  for (double& g : out.gamma) g *= factor;
  return out;
}

HalfInteger nontriviality_bound(const RootSystemData& data, int k) {
  // 1 + p + b + q/2 = (2 + 2p + 2b + q) / 2
  return HalfInteger::from_twice(2 + 2 * data.p[k] + data.b[k].twice() + data.q[k]);
}

double lambda0(const RootSystemData& data) {
  data.validate();
  double best = 0.0;
  for (int k = 0; k < data.r; ++k) {
    best = std::max(best, nontriviality_bound(data, k).value() / data.gamma[k]);
  }
  return best;
}

bool is_nontrivial(const RootSystemData& data, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::DomainError, "lambda must be positive");
  data.validate();
  for (int k = 0; k < data.r; ++k) {
    if (!(lambda * data.gamma[k] > nontriviality_bound(data, k).value())) return false;
  }
  return true;
}

bool at_threshold(const RootSystemData& data, double lambda) {
  const double l0 = lambda0(data);
  return std::abs(lambda - l0) <= 1e-12 * l0;
}

RootSystemData symmetric_root_data(const SymmetricDomainParams& params) {
  if (params.r < 1) throw Error(ErrorKind::InvalidRootData, "rank must be positive");
  const double a = params.r == 1 ? 0.0 : params.a;
  if (!(a >= 0.0) || a != std::round(a)) {
    throw Error(ErrorKind::InvalidRootData, "a must be a nonnegative integer");
  }
  if (!(params.b >= 0.0)) throw Error(ErrorKind::InvalidRootData, "b must be nonnegative");
  const int ai = static_cast<int>(a);
  const HalfInteger b = HalfInteger::from_double(params.b);

  RootSystemData data;
  data.r = params.r;
  for (int k = 1; k <= params.r; ++k) {
    data.p.push_back((k - 1) * ai);
    data.q.push_back((params.r - k) * ai);
    data.b.push_back(b);
  }
  data.gamma.assign(params.r, (params.r - 1) * a + b.value() + 2.0);
  return data;
}

std::vector<double> bergman_gamma(const std::vector<int>& p, const std::vector<int>& q,
                                  const std::vector<HalfInteger>& b) {
  if (p.size() != q.size() || p.size() != b.size()) {
    throw Error(ErrorKind::InvalidRootData, "p, q, b must have equal lengths");
  }
  std::vector<double> gamma(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) gamma[k] = 2.0 + p[k] + q[k] + b[k].value();
  return gamma;
}

ProjectiveRange projective_range_bounds(const RootSystemData& data) {
  data.validate();
  ProjectiveRange out;
  for (int k = 0; k < data.r; ++k) {
    const double c = data.q[k] / (2.0 * data.gamma[k]);
    out.c0 = std::max(out.c0, c);
    out.discrete_candidates.push_back(c);
  }
  std::sort(out.discrete_candidates.begin(), out.discrete_candidates.end());
  out.discrete_candidates.erase(
      std::unique(out.discrete_candidates.begin(), out.discrete_candidates.end()),
      out.discrete_candidates.end());
  return out;
}

}  // namespace berezin
