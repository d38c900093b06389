#pragma once

#include <vector>

namespace berezin {

/// A nonnegative multiple of 1/2, stored exactly as its double.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  /// Throws Error{InvalidRootData} unless 2*value is an integer.
  static HalfInteger from_double(double value);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Root multiplicities of a homogeneous bounded domain together with the
/// coefficients gamma_k of the metric. Indices run k = 1..r (stored 0-based).
struct RootSystemData {
  int r = 0;
  std::vector<int> p;
  std::vector<int> q;
  std::vector<HalfInteger> b;
  std::vector<double> gamma;

  /// Throws Error{InvalidRootData} on length mismatch, nonpositive gamma,
  /// negative multiplicities, p_1 != 0 or q_r != 0.
  void validate() const;

  /// Same multiplicities, every gamma_k multiplied by `factor` (the metric
  /// scale: gamma_k is linear in g).
  RootSystemData scaled(double factor) const;
};

/// Rank r and the two integers (a, b) of a bounded symmetric domain.
struct SymmetricDomainParams {
  int r = 1;
  double a = 0.0;
  double b = 0.0;
};

/// max_k (1 + p_k + b_k + q_k/2) / gamma_k.
double lambda0(const RootSystemData& data);

/// The numerator 1 + p_k + b_k + q_k/2 as an exact half-integer.
HalfInteger nontriviality_bound(const RootSystemData& data, int k);

/// lambda*gamma_k > 1 + p_k + b_k + q_k/2 for every k (strict).
/// Throws Error{DomainError} when lambda <= 0.
bool is_nontrivial(const RootSystemData& data, double lambda);

/// True when lambda equals lambda0 to within 1e-12 relative: the strict
/// criterion fails there even though lambda >= lambda0.
bool at_threshold(const RootSystemData& data, double lambda);

/// p_k = (k-1)a, q_k = (r-k)a, b_k = b, gamma_k = (r-1)a + b + 2.
/// Throws Error{InvalidRootData} if a is not a nonnegative integer, b is
/// not a nonnegative half-integer, or r < 1.
RootSystemData symmetric_root_data(const SymmetricDomainParams& params);

/// Componentwise 2 + p_k + q_k + b_k (the Bergman-metric gamma).
std::vector<double> bergman_gamma(const std::vector<int>& p, const std::vector<int>& q,
                                  const std::vector<HalfInteger>& b);

struct ProjectiveRange {
  double c0 = 0.0;
  /// Distinct values q_k / (2 gamma_k), ascending.
  std::vector<double> discrete_candidates;
};

/// c0 = max_k q_k/(2 gamma_k) and the candidate discrete set. The set of
/// scales for which lambda*g is projectively induced, together with 0,
/// contains {0, c0} u (c0, inf) and lies inside candidates u (c0, inf).
ProjectiveRange projective_range_bounds(const RootSystemData& data);

}  // namespace berezin
