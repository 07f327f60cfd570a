#pragma once

// Numerical search for the weight of least L^q norm among
// phi(s,t) = st + alpha(s) + beta(t) on [-1,1]^2.

#include <cstdint>
#include <vector>

#include "certquad/core.hpp"
#include "certquad/weights.hpp"

namespace certquad {

/// (2/(q+1))^(2/q) for 1 < q < inf, 1 for q = 1 and q = inf.
double min_phi_norm_value(Exponent q);

/// alpha = sum a_k e_k + sum b_k o_k, beta likewise with its own
/// coefficients. Coefficient layout: [alpha even | alpha odd | beta even |
/// beta odd].
struct AlphaBetaBasis {
  std::vector<Function1D> even_terms;
  std::vector<Function1D> odd_terms;
  std::vector<double> coefficients;

  /// {1, s^2, s^4} and {s, s^3, s^5} per axis, coefficients zero.
  static AlphaBetaBasis default_basis();
  /// No terms at all: phi is st itself.
  static AlphaBetaBasis empty();

  std::size_t dimension() const noexcept { return 2 * (even_terms.size() + odd_terms.size()); }

  double alpha(double s) const;
  double beta(double t) const;

  /// The weight on [-1,1]^2.
  CustomPhi to_custom_phi() const;
  /// The weight carried to rect by the affine map of [-1,1]^2 onto it,
  /// scaled so that phi_xy stays 1. Zero coefficients give the trapezoid
  /// weight of rect.
  CustomPhi to_custom_phi(const Rectangle& rect) const;
};

struct SearchOptions {
  int restarts = 8;
  double initial_step = 0.5;
  double final_step = 1e-6;
  std::uint64_t seed = 20240601;
  /// Objective evaluations allowed per restart.
  long long max_evaluations = 400000;
  /// Norm reported for the winner is recomputed with phi_norm_numeric at this
  /// resolution.
  int verify_resolution = 128;
};

struct RestartOutcome {
  std::vector<double> start;
  std::vector<double> coefficients;
  double objective;
  long long evaluations;
};

struct SearchResult {
  std::vector<double> coefficients;
  /// Objective at the winner (fixed node set, symmetric about 0).
  double objective;
  /// phi_norm_numeric of the winner.
  double achieved_norm;
  std::vector<RestartOutcome> restarts;
};

class SearchFailure : public ConvergenceError {
public:
  SearchFailure(const std::string& what, std::vector<double> best, double best_value);
  const std::vector<double>& best_coefficients() const noexcept { return best_; }

private:
  std::vector<double> best_;
};

/// The discrete q-norm minimised by search_min, exposed for tests.
class PhiObjective {
public:
  PhiObjective(const AlphaBetaBasis& basis, Exponent q);
  double operator()(const std::vector<double>& coefficients) const;

private:
  Exponent q_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<std::vector<double>> values_;  // basis term k at node i
  std::size_t n_even_;
};

/// Compass search with halving steps from `restarts` random starts in
/// [-1,1]^d, run concurrently. Ties between restarts go to the lowest
/// objective, then to the lexicographically smallest coefficients. Constant
/// terms are canonicalised: beta's constant coefficient is folded into
/// alpha's. Throws SearchFailure when a restart exhausts its evaluation
/// budget.
SearchResult search_min(Exponent q, const AlphaBetaBasis& basis, SearchOptions options = {});

/// Largest |int phi^2 - (int (st)^2 + int (alpha+beta)^2)| over `samples`
/// random coefficient draws (plus the basis's own coefficients).
double verify_q2_identity(const AlphaBetaBasis& basis, int samples = 16, std::uint64_t seed = 7);

/// The same residual for explicit polynomial-smooth alpha and beta.
double q2_identity_residual(const Function1D& alpha, const Function1D& beta);

/// phi(s,t) = st - |s| + |t| on [-1,1]^2, breaks at 0. Its sup-norm is 1.
CustomPhi sup_norm_alternative();

}  // namespace certquad
