#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "certquad/minimizer.hpp"

using namespace certquad;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

SearchOptions quick(int restarts = 3) {
  SearchOptions o;
  o.restarts = restarts;
  return o;
}

}  // namespace

TEST(MinValue, Examples) {
  EXPECT_DOUBLE_EQ(min_phi_norm_value(Exponent(2.0)), 2.0 / 3.0);
  EXPECT_EQ(min_phi_norm_value(Exponent::infinity()), 1.0);
  EXPECT_EQ(min_phi_norm_value(Exponent(1.0)), 1.0);
  EXPECT_NEAR(min_phi_norm_value(Exponent(3.0)), 0.6299605249474366, 1e-15);
}

TEST(MinValue, EqualsTrapezoidWeightNormOnSquare) {
  const Rectangle sq(-1, 1, -1, 1);
  for (double q : {1.0, 1.5, 2.0, 3.0, 4.0})
    EXPECT_NEAR(min_phi_norm_value(Exponent(q)), phi_norm_closed(TrapezoidPhi{sq}, Exponent(q)), 1e-14);
  EXPECT_NEAR(min_phi_norm_value(Exponent::infinity()),
              phi_norm_closed(TrapezoidPhi{sq}, Exponent::infinity()), 1e-14);
}

TEST(Basis, Layout) {
  auto b = AlphaBetaBasis::default_basis();
  EXPECT_EQ(b.dimension(), 12u);
  ASSERT_EQ(b.coefficients.size(), 12u);
  b.coefficients[1] = 2.0;  // alpha: s^2
  b.coefficients[9] = -1.0;  // beta: t
  EXPECT_DOUBLE_EQ(b.alpha(0.5), 0.5);
  EXPECT_DOUBLE_EQ(b.beta(0.5), -0.5);
  const auto w = b.to_custom_phi();
  EXPECT_DOUBLE_EQ(eval_phi(w, 0.5, 0.5), 0.25 + 0.5 - 0.5);
  EXPECT_EQ(AlphaBetaBasis::empty().dimension(), 0u);
}

TEST(Search, QuadraticCase) {
  const auto r = search_min(Exponent(2.0), AlphaBetaBasis::default_basis(), quick());
  EXPECT_NEAR(r.achieved_norm, 2.0 / 3.0, 1e-6);
  EXPECT_LE(max_abs(r.coefficients), 1e-4);
  EXPECT_EQ(r.restarts.size(), 3u);
}

TEST(Search, EmptyBasis) {
  const auto r = search_min(Exponent(2.0), AlphaBetaBasis::empty(), quick(1));
  EXPECT_TRUE(r.coefficients.empty());
  EXPECT_NEAR(r.achieved_norm, 2.0 / 3.0, 1e-6);
}

TEST(Search, LowerBoundRespectedByEveryRestart) {
  for (double qv : {1.5, 2.0, 3.0, 4.0}) {
    const Exponent q(qv);
    const auto r = search_min(q, AlphaBetaBasis::default_basis(), quick(4));
    auto basis = AlphaBetaBasis::default_basis();
    for (const auto& o : r.restarts) {
      basis.coefficients = o.coefficients;
      EXPECT_GE(phi_norm_numeric(basis.to_custom_phi(), q, 64), min_phi_norm_value(q) - 1e-6) << qv;
    }
    EXPECT_NEAR(r.achieved_norm, min_phi_norm_value(q), 1e-6) << qv;
    EXPECT_LE(max_abs(r.coefficients), 1e-4) << qv;
  }
}

TEST(Search, SupNormIsNotUnique) {
  const Exponent inf = Exponent::infinity();
  const auto psi = AlphaBetaBasis::empty().to_custom_phi();
  EXPECT_NEAR(phi_norm_numeric(psi, inf, 128), 1.0, 1e-6);
  EXPECT_NEAR(phi_norm_numeric(sup_norm_alternative(), inf, 128), 1.0, 1e-6);
  // the two weights differ
  EXPECT_NE(eval_phi(psi, 0.5, 0.0), eval_phi(sup_norm_alternative(), 0.5, 0.0));
  const auto r = search_min(inf, AlphaBetaBasis::default_basis(), quick(2));
  EXPECT_GE(r.achieved_norm, 1.0 - 1e-6);
}

TEST(Search, L1LowerBound) {
  const auto r = search_min(Exponent(1.0), AlphaBetaBasis::default_basis(), quick(2));
  EXPECT_GE(r.achieved_norm, 1.0 - 1e-6);
  EXPECT_LE(r.achieved_norm, 1.0 + 1e-3);
}

TEST(Search, Deterministic) {
  const auto a = search_min(Exponent(3.0), AlphaBetaBasis::default_basis(), quick(3));
  const auto b = search_min(Exponent(3.0), AlphaBetaBasis::default_basis(), quick(3));
  EXPECT_EQ(a.coefficients, b.coefficients);
  EXPECT_EQ(a.achieved_norm, b.achieved_norm);
}

TEST(Search, WinnerIsBestRestart) {
  const auto r = search_min(Exponent(1.5), AlphaBetaBasis::default_basis(), quick(4));
  for (const auto& o : r.restarts) EXPECT_LE(r.objective, o.objective + 1e-15);
}

TEST(Search, BudgetExhaustionThrows) {
  SearchOptions o = quick(2);
  o.max_evaluations = 50;
  try {
    search_min(Exponent(2.0), AlphaBetaBasis::default_basis(), o);
    FAIL() << "expected SearchFailure";
  } catch (const SearchFailure& e) {
    EXPECT_EQ(e.best_coefficients().size(), 12u);
    EXPECT_TRUE(std::isfinite(e.best_value()));
  }
}

TEST(Search, InvalidOptions) {
  SearchOptions o;
  o.restarts = 0;
  EXPECT_THROW(search_min(Exponent(2.0), AlphaBetaBasis::default_basis(), o), DomainError);
  o = SearchOptions{};
  o.final_step = 1.0;
  EXPECT_THROW(search_min(Exponent(2.0), AlphaBetaBasis::default_basis(), o), DomainError);
}

TEST(AffineMap, ZeroCoefficientsGiveTrapezoidWeight) {
  const Rectangle r(-2, 3, 1, 4);
  const auto w = AlphaBetaBasis::default_basis().to_custom_phi(r);
  for (double x : {-2.0, -0.3, 0.5, 3.0})
    for (double y : {1.0, 2.2, 4.0})
      EXPECT_NEAR(eval_phi(w, x, y), eval_phi(TrapezoidPhi{r}, x, y), 1e-13);
}

TEST(AffineMap, MinimizerMapsToScaledClosedForm) {
  const Rectangle r(0.5, 2.5, -1, 0.25);
  for (double qv : {1.5, 2.0, 3.0}) {
    const Exponent q(qv);
    auto basis = AlphaBetaBasis::default_basis();
    basis.coefficients = search_min(q, basis, quick(2)).coefficients;
    const double numeric = phi_norm_numeric(basis.to_custom_phi(r), q, 128);
    // |(x-m1)(y-m2)|_q on r: (W H / 4) * min on [-1,1]^2 * (W H / 4)^(1/q)
    const double s = r.width() * r.height() / 4;
    const double scaled = s * std::pow(s, 1 / qv) * min_phi_norm_value(q);
    EXPECT_NEAR(numeric, scaled, 1e-6 * scaled) << qv;
    EXPECT_NEAR(numeric, phi_norm_closed(TrapezoidPhi{r}, q), 1e-6 * scaled) << qv;
  }
}

TEST(Q2Identity, Examples) {
  EXPECT_LE(q2_identity_residual([](double s) { return s * s; }, [](double t) { return -t * t; }), 1e-8);
  EXPECT_EQ(q2_identity_residual([](double) { return 0.0; }, [](double) { return 0.0; }), 0.0);
  EXPECT_LE(q2_identity_residual([](double s) { return s; }, [](double t) { return t * t * t; }), 1e-8);
}

TEST(Q2Identity, RandomDraws) {
  EXPECT_LE(verify_q2_identity(AlphaBetaBasis::default_basis(), 32), 1e-8);
}

TEST(Q2Identity, HoldsWithoutParity) {
  // the cross term st alpha(s) is odd in t whatever alpha is
  const double r = q2_identity_residual([](double s) { return std::exp(s); }, [](double t) { return t; });
  EXPECT_LE(r, 1e-8);
}
