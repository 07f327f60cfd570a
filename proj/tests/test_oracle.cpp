#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "certquad/oracle.hpp"
#include "certquad/registry.hpp"

using namespace certquad;

namespace {

const double pi = std::numbers::pi;

Integrand plain(Function2D f) { return Integrand{std::move(f), {}, {}, {}, {}, "plain"}; }

Integrand stripped(std::string_view name, const Rectangle& r) {
  auto f = make_integrand(name, r);
  f.exact_integral.reset();
  return f;
}

std::vector<WeightFunction> weights(const Rectangle& r) {
  return {TrapezoidPhi{r}, MidpointPhi{r}, CompositeTrapezoidPhi{r, PartitionSpec(2, 2)},
          CompositeMidpointPhi{r, PartitionSpec(3, 2)}};
}

}  // namespace

TEST(Oracle, Examples) {
  const auto a = oracle_integrate(plain([](double x, double y) { return x * x * y * y; }), Rectangle(0, 1, 0, 1));
  EXPECT_NEAR(a.value, 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(oracle_integrate(plain([](double, double) { return 1.0; }), Rectangle(0, 2, 0, 3)).value, 6.0, 1e-14);
  const auto s = oracle_integrate(plain([](double x, double y) { return std::sin(x) * std::sin(y); }),
                                  Rectangle(0, pi, 0, pi));
  EXPECT_NEAR(s.value, 4.0, 1e-10);
  EXPECT_LE(s.error_estimate, 1e-12 + 64 * 4e-16 * 4);
}

TEST(Oracle, ExactIntegralOverrides) {
  auto f = plain([](double x, double) { return x; });
  f.exact_integral = 42.0;
  const auto r = oracle_integrate(f, Rectangle(0, 1, 0, 1));
  EXPECT_EQ(r.value, 42.0);
  EXPECT_EQ(r.error_estimate, 0.0);
}

TEST(Oracle, AgreesWithRegistryExactValues) {
  for (const auto& name : registry_names()) {
    for (const Rectangle& r : {Rectangle(0, 1, 0, 1), Rectangle(-0.5, 1.5, 0.25, 2)}) {
      const double exact = *make_integrand(name, r).exact_integral;
      const auto o = oracle_integrate(stripped(name, r), r);
      EXPECT_NEAR(o.value, exact, 1e-11 * std::max(1.0, std::abs(exact))) << name;
    }
  }
}

TEST(Oracle, ToleranceFloor) {
  const auto f = plain([](double x, double y) { return x * y; });
  EXPECT_THROW(oracle_integrate(f, Rectangle(0, 1, 0, 1), 1e-14), DomainError);
  EXPECT_NO_THROW(oracle_integrate(f, Rectangle(0, 1, 0, 1), 1e-13));
}

TEST(Oracle, BudgetExhaustionThrows) {
  // a jump that no polynomial rule resolves to 1e-13
  const auto step = plain([](double x, double) { return x < 1.0 / 3.0 ? 0.0 : 1.0; });
  try {
    oracle_integrate(step, Rectangle(0, 1, 0, 1), 1e-13);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_NEAR(e.best_value(), 2.0 / 3.0, 1e-4);
  }
}

TEST(Oracle, SelfConsistency) {
  for (const auto& name : registry_names()) {
    const Rectangle r(-0.5, 1.5, 0.25, 2);
    const auto f = stripped(name, r);
    const auto coarse = oracle_integrate(f, r, 1e-6);
    const auto fine = oracle_integrate(f, r, 0.5e-6);
    EXPECT_LE(std::abs(fine.value - coarse.value), coarse.error_estimate + 1e-15) << name;
  }
}

// ---------------------------------------------------------------------------
// Integration-by-parts identity

TEST(Identity, Examples) {
  const Rectangle unit(0, 1, 0, 1);
  EXPECT_LE(parts_identity_residual(make_integrand("poly22", unit), TrapezoidPhi{unit}), 1e-8);
  EXPECT_LE(parts_identity_residual(make_integrand("expsum", unit), MidpointPhi{unit}), 1e-8);
  const Integrand zero{[](double, double) { return 0.0; }, [](double, double) { return 0.0; },
                       [](double, double) { return 0.0; }, [](double, double) { return 0.0; }, {}, "zero"};
  EXPECT_EQ(parts_identity_residual(zero, TrapezoidPhi{unit}), 0.0);
}

TEST(Identity, HoldsAcrossCorpusAndWeights) {
  for (const auto& name : smooth_corpus_names()) {
    for (const Rectangle& r : {Rectangle(0, 1, 0, 1), Rectangle(-0.5, 1.5, 0.25, 2)}) {
      const auto f = make_integrand(name, r);
      for (const auto& w : weights(r)) {
        const auto t = parts_identity_terms(f, w);
        EXPECT_LE(t.residual(), 1e-8 * (1 + std::abs(t.lhs))) << name << " " << variant_name(w);
      }
    }
  }
}

TEST(Identity, HoldsForCustomWeight) {
  const Rectangle r(-1, 2, 0, 1.5);
  const CustomPhi w{[](double x) { return std::abs(x) - 0.2 * x * x; }, [](double y) { return std::sin(y); },
                    r, {0.0}, {}};
  for (const auto& name : smooth_corpus_names()) {
    if (name == "recip") continue;  // 1 + x + y vanishes inside r
    const auto t = parts_identity_terms(make_integrand(name, r), w);
    EXPECT_LE(t.residual(), 1e-8 * (1 + std::abs(t.lhs))) << name;
  }
}

TEST(Identity, TermsAreNontrivial) {
  const Rectangle r(0, 1, 0, 1);
  const auto t = parts_identity_terms(make_integrand("expsum", r), TrapezoidPhi{r});
  EXPECT_GT(std::abs(t.corners), 0.1);
  EXPECT_GT(std::abs(t.edge_x), 1e-3);
  EXPECT_GT(std::abs(t.area), 1e-3);
  EXPECT_NEAR(t.rhs(), t.lhs, 1e-10);
}

TEST(Identity, WrongMixedPartialIsDetected) {
  const Rectangle r(0, 1, 0, 1);
  auto f = make_integrand("poly22", r);
  f.fxy = [](double x, double y) { return 3 * x * y; };
  for (const auto& w : weights(r)) EXPECT_GT(parts_identity_residual(f, w), 1e-6) << variant_name(w);
}

TEST(Identity, RequiresPartials) {
  const Rectangle r(0, 1, 0, 1);
  EXPECT_THROW(parts_identity_residual(plain([](double x, double y) { return x * y; }), TrapezoidPhi{r}),
               ConfigurationError);
}
