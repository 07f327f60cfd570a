#include "certquad/gauss_legendre.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace certquad {

GaussLegendre::GaussLegendre(int points) {
  if (points < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one point");
  const auto n = static_cast<std::size_t>(points);
  nodes_.resize(n);
  weights_.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess; roots are
  // symmetric so only the upper half is computed.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

const GaussLegendre& GaussLegendre::get(int points) {
  static std::array<std::unique_ptr<GaussLegendre>, 65> cache;
  static std::mutex mutex;
  if (points < 1 || points > 64) throw std::invalid_argument("cached Gauss-Legendre rules cover 1..64 points");
  std::lock_guard lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(points)];
  if (!slot) slot = std::make_unique<GaussLegendre>(points);
  return *slot;
}

void CompositeRule::append_panel(double lo, double hi, const GaussLegendre& rule) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (int k = 0; k < rule.size(); ++k) {
    nodes.push_back(mid + half * rule.nodes()[static_cast<std::size_t>(k)]);
    weights.push_back(half * rule.weights()[static_cast<std::size_t>(k)]);
  }
}

CompositeRule composite_gauss(double lo, double hi, int panels, const GaussLegendre& rule) {
  CompositeRule out;
  out.nodes.reserve(static_cast<std::size_t>(panels * rule.size()));
  out.weights.reserve(out.nodes.capacity());
  const double step = (hi - lo) / panels;
  for (int i = 0; i < panels; ++i) {
    const double p_lo = lo + i * step;
    const double p_hi = (i + 1 == panels) ? hi : lo + (i + 1) * step;
    out.append_panel(p_lo, p_hi, rule);
  }
  return out;
}

CompositeRule composite_gauss_split(double lo, double hi, std::span<const double> breaks,
                                    int panels, const GaussLegendre& rule, int min_per_segment) {
  std::vector<double> cuts{lo};
  for (double b : breaks)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  CompositeRule out;
  const double total = hi - lo;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double len = cuts[s + 1] - cuts[s];
    const int count = std::max(min_per_segment,
                               static_cast<int>(std::ceil(panels * len / total - 1e-9)));
    const double step = len / count;
    for (int i = 0; i < count; ++i) {
      const double p_lo = cuts[s] + i * step;
      const double p_hi = (i + 1 == count) ? cuts[s + 1] : cuts[s] + (i + 1) * step;
      out.append_panel(p_lo, p_hi, rule);
    }
  }
  return out;
}

}  // namespace certquad
