#pragma once

#include <span>
#include <vector>

namespace certquad {

/// n-point Gauss–Legendre rule on [-1, 1], nodes ascending.
class GaussLegendre {
public:
  explicit GaussLegendre(int points);

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Cached rules; points must lie in [1, 64].
  static const GaussLegendre& get(int points);

private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Nodes and weights of a composite rule over consecutive panels.
struct CompositeRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  void append_panel(double lo, double hi, const GaussLegendre& rule);
};

/// `panels` equal panels on [lo, hi] each carrying `rule`.
CompositeRule composite_gauss(double lo, double hi, int panels, const GaussLegendre& rule);

/// Panels split at every breakpoint in `breaks` (sorted, within [lo, hi]),
/// with roughly `panels` panels in total distributed by length and at least
/// `min_per_segment` per segment. No panel straddles a breakpoint.
CompositeRule composite_gauss_split(double lo, double hi, std::span<const double> breaks,
                                    int panels, const GaussLegendre& rule,
                                    int min_per_segment = 1);

}  // namespace certquad
