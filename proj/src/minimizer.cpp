#include "certquad/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <memory>
#include <random>

#include <Eigen/Cholesky>

#include "certquad/gauss_legendre.hpp"
#include "certquad/norms.hpp"

namespace certquad {

namespace {

constexpr int objective_points = 16;
constexpr int objective_panels = 4;
constexpr int sup_grid = 128;

double combine(const std::vector<Function1D>& even, const std::vector<Function1D>& odd,
               const double* coeffs, double s) {
  double v = 0.0;
  for (std::size_t k = 0; k < even.size(); ++k) v += coeffs[k] * even[k](s);
  for (std::size_t k = 0; k < odd.size(); ++k) v += coeffs[even.size() + k] * odd[k](s);
  return v;
}

bool is_constant(const Function1D& g) {
  const double v = g(0.0);
  for (double s : {-1.0, -0.5, 0.3, 0.7, 1.0})
    if (g(s) != v) return false;
  return true;
}

// Fold beta's constant coefficients into alpha's; only their sum matters.
void canonicalize(const AlphaBetaBasis& basis, std::vector<double>& c) {
  const std::size_t half = basis.even_terms.size() + basis.odd_terms.size();
  for (std::size_t k = 0; k < basis.even_terms.size(); ++k) {
    if (!is_constant(basis.even_terms[k])) continue;
    c[k] += c[half + k];
    c[half + k] = 0.0;
  }
}

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Quadrature symmetric_rule() {
  const auto r = composite_gauss(-1.0, 1.0, objective_panels, GaussLegendre::get(objective_points));
  return {r.nodes, r.weights};
}

void check_basis(const AlphaBetaBasis& basis) {
  if (basis.coefficients.size() != basis.dimension())
    throw DomainError("coefficient count does not match the basis dimension");
}

// Search coordinates z with c = T z, where T makes the basis of each axis
// orthonormal in L^2(-1,1). The monomial basis is badly conditioned and
// compass steps stall in its narrow valleys.
class Preconditioner {
public:
  explicit Preconditioner(const AlphaBetaBasis& basis) {
    std::vector<Function1D> terms = basis.even_terms;
    terms.insert(terms.end(), basis.odd_terms.begin(), basis.odd_terms.end());
    const auto k = static_cast<Eigen::Index>(terms.size());
    const auto rule = symmetric_rule();
    Eigen::MatrixXd values(k, static_cast<Eigen::Index>(rule.nodes.size()));
    for (Eigen::Index r = 0; r < k; ++r)
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        values(r, static_cast<Eigen::Index>(i)) = terms[static_cast<std::size_t>(r)](rule.nodes[i]);
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(),
                                                                static_cast<Eigen::Index>(rule.weights.size()));
    const Eigen::MatrixXd gram = values * w.asDiagonal() * values.transpose();
    Eigen::MatrixXd block = Eigen::MatrixXd::Identity(k, k);
    Eigen::MatrixXd inverse = block;
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (k > 0 && llt.info() == Eigen::Success) {
      const Eigen::MatrixXd L = llt.matrixL();
      inverse = L.transpose();
      block = inverse.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    }
    forward_ = Eigen::MatrixXd::Zero(2 * k, 2 * k);
    backward_ = forward_;
    forward_.topLeftCorner(k, k) = block;
    forward_.bottomRightCorner(k, k) = block;
    backward_.topLeftCorner(k, k) = inverse;
    backward_.bottomRightCorner(k, k) = inverse;
  }

  std::vector<double> to_coefficients(const std::vector<double>& z) const { return apply(forward_, z); }
  std::vector<double> to_search(const std::vector<double>& c) const { return apply(backward_, c); }

private:
  static std::vector<double> apply(const Eigen::MatrixXd& m, const std::vector<double>& v) {
    const Eigen::VectorXd in = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    const Eigen::VectorXd out = m * in;
    return {out.data(), out.data() + out.size()};
  }

  Eigen::MatrixXd forward_;
  Eigen::MatrixXd backward_;
};

struct SearchObjective {
  const PhiObjective& phi;
  const Preconditioner& map;

  double operator()(const std::vector<double>& z) const { return phi(map.to_coefficients(z)); }
  std::vector<double> coefficients(const std::vector<double>& z) const { return map.to_coefficients(z); }
};

template <typename F>
RestartOutcome run_restart(const F& objective, std::vector<double> start,
                           const SearchOptions& options) {
  std::vector<double> x = start;
  double best = objective(x);
  long long evaluations = 1;
  for (double h = options.initial_step; h >= options.final_step; h *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t k = 0; k < x.size(); ++k) {
        for (double dir : {1.0, -1.0}) {
          if (evaluations >= options.max_evaluations)
            throw SearchFailure("search budget exhausted", objective.coefficients(x), best);
          const double keep = x[k];
          x[k] = keep + dir * h;
          const double v = objective(x);
          ++evaluations;
          if (v < best) {
            best = v;
            improved = true;
            break;
          }
          x[k] = keep;
        }
      }
    }
  }
  return {std::move(start), std::move(x), best, evaluations};
}

}  // namespace

double min_phi_norm_value(Exponent q) {
  if (q.is_one() || q.is_infinite()) return 1.0;
  const double v = q.value();
  return std::pow(2.0 / (v + 1.0), 2.0 / v);
}

// ---------------------------------------------------------------------------

AlphaBetaBasis AlphaBetaBasis::default_basis() {
  AlphaBetaBasis b;
  b.even_terms = {[](double) { return 1.0; }, [](double s) { return s * s; },
                  [](double s) { return s * s * s * s; }};
  b.odd_terms = {[](double s) { return s; }, [](double s) { return s * s * s; },
                 [](double s) { return s * s * s * s * s; }};
  b.coefficients.assign(b.dimension(), 0.0);
  return b;
}

AlphaBetaBasis AlphaBetaBasis::empty() { return {}; }

double AlphaBetaBasis::alpha(double s) const {
  check_basis(*this);
  return combine(even_terms, odd_terms, coefficients.data(), s);
}

double AlphaBetaBasis::beta(double t) const {
  check_basis(*this);
  return combine(even_terms, odd_terms, coefficients.data() + dimension() / 2, t);
}

CustomPhi AlphaBetaBasis::to_custom_phi() const {
  check_basis(*this);
  auto self = std::make_shared<const AlphaBetaBasis>(*this);
  return CustomPhi{[self](double s) { return self->alpha(s); },
                   [self](double t) { return self->beta(t); },
                   Rectangle(-1.0, 1.0, -1.0, 1.0),
                   {0.0},
                   {0.0}};
}

CustomPhi AlphaBetaBasis::to_custom_phi(const Rectangle& rect) const {
  check_basis(*this);
  auto self = std::make_shared<const AlphaBetaBasis>(*this);
  const double m1 = rect.mid_x();
  const double m2 = rect.mid_y();
  const double hw = rect.width() / 2.0;
  const double hh = rect.height() / 2.0;
  const double scale = hw * hh;
  return CustomPhi{
      [=](double x) { return -m2 * x + m1 * m2 + scale * self->alpha((x - m1) / hw); },
      [=](double y) { return -m1 * y + scale * self->beta((y - m2) / hh); },
      rect,
      {m1},
      {m2}};
}

// ---------------------------------------------------------------------------

SearchFailure::SearchFailure(const std::string& what, std::vector<double> best, double best_value)
    : ConvergenceError(what, best_value, 0.0), best_(std::move(best)) {}

PhiObjective::PhiObjective(const AlphaBetaBasis& basis, Exponent q)
    : q_(q), n_even_(basis.even_terms.size()) {
  check_basis(basis);
  if (q.is_infinite()) {
    nodes_ = uniform_nodes(-1.0, 1.0, sup_grid);
    weights_.assign(nodes_.size(), 1.0);
  } else {
    auto r = symmetric_rule();
    nodes_ = std::move(r.nodes);
    weights_ = std::move(r.weights);
  }
  std::vector<Function1D> terms = basis.even_terms;
  terms.insert(terms.end(), basis.odd_terms.begin(), basis.odd_terms.end());
  for (const auto& term : terms) {
    std::vector<double> row(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) row[i] = term(nodes_[i]);
    values_.push_back(std::move(row));
  }
}

double PhiObjective::operator()(const std::vector<double>& c) const {
  const std::size_t half = values_.size();
  if (c.size() != 2 * half) throw DomainError("coefficient count does not match the basis dimension");
  const std::size_t n = nodes_.size();
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      a[i] += c[k] * values_[k][i];
      b[i] += c[half + k] * values_[k][i];
    }
  }
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      peak = std::max(peak, std::abs(nodes_[i] * nodes_[j] + a[i] + b[j]));
  if (q_.is_infinite() || peak == 0.0) return peak;
  const double p = q_.value();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      row += weights_[j] * abs_pow((nodes_[i] * nodes_[j] + a[i] + b[j]) / peak, p);
    total += weights_[i] * row;
  }
  return peak * std::pow(total, 1.0 / p);
}

SearchResult search_min(Exponent q, const AlphaBetaBasis& basis, SearchOptions options) {
  check_basis(basis);
  if (options.restarts < 1) throw DomainError("search needs at least one restart");
  if (!(options.initial_step > 0.0 && options.final_step > 0.0 &&
        options.final_step <= options.initial_step))
    throw DomainError("search steps must satisfy 0 < final_step <= initial_step");

  const PhiObjective objective(basis, q);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<std::vector<double>> starts(static_cast<std::size_t>(options.restarts));
  for (auto& s : starts) {
    s.resize(basis.dimension());
    for (double& v : s) v = uniform(rng);
  }

  const Preconditioner map(basis);
  const SearchObjective search{objective, map};
  std::vector<std::future<RestartOutcome>> running;
  for (const auto& s : starts)
    running.push_back(std::async(std::launch::async, [&search, &map, &options, s] {
      return run_restart(search, map.to_search(s), options);
    }));
  SearchResult result;
  for (std::size_t r = 0; r < running.size(); ++r) {
    auto outcome = running[r].get();
    outcome.start = starts[r];
    outcome.coefficients = map.to_coefficients(outcome.coefficients);
    canonicalize(basis, outcome.coefficients);
    result.restarts.push_back(std::move(outcome));
  }

  const auto winner = std::min_element(
      result.restarts.begin(), result.restarts.end(), [](const auto& l, const auto& r) {
        if (l.objective != r.objective) return l.objective < r.objective;
        return l.coefficients < r.coefficients;
      });
  result.coefficients = winner->coefficients;
  result.objective = winner->objective;

  AlphaBetaBasis best = basis;
  best.coefficients = result.coefficients;
  result.achieved_norm = phi_norm_numeric(best.to_custom_phi(), q, options.verify_resolution);
  return result;
}

// ---------------------------------------------------------------------------

namespace {

double q2_residual_on_nodes(const std::vector<double>& a, const std::vector<double>& b,
                            const Quadrature& r) {
  double whole = 0.0, psi = 0.0, rest = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
      const double w = r.weights[i] * r.weights[j];
      const double st = r.nodes[i] * r.nodes[j];
      const double ab = a[i] + b[j];
      whole += w * (st + ab) * (st + ab);
      psi += w * st * st;
      rest += w * ab * ab;
    }
  }
  return std::abs(whole - (psi + rest));
}

}  // namespace

double q2_identity_residual(const Function1D& alpha, const Function1D& beta) {
  const auto r = symmetric_rule();
  std::vector<double> a(r.nodes.size()), b(r.nodes.size());
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    a[i] = alpha(r.nodes[i]);
    b[i] = beta(r.nodes[i]);
  }
  return q2_residual_on_nodes(a, b, r);
}

double verify_q2_identity(const AlphaBetaBasis& basis, int samples, std::uint64_t seed) {
  check_basis(basis);
  if (samples < 0) throw DomainError("sample count must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  AlphaBetaBasis draw = basis;
  double worst = q2_identity_residual([&](double s) { return basis.alpha(s); },
                                      [&](double t) { return basis.beta(t); });
  for (int k = 0; k < samples; ++k) {
    for (double& c : draw.coefficients) c = uniform(rng);
    worst = std::max(worst, q2_identity_residual([&](double s) { return draw.alpha(s); },
                                                 [&](double t) { return draw.beta(t); }));
  }
  return worst;
}

CustomPhi sup_norm_alternative() {
  return CustomPhi{[](double s) { return -std::abs(s); }, [](double t) { return std::abs(t); },
                   Rectangle(-1.0, 1.0, -1.0, 1.0), {0.0}, {0.0}};
}

}  // namespace certquad
