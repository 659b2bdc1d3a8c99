#include "h1/weights.hpp"

#include <algorithm>
#include <cmath>

#include "h1/errors.hpp"
#include "h1/rng.hpp"

namespace h1 {

double Weight::operator()(const Point& p) const {
  double v = field(p);
  if (v <= 0.0)
    throw NonFiniteError("weight '" + field.name() + "' non-positive at a point");
  return v;
}

Weight power_weight(double kappa) {
  if (kappa == 0.0)
    return Weight{ScalarField::from_expr(
        "unit-weight", sym::GaugeExpr::polynomial(sym::Poly::constant(1.0)))};
  // rho^{-kappa} = U^{-kappa/4}, exactly (-kappa)-homogeneous about 0
  ScalarField f = ScalarField::from_expr(
      "gauge-power(-" + std::to_string(kappa) + ")",
      sym::GaugeExpr::rational(sym::Poly::constant(1.0), -0.25 * kappa));
  if (kappa > 0.0) f = f.with_singularity(Point{0, 0, 0}, kappa);
  return Weight{f};
}

Weight conformal_weight(const ScalarField& u) {
  ScalarField base = u;
  ScalarField f = ScalarField::from_lambda(
      "exp4(" + u.name() + ")",
      [base](const Point& p) { return std::exp(4.0 * base(p)); });
  if (const sym::GaugeExpr* e = u.expr()) {
    // pure log expressions give exactly homogeneous weights:
    // u = c log U => e^{4u} = rho^{16c}
    if (e->terms().empty() && e->has_log()) {
      double kappa = -16.0 * e->logcoef();
      if (kappa > 0.0) f = f.with_singularity(Point{0, 0, 0}, kappa);
    }
  } else if (auto s0 = u.singular_point()) {
    f = f.with_singularity(*s0, u.homogeneity_at_singularity());
  }
  return Weight{f};
}

RadiusGrid RadiusGrid::around_scale(double scale, int count) {
  if (scale <= 0.0) throw ConfigError("radius grid scale must be positive");
  RadiusGrid g;
  g.r_min = 1e-3 * scale;
  g.r_max = 1e3 * scale;
  g.count = count;
  return g;
}

std::vector<double> RadiusGrid::radii() const {
  if (!(r_min < r_max) || r_min <= 0.0)
    throw ConfigError("radius grid requires 0 < r_min < r_max");
  if (count < 8) throw ConfigError("radius grid needs at least 8 radii");
  std::vector<double> r(count);
  double l0 = std::log(r_min);
  double dl = (std::log(r_max) - l0) / (count - 1);
  for (int i = 0; i < count; ++i) r[i] = std::exp(l0 + i * dl);
  return r;
}

RadiusGrid RadiusGrid::refined() const {
  RadiusGrid g = *this;
  g.count = 2 * count - 1;
  return g;
}

double ball_average(const Weight& w, const Point& p, double r,
                    const QuadratureSpec& spec) {
  double vol = unit_ball_volume(spec.resolution) * r * r * r * r;
  return ball_integral(w.field, p, r, spec) / vol;
}

MaximalResult maximal_function(const Weight& w, const Point& p,
                               const RadiusGrid& grid,
                               const QuadratureSpec& spec) {
  if (auto s0 = w.field.singular_point()) {
    if (gauge_dist(p, *s0) == 0.0)
      throw SingularPointError("maximal function requested at the singular point");
  }
  MaximalResult best;
  best.value = -1.0;
  for (double r : grid.radii()) {
    double avg = ball_average(w, p, r, spec);
    if (avg > best.value) {
      best.value = avg;
      best.argmax_radius = r;
    }
  }
  return best;
}

A1Result a1_constant(const Weight& w, std::span<const Point> samples,
                     const RadiusGrid& grid, const QuadratureSpec& spec) {
  A1Result best;
  best.estimate = -1.0;
  for (const Point& s : samples) {
    MaximalResult m = maximal_function(w, s, grid, spec);
    double ratio = m.value / w(s);
    if (ratio > best.estimate) {
      best.estimate = ratio;
      best.argmax_point = s;
      best.argmax_radius = m.argmax_radius;
    }
  }
  return best;
}

A1Result a1_constant_sampled_inf(const Weight& w, std::span<const Point> samples,
                                 const RadiusGrid& grid,
                                 const QuadratureSpec& spec) {
  A1Result best;
  best.estimate = -1.0;
  const auto& chart = unit_ball_chart(std::max(6, spec.resolution / 2));
  for (const Point& s : samples) {
    for (double r : grid.radii()) {
      double avg = ball_average(w, s, r, spec);
      double inf = w(s);
      for (const auto& n : chart) {
        Point q = mul(s, dilate(r, n.p));
        double v = w.field(q);
        if (v < inf) inf = v;
      }
      if (inf <= 0.0) continue;
      double ratio = avg / inf;
      if (ratio > best.estimate) {
        best.estimate = ratio;
        best.argmax_point = s;
        best.argmax_radius = r;
      }
    }
  }
  return best;
}

std::vector<Point> sample_cloud(std::uint64_t seed, int count, double g_lo,
                                double g_hi) {
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) pts.push_back(random_point(rng, g_lo, g_hi));
  return pts;
}

std::vector<A1Stage> a1_refinement_study(double kappa, int stages,
                                         std::uint64_t seed,
                                         const QuadratureSpec& base) {
  const int n0 = 32;
  const int c0 = 17;
  const bool divergent_regime = kappa >= 4.0;
  std::vector<A1Stage> out;
  RadiusGrid grid = RadiusGrid::around_scale(1.0, c0);
  Weight w = power_weight(kappa);
  for (int k = 0; k < stages; ++k) {
    QuadratureSpec spec = base;
    if (divergent_regime) {
      spec.cap_divergent = true;
      for (int j = 0; j < k; ++j) spec.radial_depth *= 4;
    }
    int count = n0 << k;
    std::vector<Point> samples = sample_cloud(seed, count, 0.5, 2.0);
    A1Stage st;
    st.estimate = a1_constant(w, samples, grid, spec).estimate;
    st.sample_count = count;
    st.grid_count = grid.count;
    st.radial_depth = spec.radial_depth;
    out.push_back(st);
    grid = grid.refined();
  }
  return out;
}

}  // namespace h1
