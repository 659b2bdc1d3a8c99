#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "h1/field.hpp"
#include "h1/quadrature.hpp"

namespace h1 {

// Positive density; evaluations are checked to be > 0 wherever defined.
struct Weight {
  ScalarField field;
  double operator()(const Point& p) const;
};

Weight power_weight(double kappa);               // rho^{-kappa}
Weight conformal_weight(const ScalarField& u);   // exp(4 u)

// Log-uniform radius grid discretizing "sup over r > 0".  refined() returns
// the grid with midpoints inserted (in log space); it contains the original
// radii exactly, which makes maximal-function refinement monotone.
struct RadiusGrid {
  double r_min = 1e-3;
  double r_max = 1e3;
  int count = 25;

  static RadiusGrid around_scale(double scale, int count = 25);
  std::vector<double> radii() const;
  RadiusGrid refined() const;
};

struct MaximalResult {
  double value = 0.0;
  double argmax_radius = 0.0;
};
// max over grid radii of the ball average of w about p.
MaximalResult maximal_function(const Weight& w, const Point& p,
                               const RadiusGrid& grid,
                               const QuadratureSpec& spec = {});

double ball_average(const Weight& w, const Point& p, double r,
                    const QuadratureSpec& spec = {});

struct A1Result {
  double estimate = 0.0;
  Point argmax_point{};
  double argmax_radius = 0.0;
};
// sup over samples of M(w)(x) / w(x): a certified lower bound for the A1
// constant (the center value stands in for the ball infimum).
A1Result a1_constant(const Weight& w, std::span<const Point> samples,
                     const RadiusGrid& grid, const QuadratureSpec& spec = {});
// Cross-check variant replacing w(center) by the minimum of w over the
// chart nodes of the arg-max ball.
A1Result a1_constant_sampled_inf(const Weight& w, std::span<const Point> samples,
                                 const RadiusGrid& grid,
                                 const QuadratureSpec& spec = {});

// Deterministic sample cloud with gauge in [g_lo, g_hi]; a longer cloud from
// the same seed extends a shorter one (prefix property).
std::vector<Point> sample_cloud(std::uint64_t seed, int count, double g_lo,
                                double g_hi);

struct A1Stage {
  double estimate = 0.0;
  int sample_count = 0;
  int grid_count = 0;
  int radial_depth = 0;
};
// Joint refinement study for w = rho^{-kappa}: stage k doubles samples and
// grid density; for kappa >= 4 the radial depth is also enlarged and capped
// divergent averages are recorded instead of thrown.
std::vector<A1Stage> a1_refinement_study(double kappa, int stages,
                                         std::uint64_t seed,
                                         const QuadratureSpec& base = {});

}  // namespace h1
