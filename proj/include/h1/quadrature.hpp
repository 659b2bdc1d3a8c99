#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "h1/domain.hpp"
#include "h1/field.hpp"

namespace h1 {

struct QuadratureSpec {
  enum class Method { product_gauss, monte_carlo };

  Method method = Method::product_gauss;
  // Per-axis node parameter of the product charts; chart node counts scale
  // like resolution^3 (volume) or resolution^2 (surface).
  int resolution = 16;
  long long mc_samples = 1'000'000;
  std::uint64_t seed = 0x243F6A8885A308D3ull;  // fixed default, never wall clock
  // Radial refinement around point singularities stops once a dyadic level
  // contributes less than rel_tol of the running total.
  double rel_tol = 1e-7;
  int radial_depth = 48;
  // When a non-integrable singularity is detected, either throw (default) or
  // return the depth-capped partial sum (used by divergence studies).
  bool cap_divergent = false;

  QuadratureSpec refined(int factor = 2) const;
};

struct SurfaceNode {
  Point p;
  double w;
};

// Cached unit-scale charts.  All are exactly dilation-covariant: nodes for
// radius R are delta_R of the unit nodes with weights scaled by R^4 (volume)
// or R^3 (surface measures).
const std::vector<SurfaceNode>& unit_ball_chart(int res);
// Gauge-sphere measure dsigma (the graph-chart surface density used
// throughout the perimeter computations).
const std::vector<SurfaceNode>& unit_sphere_chart(int res);
// Polar decomposition measure dmu on the unit sphere: dv = s^3 ds dmu.
const std::vector<SurfaceNode>& unit_polar_chart(int res);
// Horizontal perimeter density on the unit sphere (implicit-surface form).
const std::vector<SurfaceNode>& unit_horizontal_sphere_chart(int res);

double unit_ball_volume(int res);

double pairwise_sum(std::span<const double> v);

double ball_integral(const ScalarField& f, const Point& center, double radius,
                     const QuadratureSpec& spec = {});
double sphere_integral(const ScalarField& f, double radius,
                       const QuadratureSpec& spec = {});
double horizontal_sphere_integral(const ScalarField& f, double radius,
                                  const QuadratureSpec& spec = {});

enum class AnnulusRoute { radial_shells, ball_difference };
double annulus_integral(const ScalarField& f, double r0, double r1,
                        const QuadratureSpec& spec = {},
                        AnnulusRoute route = AnnulusRoute::radial_shells);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
};
McEstimate mc_integral(const Domain& region, const ScalarField& f,
                       const QuadratureSpec& spec = {});

double domain_integral(const Domain& region, const ScalarField& f,
                       const QuadratureSpec& spec = {});

// Integral of f over B(center, radius) intersected with a coordinate
// half-space, via slicing charts that resolve the boundary exactly.
double clipped_ball_integral(const ScalarField& f, int axis, double offset,
                             bool positive_side, const Point& ball_center,
                             double radius, const QuadratureSpec& spec = {});
// |B ∩ half-space| / |B|; symmetric configurations come out exactly 1/2.
double halfspace_ball_fraction(int axis, double offset, bool positive_side,
                               const Point& ball_center, double radius,
                               const QuadratureSpec& spec = {});

// Integral of f over {p in domain} when f has a point singularity at s0:
// dyadic gauge shells about s0, with closed-form tails for exactly
// homogeneous fields.  smax must bound the gauge distance from s0 to the
// domain; shells with s <= full_shell_radius skip the membership test.
double singular_shell_integral(const ScalarField& f, const Point& s0,
                               double smax,
                               const std::function<bool(const Point&)>& inside,
                               double full_shell_radius,
                               const QuadratureSpec& spec);

}  // namespace h1
