#pragma once

#include <array>

#include "h1/field.hpp"
#include "h1/frame.hpp"
#include "h1/group.hpp"

namespace h1 {

// The fourth-order combination Lap_b^2 + kPluriharmonicCalibration * T^2
// annihilates real parts of holomorphic-type fields in this frame convention.
// The constant was solved once from Lap_b^2(log rho) / T^2(log rho) and is
// locked by the exact symbolic tests.
inline constexpr double kPluriharmonicCalibration = 16.0;

// Finite differences run along group flow lines p . (s e_dir), never along
// coordinate axes, so stencils respect left invariance by construction.
struct FDScheme {
  double base_step = 1e-3;  // h = base_step * max(1, gauge(p))
  int order = 2;            // central stencil order: 2 or 4
  bool richardson = true;   // one extrapolation level from steps h and 2h
  // Composed second-order operators compare the h and 2h results; a relative
  // disagreement above this threshold throws StepTooCoarseError.
  double consistency_tol = 0.05;

  double step_at(const Point& p) const;
};

enum class DerivMethod { prefer_analytic, finite_difference, analytic_only };

double frame_derivative(const ScalarField& f, Frame dir, const Point& p,
                        const FDScheme& fd = {},
                        DerivMethod method = DerivMethod::prefer_analytic);

std::array<double, 2> horizontal_gradient(
    const ScalarField& f, const Point& p, const FDScheme& fd = {},
    DerivMethod method = DerivMethod::prefer_analytic);

double horizontal_gradient_sq(const ScalarField& f, const Point& p,
                              const FDScheme& fd = {},
                              DerivMethod method = DerivMethod::prefer_analytic);

double sublaplacian(const ScalarField& f, const Point& p,
                    const FDScheme& fd = {},
                    DerivMethod method = DerivMethod::prefer_analytic);

// Pure second T-derivative.
double t_second(const ScalarField& f, const Point& p, const FDScheme& fd = {},
                DerivMethod method = DerivMethod::prefer_analytic);

// Lap_b^2 f (composed sub-Laplacian).
double biharmonic_b(const ScalarField& f, const Point& p,
                    const FDScheme& fd = {},
                    DerivMethod method = DerivMethod::prefer_analytic);

// 2 * Lap_b^2 f, the fourth-order operator whose fundamental-solution
// identities the kernel suite verifies.
double paneitz_prime(const ScalarField& f, const Point& p,
                     const FDScheme& fd = {},
                     DerivMethod method = DerivMethod::prefer_analytic);

// Lap_b^2 f + kPluriharmonicCalibration * T^2 f.
double pluriharmonic_residual(const ScalarField& f, const Point& p,
                              const FDScheme& fd = {},
                              DerivMethod method = DerivMethod::prefer_analytic);

// |residual| / (1 + |Lap_b^2 f| + kPluriharmonicCalibration |T^2 f|);
// scale-free acceptance quantity for the annihilation test.
double pluriharmonic_residual_normalized(
    const ScalarField& f, const Point& p, const FDScheme& fd = {},
    DerivMethod method = DerivMethod::prefer_analytic);

// Scalar curvature of the conformally rescaled structure with factor e^u:
//   Rhat = -(Lap_b u + |grad_b u|^2) e^{-u}.
double webster_scalar(const ScalarField& u, const Point& p,
                      const FDScheme& fd = {},
                      DerivMethod method = DerivMethod::prefer_analytic);

}  // namespace h1
