#pragma once

#include <span>
#include <string>

#include "h1/field.hpp"
#include "h1/quadrature.hpp"

namespace h1 {

// Closed-form fields with machine-exact frame derivatives.
enum class ClosedFormKind {
  log_gauge,          // log rho
  sublap_log_gauge,   // 2|z|^2 / (|z|^4 + t^2)           (= Lap_b log rho)
  szego_numerator,    // (t^2 - |z|^4) / (|z|^4 + t^2)^2
  power_gauge_log,    // kappa * log(1/rho)
  coordinate_monomial,// x^px y^py t^pt
  linear_t            // c2 * t
};

struct ClosedFormParams {
  double scale = 1.0;        // overall multiplier
  double kappa = 1.0;        // power_gauge_log
  double c2 = 1.0;           // linear_t
  int px = 0, py = 0, pt = 0;  // coordinate_monomial
};

ScalarField make_closed_form(ClosedFormKind kind,
                             const ClosedFormParams& params = {});

struct MonomialTerm {
  double coef = 1.0;
  int px = 0, py = 0, pt = 0;
};
ScalarField make_polynomial(std::string name, std::span<const MonomialTerm> terms);

// Smooth compactly supported density: amplitude * (1 - (d/eps)^2)^4 on the
// gauge ball of radius eps about the center, zero outside, with total
// Lebesgue integral equal to `mass`.  The amplitude is calibrated once from
// the unit-scale profile integral by quadrature; the eps scaling is exact.
struct BumpDensity {
  Point center{};
  double epsilon = 1.0;
  double mass = 1.0;
  double amplitude = 0.0;
  ScalarField density;
};
BumpDensity make_bump(const Point& center, double epsilon, double mass);

// v(x) = int log(1/rho(y^{-1} x)) g(y) dv(y)   (plain kernel), or the same
// plus the x-independent shift int log(rho(y)) g(y) dv(y) (ratio kernel,
// matching the normalized kernel log(rho(y)/rho(y^{-1}x))).
enum class LogKernel { plain, ratio };

double log_kernel_quad(const BumpDensity& g, const Point& x,
                       LogKernel kernel = LogKernel::plain,
                       const QuadratureSpec& spec = {});

ScalarField log_potential(const BumpDensity& g,
                          LogKernel kernel = LogKernel::plain,
                          const QuadratureSpec& spec = {});

// Thread-safe pointwise cache in front of an expensive field.
ScalarField memoized(const ScalarField& f);

}  // namespace h1
