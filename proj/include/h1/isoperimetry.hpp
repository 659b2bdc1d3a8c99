#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "h1/domain.hpp"
#include "h1/quadrature.hpp"
#include "h1/weights.hpp"

namespace h1 {

struct IsoReportRow {
  std::string domain_desc;
  std::string weight_desc;
  double weighted_volume = 0.0;
  double weighted_perimeter = 0.0;
  double quotient = 0.0;  // volume / perimeter^{4/3}
  double log_radius = 0.0;  // ln(outer radius) for sweep rows
  int resolution = 0;
};

Weight unit_weight();
std::string domain_label(const Domain& d);

// int_d w dv.
double weighted_volume(const Domain& d, const Weight& w,
                       const QuadratureSpec& spec = {});

// int_{boundary of d} w^{3/4} dsigma.  Gauge spheres use the sphere measure;
// box faces and half-space plane pieces use the horizontal density of the
// implicit surface (the two conventions differ by a bounded factor on
// spheres; see sigma_to_horizontal_ratio).
double weighted_perimeter(const Domain& d, const Weight& w,
                          const QuadratureSpec& spec = {});

IsoReportRow iso_quotient(const Domain& d, const Weight& w,
                          const QuadratureSpec& spec = {});

struct RelIsoResult {
  double lhs = 0.0;         // |B|^{3/4}
  double rhs_factor = 0.0;  // |boundary of omega inside 2B| (unweighted)
  double fraction_inside = 0.0;
  double fraction_outside = 0.0;
};
// Checks the half-half hypothesis (both fractions >= 1/2 within tolerance;
// throws NotApplicableError otherwise) and returns the two sides of the
// relative isoperimetric comparison; callers aggregate max(lhs/rhs_factor).
RelIsoResult relative_iso_check(const Domain& omega, const Domain& ball,
                                const QuadratureSpec& spec = {});

struct Example46Report {
  std::vector<IsoReportRow> rows;
  double volume_slope_vs_log_r = 0.0;  // fitted d(volume)/d(ln R)
};
// Annuli A(1, R) against rho^{-4}, or its mollified version e^{4 u_eps}
// when epsilon is given.
Example46Report example46_sweep(std::span<const double> radii,
                                std::optional<double> epsilon = std::nullopt,
                                const QuadratureSpec& spec = {});

// Ratio of the horizontal-density sphere measure to the sphere measure on
// the unit gauge sphere (total mass); the conventions are not pointwise
// proportional, so this single number is reported, not applied.
double sigma_to_horizontal_ratio(int res = 16);

// The bounded-quotient sweep family: balls at the origin and at gauge
// distance 2, annuli, and one box.
std::vector<Domain> standard_sweep_domains();

}  // namespace h1
