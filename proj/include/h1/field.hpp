#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "h1/frame.hpp"
#include "h1/group.hpp"
#include "h1/sym.hpp"

namespace h1 {

// Value-semantic handle to a scalar function on the group.  A field always
// has a pointwise evaluator; it may additionally carry
//   * an exact symbolic form (enables machine-exact frame derivatives),
//   * a singular-point record with an optional homogeneity exponent kappa,
//     meaning f(s0 . delta_s(w)) = s^(-kappa) * f(s0 . w) exactly for s > 0
//     (true for gauge powers; exploited by the singular quadrature).
class ScalarField {
 public:
  using Eval = std::function<double(const Point&)>;

  ScalarField() = default;

  static ScalarField from_lambda(std::string name, Eval f);
  static ScalarField from_expr(std::string name, sym::GaugeExpr e);

  // Marks p0 as a non-removable singular point of the field.  If kappa is
  // set, the field is exactly (-kappa)-homogeneous about p0.
  ScalarField with_singularity(Point p0,
                               std::optional<double> kappa = std::nullopt) const;
  ScalarField renamed(std::string name) const;

  // x -> f(g . x); preserves exact homogeneity about the shifted singular
  // point inv(g) . p0 because left translation commutes with the evaluation.
  ScalarField left_translated(const Point& g) const;
  ScalarField scaled(double c) const;
  ScalarField operator+(const ScalarField& o) const;

  bool valid() const { return static_cast<bool>(impl_); }
  const std::string& name() const;

  // Evaluates the field.  Throws SingularPointError at a recorded singular
  // point and NonFiniteError if the evaluator produces NaN/Inf elsewhere.
  double operator()(const Point& p) const;

  bool has_analytic() const;
  // Machine-exact derivative along a frame word; requires has_analytic().
  double analytic_derivative(std::span<const Frame> word, const Point& p) const;
  const sym::GaugeExpr* expr() const;

  std::optional<Point> singular_point() const;
  std::optional<double> homogeneity_at_singularity() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace h1
