#pragma once

// Exact symbolic calculus for the small field algebra the toolkit needs.
//
// Every closed-form field we ship can be written as
//
//     f = sum_i N_i * U^{beta_i}  +  c * log U,        U = (x^2+y^2)^2 + t^2,
//
// where the N_i are polynomials in (x, y, t) and the beta_i are (possibly
// negative, possibly fractional) real exponents.  The class of such
// expressions is closed under the left-invariant frame derivatives X, Y, T,
// because X(U) etc. are again polynomials:
//
//     X(N U^b) = (X(N) U + b N X(U)) U^(b-1),      X(c log U) = c X(U) U^(-1).
//
// That closure gives us machine-exact derivatives of every kernel identity the
// library verifies, so finite differences can be checked against a reference
// that carries no truncation error of its own.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "h1/frame.hpp"
#include "h1/group.hpp"

namespace h1::sym {

// Sparse polynomial in (x, y, t) with double coefficients.  Coefficients stay
// exact as long as they remain small integers scaled by powers of two, which
// holds for every expression this library manipulates.
class Poly {
 public:
  using Key = std::array<int, 3>;  // exponents of x, y, t

  Poly() = default;

  static Poly constant(double c);
  static Poly monomial(double c, int px, int py, int pt);

  Poly& add_term(double c, int px, int py, int pt);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(double c) const;

  Poly dx() const;
  Poly dy() const;
  Poly dt() const;
  // Derivative along a left-invariant frame direction.
  Poly frame(Frame dir) const;

  double eval(const Point& p) const;
  double max_abs_coef() const;
  bool is_zero(double tol = 1e-11) const;
  int total_degree() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Key, double>& terms() const { return terms_; }

 private:
  std::map<Key, double> terms_;
};

// U = (x^2+y^2)^2 + t^2, the fourth power of the homogeneous gauge.
Poly gauge4_poly();

// f = sum_i N_i U^{beta_i} + logcoef * log U.
class GaugeExpr {
 public:
  struct Term {
    Poly num;
    double beta = 0.0;
  };

  GaugeExpr() = default;

  static GaugeExpr polynomial(Poly n);
  static GaugeExpr rational(Poly n, double beta);
  static GaugeExpr log_gauge4(double c);

  GaugeExpr operator+(const GaugeExpr& o) const;
  GaugeExpr operator-(const GaugeExpr& o) const;
  GaugeExpr scaled(double c) const;
  // Product of two log-free expressions (enough for squares of gradients).
  GaugeExpr times(const GaugeExpr& o) const;

  GaugeExpr derive(Frame dir) const;
  GaugeExpr derive(std::span<const Frame> word) const;
  GaugeExpr sublap() const;  // X X + Y Y

  // Evaluates at p.  The caller is responsible for staying away from the
  // gauge singularity when negative powers or a log term are present.
  double eval(const Point& p) const;

  // Exact structural zero test: terms whose exponents differ by integers are
  // reduced to a common power of U and the combined numerator must vanish.
  bool is_zero(double tol = 1e-9) const;

  bool has_log() const { return logcoef_ != 0.0; }
  bool has_negative_power() const;
  double logcoef() const { return logcoef_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  void push_term(Poly n, double beta);

  std::vector<Term> terms_;  // kept sorted by beta
  double logcoef_ = 0.0;
};

}  // namespace h1::sym
