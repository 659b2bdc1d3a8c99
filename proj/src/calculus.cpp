#include "h1/calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "h1/errors.hpp"

namespace h1 {

namespace {

// p . (s e_dir): the flow of a left-invariant direction through p.
Point flow(const Point& p, Frame dir, double s) {
  switch (dir) {
    case Frame::X:
      return {p.x + s, p.y, p.t + 2.0 * s * p.y};
    case Frame::Y:
      return {p.x, p.y + s, p.t - 2.0 * s * p.x};
    case Frame::T:
      return {p.x, p.y, p.t + s};
  }
  return p;
}

void guard_stencil(const ScalarField& f, const Point& p, double reach) {
  if (auto s0 = f.singular_point()) {
    if (gauge_dist(p, *s0) < reach)
      throw SingularPointError("finite-difference stencil for '" + f.name() +
                               "' reaches into its singularity");
  }
}

double d1_at(const ScalarField& f, const Point& p, Frame dir, double h,
             int order) {
  auto fe = [&](double s) { return f(flow(p, dir, s)); };
  if (order >= 4)
    return (-fe(2 * h) + 8 * fe(h) - 8 * fe(-h) + fe(-2 * h)) / (12 * h);
  return (fe(h) - fe(-h)) / (2 * h);
}

double d2_at(const ScalarField& f, const Point& p, Frame dir, double h,
             int order) {
  auto fe = [&](double s) { return f(flow(p, dir, s)); };
  if (order >= 4)
    return (-fe(2 * h) + 16 * fe(h) - 30 * fe(0.0) + 16 * fe(-h) - fe(-2 * h)) /
           (12 * h * h);
  return (fe(h) - 2 * fe(0.0) + fe(-h)) / (h * h);
}

double richardson_combine(double coarse, double fine, int order) {
  // central stencils have even error expansions; one step of extrapolation
  // cancels the leading h^order term.
  double w = order >= 4 ? 16.0 : 4.0;
  return (w * fine - coarse) / (w - 1.0);
}

double fd_d1(const ScalarField& f, const Point& p, Frame dir,
             const FDScheme& fd) {
  double h = fd.step_at(p);
  guard_stencil(f, p, 10.0 * h);
  double fine = d1_at(f, p, dir, h, fd.order);
  if (!fd.richardson) return fine;
  double coarse = d1_at(f, p, dir, 2 * h, fd.order);
  return richardson_combine(coarse, fine, fd.order);
}

double fd_d2(const ScalarField& f, const Point& p, Frame dir,
             const FDScheme& fd) {
  double h = fd.step_at(p);
  guard_stencil(f, p, 10.0 * h);
  double fine = d2_at(f, p, dir, h, fd.order);
  if (!fd.richardson) return fine;
  double coarse = d2_at(f, p, dir, 2 * h, fd.order);
  return richardson_combine(coarse, fine, fd.order);
}

double fd_sublap_step(const ScalarField& f, const Point& p, double h,
                      int order) {
  return d2_at(f, p, Frame::X, h, order) + d2_at(f, p, Frame::Y, h, order);
}

double fd_sublap(const ScalarField& f, const Point& p, const FDScheme& fd) {
  double h = fd.step_at(p);
  guard_stencil(f, p, 10.0 * h);
  double fine = fd_sublap_step(f, p, h, fd.order);
  if (!fd.richardson) return fine;
  double coarse = fd_sublap_step(f, p, 2 * h, fd.order);
  return richardson_combine(coarse, fine, fd.order);
}

// Composed Lap_b^2: the outer stencil applies the inner sub-Laplacian at a
// shared absolute step so the composition has a clean h^2 error expansion.
double fd_biharmonic(const ScalarField& f, const Point& p, const FDScheme& fd) {
  double h = fd.step_at(p);
  guard_stencil(f, p, 20.0 * h);
  auto level = [&](double step) {
    ScalarField inner = ScalarField::from_lambda(
        "sublap(" + f.name() + ")",
        [f, step, order = fd.order](const Point& q) {
          return fd_sublap_step(f, q, step, order);
        });
    return fd_sublap_step(inner, p, step, fd.order);
  };
  double fine = level(h);
  double coarse = level(2 * h);
  double out = richardson_combine(coarse, fine, 2);
  double scale = std::max(1.0, std::abs(out));
  if (std::abs(fine - coarse) > fd.consistency_tol * scale)
    throw StepTooCoarseError(
        "composed fourth-order stencil did not stabilise for '" + f.name() +
        "'");
  return out;
}

double analytic_word(const ScalarField& f, std::initializer_list<Frame> word,
                     const Point& p) {
  return f.analytic_derivative(std::span<const Frame>(word.begin(), word.size()),
                               p);
}

bool use_analytic(const ScalarField& f, DerivMethod m) {
  switch (m) {
    case DerivMethod::prefer_analytic:
      return f.has_analytic();
    case DerivMethod::analytic_only:
      if (!f.has_analytic())
        throw std::logic_error("field '" + f.name() + "' has no analytic form");
      return true;
    case DerivMethod::finite_difference:
      return false;
  }
  return false;
}

}  // namespace

double FDScheme::step_at(const Point& p) const {
  return base_step * std::max(1.0, gauge(p));
}

double frame_derivative(const ScalarField& f, Frame dir, const Point& p,
                        const FDScheme& fd, DerivMethod method) {
  if (use_analytic(f, method)) return analytic_word(f, {dir}, p);
  return fd_d1(f, p, dir, fd);
}

std::array<double, 2> horizontal_gradient(const ScalarField& f, const Point& p,
                                          const FDScheme& fd,
                                          DerivMethod method) {
  if (use_analytic(f, method))
    return {analytic_word(f, {Frame::X}, p), analytic_word(f, {Frame::Y}, p)};
  return {fd_d1(f, p, Frame::X, fd), fd_d1(f, p, Frame::Y, fd)};
}

double horizontal_gradient_sq(const ScalarField& f, const Point& p,
                              const FDScheme& fd, DerivMethod method) {
  auto g = horizontal_gradient(f, p, fd, method);
  return g[0] * g[0] + g[1] * g[1];
}

double sublaplacian(const ScalarField& f, const Point& p, const FDScheme& fd,
                    DerivMethod method) {
  if (use_analytic(f, method))
    return analytic_word(f, {Frame::X, Frame::X}, p) +
           analytic_word(f, {Frame::Y, Frame::Y}, p);
  return fd_sublap(f, p, fd);
}

double t_second(const ScalarField& f, const Point& p, const FDScheme& fd,
                DerivMethod method) {
  if (use_analytic(f, method)) return analytic_word(f, {Frame::T, Frame::T}, p);
  return fd_d2(f, p, Frame::T, fd);
}

double biharmonic_b(const ScalarField& f, const Point& p, const FDScheme& fd,
                    DerivMethod method) {
  if (use_analytic(f, method)) {
    const sym::GaugeExpr lap2 = f.expr()->sublap().sublap();
    return lap2.eval(p);
  }
  return fd_biharmonic(f, p, fd);
}

double paneitz_prime(const ScalarField& f, const Point& p, const FDScheme& fd,
                     DerivMethod method) {
  return 2.0 * biharmonic_b(f, p, fd, method);
}

double pluriharmonic_residual(const ScalarField& f, const Point& p,
                              const FDScheme& fd, DerivMethod method) {
  return biharmonic_b(f, p, fd, method) +
         kPluriharmonicCalibration * t_second(f, p, fd, method);
}

double pluriharmonic_residual_normalized(const ScalarField& f, const Point& p,
                                         const FDScheme& fd,
                                         DerivMethod method) {
  double b = biharmonic_b(f, p, fd, method);
  double tt = kPluriharmonicCalibration * t_second(f, p, fd, method);
  return std::abs(b + tt) / (1.0 + std::abs(b) + std::abs(tt));
}

double webster_scalar(const ScalarField& u, const Point& p, const FDScheme& fd,
                      DerivMethod method) {
  double lap = sublaplacian(u, p, fd, method);
  double grad2 = horizontal_gradient_sq(u, p, fd, method);
  return -(lap + grad2) * std::exp(-u(p));
}

}  // namespace h1
