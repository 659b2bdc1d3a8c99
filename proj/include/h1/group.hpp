#pragma once

// First Heisenberg group H^1 in exponential coordinates (x, y, t).
//
// The group law is chosen so that the frame fields X = d/dx + 2y d/dt,
// Y = d/dy - 2x d/dt are left-invariant and [X, Y] = -4 d/dt.  The Koranyi
// gauge rho(z,t) = (|z|^4 + t^2)^{1/4} is homogeneous of degree 1 under the
// anisotropic dilations (x, y, t) -> (lx, ly, l^2 t); the homogeneous
// dimension is 4.

#include <cmath>

namespace h1 {

struct Point {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

inline constexpr int kHomogeneousDim = 4;

inline Point mul(const Point& p, const Point& q) {
  return {p.x + q.x, p.y + q.y, p.t + q.t + 2.0 * (q.x * p.y - p.x * q.y)};
}

inline Point inv(const Point& p) { return {-p.x, -p.y, -p.t}; }

inline Point identity() { return {0.0, 0.0, 0.0}; }

inline Point dilate(double lambda, const Point& p) {
  return {lambda * p.x, lambda * p.y, lambda * lambda * p.t};
}

// |z|^4 + t^2; polynomial, cheaper and exact-friendly compared to gauge().
inline double gauge4(const Point& p) {
  const double zz = p.x * p.x + p.y * p.y;
  return zz * zz + p.t * p.t;
}

inline double gauge(const Point& p) { return std::pow(gauge4(p), 0.25); }

// Left-invariant gauge distance d(p, q) = rho(q^{-1} * p).
inline double gauge_dist(const Point& p, const Point& q) {
  return gauge(mul(inv(q), p));
}

}  // namespace h1
