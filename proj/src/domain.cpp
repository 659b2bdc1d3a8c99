#include "h1/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "h1/errors.hpp"

namespace h1 {

Domain Domain::gauge_ball(const Point& c, double r) {
  if (r <= 0.0) throw ConfigError("gauge ball radius must be positive");
  Domain d;
  d.kind = Kind::gauge_ball;
  d.center = c;
  d.radius = r;
  return d;
}

Domain Domain::gauge_annulus(double inner, double outer) {
  if (!(0.0 < inner && inner < outer))
    throw ConfigError("annulus requires 0 < r0 < r1");
  Domain d;
  d.kind = Kind::gauge_annulus;
  d.r0 = inner;
  d.r1 = outer;
  return d;
}

Domain Domain::box(const std::array<double, 3>& corner,
                   const std::array<double, 3>& extents) {
  for (double e : extents)
    if (e <= 0.0) throw ConfigError("box extents must be positive");
  Domain d;
  d.kind = Kind::box;
  d.lo = corner;
  for (int i = 0; i < 3; ++i) d.hi[i] = corner[i] + extents[i];
  return d;
}

Domain Domain::half_space_clip(int axis, double offset, const Point& ball_center,
                               double ball_radius, bool positive_side) {
  if (axis < 0 || axis > 2) throw ConfigError("half-space axis must be 0, 1, or 2");
  if (ball_radius <= 0.0) throw ConfigError("bounding ball radius must be positive");
  Domain d;
  d.kind = Kind::half_space_clip;
  d.axis = axis;
  d.offset = offset;
  d.center = ball_center;
  d.radius = ball_radius;
  d.positive_side = positive_side;
  return d;
}

namespace {
double coord(const Point& p, int axis) {
  return axis == 0 ? p.x : axis == 1 ? p.y : p.t;
}
}  // namespace

bool Domain::contains(const Point& p) const {
  switch (kind) {
    case Kind::gauge_ball:
      return gauge_dist(p, center) <= radius;
    case Kind::gauge_annulus: {
      double g = gauge(p);
      return r0 <= g && g <= r1;
    }
    case Kind::box:
      return lo[0] <= p.x && p.x <= hi[0] && lo[1] <= p.y && p.y <= hi[1] &&
             lo[2] <= p.t && p.t <= hi[2];
    case Kind::half_space_clip: {
      double c = coord(p, axis);
      bool side = positive_side ? c >= offset : c <= offset;
      return side && gauge_dist(p, center) <= radius;
    }
  }
  return false;
}

void Domain::bounding_box(std::array<double, 3>& out_lo,
                          std::array<double, 3>& out_hi) const {
  auto ball_bb = [](const Point& c, double r, std::array<double, 3>& blo,
                    std::array<double, 3>& bhi) {
    // p = c . q with gauge(q) <= r: |z_q| <= r, |t_q| <= r^2, and the group
    // twist adds at most 2 r (|c.x| + |c.y|) to the t spread.
    double tw = r * r + 2.0 * r * (std::abs(c.x) + std::abs(c.y));
    blo = {c.x - r, c.y - r, c.t - tw};
    bhi = {c.x + r, c.y + r, c.t + tw};
  };
  switch (kind) {
    case Kind::gauge_ball:
      ball_bb(center, radius, out_lo, out_hi);
      return;
    case Kind::gauge_annulus:
      ball_bb(Point{0, 0, 0}, r1, out_lo, out_hi);
      return;
    case Kind::box:
      out_lo = lo;
      out_hi = hi;
      return;
    case Kind::half_space_clip:
      ball_bb(center, radius, out_lo, out_hi);
      if (positive_side)
        out_lo[axis] = std::max(out_lo[axis], offset);
      else
        out_hi[axis] = std::min(out_hi[axis], offset);
      return;
  }
}

double Domain::reach_from(const Point& p) const {
  switch (kind) {
    case Kind::gauge_ball:
    case Kind::half_space_clip:
      return gauge_dist(p, center) + radius;
    case Kind::gauge_annulus:
      return gauge(p) + r1;
    case Kind::box: {
      Point c{0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.5 * (lo[2] + hi[2])};
      double hx = 0.5 * (hi[0] - lo[0]);
      double hy = 0.5 * (hi[1] - lo[1]);
      double ht = 0.5 * (hi[2] - lo[2]);
      // crude but safe radius bound for the box about its center
      double z2 = hx * hx + hy * hy;
      double tb = ht + 2.0 * (std::abs(c.x) * hy + std::abs(c.y) * hx);
      double rbox = std::pow(z2 * z2 + tb * tb, 0.25);
      return gauge_dist(p, c) + rbox;
    }
  }
  return 0.0;
}

}  // namespace h1
