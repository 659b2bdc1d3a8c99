#pragma once

#include <array>

#include "h1/group.hpp"

namespace h1 {

// Integration regions.  Gauge balls may sit anywhere; gauge annuli are
// centered at the origin.  A half-space clip pairs a coordinate half-space
// {coord >= offset} (or <=) with a bounding gauge ball that selects the piece
// of its boundary plane under consideration.
struct Domain {
  enum class Kind { gauge_ball, gauge_annulus, box, half_space_clip };

  Kind kind = Kind::gauge_ball;
  Point center{};               // gauge_ball, half_space_clip bounding ball
  double radius = 1.0;          // gauge_ball, half_space_clip bounding ball
  double r0 = 0.0, r1 = 1.0;    // gauge_annulus
  std::array<double, 3> lo{};   // box corner
  std::array<double, 3> hi{};   // box opposite corner
  int axis = 2;                 // half_space_clip: 0 = x, 1 = y, 2 = t
  double offset = 0.0;          // half_space_clip plane position
  bool positive_side = true;    // half_space_clip orientation

  static Domain gauge_ball(const Point& c, double r);
  static Domain gauge_annulus(double inner, double outer);
  static Domain box(const std::array<double, 3>& corner,
                    const std::array<double, 3>& extents);
  static Domain half_space_clip(int axis, double offset, const Point& ball_center,
                                double ball_radius, bool positive_side = true);

  bool contains(const Point& p) const;
  // Axis-aligned coordinate bounding box (used by Monte Carlo sampling).
  void bounding_box(std::array<double, 3>& out_lo,
                    std::array<double, 3>& out_hi) const;
  // Upper bound on gauge distance from a given point to anywhere in the
  // domain (triangle inequality of the gauge metric).
  double reach_from(const Point& p) const;
};

}  // namespace h1
