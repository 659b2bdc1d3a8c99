#include "h1/isoperimetry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "h1/errors.hpp"
#include "h1/fields.hpp"

namespace h1 {

namespace {

constexpr double kPi = std::numbers::pi;

void small_gauss(int n, double a, double b, std::vector<double>& x,
                 std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double xg = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = xg;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * xg * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (xg * p1 - p0) / (xg * xg - 1.0);
      double dx = p1 / dp;
      xg -= dx;
      if (std::abs(dx) < 1e-15) {
        p0 = 1.0;
        p1 = xg;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * xg * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (xg * p1 - p0) / (xg * xg - 1.0);
        break;
      }
    }
    double wi = 2.0 / ((1.0 - xg * xg) * dp * dp);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    x[i] = mid - half * xg;
    w[i] = half * wi;
    x[n - 1 - i] = mid + half * xg;
    w[n - 1 - i] = half * wi;
  }
}

double w34(const Weight& w, const Point& p) { return std::pow(w(p), 0.75); }

// Perimeter of a gauge sphere about `center` of radius R against w^{3/4},
// using the left-translated sphere measure.
double sphere_perimeter(const Weight& w, const Point& center, double R,
                        const QuadratureSpec& spec) {
  const auto& nodes = unit_sphere_chart(spec.resolution);
  double r3 = R * R * R;
  std::vector<double> vals;
  vals.reserve(nodes.size());
  for (const auto& n : nodes)
    vals.push_back(w34(w, mul(center, dilate(R, n.p))) * n.w * r3);
  return pairwise_sum(vals);
}

// Box faces: x and y faces have horizontal density 1 against the Euclidean
// face measure; t faces have density 2 sqrt(x^2 + y^2).
double box_perimeter(const Domain& d, const Weight& w,
                     const QuadratureSpec& spec) {
  int res = spec.resolution;
  std::vector<double> gx, gxw, gy, gyw, gt, gtw;
  small_gauss(res, d.lo[0], d.hi[0], gx, gxw);
  small_gauss(res, d.lo[1], d.hi[1], gy, gyw);
  small_gauss(res, d.lo[2], d.hi[2], gt, gtw);
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(res) * res * 6);
  for (double xf : {d.lo[0], d.hi[0]})
    for (int j = 0; j < res; ++j)
      for (int k = 0; k < res; ++k)
        vals.push_back(w34(w, Point{xf, gy[j], gt[k]}) * gyw[j] * gtw[k]);
  for (double yf : {d.lo[1], d.hi[1]})
    for (int i = 0; i < res; ++i)
      for (int k = 0; k < res; ++k)
        vals.push_back(w34(w, Point{gx[i], yf, gt[k]}) * gxw[i] * gtw[k]);
  for (double tf : {d.lo[2], d.hi[2]})
    for (int i = 0; i < res; ++i)
      for (int j = 0; j < res; ++j) {
        Point p{gx[i], gy[j], tf};
        double dens = 2.0 * std::hypot(p.x, p.y);
        vals.push_back(w34(w, p) * dens * gxw[i] * gyw[j]);
      }
  return pairwise_sum(vals);
}

// Plane piece {x = offset} (or {y = offset}) inside the gauge ball
// B(center, R), with horizontal density 1 against dy dt.  The region in
// ball-relative coordinates is {(y~, t~): (xi^2 + y~^2)^2 + t~^2 <= R^4},
// charted with the usual edge substitutions.
double plane_piece_xy(const Weight& w, int axis, double offset,
                      const Point& center, double R,
                      const QuadratureSpec& spec) {
  double c_ax = axis == 0 ? center.x : center.y;
  double xi = offset - c_ax;
  if (std::abs(xi) >= R) return 0.0;
  int res = spec.resolution;
  std::vector<double> phi, phiw, tau, tauw;
  small_gauss(2 * res, -0.5 * kPi, 0.5 * kPi, phi, phiw);
  small_gauss(res, -1.0, 1.0, tau, tauw);
  double ym = std::sqrt(R * R - xi * xi);
  std::vector<double> vals;
  vals.reserve(phi.size() * tau.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    double cphi = std::cos(phi[j]);
    double yt = ym * std::sin(phi[j]);
    double rho2 = xi * xi + yt * yt;
    double tm = ym * cphi * std::sqrt(R * R + rho2);
    double jac = ym * cphi * phiw[j];
    for (std::size_t k = 0; k < tau.size(); ++k) {
      Point q = axis == 0 ? Point{xi, yt, tau[k] * tm}
                          : Point{yt, xi, tau[k] * tm};
      Point p = mul(center, q);
      vals.push_back(w34(w, p) * jac * tm * tauw[k]);
    }
  }
  return pairwise_sum(vals);
}

// Plane piece {t = offset} inside B(center, R): polar chart in the plane
// about (center.x, center.y); the ball membership constraint is radial in
// each direction psi with a closed-form (or bisected) extent.
double plane_piece_t(const Weight& w, double offset, const Point& center,
                     double R, const QuadratureSpec& spec) {
  int res = spec.resolution;
  int npsi = 4 * res;
  double a0 = offset - center.t;
  double R4 = R * R * R * R;
  if (a0 * a0 > R4) return 0.0;
  std::vector<double> gw, gww;
  small_gauss(res, 0.0, 1.0, gw, gww);
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(npsi) * res);
  for (int j = 0; j < npsi; ++j) {
    double psi = 2.0 * kPi * (j + 0.5) / npsi;
    double cp = std::cos(psi), sp = std::sin(psi);
    double gpsi = 2.0 * (center.x * sp - center.y * cp);
    auto F = [&](double r) {
      double qt = a0 + r * gpsi;
      return r * r * r * r + qt * qt;
    };
    double wmax;
    if (a0 == 0.0) {
      double g2 = gpsi * gpsi;
      wmax = std::sqrt(0.5 * (-g2 + std::sqrt(g2 * g2 + 4.0 * R4)));
    } else {
      double lo = 0.0, hi = R * (1.0 + 1e-12);
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        (F(mid) <= R4 ? lo : hi) = mid;
      }
      wmax = lo;
    }
    if (wmax <= 0.0) continue;
    for (int q = 0; q < res; ++q) {
      double r = gw[q] * wmax;
      double jac = gww[q] * wmax * r * (2.0 * kPi / npsi);
      Point p{center.x + r * cp, center.y + r * sp, offset};
      double dens = 2.0 * std::hypot(p.x, p.y);
      vals.push_back(w34(w, p) * dens * jac);
    }
  }
  return pairwise_sum(vals);
}

double clip_plane_perimeter(const Domain& d, const Weight& w,
                            const QuadratureSpec& spec) {
  if (d.axis == 2) return plane_piece_t(w, d.offset, d.center, d.radius, spec);
  return plane_piece_xy(w, d.axis, d.offset, d.center, d.radius, spec);
}

}  // namespace

Weight unit_weight() { return power_weight(0.0); }

std::string domain_label(const Domain& d) {
  std::ostringstream os;
  switch (d.kind) {
    case Domain::Kind::gauge_ball:
      os << "ball(c=(" << d.center.x << "," << d.center.y << "," << d.center.t
         << "),R=" << d.radius << ")";
      break;
    case Domain::Kind::gauge_annulus:
      os << "annulus(" << d.r0 << "," << d.r1 << ")";
      break;
    case Domain::Kind::box:
      os << "box([" << d.lo[0] << "," << d.hi[0] << "]x[" << d.lo[1] << ","
         << d.hi[1] << "]x[" << d.lo[2] << "," << d.hi[2] << "])";
      break;
    case Domain::Kind::half_space_clip:
      os << "halfspace(axis=" << d.axis << ",offset=" << d.offset
         << (d.positive_side ? ",+)" : ",-)");
      break;
  }
  return os.str();
}

double weighted_volume(const Domain& d, const Weight& w,
                       const QuadratureSpec& spec) {
  return domain_integral(d, w.field, spec);
}

double weighted_perimeter(const Domain& d, const Weight& w,
                          const QuadratureSpec& spec) {
  switch (d.kind) {
    case Domain::Kind::gauge_ball:
      return sphere_perimeter(w, d.center, d.radius, spec);
    case Domain::Kind::gauge_annulus:
      return sphere_perimeter(w, Point{0, 0, 0}, d.r0, spec) +
             sphere_perimeter(w, Point{0, 0, 0}, d.r1, spec);
    case Domain::Kind::box:
      return box_perimeter(d, w, spec);
    case Domain::Kind::half_space_clip:
      return clip_plane_perimeter(d, w, spec);
  }
  throw ConfigError("unknown domain kind");
}

IsoReportRow iso_quotient(const Domain& d, const Weight& w,
                          const QuadratureSpec& spec) {
  IsoReportRow row;
  row.domain_desc = domain_label(d);
  row.weight_desc = w.field.name();
  row.weighted_volume = weighted_volume(d, w, spec);
  row.weighted_perimeter = weighted_perimeter(d, w, spec);
  row.resolution = spec.resolution;
  if (!(row.weighted_perimeter > 1e-12))
    throw DegeneratePerimeterError("weighted perimeter vanishes for " +
                                   row.domain_desc);
  row.quotient =
      row.weighted_volume / std::pow(row.weighted_perimeter, 4.0 / 3.0);
  return row;
}

RelIsoResult relative_iso_check(const Domain& omega, const Domain& ball,
                                const QuadratureSpec& spec) {
  if (ball.kind != Domain::Kind::gauge_ball)
    throw ConfigError("relative isoperimetric check needs a gauge ball");
  RelIsoResult res;

  if (omega.kind == Domain::Kind::half_space_clip) {
    res.fraction_inside =
        halfspace_ball_fraction(omega.axis, omega.offset, omega.positive_side,
                                ball.center, ball.radius, spec);
  } else if (omega.kind == Domain::Kind::gauge_ball ||
             omega.kind == Domain::Kind::box ||
             omega.kind == Domain::Kind::gauge_annulus) {
    const auto& nodes = unit_ball_chart(spec.resolution);
    double num = 0.0, den = 0.0;
    for (const auto& n : nodes) {
      Point p = mul(ball.center, dilate(ball.radius, n.p));
      den += n.w;
      if (omega.contains(p)) num += n.w;
    }
    res.fraction_inside = num / den;
  } else {
    throw ConfigError("unsupported region kind for the relative check");
  }
  res.fraction_outside = 1.0 - res.fraction_inside;

  const double tol = 0.02;
  if (res.fraction_inside < 0.5 - tol || res.fraction_outside < 0.5 - tol) {
    std::ostringstream os;
    os << "half-half hypothesis fails: fractions " << res.fraction_inside
       << " / " << res.fraction_outside;
    throw NotApplicableError(os.str());
  }

  double vol = unit_ball_volume(spec.resolution) * ball.radius * ball.radius *
               ball.radius * ball.radius;
  res.lhs = std::pow(vol, 0.75);

  Weight one = unit_weight();
  if (omega.kind == Domain::Kind::half_space_clip) {
    Domain piece = Domain::half_space_clip(omega.axis, omega.offset,
                                           ball.center, 2.0 * ball.radius,
                                           omega.positive_side);
    res.rhs_factor = weighted_perimeter(piece, one, spec);
  } else if (omega.kind == Domain::Kind::gauge_ball) {
    const auto& nodes = unit_sphere_chart(spec.resolution);
    double r3 = omega.radius * omega.radius * omega.radius;
    double acc = 0.0;
    for (const auto& n : nodes) {
      Point p = mul(omega.center, dilate(omega.radius, n.p));
      if (gauge_dist(p, ball.center) <= 2.0 * ball.radius) acc += n.w * r3;
    }
    res.rhs_factor = acc;
  } else {
    throw ConfigError("relative boundary piece unsupported for this region");
  }
  return res;
}

Example46Report example46_sweep(std::span<const double> radii,
                                std::optional<double> epsilon,
                                const QuadratureSpec& spec) {
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1]))
      throw ConfigError("sweep radii must be strictly increasing");
  if (!radii.empty() && radii.front() <= 1.0)
    throw ConfigError("sweep radii must exceed the inner radius 1");

  Weight w = epsilon
                 ? conformal_weight(memoized(log_potential(
                       make_bump(Point{0, 0, 0}, *epsilon, 1.0),
                       LogKernel::plain, spec)))
                 : power_weight(4.0);

  Example46Report rep;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double R : radii) {
    Domain d = Domain::gauge_annulus(1.0, R);
    IsoReportRow row = iso_quotient(d, w, spec);
    row.log_radius = std::log(R);
    sx += row.log_radius;
    sy += row.weighted_volume;
    sxx += row.log_radius * row.log_radius;
    sxy += row.log_radius * row.weighted_volume;
    rep.rows.push_back(std::move(row));
  }
  double n = static_cast<double>(rep.rows.size());
  double denom = n * sxx - sx * sx;
  rep.volume_slope_vs_log_r = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  return rep;
}

double sigma_to_horizontal_ratio(int res) {
  const auto& h = unit_horizontal_sphere_chart(res);
  const auto& s = unit_sphere_chart(res);
  std::vector<double> hw, sw;
  hw.reserve(h.size());
  sw.reserve(s.size());
  for (const auto& n : h) hw.push_back(n.w);
  for (const auto& n : s) sw.push_back(n.w);
  return pairwise_sum(hw) / pairwise_sum(sw);
}

std::vector<Domain> standard_sweep_domains() {
  std::vector<Domain> out;
  Point origin{0, 0, 0};
  Point off{2, 0, 0};  // gauge distance 2 from the origin
  for (double r : {0.5, 1.0, 2.0}) out.push_back(Domain::gauge_ball(origin, r));
  for (double r : {0.5, 1.0, 3.0}) out.push_back(Domain::gauge_ball(off, r));
  out.push_back(Domain::gauge_annulus(0.5, 1.0));
  out.push_back(Domain::gauge_annulus(1.0, 2.0));
  out.push_back(Domain::gauge_annulus(1.0, 8.0));
  out.push_back(Domain::box({0.25, 0.25, -0.5}, {1.0, 1.0, 1.0}));
  return out;
}

}  // namespace h1
