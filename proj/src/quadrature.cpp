#include "h1/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "h1/errors.hpp"
#include "h1/rng.hpp"

namespace h1 {

namespace {

constexpr double kPi = std::numbers::pi;

struct GLRule {
  std::vector<double> x, w;  // on [-1, 1]
};

const GLRule& gl_rule(int n) {
  static std::map<int, GLRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GLRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // final polish pass already applied; recompute dp at the root
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.w[i] = w;
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(r)).first->second;
}

struct Mapped {
  std::vector<double> x, w;
};

Mapped gl_on(int n, double a, double b) {
  const GLRule& r = gl_rule(n);
  Mapped m;
  m.x.resize(n);
  m.w.resize(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    m.x[i] = mid + half * r.x[i];
    m.w[i] = half * r.w[i];
  }
  return m;
}

using ChartBuilder = std::vector<SurfaceNode> (*)(int);

const std::vector<SurfaceNode>& cached_chart(int which, int res,
                                             ChartBuilder build) {
  static std::map<std::pair<int, int>, std::vector<SurfaceNode>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(which, res);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, build(res)).first->second;
}

// Volume chart of the unit gauge ball.  Cylindrical coordinates
// (|z| = u, theta, t), with the edge substitution u = 1 - s^2 that makes the
// sqrt(1 - u^4) thickness factor smooth: dv = u * tm * 2s ds dtheta dtau,
// t = tau * tm, tm = s * sqrt((1+u)(1+u^2)).
std::vector<SurfaceNode> build_ball_chart(int res) {
  int ns = res, ntheta = 2 * res, ntau = res;
  Mapped s = gl_on(ns, 0.0, 1.0);
  Mapped tau = gl_on(ntau, -1.0, 1.0);
  std::vector<SurfaceNode> nodes;
  nodes.reserve(static_cast<std::size_t>(ns) * ntheta * ntau);
  for (int i = 0; i < ns; ++i) {
    double u = 1.0 - s.x[i] * s.x[i];
    double tm = s.x[i] * std::sqrt((1.0 + u) * (1.0 + u * u));
    double wfac = u * tm * 2.0 * s.x[i] * s.w[i] * (2.0 * kPi / ntheta);
    for (int j = 0; j < ntheta; ++j) {
      double th = 2.0 * kPi * (j + 0.5) / ntheta;
      double cx = u * std::cos(th), cy = u * std::sin(th);
      for (int k = 0; k < ntau; ++k)
        nodes.push_back({Point{cx, cy, tau.x[k] * tm}, wfac * tau.w[k]});
    }
  }
  return nodes;
}

// Gauge-sphere measure dsigma via the graph chart t = +-sqrt(1 - |z|^4).
// In polar coordinates with the edge substitution r = 1 - s^2 the hemisphere
// density is 2 r^2 sqrt((1 + 3 r^4) / ((1+r)(1+r^2))) ds dtheta.
std::vector<SurfaceNode> build_sphere_chart(int res) {
  int ns = res, ntheta = 2 * res;
  Mapped s = gl_on(ns, 0.0, 1.0);
  std::vector<SurfaceNode> nodes;
  nodes.reserve(static_cast<std::size_t>(ns) * ntheta * 2);
  for (int i = 0; i < ns; ++i) {
    double r = 1.0 - s.x[i] * s.x[i];
    double edge = std::sqrt((1.0 + r) * (1.0 + r * r));
    double t = s.x[i] * edge;
    double r4 = r * r * r * r;
    double dens = 2.0 * r * r * std::sqrt(1.0 + 3.0 * r4) / edge;
    double wfac = dens * s.w[i] * (2.0 * kPi / ntheta);
    for (int j = 0; j < ntheta; ++j) {
      double th = 2.0 * kPi * (j + 0.5) / ntheta;
      double cx = r * std::cos(th), cy = r * std::sin(th);
      nodes.push_back({Point{cx, cy, t}, wfac});
      nodes.push_back({Point{cx, cy, -t}, wfac});
    }
  }
  return nodes;
}

// Polar-decomposition measure dmu on the unit sphere (dv = s^3 ds dmu):
// hemisphere density 2 r dr dtheta / sqrt(1 - r^4), substituted r = 1 - q^2.
std::vector<SurfaceNode> build_polar_chart(int res) {
  int nq = res, ntheta = 2 * res;
  Mapped q = gl_on(nq, 0.0, 1.0);
  std::vector<SurfaceNode> nodes;
  nodes.reserve(static_cast<std::size_t>(nq) * ntheta * 2);
  for (int i = 0; i < nq; ++i) {
    double r = 1.0 - q.x[i] * q.x[i];
    double edge = std::sqrt((1.0 + r) * (1.0 + r * r));
    double t = q.x[i] * edge;
    double wfac = 4.0 * r / edge * q.w[i] * (2.0 * kPi / ntheta);
    for (int j = 0; j < ntheta; ++j) {
      double th = 2.0 * kPi * (j + 0.5) / ntheta;
      double cx = r * std::cos(th), cy = r * std::sin(th);
      nodes.push_back({Point{cx, cy, t}, wfac});
      nodes.push_back({Point{cx, cy, -t}, wfac});
    }
  }
  return nodes;
}

// Horizontal perimeter density |N_H| dS on the unit sphere:
// hemisphere density 4 r^2 / sqrt((1+r)(1+r^2)) ds dtheta after r = 1 - s^2.
std::vector<SurfaceNode> build_horizontal_chart(int res) {
  int ns = res, ntheta = 2 * res;
  Mapped s = gl_on(ns, 0.0, 1.0);
  std::vector<SurfaceNode> nodes;
  nodes.reserve(static_cast<std::size_t>(ns) * ntheta * 2);
  for (int i = 0; i < ns; ++i) {
    double r = 1.0 - s.x[i] * s.x[i];
    double edge = std::sqrt((1.0 + r) * (1.0 + r * r));
    double t = s.x[i] * edge;
    double wfac = 4.0 * r * r / edge * s.w[i] * (2.0 * kPi / ntheta);
    for (int j = 0; j < ntheta; ++j) {
      double th = 2.0 * kPi * (j + 0.5) / ntheta;
      double cx = r * std::cos(th), cy = r * std::sin(th);
      nodes.push_back({Point{cx, cy, t}, wfac});
      nodes.push_back({Point{cx, cy, -t}, wfac});
    }
  }
  return nodes;
}

double sum_nodes(std::vector<double>& vals) {
  return pairwise_sum(std::span<const double>(vals));
}

bool same_point(const Point& a, const Point& b) {
  double scale = std::max({1.0, std::abs(a.x), std::abs(a.y), std::abs(a.t)});
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.t - b.t) <
         1e-13 * scale;
}

}  // namespace

QuadratureSpec QuadratureSpec::refined(int factor) const {
  QuadratureSpec s = *this;
  s.resolution *= factor;
  s.mc_samples *= static_cast<long long>(factor) * factor;
  return s;
}

const std::vector<SurfaceNode>& unit_ball_chart(int res) {
  return cached_chart(0, res, &build_ball_chart);
}
const std::vector<SurfaceNode>& unit_sphere_chart(int res) {
  return cached_chart(1, res, &build_sphere_chart);
}
const std::vector<SurfaceNode>& unit_polar_chart(int res) {
  return cached_chart(2, res, &build_polar_chart);
}
const std::vector<SurfaceNode>& unit_horizontal_sphere_chart(int res) {
  return cached_chart(3, res, &build_horizontal_chart);
}

double unit_ball_volume(int res) {
  static std::map<int, double> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(res);
  if (it != cache.end()) return it->second;
  const auto& nodes = unit_ball_chart(res);
  std::vector<double> w;
  w.reserve(nodes.size());
  for (const auto& n : nodes) w.push_back(n.w);
  double v = pairwise_sum(w);
  cache.emplace(res, v);
  return v;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 32) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

double singular_shell_integral(const ScalarField& f, const Point& s0,
                               double smax,
                               const std::function<bool(const Point&)>& inside,
                               double full_shell_radius,
                               const QuadratureSpec& spec) {
  if (smax <= 0.0) return 0.0;
  const auto& polar = unit_polar_chart(spec.resolution);
  const double a_full = std::max(0.0, full_shell_radius);

  bool radial_exact = false;
  double kappa = 0.0;
  if (f.homogeneity_at_singularity() && f.singular_point() &&
      same_point(*f.singular_point(), s0)) {
    radial_exact = true;
    kappa = *f.homogeneity_at_singularity();
  }

  // Unit-sphere samples of the field about s0 (finite: gauge distance 1).
  std::vector<double> F;
  double F_tot = 0.0;
  if (radial_exact) {
    F.reserve(polar.size());
    std::vector<double> fw;
    fw.reserve(polar.size());
    for (const auto& n : polar) {
      double v = f(mul(s0, n.p));
      F.push_back(v);
      fw.push_back(v * n.w);
    }
    F_tot = sum_nodes(fw);
  }

  const int nrad = 10;
  double total = 0.0;
  std::vector<double> level_mass;
  bool nonzero_seen = false;
  bool converged = false;

  for (int j = 0; j < spec.radial_depth; ++j) {
    double hi = smax * std::ldexp(1.0, -j);
    double lo = 0.5 * hi;

    if (radial_exact && hi <= a_full) {
      if (kappa < 4.0) {
        // closed-form tail over (0, hi]: the rest of the integral exactly
        total += F_tot * std::pow(hi, 4.0 - kappa) / (4.0 - kappa);
        converged = true;
        break;
      }
      double m = kappa == 4.0
                     ? F_tot * std::log(2.0)
                     : F_tot * (std::pow(hi, 4.0 - kappa) -
                                std::pow(lo, 4.0 - kappa)) / (4.0 - kappa);
      total += m;
      level_mass.push_back(m);
      if (m != 0.0) nonzero_seen = true;
      continue;
    }

    Mapped srule = gl_on(nrad, lo, hi);
    double m = 0.0;
    for (int q = 0; q < nrad; ++q) {
      double s = srule.x[q];
      bool whole = s <= a_full;
      double G = 0.0;
      if (radial_exact) {
        if (whole) {
          G = std::pow(s, -kappa) * F_tot;
        } else {
          double acc = 0.0;
          for (std::size_t i = 0; i < polar.size(); ++i) {
            Point node = mul(s0, dilate(s, polar[i].p));
            if (inside(node)) acc += F[i] * polar[i].w;
          }
          G = std::pow(s, -kappa) * acc;
        }
      } else {
        double acc = 0.0;
        for (const auto& n : polar) {
          Point node = mul(s0, dilate(s, n.p));
          if (whole || inside(node)) acc += f(node) * n.w;
        }
        G = acc;
      }
      m += srule.w[q] * s * s * s * G;
    }
    total += m;
    level_mass.push_back(m);
    if (m != 0.0) nonzero_seen = true;
    if (nonzero_seen && j >= 3 &&
        std::abs(m) <= spec.rel_tol * std::abs(total)) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    if (!nonzero_seen) return 0.0;
    std::size_t n = level_mass.size();
    bool divergent = false;
    if (n >= 4) {
      double rsum = 0.0;
      int rcount = 0;
      for (std::size_t j = n - 3; j < n; ++j) {
        if (level_mass[j - 1] != 0.0) {
          rsum += std::abs(level_mass[j] / level_mass[j - 1]);
          ++rcount;
        }
      }
      divergent = rcount == 3 && rsum / 3.0 >= 0.95;
    }
    if (divergent) {
      if (spec.cap_divergent) return total;
      throw NonIntegrableSingularityError(
          "radial refinement diverges for field '" + f.name() + "'");
    }
    throw QuadratureBudgetError(
        "radial refinement for '" + f.name() +
        "' did not converge within the configured depth");
  }
  return total;
}

double ball_integral(const ScalarField& f, const Point& center, double radius,
                     const QuadratureSpec& spec) {
  if (radius <= 0.0) throw ZeroVolumeRegionError("ball radius must be positive");
  if (spec.method == QuadratureSpec::Method::monte_carlo)
    return mc_integral(Domain::gauge_ball(center, radius), f, spec).value;

  if (auto s0 = f.singular_point()) {
    double d0 = gauge_dist(*s0, center);
    if (d0 <= 1.05 * radius) {
      double a = std::max(0.0, radius - d0);
      double smax = (d0 + radius) * (1.0 + 1e-12);
      auto inside = [center, radius](const Point& p) {
        return gauge_dist(p, center) <= radius;
      };
      return singular_shell_integral(f, *s0, smax, inside, a, spec);
    }
  }

  const auto& nodes = unit_ball_chart(spec.resolution);
  double r4 = radius * radius * radius * radius;
  std::vector<double> vals;
  vals.reserve(nodes.size());
  for (const auto& n : nodes)
    vals.push_back(f(mul(center, dilate(radius, n.p))) * n.w * r4);
  return sum_nodes(vals);
}

double sphere_integral(const ScalarField& f, double radius,
                       const QuadratureSpec& spec) {
  if (radius <= 0.0) throw DegeneratePerimeterError("sphere radius must be positive");
  const auto& nodes = unit_sphere_chart(spec.resolution);
  double r3 = radius * radius * radius;
  std::vector<double> vals;
  vals.reserve(nodes.size());
  for (const auto& n : nodes) vals.push_back(f(dilate(radius, n.p)) * n.w * r3);
  return sum_nodes(vals);
}

double horizontal_sphere_integral(const ScalarField& f, double radius,
                                  const QuadratureSpec& spec) {
  if (radius <= 0.0) throw DegeneratePerimeterError("sphere radius must be positive");
  const auto& nodes = unit_horizontal_sphere_chart(spec.resolution);
  double r3 = radius * radius * radius;
  std::vector<double> vals;
  vals.reserve(nodes.size());
  for (const auto& n : nodes) vals.push_back(f(dilate(radius, n.p)) * n.w * r3);
  return sum_nodes(vals);
}

double annulus_integral(const ScalarField& f, double r0, double r1,
                        const QuadratureSpec& spec, AnnulusRoute route) {
  if (!(0.0 < r0 && r0 <= r1)) throw ConfigError("annulus requires 0 < r0 <= r1");
  if (r0 == r1) return 0.0;

  if (route == AnnulusRoute::ball_difference)
    return ball_integral(f, Point{0, 0, 0}, r1, spec) -
           ball_integral(f, Point{0, 0, 0}, r0, spec);

  if (auto s0 = f.singular_point()) {
    double g = gauge(*s0);
    if (g >= 0.95 * r0 && g <= 1.05 * r1) {
      double smax = (g + r1) * (1.0 + 1e-12);
      double a = std::max(0.0, std::min(g - r0, r1 - g));
      auto inside = [r0, r1](const Point& p) {
        double gg = gauge(p);
        return r0 <= gg && gg <= r1;
      };
      return singular_shell_integral(f, *s0, smax, inside, a, spec);
    }
  }

  const auto& polar = unit_polar_chart(spec.resolution);
  int segments = std::max(1, static_cast<int>(std::ceil(std::log2(r1 / r0))));
  const int nrad = 16;
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(segments) * nrad);
  double ratio = std::pow(r1 / r0, 1.0 / segments);
  double lo = r0;
  for (int seg = 0; seg < segments; ++seg) {
    double hi = seg + 1 == segments ? r1 : lo * ratio;
    Mapped srule = gl_on(nrad, lo, hi);
    for (int q = 0; q < nrad; ++q) {
      double s = srule.x[q];
      double G = 0.0;
      for (const auto& n : polar) G += f(dilate(s, n.p)) * n.w;
      vals.push_back(srule.w[q] * s * s * s * G);
    }
    lo = hi;
  }
  return sum_nodes(vals);
}

McEstimate mc_integral(const Domain& region, const ScalarField& f,
                       const QuadratureSpec& spec) {
  std::array<double, 3> lo{}, hi{};
  region.bounding_box(lo, hi);
  double box_vol = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  if (box_vol <= 0.0) throw ZeroVolumeRegionError("empty bounding box");

  Rng rng(spec.seed);
  const long long n = spec.mc_samples;
  const long long batch = 65536;
  std::vector<double> sums, sqsums;
  double bs = 0.0, bq = 0.0;
  long long in_batch = 0;
  for (long long i = 0; i < n; ++i) {
    Point p{rng.uniform(lo[0], hi[0]), rng.uniform(lo[1], hi[1]),
            rng.uniform(lo[2], hi[2])};
    double v = region.contains(p) ? f(p) : 0.0;
    bs += v;
    bq += v * v;
    if (++in_batch == batch) {
      sums.push_back(bs);
      sqsums.push_back(bq);
      bs = bq = 0.0;
      in_batch = 0;
    }
  }
  if (in_batch > 0) {
    sums.push_back(bs);
    sqsums.push_back(bq);
  }
  double s1 = pairwise_sum(sums);
  double s2 = pairwise_sum(sqsums);
  double mean = s1 / n;
  double var = std::max(0.0, s2 / n - mean * mean);
  McEstimate e;
  e.value = box_vol * mean;
  e.std_error = box_vol * std::sqrt(var / n);
  e.samples = n;
  return e;
}

namespace {

// Integral of f over the part of B(center, r) on one side of a coordinate
// plane {x = x0} or {y = y0}.  The slab is charted in ball-relative unit
// coordinates with edge substitutions that keep the integrand smooth.
double slab_integral(const ScalarField& f, int axis, double a_rel, bool flip,
                     const Point& center, double radius,
                     const QuadratureSpec& spec) {
  if (a_rel >= 1.0) return 0.0;
  double a = std::max(a_rel, -1.0);
  int res = spec.resolution;
  Mapped xi = gl_on(res, 0.0, 1.0);
  Mapped phi = gl_on(res, -0.5 * kPi, 0.5 * kPi);
  Mapped tau = gl_on(res, -1.0, 1.0);
  double r4 = radius * radius * radius * radius;
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(res) * res * res);
  for (int i = 0; i < res; ++i) {
    double x1 = 1.0 - (1.0 - a) * xi.x[i] * xi.x[i];
    double jx = 2.0 * (1.0 - a) * xi.x[i] * xi.w[i];
    double ym = std::sqrt(std::max(0.0, 1.0 - x1 * x1));
    for (int j = 0; j < res; ++j) {
      double cphi = std::cos(phi.x[j]);
      double y = ym * std::sin(phi.x[j]);
      double jy = ym * cphi * phi.w[j];
      double rho2 = x1 * x1 + y * y;
      double tm = ym * cphi * std::sqrt(1.0 + rho2);
      for (int k = 0; k < res; ++k) {
        double t = tau.x[k] * tm;
        double prim = flip ? -x1 : x1;
        Point q = axis == 0 ? Point{prim, y, t} : Point{y, prim, t};
        Point p = mul(center, dilate(radius, q));
        vals.push_back(f(p) * jx * jy * tm * tau.w[k] * r4);
      }
    }
  }
  return sum_nodes(vals);
}

// Integral of f over the part of B(center, r) on one side of {t = t0}.  The
// plane is tilted in ball-relative coordinates by the group twist, so the
// vertical interval is clamped per (x, y) column.
double tilt_integral(const ScalarField& f, double t0, bool positive,
                     const Point& center, double radius,
                     const QuadratureSpec& spec) {
  int res = spec.resolution;
  int ns = res, ntheta = 2 * res, ntau = res;
  Mapped s = gl_on(ns, 0.0, 1.0);
  const GLRule& tgl = gl_rule(ntau);
  double a0 = t0 - center.t;
  double r4 = radius * radius * radius * radius;
  std::vector<double> vals;
  for (int i = 0; i < ns; ++i) {
    double u = 1.0 - s.x[i] * s.x[i];
    double tm = s.x[i] * std::sqrt((1.0 + u) * (1.0 + u * u));
    double wfac = u * 2.0 * s.x[i] * s.w[i] * (2.0 * kPi / ntheta);
    for (int j = 0; j < ntheta; ++j) {
      double th = 2.0 * kPi * (j + 0.5) / ntheta;
      double x1 = u * std::cos(th), y1 = u * std::sin(th);
      double abar = (a0 - 2.0 * center.y * radius * x1 +
                     2.0 * center.x * radius * y1) /
                    (radius * radius);
      double lo = positive ? std::max(-tm, abar) : -tm;
      double hi = positive ? tm : std::min(tm, abar);
      if (lo >= hi) continue;
      double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int k = 0; k < ntau; ++k) {
        double t = mid + half * tgl.x[k];
        Point p = mul(center, dilate(radius, Point{x1, y1, t}));
        vals.push_back(f(p) * wfac * half * tgl.w[k] * r4);
      }
    }
  }
  return sum_nodes(vals);
}

}  // namespace

double clipped_ball_integral(const ScalarField& f, int axis, double offset,
                             bool positive_side, const Point& ball_center,
                             double radius, const QuadratureSpec& spec) {
  if (axis < 0 || axis > 2) throw ConfigError("half-space axis must be 0, 1, or 2");

  if (auto s0 = f.singular_point()) {
    Domain clip = Domain::half_space_clip(axis, offset, ball_center, radius,
                                          positive_side);
    double d0 = gauge_dist(*s0, ball_center);
    if (d0 <= 1.05 * radius) {
      auto inside = [clip](const Point& p) { return clip.contains(p); };
      return singular_shell_integral(f, *s0, (d0 + radius) * (1.0 + 1e-12),
                                     inside, 0.0, spec);
    }
  }

  if (axis == 2) return tilt_integral(f, offset, positive_side, ball_center,
                                      radius, spec);

  double c_ax = axis == 0 ? ball_center.x : ball_center.y;
  double a_rel = (offset - c_ax) / radius;
  if (positive_side) return slab_integral(f, axis, a_rel, false, ball_center,
                                          radius, spec);
  // {coord <= offset} maps to {(-coord) >= -offset}; the ball chart is
  // symmetric under the sign flip of either horizontal coordinate.
  return slab_integral(f, axis, -a_rel, true, ball_center, radius, spec);
}

double halfspace_ball_fraction(int axis, double offset, bool positive_side,
                               const Point& ball_center, double radius,
                               const QuadratureSpec& spec) {
  static const ScalarField one =
      ScalarField::from_expr("one", sym::GaugeExpr::polynomial(
                                        sym::Poly::constant(1.0)));
  double vp = clipped_ball_integral(one, axis, offset, true, ball_center,
                                    radius, spec);
  double vn = clipped_ball_integral(one, axis, offset, false, ball_center,
                                    radius, spec);
  double vol = vp + vn;
  if (vol <= 0.0) throw ZeroVolumeRegionError("clipped ball has no volume");
  return (positive_side ? vp : vn) / vol;
}

double domain_integral(const Domain& region, const ScalarField& f,
                       const QuadratureSpec& spec) {
  switch (region.kind) {
    case Domain::Kind::gauge_ball:
      return ball_integral(f, region.center, region.radius, spec);
    case Domain::Kind::gauge_annulus:
      return annulus_integral(f, region.r0, region.r1, spec);
    case Domain::Kind::half_space_clip:
      return clipped_ball_integral(f, region.axis, region.offset,
                                   region.positive_side, region.center,
                                   region.radius, spec);
    case Domain::Kind::box: {
      if (auto s0 = f.singular_point()) {
        if (region.contains(*s0)) {
          auto inside = [region](const Point& p) { return region.contains(p); };
          return singular_shell_integral(
              f, *s0, region.reach_from(*s0) * (1.0 + 1e-12), inside, 0.0,
              spec);
        }
      }
      int res = spec.resolution;
      Mapped gx = gl_on(res, region.lo[0], region.hi[0]);
      Mapped gy = gl_on(res, region.lo[1], region.hi[1]);
      Mapped gt = gl_on(res, region.lo[2], region.hi[2]);
      std::vector<double> vals;
      vals.reserve(static_cast<std::size_t>(res) * res * res);
      for (int i = 0; i < res; ++i)
        for (int j = 0; j < res; ++j)
          for (int k = 0; k < res; ++k)
            vals.push_back(f(Point{gx.x[i], gy.x[j], gt.x[k]}) * gx.w[i] *
                           gy.w[j] * gt.w[k]);
      return sum_nodes(vals);
    }
  }
  throw ConfigError("unknown domain kind");
}

}  // namespace h1
