#include "h1/fields.hpp"

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "h1/errors.hpp"

namespace h1 {

namespace {

sym::Poly horizontal_norm_sq() {
  sym::Poly p;
  p.add_term(2.0, 2, 0, 0);
  p.add_term(2.0, 0, 2, 0);
  return p;
}

// Gauss-Legendre nodes/weights on [a, b] (Newton on the Legendre recurrence).
void small_gauss(int n, double a, double b, std::vector<double>& x,
                 std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double xg = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
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

}  // namespace

ScalarField make_closed_form(ClosedFormKind kind, const ClosedFormParams& pr) {
  switch (kind) {
    case ClosedFormKind::log_gauge:
      // log rho = (1/4) log U
      return ScalarField::from_expr("log-gauge",
                                    sym::GaugeExpr::log_gauge4(0.25 * pr.scale));
    case ClosedFormKind::sublap_log_gauge:
      return ScalarField::from_expr(
                 "sublap-log-gauge",
                 sym::GaugeExpr::rational(horizontal_norm_sq().scaled(pr.scale),
                                          -1.0))
          .with_singularity(Point{0, 0, 0}, 2.0);
    case ClosedFormKind::szego_numerator: {
      sym::Poly n;
      n.add_term(pr.scale, 0, 0, 2);  // t^2 - |z|^4
      n.add_term(-pr.scale, 4, 0, 0);
      n.add_term(-2.0 * pr.scale, 2, 2, 0);
      n.add_term(-pr.scale, 0, 4, 0);
      return ScalarField::from_expr("szego-numerator",
                                    sym::GaugeExpr::rational(std::move(n), -2.0))
          .with_singularity(Point{0, 0, 0}, 4.0);
    }
    case ClosedFormKind::power_gauge_log:
      // kappa * log(1/rho) = -(kappa/4) log U
      return ScalarField::from_expr(
          "gauge-power-log",
          sym::GaugeExpr::log_gauge4(-0.25 * pr.kappa * pr.scale));
    case ClosedFormKind::coordinate_monomial:
      return ScalarField::from_expr(
          "monomial", sym::GaugeExpr::polynomial(sym::Poly::monomial(
                          pr.scale, pr.px, pr.py, pr.pt)));
    case ClosedFormKind::linear_t:
      return ScalarField::from_expr(
          "linear-t", sym::GaugeExpr::polynomial(
                          sym::Poly::monomial(pr.scale * pr.c2, 0, 0, 1)));
  }
  throw UnknownKindError("unknown closed-form field kind");
}

ScalarField make_polynomial(std::string name,
                            std::span<const MonomialTerm> terms) {
  sym::Poly p;
  for (const auto& m : terms) p.add_term(m.coef, m.px, m.py, m.pt);
  return ScalarField::from_expr(std::move(name),
                                sym::GaugeExpr::polynomial(std::move(p)));
}

namespace {

// Integral over the unit gauge ball of (1 - rho^2)^4: mu total times the
// exact Gauss value of the degree-11 radial profile integral.
double unit_profile_integral() {
  static std::once_flag flag;
  static double value = 0.0;
  std::call_once(flag, [] {
    const auto& polar = unit_polar_chart(16);
    std::vector<double> w;
    w.reserve(polar.size());
    for (const auto& n : polar) w.push_back(n.w);
    double mu_tot = pairwise_sum(w);
    std::vector<double> sx, sw;
    small_gauss(8, 0.0, 1.0, sx, sw);
    double radial = 0.0;
    for (int i = 0; i < 8; ++i) {
      double s = sx[i];
      double a = 1.0 - s * s;
      radial += sw[i] * s * s * s * a * a * a * a;
    }
    value = mu_tot * radial;
  });
  return value;
}

}  // namespace

BumpDensity make_bump(const Point& center, double epsilon, double mass) {
  if (epsilon <= 0.0) throw ConfigError("bump epsilon must be positive");
  BumpDensity b;
  b.center = center;
  b.epsilon = epsilon;
  b.mass = mass;
  double e4 = epsilon * epsilon * epsilon * epsilon;
  b.amplitude = mass / (e4 * unit_profile_integral());
  double amp = b.amplitude;
  b.density = ScalarField::from_lambda(
      "bump", [center, epsilon, amp](const Point& p) {
        double g4 = gauge4(mul(inv(center), p));
        double rel = std::sqrt(g4) / (epsilon * epsilon);  // (d/eps)^2
        if (rel >= 1.0) return 0.0;
        double a = 1.0 - rel;
        return amp * a * a * a * a;
      });
  return b;
}

namespace {

// x strictly outside the support: radial chart over the support ball keeps
// the profile exactly polynomial in the shell radius and the log kernel
// smooth, so the product rule converges spectrally.
double potential_far(const BumpDensity& g, const Point& x, int polar_res,
                     int nrad) {
  const auto& polar = unit_polar_chart(polar_res);
  std::vector<double> sx, sw;
  small_gauss(nrad, 0.0, g.epsilon, sx, sw);
  double total = 0.0;
  for (int q = 0; q < nrad; ++q) {
    double s = sx[q];
    double rel = (s / g.epsilon) * (s / g.epsilon);
    double a = 1.0 - rel;
    double profile = g.amplitude * a * a * a * a;
    double ang = 0.0;
    for (const auto& n : polar) {
      Point y = mul(g.center, dilate(s, n.p));
      ang += -0.25 * std::log(gauge4(mul(inv(y), x))) * n.w;
    }
    total += sw[q] * s * s * s * profile * ang;
  }
  return total;
}

// x inside (or touching) the support: substitute u = y^{-1} x, which moves
// the kernel singularity to u = 0 where dyadic shells absorb it.
double potential_near(const BumpDensity& g, const Point& x,
                      const QuadratureSpec& spec) {
  double d = gauge_dist(x, g.center);
  double smax = (d + g.epsilon) * (1.0 + 1e-12);
  ScalarField integrand =
      ScalarField::from_lambda("log-kernel-shifted",
                               [g, x](const Point& u) {
                                 double kern = -0.25 * std::log(gauge4(u));
                                 return kern * g.density(mul(x, inv(u)));
                               })
          .with_singularity(Point{0, 0, 0});
  auto always = [](const Point&) { return true; };
  return singular_shell_integral(integrand, Point{0, 0, 0}, smax, always, smax,
                                 spec);
}

// int log(rho(y)) g(y) dv(y): the x-independent shift of the ratio kernel.
double shift_constant(const BumpDensity& g, int polar_res, int nrad) {
  const auto& polar = unit_polar_chart(polar_res);
  std::vector<double> sx, sw;
  small_gauss(nrad, 0.0, g.epsilon, sx, sw);
  double total = 0.0;
  for (int q = 0; q < nrad; ++q) {
    double s = sx[q];
    double rel = (s / g.epsilon) * (s / g.epsilon);
    double a = 1.0 - rel;
    double profile = g.amplitude * a * a * a * a;
    double ang = 0.0;
    for (const auto& n : polar)
      ang += 0.25 * std::log(gauge4(mul(g.center, dilate(s, n.p)))) * n.w;
    total += sw[q] * s * s * s * profile * ang;
  }
  return total;
}

double plain_potential(const BumpDensity& g, const Point& x,
                       const QuadratureSpec& spec) {
  double d = gauge_dist(x, g.center);
  if (d <= 1.02 * g.epsilon) return potential_near(g, x, spec);
  int polar_res =
      d >= 4.0 * g.epsilon ? std::max(6, spec.resolution / 2) : spec.resolution;
  return potential_far(g, x, polar_res, 12);
}

}  // namespace

double log_kernel_quad(const BumpDensity& g, const Point& x, LogKernel kernel,
                       const QuadratureSpec& spec) {
  double v = plain_potential(g, x, spec);
  if (kernel == LogKernel::ratio) v += shift_constant(g, spec.resolution, 12);
  return v;
}

ScalarField log_potential(const BumpDensity& g, LogKernel kernel,
                          const QuadratureSpec& spec) {
  struct State {
    BumpDensity g;
    QuadratureSpec spec;
    LogKernel kernel = LogKernel::plain;
    std::once_flag flag;
    double shift = 0.0;
  };
  auto st = std::make_shared<State>();
  st->g = g;
  st->spec = spec;
  st->kernel = kernel;
  return ScalarField::from_lambda("log-potential", [st](const Point& x) {
    double v = plain_potential(st->g, x, st->spec);
    if (st->kernel == LogKernel::ratio) {
      std::call_once(st->flag,
                     [&] { st->shift = shift_constant(st->g, st->spec.resolution, 12); });
      v += st->shift;
    }
    return v;
  });
}

ScalarField memoized(const ScalarField& f) {
  struct Key {
    double x, y, t;
    bool operator==(const Key& o) const {
      return x == o.x && y == o.y && t == o.t;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      auto mix = [](std::size_t h, double v) {
        std::uint64_t b;
        std::memcpy(&b, &v, sizeof(b));
        h ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
      };
      std::size_t h = 1469598103934665603ull;
      h = mix(h, k.x);
      h = mix(h, k.y);
      h = mix(h, k.t);
      return h;
    }
  };
  struct Cache {
    std::mutex mu;
    std::unordered_map<Key, double, KeyHash> map;
  };
  auto cache = std::make_shared<Cache>();
  ScalarField base = f;
  ScalarField wrapped = ScalarField::from_lambda(
      f.name() + "#memo", [cache, base](const Point& p) {
        Key k{p.x, p.y, p.t};
        {
          std::lock_guard<std::mutex> lock(cache->mu);
          auto it = cache->map.find(k);
          if (it != cache->map.end()) return it->second;
        }
        double v = base(p);
        std::lock_guard<std::mutex> lock(cache->mu);
        cache->map.emplace(k, v);
        return v;
      });
  if (auto s0 = f.singular_point())
    wrapped = wrapped.with_singularity(*s0, f.homogeneity_at_singularity());
  return wrapped;
}

}  // namespace h1
