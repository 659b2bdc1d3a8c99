#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "h1/errors.hpp"
#include "h1/fields.hpp"
#include "h1/quadrature.hpp"
#include "h1/rng.hpp"

using namespace h1;

namespace {

constexpr double kPi = 3.14159265358979323846;
// High-precision reference values for the unit-scale charts.
constexpr double kSigmaUnit = 12.372750371945765171;
constexpr double kHorizontalUnit = 15.056274237662747319;
constexpr double kBallVolume = kPi * kPi / 2.0;
constexpr double kPolarUnit = 2.0 * kPi * kPi;

ScalarField one_field() {
  return ScalarField::from_lambda("one", [](const Point&) { return 1.0; });
}

double chart_mass(const std::vector<SurfaceNode>& nodes) {
  std::vector<double> w;
  w.reserve(nodes.size());
  for (const auto& n : nodes) w.push_back(n.w);
  return pairwise_sum(w);
}

}  // namespace

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("unit chart masses against high-precision references") {
  for (int res : {12, 16, 24}) {
    // The graph-chart sphere measure converges a little slower than the
    // volume charts; resolution 12 sits near 1e-9 relative accuracy.
    double eps = res >= 16 ? 1e-10 : 1e-8;
    CHECK(chart_mass(unit_sphere_chart(res)) ==
          doctest::Approx(kSigmaUnit).epsilon(eps));
    CHECK(chart_mass(unit_horizontal_sphere_chart(res)) ==
          doctest::Approx(kHorizontalUnit).epsilon(eps));
    CHECK(chart_mass(unit_polar_chart(res)) ==
          doctest::Approx(kPolarUnit).epsilon(eps));
    CHECK(unit_ball_volume(res) == doctest::Approx(kBallVolume).epsilon(eps));
  }
}

TEST_CASE("ball volume: translation invariance and exact dilation") {
  QuadratureSpec spec;
  ScalarField one = one_field();
  Rng rng(71);
  for (int i = 0; i < 10; ++i) {
    Point c = random_point(rng, 0.2, 5.0);
    double R = rng.log_uniform(0.3, 4.0);
    double v = ball_integral(one, c, R, spec);
    CHECK(v == doctest::Approx(kBallVolume * R * R * R * R).epsilon(1e-10));
  }
}

TEST_CASE("homogeneous integrand scales exactly across radii") {
  QuadratureSpec spec;
  ScalarField g4 = ScalarField::from_lambda(
      "gauge4", [](const Point& p) { return gauge4(p); });
  double base = ball_integral(g4, {}, 1.0, spec);
  for (double R : {0.5, 2.0, 10.0}) {
    double v = ball_integral(g4, {}, R, spec);
    CHECK(v == doctest::Approx(base * std::pow(R, 8.0)).epsilon(1e-12));
  }
}

TEST_CASE("sphere integrals scale like R^3 and match the coarea slice") {
  QuadratureSpec spec;
  ScalarField one = one_field();
  double s1 = sphere_integral(one, 1.0, spec);
  CHECK(s1 == doctest::Approx(kSigmaUnit).epsilon(1e-10));
  CHECK(sphere_integral(one, 3.0, spec) ==
        doctest::Approx(27.0 * s1).epsilon(1e-12));
  CHECK(horizontal_sphere_integral(one, 2.0, spec) ==
        doctest::Approx(8.0 * kHorizontalUnit).epsilon(1e-10));
}

TEST_CASE("annulus routes agree on smooth integrands") {
  QuadratureSpec spec;
  ScalarField f = ScalarField::from_lambda("smooth", [](const Point& p) {
    return std::exp(-0.25 * gauge4(p)) + p.x * p.x;
  });
  double a = annulus_integral(f, 0.5, 2.0, spec, AnnulusRoute::radial_shells);
  double b = annulus_integral(f, 0.5, 2.0, spec, AnnulusRoute::ball_difference);
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
}

TEST_CASE("scale-critical annulus mass is logarithmic") {
  QuadratureSpec spec;
  ScalarField rho_m4 = ScalarField::from_lambda("rho^-4", [](const Point& p) {
    return 1.0 / gauge4(p);
  });
  for (double R : {2.0, 8.0, 64.0}) {
    double v = annulus_integral(rho_m4, 1.0, R, spec);
    CHECK(v == doctest::Approx(kPolarUnit * std::log(R)).epsilon(1e-10));
  }
}

TEST_CASE("integrable point singularities resolve to closed forms") {
  QuadratureSpec spec;
  // rho^-2 over the unit ball: polar integration gives pi^2 exactly.
  ScalarField k2 =
      ScalarField::from_lambda("rho^-2",
                               [](const Point& p) {
                                 return 1.0 / std::sqrt(gauge4(p));
                               })
          .with_singularity({}, 2.0);
  double v = ball_integral(k2, {}, 1.0, spec);
  CHECK(v == doctest::Approx(kPi * kPi).epsilon(1e-8));

  // Same field, ball centered elsewhere but still containing the origin.
  double v2 = ball_integral(k2, {0.2, 0.1, 0.0}, 1.0, spec);
  CHECK(std::isfinite(v2));
  CHECK(v2 > 0.0);
}

TEST_CASE("critical-power singularity is detected as divergent") {
  QuadratureSpec spec;
  ScalarField k4 =
      ScalarField::from_lambda("rho^-4",
                               [](const Point& p) { return 1.0 / gauge4(p); })
          .with_singularity({}, 4.0);
  CHECK_THROWS_AS(ball_integral(k4, {}, 1.0, spec),
                  NonIntegrableSingularityError);
  QuadratureSpec capped = spec;
  capped.cap_divergent = true;
  double v = ball_integral(k4, {}, 1.0, capped);
  CHECK(std::isfinite(v));
  CHECK(v > 100.0);  // grows linearly with the allowed depth
  QuadratureSpec deeper = capped;
  deeper.radial_depth = 2 * capped.radial_depth;
  CHECK(ball_integral(k4, {}, 1.0, deeper) > 1.5 * v);
}

TEST_CASE("shell refinement reports an exhausted budget") {
  QuadratureSpec spec;
  spec.radial_depth = 6;
  spec.rel_tol = 1e-13;
  // Non-homogeneous singular integrand: no closed-form tail is available,
  // so six dyadic levels cannot reach the requested tolerance.
  ScalarField f =
      ScalarField::from_lambda("slow",
                               [](const Point& p) {
                                 double r = gauge(p);
                                 return (1.0 + 0.2 * std::sin(5.0 * r)) /
                                        (r * r * r);
                               })
          .with_singularity({}, std::nullopt);
  CHECK_THROWS_AS(ball_integral(f, {}, 1.0, spec), QuadratureBudgetError);
}

TEST_CASE("Monte Carlo agrees with the product chart") {
  QuadratureSpec spec;
  spec.mc_samples = 200000;
  ScalarField one = one_field();
  Domain ball = Domain::gauge_ball({}, 1.0);
  McEstimate mc = mc_integral(ball, one, spec);
  CHECK(mc.samples == 200000);
  CHECK(mc.std_error > 0.0);
  CHECK(std::abs(mc.value - kBallVolume) <= 3.0 * mc.std_error);
  // Determinism: same seed, same estimate.
  McEstimate mc2 = mc_integral(ball, one, spec);
  CHECK(mc.value == mc2.value);
}

TEST_CASE("half-space fractions: symmetric planes split exactly in half") {
  QuadratureSpec spec;
  Rng rng(73);
  for (int i = 0; i < 6; ++i) {
    Point c = random_point(rng, 0.3, 3.0);
    double r = rng.log_uniform(0.4, 2.0);
    // x/y planes through the center cancel node-by-node; the twisted t-plane
    // can leave a last-bit residue at some centers.
    CHECK(halfspace_ball_fraction(0, c.x, true, c, r, spec) == 0.5);
    CHECK(halfspace_ball_fraction(1, c.y, false, c, r, spec) == 0.5);
    CHECK(halfspace_ball_fraction(2, c.t, true, c, r, spec) ==
          doctest::Approx(0.5).epsilon(1e-13));
  }
  // Off-center plane: the two sides still sum to the full ball.
  Point c{1.0, -0.5, 2.0};
  ScalarField one = one_field();
  double vp = clipped_ball_integral(one, 0, c.x + 0.3, true, c, 1.0, spec);
  double vn = clipped_ball_integral(one, 0, c.x + 0.3, false, c, 1.0, spec);
  CHECK(vp + vn == doctest::Approx(kBallVolume).epsilon(1e-9));
  CHECK(vp < vn);
}

TEST_CASE("box integration is exact for polynomials") {
  QuadratureSpec spec;
  Domain box = Domain::box({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
  ScalarField one = one_field();
  CHECK(domain_integral(box, one, spec) == doctest::Approx(1.0).epsilon(1e-13));
  ScalarField x = make_polynomial("x", std::vector<MonomialTerm>{{1, 1, 0, 0}});
  CHECK(domain_integral(box, x, spec) == doctest::Approx(0.5).epsilon(1e-13));
  ScalarField xyt = make_polynomial(
      "x2yt", std::vector<MonomialTerm>{{6, 2, 1, 1}});
  CHECK(domain_integral(box, xyt, spec) ==
        doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("box with an interior singularity falls back to shells") {
  QuadratureSpec spec;
  Domain box = Domain::box({-1.0, -1.0, -1.0}, {2.0, 2.0, 2.0});
  ScalarField k2 =
      ScalarField::from_lambda("rho^-2",
                               [](const Point& p) {
                                 return 1.0 / std::sqrt(gauge4(p));
                               })
          .with_singularity({}, 2.0);
  double v = domain_integral(box, k2, spec);
  // Must exceed the closed-form mass of the inscribed unit ball.
  CHECK(v > kPi * kPi);
  CHECK(std::isfinite(v));
}

TEST_CASE("degenerate regions are rejected") {
  QuadratureSpec spec;
  ScalarField one = one_field();
  CHECK_THROWS_AS(ball_integral(one, {}, 0.0, spec), ZeroVolumeRegionError);
  CHECK_THROWS_AS(Domain::gauge_annulus(2.0, 1.0), ConfigError);
  CHECK_THROWS_AS(Domain::box({0, 0, 0}, {1.0, -1.0, 1.0}), ConfigError);
}

TEST_CASE("pairwise summation") {
  std::vector<double> ones(100000, 1.0);
  CHECK(pairwise_sum(ones) == 100000.0);
  Rng rng(79);
  std::vector<double> v(5000);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  double naive = std::accumulate(v.begin(), v.end(), 0.0);
  CHECK(pairwise_sum(v) == doctest::Approx(naive).epsilon(1e-12));
}

TEST_CASE("refined spec scales the budgets") {
  QuadratureSpec spec;
  spec.resolution = 10;
  spec.mc_samples = 1000;
  QuadratureSpec r = spec.refined(2);
  CHECK(r.resolution == 20);
  CHECK(r.mc_samples == 4000);
  CHECK(r.seed == spec.seed);
}

TEST_SUITE_END();
