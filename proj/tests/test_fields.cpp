#include <doctest.h>

#include <cmath>

#include "h1/calculus.hpp"
#include "h1/errors.hpp"
#include "h1/fields.hpp"
#include "h1/quadrature.hpp"
#include "h1/rng.hpp"

using namespace h1;

namespace {
constexpr double kPi = 3.14159265358979323846;
// Lebesgue integral of (1 - rho^2)^4 over the unit gauge ball.
constexpr double kUnitProfile = kPi * kPi / 30.0;
}  // namespace

TEST_SUITE_BEGIN("fields");

TEST_CASE("closed-form reference values") {
  ScalarField lg = make_closed_form(ClosedFormKind::log_gauge);
  CHECK(lg({1, 0, 0}) == 0.0);
  // rho(0,0,4) = (4^2)^{1/4} = 2.
  CHECK(lg({0, 0, 4}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  ScalarField slg = make_closed_form(ClosedFormKind::sublap_log_gauge);
  CHECK(slg({1, 1, 2}) == doctest::Approx(0.5).epsilon(1e-14));

  ScalarField sz = make_closed_form(ClosedFormKind::szego_numerator);
  CHECK(sz({1, 0, 2}) == doctest::Approx(3.0 / 25.0).epsilon(1e-14));

  ScalarField pw = make_closed_form(ClosedFormKind::power_gauge_log,
                                    {.kappa = 2.0});
  CHECK(pw({0, 0, 4}) == doctest::Approx(-2.0 * std::log(2.0)).epsilon(1e-14));

  ScalarField mono = make_closed_form(
      ClosedFormKind::coordinate_monomial,
      {.scale = 3.0, .px = 1, .py = 2, .pt = 1});
  CHECK(mono({2, -1, 5}) == 30.0);
}

TEST_CASE("unknown kind is rejected") {
  CHECK_THROWS_AS(make_closed_form(static_cast<ClosedFormKind>(99)),
                  UnknownKindError);
}

TEST_CASE("singularity bookkeeping") {
  ScalarField lg = make_closed_form(ClosedFormKind::log_gauge);
  CHECK(lg.singular_point().has_value());
  CHECK_THROWS_AS(lg({0, 0, 0}), SingularPointError);

  ScalarField sz = make_closed_form(ClosedFormKind::szego_numerator);
  CHECK(sz.homogeneity_at_singularity() == 4.0);

  Point g{1.0, 0.5, -2.0};
  ScalarField shifted = lg.left_translated(g);
  Point s = *shifted.singular_point();
  Point expect = inv(g);
  CHECK(s.x == doctest::Approx(expect.x).epsilon(1e-15));
  CHECK(s.t == doctest::Approx(expect.t).epsilon(1e-15));
  CHECK_THROWS_AS(shifted(expect), SingularPointError);
  // Shifted field evaluates the base field at g . p.
  Point p{0.4, 0.2, 1.0};
  CHECK(shifted(p) == doctest::Approx(lg(mul(g, p))).epsilon(1e-14));
}

TEST_CASE("field algebra keeps analytic structure") {
  ScalarField lg = make_closed_form(ClosedFormKind::log_gauge);
  CHECK(lg.has_analytic());
  ScalarField d = lg.scaled(2.0);
  CHECK(d.has_analytic());
  CHECK(d({2, 0, 0}) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  ScalarField s = lg + lg;
  CHECK(s.has_analytic());
  CHECK(s({2, 0, 0}) == doctest::Approx(d({2, 0, 0})).epsilon(1e-14));
  ScalarField lam = ScalarField::from_lambda(
      "plain", [](const Point& p) { return p.x; });
  CHECK_FALSE((lg + lam).has_analytic());
}

TEST_CASE("bump density: mass calibration and support") {
  QuadratureSpec spec;
  auto always = [](const Point&) { return true; };
  // The profile is smooth in the radial coordinate but has a |t| kink in
  // Cartesian charts, so integrate it with radial shells about the center.
  for (double eps : {0.5, 1.0, 2.0}) {
    BumpDensity b = make_bump({}, eps, 1.0);
    CHECK(b.amplitude ==
          doctest::Approx(1.0 / (std::pow(eps, 4.0) * kUnitProfile))
              .epsilon(1e-7));
    double m = singular_shell_integral(b.density, {}, eps, always, eps, spec);
    CHECK(m == doctest::Approx(1.0).epsilon(1e-8));
    // Vanishes outside the support ball.
    CHECK(b.density(dilate(1.01 * eps, {1, 0, 0})) == 0.0);
  }
  BumpDensity shifted = make_bump({1, -1, 2}, 0.5, 3.0);
  double m = singular_shell_integral(shifted.density, {1, -1, 2}, 0.5, always,
                                     0.5, spec);
  CHECK(m == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("potential at the bump center has the exact profile average") {
  QuadratureSpec spec;
  BumpDensity b = make_bump({}, 1.0, 1.0);
  // <log(1/rho)> over the unit-bump profile is exactly 29/40.
  double v0 = log_kernel_quad(b, {0, 0, 0}, LogKernel::plain, spec);
  CHECK(v0 == doctest::Approx(0.725).epsilon(1e-7));

  // Scaling: center value shifts by log(1/eps).
  BumpDensity bh = make_bump({}, 0.5, 1.0);
  double vh = log_kernel_quad(bh, {0, 0, 0}, LogKernel::plain, spec);
  CHECK(vh == doctest::Approx(std::log(2.0) + 0.725).epsilon(1e-7));
}

TEST_CASE("ratio kernel differs by the fixed reference shift") {
  QuadratureSpec spec;
  BumpDensity b = make_bump({}, 0.5, 1.0);
  Point far{2.0, 0.5, 1.0};
  double plain = log_kernel_quad(b, far, LogKernel::plain, spec);
  double ratio = log_kernel_quad(b, far, LogKernel::ratio, spec);
  // shift = int log(rho) g = log(eps) - 0.725.
  CHECK(ratio - plain ==
        doctest::Approx(std::log(0.5) - 0.725).epsilon(1e-6));
}

TEST_CASE("potential is left-equivariant") {
  QuadratureSpec spec;
  Point c{1.0, -0.5, 2.0};
  ScalarField v0 = log_potential(make_bump({}, 0.5, 1.0), LogKernel::plain, spec);
  ScalarField vc = log_potential(make_bump(c, 0.5, 1.0), LogKernel::plain, spec);
  Rng rng(83);
  for (int i = 0; i < 8; ++i) {
    Point q = random_point(rng, 0.8, 4.0);
    Point x = mul(c, q);  // same relative position to the shifted center
    CHECK(vc(x) == doctest::Approx(v0(q)).epsilon(1e-9));
  }
}

TEST_CASE("near and far branches join continuously") {
  QuadratureSpec spec;
  BumpDensity b = make_bump({}, 1.0, 1.0);
  // Points just inside and outside the branch switch at gauge ~ 1.02.
  Point inside = dilate(1.015, {1, 0, 0});
  Point outside = dilate(1.025, {1, 0, 0});
  double vi = log_kernel_quad(b, inside, LogKernel::plain, spec);
  double vo = log_kernel_quad(b, outside, LogKernel::plain, spec);
  CHECK(std::abs(vi - vo) <= 2e-2);
  // Far from the support the plain kernel approaches log(1/rho); the ratio
  // kernel would sit a whole log(1/eps)-sized shift away.
  Point far{0.0, 0.0, 4.0};  // gauge 2
  double vf = log_kernel_quad(make_bump({}, 0.1, 1.0), far, LogKernel::plain,
                              spec);
  CHECK(vf == doctest::Approx(-std::log(2.0)).epsilon(2e-2));
}

TEST_CASE("memoized wrapper is transparent and stable") {
  QuadratureSpec spec;
  ScalarField v = log_potential(make_bump({}, 0.5, 1.0), LogKernel::plain, spec);
  ScalarField m = memoized(v);
  Point p{1.5, 0.2, -0.4};
  double a = m(p);
  CHECK(a == v(p));
  CHECK(m(p) == a);  // cached path returns the identical value
  ScalarField lg = memoized(make_closed_form(ClosedFormKind::log_gauge));
  CHECK_THROWS_AS(lg({0, 0, 0}), SingularPointError);
}

TEST_CASE("polynomial factory matches direct evaluation") {
  ScalarField f = make_polynomial(
      "mix", std::vector<MonomialTerm>{{1.5, 2, 0, 0}, {-2.0, 0, 1, 1}});
  Point p{2.0, 3.0, -1.0};
  CHECK(f(p) == doctest::Approx(1.5 * 4.0 + 6.0).epsilon(1e-15));
  CHECK(f.has_analytic());
  // XX(1.5 x^2 - 2 y t) = 3,  YY(.) = 8x.
  FDScheme fd;
  CHECK(sublaplacian(f, p, fd, DerivMethod::analytic_only) ==
        doctest::Approx(3.0 + 8.0 * p.x).epsilon(1e-13));
}

TEST_SUITE_END();
