#include <doctest.h>

#include <cmath>

#include "h1/group.hpp"
#include "h1/rng.hpp"

using namespace h1;

TEST_SUITE_BEGIN("group");

TEST_CASE("group law worked example") {
  Point p = mul({1, 0, 0}, {0, 1, 0});
  CHECK(p.x == 1.0);
  CHECK(p.y == 1.0);
  CHECK(p.t == -2.0);  // t' + 2(x_q y_p - x_p y_q) with p=(1,0,0), q=(0,1,0)
}

TEST_CASE("identity and inverse are exact") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Point p = random_point(rng, 0.1, 10.0);
    Point e = mul(p, inv(p));
    CHECK(e.x == 0.0);
    CHECK(e.y == 0.0);
    CHECK(e.t == 0.0);  // the twist cancels algebraically, not just numerically
    Point q = mul(identity(), p);
    CHECK(q.x == p.x);
    CHECK(q.y == p.y);
    CHECK(q.t == p.t);
  }
}

TEST_CASE("associativity to round-off") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Point a = random_point(rng, 0.2, 5.0);
    Point b = random_point(rng, 0.2, 5.0);
    Point c = random_point(rng, 0.2, 5.0);
    Point l = mul(mul(a, b), c);
    Point r = mul(a, mul(b, c));
    double scale = 1.0 + std::abs(l.t);
    CHECK(std::abs(l.x - r.x) <= 1e-14 * scale);
    CHECK(std::abs(l.y - r.y) <= 1e-14 * scale);
    CHECK(std::abs(l.t - r.t) <= 1e-13 * scale);
  }
}

TEST_CASE("dilations are automorphisms and scale the gauge") {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    Point p = random_point(rng, 0.2, 5.0);
    Point q = random_point(rng, 0.2, 5.0);
    double lam = rng.log_uniform(0.1, 10.0);
    Point l = dilate(lam, mul(p, q));
    Point r = mul(dilate(lam, p), dilate(lam, q));
    CHECK(std::abs(l.x - r.x) <= 1e-13 * (1.0 + std::abs(l.x)));
    CHECK(std::abs(l.t - r.t) <= 1e-12 * (1.0 + std::abs(l.t)));
    CHECK(gauge(dilate(lam, p)) ==
          doctest::Approx(lam * gauge(p)).epsilon(1e-13));
  }
}

TEST_CASE("gauge reference values") {
  CHECK(gauge(Point{1, 0, 0}) == 1.0);
  CHECK(gauge(Point{0, 1, 0}) == 1.0);
  CHECK(gauge(Point{0, 0, 1}) == 1.0);
  CHECK(gauge4(Point{1, 1, 2}) == 8.0);
  CHECK(gauge(Point{0, 0, -4}) == 2.0);
  CHECK(kHomogeneousDim == 4);
}

TEST_CASE("gauge distance satisfies the triangle inequality") {
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    Point p = random_point(rng, 0.05, 8.0);
    Point q = random_point(rng, 0.05, 8.0);
    Point r = random_point(rng, 0.05, 8.0);
    double pq = gauge_dist(p, q);
    double pr = gauge_dist(p, r);
    double rq = gauge_dist(r, q);
    CHECK(pq <= (pr + rq) * (1.0 + 1e-12));
    CHECK(gauge_dist(p, p) == 0.0);
    CHECK(gauge_dist(p, q) == doctest::Approx(gauge_dist(q, p)).epsilon(1e-12));
  }
}

TEST_CASE("left invariance of the gauge distance") {
  Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    Point g = random_point(rng, 0.2, 4.0);
    Point p = random_point(rng, 0.2, 4.0);
    Point q = random_point(rng, 0.2, 4.0);
    CHECK(gauge_dist(mul(g, p), mul(g, q)) ==
          doctest::Approx(gauge_dist(p, q)).epsilon(1e-11));
  }
}

TEST_CASE("coordinate flows along the frame directions") {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    Point p = random_point(rng, 0.2, 4.0);
    double s = rng.uniform(-2.0, 2.0);
    Point fx = mul(p, {s, 0, 0});
    CHECK(fx.x == p.x + s);
    CHECK(fx.y == p.y);
    CHECK(fx.t == doctest::Approx(p.t + 2 * s * p.y).epsilon(1e-14));
    Point fy = mul(p, {0, s, 0});
    CHECK(fy.x == p.x);
    CHECK(fy.y == p.y + s);
    CHECK(fy.t == doctest::Approx(p.t - 2 * s * p.x).epsilon(1e-14));
    Point ft = mul(p, {0, 0, s});
    CHECK(ft.t == p.t + s);
  }
}

TEST_SUITE_END();
