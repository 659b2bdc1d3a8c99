#include "h1/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "h1/calculus.hpp"
#include "h1/errors.hpp"
#include "h1/fields.hpp"
#include "h1/group.hpp"
#include "h1/isoperimetry.hpp"
#include "h1/quadrature.hpp"
#include "h1/rng.hpp"
#include "h1/weights.hpp"

namespace h1::cli {

namespace {

// High-precision quadrature values of the two unit-sphere surface masses
// (fixed reference constants; the tests pin the charts against them too).
constexpr double kSigmaUnitSphere = 12.372750371945765171;
constexpr double kTwoPiSq = 19.739208802178717;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double rel_err(double c, double r) {
  return std::abs(c - r) / std::max(std::abs(r), 1e-12);
}

std::string pstr(const Point& p) {
  char b[96];
  std::snprintf(b, sizeof(b), "x=%.6g y=%.6g t=%.6g", p.x, p.y, p.t);
  return b;
}

std::string fmt(const char* f, double a) {
  char b[96];
  std::snprintf(b, sizeof(b), f, a);
  return b;
}

ReportRow make_row(std::string inputs, double computed, double reference,
                   Provenance prov, bool pass, double err) {
  ReportRow r;
  r.inputs = std::move(inputs);
  r.computed = computed;
  r.reference = reference;
  r.provenance = prov;
  r.pass = pass;
  r.error = err;
  return r;
}

ReportRow tol_row(std::string inputs, double computed, double reference,
                  Provenance prov, double tol) {
  double e = rel_err(computed, reference);
  return make_row(std::move(inputs), computed, reference, prov,
                  std::isfinite(computed) && e <= tol, e);
}

// Runs one row computation, timing it; unless strict, module errors are
// recorded as a failed row instead of aborting the report.
void push_row(std::vector<ReportRow>& rows, bool strict, std::string id,
              const std::function<ReportRow()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };
  try {
    ReportRow r = fn();
    r.id = std::move(id);
    r.runtime_ms = elapsed();
    rows.push_back(std::move(r));
  } catch (const std::exception& e) {
    if (strict) throw;
    ReportRow r;
    r.id = std::move(id);
    r.inputs = std::string("error: ") + e.what();
    r.computed = kNan;
    r.error = kNan;
    r.pass = false;
    r.runtime_ms = elapsed();
    rows.push_back(std::move(r));
  }
}

// Same idea for a computation that appends several rows at once.
void guard_group(std::vector<ReportRow>& rows, bool strict, std::string id,
                 const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    if (strict) throw;
    ReportRow r;
    r.id = std::move(id);
    r.inputs = std::string("error: ") + e.what();
    r.computed = kNan;
    r.error = kNan;
    r.pass = false;
    rows.push_back(std::move(r));
  }
}

double ls_slope(std::span<const double> xs, std::span<const double> ys) {
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Sample points for the kernel identities, kept away from the center axis
// and from the zero set of t^2 - |z|^4 so reference magnitudes stay O(1).
std::vector<Point> kernel_points(std::uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<Point> out;
  out.reserve(n);
  while (static_cast<int>(out.size()) < n) {
    Point p = random_point(rng, 0.5, 5.0);
    double r2 = gauge(p) * gauge(p);
    double z2 = p.x * p.x + p.y * p.y;
    if (z2 / r2 < 0.15) continue;
    if (std::abs(std::abs(p.t) - z2) / r2 < 0.1) continue;
    out.push_back(p);
  }
  return out;
}

void verify_kernels_rows(const RunConfig& cfg, std::vector<ReportRow>& rows) {
  ScalarField lg = make_closed_form(ClosedFormKind::log_gauge);
  ScalarField lap_lg = make_closed_form(ClosedFormKind::sublap_log_gauge);
  ScalarField inv_sq =
      make_closed_form(ClosedFormKind::sublap_log_gauge, {.scale = 0.5});
  ScalarField sz4 =
      make_closed_form(ClosedFormKind::szego_numerator, {.scale = 4.0});
  ScalarField sz16 =
      make_closed_form(ClosedFormKind::szego_numerator, {.scale = 16.0});
  FDScheme fd;
  fd.order = 4;

  auto pts = kernel_points(cfg.seed, cfg.points);
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const Point p = pts[i];
    char id[64];
    std::snprintf(id, sizeof(id), "sublap-log-gauge/p%02d", i);
    push_row(rows, cfg.strict, id, [&] {
      double c = sublaplacian(lg, p, fd, DerivMethod::finite_difference);
      return tol_row(pstr(p), c, lap_lg(p), Provenance::paper, 1e-6);
    });
    std::snprintf(id, sizeof(id), "sublap-inverse-square/p%02d", i);
    push_row(rows, cfg.strict, id, [&] {
      double c = sublaplacian(inv_sq, p, fd, DerivMethod::finite_difference);
      return tol_row(pstr(p), c, sz4(p), Provenance::paper, 1e-6);
    });
    std::snprintf(id, sizeof(id), "fourth-order-log-gauge/p%02d", i);
    push_row(rows, cfg.strict, id, [&] {
      double c = paneitz_prime(lg, p, fd, DerivMethod::analytic_only);
      return tol_row(pstr(p), c, sz16(p), Provenance::derived_oracle, 1e-10);
    });
  }

  push_row(rows, cfg.strict, "ladder-exact/sublap", [&] {
    auto d = lg.expr()->sublap() - *lap_lg.expr();
    bool z = d.is_zero();
    return make_row("symbolic", z ? 0.0 : 1.0, 0.0, Provenance::derived_oracle,
                    z, z ? 0.0 : 1.0);
  });
  push_row(rows, cfg.strict, "ladder-exact/fourth-order", [&] {
    ScalarField sz = make_closed_form(ClosedFormKind::szego_numerator);
    auto d = lg.expr()->sublap().sublap().scaled(2.0) - sz.expr()->scaled(16.0);
    bool z = d.is_zero();
    return make_row("symbolic", z ? 0.0 : 1.0, 0.0, Provenance::derived_oracle,
                    z, z ? 0.0 : 1.0);
  });
}

void pluriharmonic_rows(const RunConfig& cfg, std::vector<ReportRow>& rows) {
  struct Fam {
    const char* tag;
    ScalarField f;
  };
  auto poly = [](std::string name, std::vector<MonomialTerm> t) {
    return make_polynomial(std::move(name), t);
  };
  std::vector<Fam> fam;
  fam.push_back({"x", poly("x", {{1, 1, 0, 0}})});
  fam.push_back({"y", poly("y", {{1, 0, 1, 0}})});
  fam.push_back({"t", poly("t", {{1, 0, 0, 1}})});
  fam.push_back({"x2-y2", poly("x2-y2", {{1, 2, 0, 0}, {-1, 0, 2, 0}})});
  fam.push_back({"2xy", poly("2xy", {{2, 1, 1, 0}})});
  fam.push_back({"harmonic-cubic",
                 poly("xt-x2y-y3", {{1, 1, 0, 1}, {-1, 2, 1, 0}, {-1, 0, 3, 0}})});
  fam.push_back({"log-gauge", make_closed_form(ClosedFormKind::log_gauge)});

  Rng rng(cfg.seed ^ 0xA5A5ull);
  std::vector<Point> pts;
  for (int i = 0; i < cfg.points; ++i) pts.push_back(random_point(rng, 0.3, 3.0));

  FDScheme fd;
  for (const Fam& f : fam) {
    push_row(rows, cfg.strict, std::string("pluriharmonic/") + f.tag, [&] {
      double worst = 0.0;
      for (const Point& p : pts)
        worst = std::max(worst, pluriharmonic_residual_normalized(
                                    f.f, p, fd, DerivMethod::analytic_only));
      char in[64];
      std::snprintf(in, sizeof(in), "points=%zu", pts.size());
      return make_row(in, worst, 0.0, Provenance::derived_oracle, worst <= 1e-10,
                      worst);
    });
  }
  push_row(rows, cfg.strict, "pluriharmonic-control/t2", [&] {
    ScalarField t2 = make_polynomial("t2", std::vector<MonomialTerm>{{1, 0, 0, 2}});
    double best = std::numeric_limits<double>::infinity();
    for (const Point& p : pts)
      best = std::min(best, pluriharmonic_residual_normalized(
                                t2, p, fd, DerivMethod::analytic_only));
    char in[64];
    std::snprintf(in, sizeof(in), "points=%zu", pts.size());
    return make_row(in, best, 0.1, Provenance::derived_oracle, best >= 0.1,
                    std::max(0.0, 0.1 - best));
  });
}

void webster_rows(const RunConfig& cfg, std::vector<ReportRow>& rows) {
  Rng rng(cfg.seed ^ 0x577ull);
  FDScheme fd4;
  fd4.order = 4;
  FDScheme fd;
  const int per_c2 = 5;
  for (double c2 : cfg.c2_values) {
    for (int i = 0; i < per_c2; ++i) {
      Point p{};
      for (;;) {
        p = random_point(rng, 0.6, 2.0);
        double z2 = p.x * p.x + p.y * p.y;
        if (z2 / (gauge(p) * gauge(p)) >= 0.2 && std::abs(c2 * p.t) <= 3.0)
          break;
      }
      double z2 = p.x * p.x + p.y * p.y;
      char id[80];
      std::snprintf(id, sizeof(id), "exp-conformal-sublap/c2=%g/p%02d", c2, i);
      push_row(rows, cfg.strict, id, [&] {
        ScalarField ec = ScalarField::from_lambda(
            "exp-c2-t", [c2](const Point& q) { return std::exp(c2 * q.t); });
        double c = -sublaplacian(ec, p, fd4, DerivMethod::finite_difference);
        double ref = -4.0 * c2 * c2 * z2 * std::exp(c2 * p.t);
        return tol_row(pstr(p), c, ref, Provenance::paper, 1e-6);
      });
      std::snprintf(id, sizeof(id), "webster-linear-t/c2=%g/p%02d", c2, i);
      push_row(rows, cfg.strict, id, [&] {
        ScalarField u = make_closed_form(ClosedFormKind::linear_t, {.c2 = c2});
        double c = webster_scalar(u, p, fd, DerivMethod::prefer_analytic);
        double ref = -4.0 * c2 * c2 * z2 * std::exp(-c2 * p.t);
        return tol_row(pstr(p), c, ref, Provenance::paper, 1e-12);
      });
    }
  }
  push_row(rows, cfg.strict, "webster-linear-t/u=t/origin-shift", [&] {
    ScalarField u = make_closed_form(ClosedFormKind::linear_t, {.c2 = 1.0});
    double c = webster_scalar(u, {1.0, 1.0, 0.0}, fd, DerivMethod::prefer_analytic);
    return tol_row("x=1 y=1 t=0", c, -8.0, Provenance::paper, 1e-12);
  });
}

void decay_rows(const RunConfig& cfg, std::vector<ReportRow>& rows) {
  BumpDensity bump = make_bump({}, cfg.bump_epsilon, 1.0);
  QuadratureSpec pot;
  pot.resolution = cfg.resolution;
  pot.seed = cfg.seed;
  QuadratureSpec pot2 = pot.refined(2);
  ScalarField v = memoized(log_potential(bump, LogKernel::plain, pot));
  ScalarField v2 = memoized(log_potential(bump, LogKernel::plain, pot2));

  int sres = std::max(6, cfg.resolution / 2);
  QuadratureSpec sph;
  sph.resolution = sres;
  QuadratureSpec sph2;
  sph2.resolution = 2 * sres;

  FDScheme fd;
  ScalarField one =
      ScalarField::from_lambda("one", [](const Point&) { return 1.0; });
  auto grad_mag = [&fd](const ScalarField& f) {
    return ScalarField::from_lambda("grad-mag", [f, fd](const Point& q) {
      return std::sqrt(
          horizontal_gradient_sq(f, q, fd, DerivMethod::finite_difference));
    });
  };
  auto lap_mag = [&fd](const ScalarField& f) {
    return ScalarField::from_lambda("sublap-mag", [f, fd](const Point& q) {
      return std::abs(sublaplacian(f, q, fd, DerivMethod::finite_difference));
    });
  };
  auto abs_val = [](const ScalarField& f) {
    return ScalarField::from_lambda(
        "abs-val", [f](const Point& q) { return std::abs(f(q)); });
  };
  auto avg = [&one](const ScalarField& f, double r, const QuadratureSpec& s) {
    return sphere_integral(f, r, s) / sphere_integral(one, r, s);
  };

  std::vector<double> lnr, ln_grad, ln_lap;
  for (double r : cfg.decay_radii) {
    char id[64];
    std::snprintf(id, sizeof(id), "decay-grad-avg/r=%g", r);
    push_row(rows, cfg.strict, id, [&] {
      double base = avg(grad_mag(v), r, sph);
      double fine = avg(grad_mag(v2), r, sph2);
      lnr.push_back(std::log(r));
      ln_grad.push_back(std::log(base));
      return tol_row(fmt("r=%g", r), base, fine, Provenance::trivial, 0.01);
    });
    std::snprintf(id, sizeof(id), "decay-sublap-avg/r=%g", r);
    push_row(rows, cfg.strict, id, [&] {
      double base = avg(lap_mag(v), r, sph);
      double fine = avg(lap_mag(v2), r, sph2);
      ln_lap.push_back(std::log(base));
      return tol_row(fmt("r=%g", r), base, fine, Provenance::trivial, 0.01);
    });
    std::snprintf(id, sizeof(id), "decay-value-avg/r=%g", r);
    push_row(rows, cfg.strict, id, [&] {
      double base = avg(abs_val(v), r, sph);
      double fine = avg(abs_val(v2), r, sph2);
      return tol_row(fmt("r=%g", r), base, fine, Provenance::trivial, 0.01);
    });
  }

  push_row(rows, cfg.strict, "decay-grad-slope", [&] {
    if (lnr.size() != cfg.decay_radii.size() || lnr.size() < 2)
      throw QuadratureBudgetError("gradient averages incomplete; no slope fit");
    double s = ls_slope(lnr, ln_grad);
    return make_row(fmt("radii=%g..", cfg.decay_radii.front()) +
                        fmt("%g", cfg.decay_radii.back()),
                    s, -1.0, Provenance::paper, s >= -1.15 && s <= -0.85,
                    std::abs(s + 1.0));
  });
  push_row(rows, cfg.strict, "decay-sublap-slope", [&] {
    if (ln_lap.size() != cfg.decay_radii.size() || ln_lap.size() < 2)
      throw QuadratureBudgetError("curvature averages incomplete; no slope fit");
    double s = ls_slope(lnr, ln_lap);
    return make_row(fmt("radii=%g..", cfg.decay_radii.front()) +
                        fmt("%g", cfg.decay_radii.back()),
                    s, -2.0, Provenance::paper, s >= -2.2 && s <= -1.8,
                    std::abs(s + 2.0));
  });
}

void a1_rows(const RunConfig& cfg, std::vector<ReportRow>& rows) {
  for (double kappa : cfg.kappas) {
    bool divergent = kappa >= 4.0;
    int stages = divergent ? std::max(cfg.a1_stages, 3) : cfg.a1_stages;
    char gid[64];
    std::snprintf(gid, sizeof(gid), "a1/kappa=%g", kappa);
    guard_group(rows, cfg.strict, gid, [&] {
      QuadratureSpec base;
      base.resolution = cfg.resolution;
      base.seed = cfg.seed;
      auto study = a1_refinement_study(kappa, stages, cfg.seed, base);
      for (int s = 0; s < static_cast<int>(study.size()); ++s) {
        const A1Stage& st = study[s];
        char id[80], in[96];
        std::snprintf(id, sizeof(id), "a1/kappa=%g/stage=%d", kappa, s);
        std::snprintf(in, sizeof(in), "samples=%d grid=%d depth=%d",
                      st.sample_count, st.grid_count, st.radial_depth);
        double est = st.estimate;
        rows.push_back(ReportRow{id, in, est, 1.0, Provenance::trivial,
                                 est >= 1.0 - 1e-9, std::max(0.0, 1.0 - est),
                                 0.0});
      }
      if (!divergent) {
        double e1 = study[study.size() - 2].estimate;
        double e2 = study.back().estimate;
        double drift = std::abs(e2 / e1 - 1.0);
        char id[80];
        std::snprintf(id, sizeof(id), "a1-stable/kappa=%g", kappa);
        rows.push_back(ReportRow{id, fmt("stages=%g", double(stages)), drift,
                                 0.0, Provenance::derived_oracle, drift <= 0.1,
                                 drift, 0.0});
      } else {
        double worst = std::numeric_limits<double>::infinity();
        for (size_t s = 1; s < study.size(); ++s)
          worst = std::min(worst, study[s].estimate / study[s - 1].estimate);
        char id[80];
        std::snprintf(id, sizeof(id), "a1-divergent/kappa=%g", kappa);
        rows.push_back(ReportRow{id, fmt("stages=%g", double(stages)), worst,
                                 2.0, Provenance::derived_oracle, worst >= 2.0,
                                 std::max(0.0, 2.0 - worst), 0.0});
      }
    });
  }
}

void isoperimetric_rows(const RunConfig& cfg, std::vector<ReportRow>& rows) {
  QuadratureSpec spec;
  spec.resolution = cfg.resolution;
  spec.seed = cfg.seed;
  QuadratureSpec fine = spec.refined(2);

  auto domains = standard_sweep_domains();
  for (double kappa : {0.0, 1.0, 2.0, 3.0}) {
    Weight w = power_weight(kappa);
    double qmax = 0.0, qmax_fine = 0.0;
    bool all_ok = true;
    for (size_t d = 0; d < domains.size(); ++d) {
      char id[96];
      std::snprintf(id, sizeof(id), "iso/kappa=%g/domain=%02zu", kappa, d);
      push_row(rows, cfg.strict, id, [&] {
        IsoReportRow a = iso_quotient(domains[d], w, spec);
        IsoReportRow b = iso_quotient(domains[d], w, fine);
        qmax = std::max(qmax, a.quotient);
        qmax_fine = std::max(qmax_fine, b.quotient);
        double e = rel_err(a.quotient, b.quotient);
        bool ok = std::isfinite(a.quotient) && a.quotient > 0.0 && e <= 0.05;
        all_ok = all_ok && ok;
        return make_row(domain_label(domains[d]), a.quotient, b.quotient,
                        Provenance::derived_oracle, ok, e);
      });
    }
    char id[96];
    std::snprintf(id, sizeof(id), "iso-max/kappa=%g", kappa);
    push_row(rows, cfg.strict, id, [&] {
      double e = rel_err(qmax, qmax_fine);
      bool ok = all_ok && qmax > 0.0 && e <= 0.05;
      return make_row(fmt("domains=%g", double(domains.size())), qmax,
                      qmax_fine, Provenance::derived_oracle, ok, e);
    });
  }

  const Point centers[4] = {
      {0, 0, 0}, {1, -0.5, 2}, {-2, 1, -1}, {0.5, 2, 0}};
  const double radii[4] = {1.0, 0.5, 2.0, 1.0};
  double cmax = 0.0, cmax_fine = 0.0;
  bool pairs_ok = true;
  for (int ci = 0; ci < 4; ++ci) {
    for (int axis = 0; axis < 3; ++axis) {
      const Point c = centers[ci];
      double r = radii[ci];
      double off = axis == 0 ? c.x : axis == 1 ? c.y : c.t;
      Domain omega = Domain::half_space_clip(axis, off, c, r);
      Domain ball = Domain::gauge_ball(c, r);
      char id[96];
      std::snprintf(id, sizeof(id), "rel-iso-fraction/c%d-axis%d", ci, axis);
      std::string in =
          pstr(c) + fmt(" r=%g", r) + fmt(" axis=%g", double(axis));
      push_row(rows, cfg.strict, id, [&] {
        RelIsoResult a = relative_iso_check(omega, ball, spec);
        double e = std::abs(a.fraction_inside - 0.5);
        return make_row(in, a.fraction_inside, 0.5, Provenance::trivial,
                        e <= 1e-3, e);
      });
      std::snprintf(id, sizeof(id), "rel-iso-ratio/c%d-axis%d", ci, axis);
      push_row(rows, cfg.strict, id, [&] {
        RelIsoResult a = relative_iso_check(omega, ball, spec);
        RelIsoResult b = relative_iso_check(omega, ball, fine);
        double qa = a.lhs / a.rhs_factor;
        double qb = b.lhs / b.rhs_factor;
        cmax = std::max(cmax, qa);
        cmax_fine = std::max(cmax_fine, qb);
        double e = rel_err(qa, qb);
        bool ok = std::isfinite(qa) && qa > 0.0 && e <= 0.1;
        pairs_ok = pairs_ok && ok;
        return make_row(in, qa, qb, Provenance::derived_oracle, ok, e);
      });
    }
  }
  push_row(rows, cfg.strict, "rel-iso-constant", [&] {
    double e = rel_err(cmax, cmax_fine);
    bool ok = pairs_ok && cmax > 0.0 && e <= 0.1;
    return make_row("pairs=12", cmax, cmax_fine, Provenance::derived_oracle, ok,
                    e);
  });

  push_row(rows, cfg.strict, "sphere-measure-ratio", [&] {
    double c = sigma_to_horizontal_ratio(std::max(16, cfg.resolution));
    return tol_row("radius=1", c, 1.2168898413889979,
                   Provenance::derived_oracle, 1e-6);
  });
}

void counterexample_rows(const RunConfig& cfg, std::vector<ReportRow>& rows) {
  QuadratureSpec spec;
  spec.resolution = cfg.resolution;
  spec.seed = cfg.seed;

  Example46Report rep;
  guard_group(rows, cfg.strict, "growth-sweep", [&] {
    rep = example46_sweep(cfg.growth_radii, std::nullopt, spec);
    double prev_q = 0.0;
    for (const IsoReportRow& row : rep.rows) {
      double R = std::exp(row.log_radius);
      char id[64];
      std::snprintf(id, sizeof(id), "growth-volume/R=%g", R);
      push_row(rows, cfg.strict, id, [&] {
        return tol_row(fmt("R=%g", R), row.weighted_volume,
                       kTwoPiSq * std::log(R), Provenance::derived_oracle,
                       0.02);
      });
      std::snprintf(id, sizeof(id), "growth-perimeter/R=%g", R);
      push_row(rows, cfg.strict, id, [&] {
        return tol_row(fmt("R=%g", R), row.weighted_perimeter,
                       2.0 * kSigmaUnitSphere, Provenance::derived_oracle,
                       1e-6);
      });
      std::snprintf(id, sizeof(id), "growth-quotient/R=%g", R);
      push_row(rows, cfg.strict, id, [&] {
        bool ok = std::isfinite(row.quotient) && row.quotient > prev_q;
        ReportRow r = make_row(fmt("R=%g", R), row.quotient, prev_q,
                               Provenance::paper, ok,
                               std::max(0.0, prev_q - row.quotient));
        prev_q = row.quotient;
        return r;
      });
    }
    push_row(rows, cfg.strict, "growth-volume-slope", [&] {
      return tol_row(fmt("radii=%g", double(rep.rows.size())),
                     rep.volume_slope_vs_log_r, kTwoPiSq,
                     Provenance::derived_oracle, 0.02);
    });
    push_row(rows, cfg.strict, "growth-unbounded", [&] {
      double q0 = rep.rows.front().quotient;
      double q1 = rep.rows.back().quotient;
      double expected = rep.rows.back().log_radius / rep.rows.front().log_radius;
      return tol_row("first-vs-last", q1 / q0, expected,
                     Provenance::derived_oracle, 0.05);
    });
  });

  if (!cfg.mollify_epsilon) return;
  double eps = *cfg.mollify_epsilon;
  guard_group(rows, cfg.strict, "mollified-sweep", [&] {
    std::vector<double> mr;
    std::vector<size_t> exact_idx;
    for (size_t i = 0; i < cfg.growth_radii.size(); ++i)
      if (cfg.growth_radii[i] >= 4.0) {
        mr.push_back(cfg.growth_radii[i]);
        exact_idx.push_back(i);
      }
    if (mr.empty())
      throw ConfigError("mollified sweep needs at least one radius >= 4");
    QuadratureSpec mspec = spec;
    mspec.resolution = std::min(cfg.resolution, 8);
    Example46Report mrep = example46_sweep(mr, eps, mspec);
    double prev = 0.0;
    bool monotone = true;
    for (size_t i = 0; i < mrep.rows.size(); ++i) {
      double R = mr[i];
      double exact_q =
          exact_idx[i] < rep.rows.size() ? rep.rows[exact_idx[i]].quotient : kNan;
      char id[64];
      std::snprintf(id, sizeof(id), "mollified-quotient/R=%g", R);
      push_row(rows, cfg.strict, id, [&] {
        return tol_row(fmt("eps=%g", eps) + fmt(" R=%g", R),
                       mrep.rows[i].quotient, exact_q,
                       Provenance::derived_oracle, 0.1);
      });
      monotone = monotone && mrep.rows[i].quotient > prev;
      prev = mrep.rows[i].quotient;
    }
    push_row(rows, cfg.strict, "mollified-monotone", [&] {
      return make_row(fmt("eps=%g", eps), monotone ? 1.0 : 0.0, 1.0,
                      Provenance::paper, monotone, monotone ? 0.0 : 1.0);
    });
  });
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_g17(v[i]);
  }
  return out;
}

std::string tolerances_for(const std::string& sub) {
  if (sub == "verify-kernels")
    return "fd-rel<=1e-6, analytic-rel<=1e-10, symbolic-ladder exact";
  if (sub == "pluriharmonic")
    return "family normalized residual<=1e-10, control residual>=0.1";
  if (sub == "webster") return "fd-rel<=1e-6, analytic-rel<=1e-12";
  if (sub == "decay")
    return "budget-doubling drift<=1%, slope bands [-1.15,-0.85] and [-2.2,-1.8]";
  if (sub == "a1")
    return "stage drift<=10% (kappa<4), stage ratio>=2 (kappa>=4)";
  if (sub == "isoperimetric")
    return "refinement drift<=5% (quotients) / <=10% (relative constant), "
           "fraction tol 1e-3, ratio-rel<=1e-6";
  if (sub == "counterexample")
    return "volume rel<=2%, perimeter rel<=1e-6, quotient strictly increasing, "
           "mollified rel<=10%";
  return "";
}

}  // namespace

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "subcommand=" << subcommand << ";format=" << format << ";seed=" << seed
     << ";strict=" << strict << ";wallclock=" << with_wallclock
     << ";resolution=" << resolution << ";points=" << points
     << ";c2=" << join(c2_values) << ";bump_epsilon=" << format_g17(bump_epsilon)
     << ";decay_radii=" << join(decay_radii) << ";kappas=" << join(kappas)
     << ";a1_stages=" << a1_stages << ";growth_radii=" << join(growth_radii)
     << ";mollify="
     << (mollify_epsilon ? format_g17(*mollify_epsilon) : std::string("none"));
  return os.str();
}

void validate(const RunConfig& cfg) {
  static const char* known[] = {"verify-kernels", "pluriharmonic", "webster",
                                "decay",          "a1",            "isoperimetric",
                                "counterexample"};
  bool found = false;
  for (const char* k : known) found = found || cfg.subcommand == k;
  if (!found) throw ConfigError("unknown subcommand: " + cfg.subcommand);
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError("format must be csv or json, got: " + cfg.format);
  if (cfg.resolution < 4) throw ConfigError("resolution must be >= 4");
  if (cfg.points < 1) throw ConfigError("points must be >= 1");
  if (cfg.bump_epsilon <= 0) throw ConfigError("bump epsilon must be positive");
  if (cfg.a1_stages < 2) throw ConfigError("a1 stages must be >= 2");
  if (cfg.mollify_epsilon && *cfg.mollify_epsilon <= 0)
    throw ConfigError("mollify epsilon must be positive");
  auto check_radii = [](const std::vector<double>& v, const char* what,
                        double min_allowed) {
    if (v.empty()) throw ConfigError(std::string(what) + ": empty radii list");
    double prev = 0.0;
    for (double r : v) {
      if (!(r > min_allowed))
        throw ConfigError(std::string(what) + ": radii must exceed " +
                          format_g17(min_allowed));
      if (r <= prev)
        throw ConfigError(std::string(what) +
                          ": radii must be strictly increasing");
      prev = r;
    }
  };
  check_radii(cfg.decay_radii, "decay", 0.0);
  check_radii(cfg.growth_radii, "counterexample", 1.0);
  for (double k : cfg.kappas)
    if (k < 0.0) throw ConfigError("kappa must be nonnegative");
  if (cfg.kappas.empty()) throw ConfigError("kappa list is empty");
}

std::vector<ReportRow> build_rows(const RunConfig& cfg) {
  std::vector<ReportRow> rows;
  if (cfg.subcommand == "verify-kernels") verify_kernels_rows(cfg, rows);
  else if (cfg.subcommand == "pluriharmonic") pluriharmonic_rows(cfg, rows);
  else if (cfg.subcommand == "webster") webster_rows(cfg, rows);
  else if (cfg.subcommand == "decay") decay_rows(cfg, rows);
  else if (cfg.subcommand == "a1") a1_rows(cfg, rows);
  else if (cfg.subcommand == "isoperimetric") isoperimetric_rows(cfg, rows);
  else if (cfg.subcommand == "counterexample") counterexample_rows(cfg, rows);
  else throw ConfigError("unknown subcommand: " + cfg.subcommand);
  return rows;
}

int run(const RunConfig& cfg, std::ostream& report_out, std::ostream& diag) {
  validate(cfg);
  std::vector<ReportRow> rows = build_rows(cfg);

  ReportMeta meta;
  meta.subcommand = cfg.subcommand;
  meta.config_digest = fnv1a_hex(cfg.canonical());
  meta.seed = cfg.seed;
  meta.tolerances = tolerances_for(cfg.subcommand);
  meta.conventions = {
      {"convention-group",
       "(x,y,t)*(x',y',t') = (x+x', y+y', t+t'+2(x'y-xy'))"},
      {"convention-frame", "X = d/dx + 2y d/dt, Y = d/dy - 2x d/dt; [X,Y] = -4 d/dt"},
      {"convention-gauge", "rho^4 = (x^2+y^2)^2 + t^2"},
      {"convention-perimeter",
       "gauge spheres: graph-chart sigma density; planes and box faces: "
       "horizontal density"},
  };
  meta.with_wallclock = cfg.with_wallclock;
  meta.timestamp = iso8601_utc_now();

  if (cfg.format == "json") write_json(report_out, meta, rows);
  else write_csv(report_out, meta, rows);

  long long fails = 0;
  for (const ReportRow& r : rows) fails += r.pass ? 0 : 1;
  diag << cfg.subcommand << ": " << rows.size() << " rows, " << fails
       << " failed\n";
  return fails == 0 ? 0 : 1;
}

}  // namespace h1::cli
