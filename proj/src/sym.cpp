#include "h1/sym.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace h1::sym {

namespace {

constexpr double kBetaEps = 1e-12;

bool nearly_integer(double b) { return std::abs(b - std::round(b)) < kBetaEps; }

double pow_signed(double base, double expo) {
  if (nearly_integer(expo)) {
    long long n = std::llround(expo);
    double r = 1.0;
    double b = base;
    unsigned long long m = static_cast<unsigned long long>(n < 0 ? -n : n);
    while (m) {
      if (m & 1ull) r *= b;
      b *= b;
      m >>= 1;
    }
    return n < 0 ? 1.0 / r : r;
  }
  return std::pow(base, expo);
}

}  // namespace

Poly Poly::constant(double c) { return monomial(c, 0, 0, 0); }

Poly Poly::monomial(double c, int px, int py, int pt) {
  Poly p;
  p.add_term(c, px, py, pt);
  return p;
}

Poly& Poly::add_term(double c, int px, int py, int pt) {
  if (c == 0.0) return *this;
  Key k{px, py, pt};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(c, k[0], k[1], k[2]);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(-c, k[0], k[1], k[2]);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_)
      r.add_term(ca * cb, ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]);
  return r;
}

Poly Poly::scaled(double c) const {
  Poly r;
  if (c == 0.0) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

Poly Poly::dx() const {
  Poly r;
  for (const auto& [k, c] : terms_)
    if (k[0] > 0) r.add_term(c * k[0], k[0] - 1, k[1], k[2]);
  return r;
}

Poly Poly::dy() const {
  Poly r;
  for (const auto& [k, c] : terms_)
    if (k[1] > 0) r.add_term(c * k[1], k[0], k[1] - 1, k[2]);
  return r;
}

Poly Poly::dt() const {
  Poly r;
  for (const auto& [k, c] : terms_)
    if (k[2] > 0) r.add_term(c * k[2], k[0], k[1], k[2] - 1);
  return r;
}

Poly Poly::frame(Frame dir) const {
  switch (dir) {
    case Frame::X:
      return dx() + dt() * monomial(2.0, 0, 1, 0);
    case Frame::Y:
      return dy() + dt() * monomial(-2.0, 1, 0, 0);
    case Frame::T:
      return dt();
  }
  return {};
}

double Poly::eval(const Point& p) const {
  double acc = 0.0;
  for (const auto& [k, c] : terms_) {
    double m = c;
    for (int i = 0; i < k[0]; ++i) m *= p.x;
    for (int i = 0; i < k[1]; ++i) m *= p.y;
    for (int i = 0; i < k[2]; ++i) m *= p.t;
    acc += m;
  }
  return acc;
}

double Poly::max_abs_coef() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool Poly::is_zero(double tol) const { return max_abs_coef() <= tol; }

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k[0] + k[1] + k[2]);
  return d;
}

Poly gauge4_poly() {
  Poly u;
  u.add_term(1.0, 4, 0, 0);
  u.add_term(2.0, 2, 2, 0);
  u.add_term(1.0, 0, 4, 0);
  u.add_term(1.0, 0, 0, 2);
  return u;
}

void GaugeExpr::push_term(Poly n, double beta) {
  if (n.term_count() == 0) return;
  for (auto& t : terms_) {
    if (std::abs(t.beta - beta) < kBetaEps) {
      t.num = t.num + n;
      return;
    }
  }
  terms_.push_back(Term{std::move(n), beta});
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.beta < b.beta; });
}

GaugeExpr GaugeExpr::polynomial(Poly n) {
  GaugeExpr e;
  e.push_term(std::move(n), 0.0);
  return e;
}

GaugeExpr GaugeExpr::rational(Poly n, double beta) {
  GaugeExpr e;
  e.push_term(std::move(n), beta);
  return e;
}

GaugeExpr GaugeExpr::log_gauge4(double c) {
  GaugeExpr e;
  e.logcoef_ = c;
  return e;
}

GaugeExpr GaugeExpr::operator+(const GaugeExpr& o) const {
  GaugeExpr e = *this;
  e.logcoef_ += o.logcoef_;
  for (const auto& t : o.terms_) e.push_term(t.num, t.beta);
  // drop terms that cancelled exactly
  std::erase_if(e.terms_, [](const Term& t) { return t.num.term_count() == 0; });
  return e;
}

GaugeExpr GaugeExpr::operator-(const GaugeExpr& o) const {
  return *this + o.scaled(-1.0);
}

GaugeExpr GaugeExpr::scaled(double c) const {
  GaugeExpr e;
  e.logcoef_ = logcoef_ * c;
  if (c != 0.0)
    for (const auto& t : terms_) e.push_term(t.num.scaled(c), t.beta);
  return e;
}

GaugeExpr GaugeExpr::times(const GaugeExpr& o) const {
  GaugeExpr e;
  if (logcoef_ != 0.0 || o.logcoef_ != 0.0)
    return e;  // products with log factors are outside this algebra
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) e.push_term(a.num * b.num, a.beta + b.beta);
  return e;
}

GaugeExpr GaugeExpr::derive(Frame dir) const {
  const Poly u = gauge4_poly();
  const Poly du = u.frame(dir);
  GaugeExpr e;
  for (const auto& t : terms_) {
    if (t.beta == 0.0) {
      e.push_term(t.num.frame(dir), 0.0);
    } else {
      // (dN * U + beta * N * dU) * U^(beta-1)
      Poly n = t.num.frame(dir) * u + t.num.scaled(t.beta) * du;
      e.push_term(std::move(n), t.beta - 1.0);
    }
  }
  if (logcoef_ != 0.0) e.push_term(du.scaled(logcoef_), -1.0);
  std::erase_if(e.terms_, [](const Term& t) { return t.num.term_count() == 0; });
  return e;
}

GaugeExpr GaugeExpr::derive(std::span<const Frame> word) const {
  GaugeExpr e = *this;
  for (Frame dir : word) e = e.derive(dir);
  return e;
}

GaugeExpr GaugeExpr::sublap() const {
  return derive(Frame::X).derive(Frame::X) + derive(Frame::Y).derive(Frame::Y);
}

double GaugeExpr::eval(const Point& p) const {
  const double u = gauge4(p);
  double acc = 0.0;
  for (const auto& t : terms_) {
    double f = t.beta == 0.0 ? 1.0 : pow_signed(u, t.beta);
    acc += t.num.eval(p) * f;
  }
  if (logcoef_ != 0.0) acc += logcoef_ * std::log(u);
  return acc;
}

bool GaugeExpr::has_negative_power() const {
  for (const auto& t : terms_)
    if (t.beta < -kBetaEps) return true;
  return false;
}

bool GaugeExpr::is_zero(double tol) const {
  if (std::abs(logcoef_) > tol) return false;
  if (terms_.empty()) return true;
  const Poly u = gauge4_poly();
  // Bucket terms whose exponents differ by integers; each bucket must reduce
  // to the zero polynomial over a common power of U.
  std::vector<bool> used(terms_.size(), false);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (used[i]) continue;
    double base = terms_[i].beta;
    Poly total;
    double scale = 0.0;
    for (std::size_t j = i; j < terms_.size(); ++j) {
      if (used[j]) continue;
      double diff = terms_[j].beta - base;
      if (!nearly_integer(diff)) continue;
      used[j] = true;
      long long k = std::llround(diff);  // >= 0 because terms_ sorted by beta
      Poly lifted = terms_[j].num;
      for (long long m = 0; m < k; ++m) lifted = lifted * u;
      total = total + lifted;
      scale = std::max(scale, terms_[j].num.max_abs_coef());
    }
    if (!total.is_zero(tol * std::max(1.0, scale))) return false;
  }
  return true;
}

}  // namespace h1::sym
