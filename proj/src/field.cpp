#include "h1/field.hpp"

#include <cmath>
#include <utility>

#include "h1/errors.hpp"

namespace h1 {

struct ScalarField::Impl {
  std::string name;
  Eval eval;
  std::optional<sym::GaugeExpr> expr;
  std::optional<Point> singular_at;
  std::optional<double> kappa;
};

ScalarField ScalarField::from_lambda(std::string name, Eval f) {
  ScalarField s;
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->eval = std::move(f);
  s.impl_ = std::move(impl);
  return s;
}

ScalarField ScalarField::from_expr(std::string name, sym::GaugeExpr e) {
  ScalarField s;
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->expr = std::move(e);
  // Captured by value: Impl objects are copied wholesale by the metadata
  // helpers, so the closure must not point back into any particular Impl.
  impl->eval = [ex = *impl->expr](const Point& p) { return ex.eval(p); };
  if (impl->expr->has_log() || impl->expr->has_negative_power())
    impl->singular_at = Point{0.0, 0.0, 0.0};
  s.impl_ = std::move(impl);
  return s;
}

ScalarField ScalarField::with_singularity(Point p0,
                                          std::optional<double> kappa) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->singular_at = p0;
  impl->kappa = kappa;
  ScalarField s;
  s.impl_ = std::move(impl);
  return s;
}

ScalarField ScalarField::renamed(std::string name) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->name = std::move(name);
  ScalarField s;
  s.impl_ = std::move(impl);
  return s;
}

ScalarField ScalarField::left_translated(const Point& g) const {
  auto base = impl_;
  auto impl = std::make_shared<Impl>();
  impl->name = base->name + "@shift";
  impl->eval = [base, g](const Point& p) { return base->eval(mul(g, p)); };
  if (base->singular_at) {
    impl->singular_at = mul(inv(g), *base->singular_at);
    impl->kappa = base->kappa;
  }
  ScalarField s;
  s.impl_ = std::move(impl);
  return s;
}

ScalarField ScalarField::scaled(double c) const {
  auto base = impl_;
  auto impl = std::make_shared<Impl>();
  impl->name = base->name + "*c";
  impl->eval = [base, c](const Point& p) { return c * base->eval(p); };
  if (base->expr) {
    impl->expr = base->expr->scaled(c);
    impl->eval = [ex = *impl->expr](const Point& p) { return ex.eval(p); };
  }
  impl->singular_at = base->singular_at;
  impl->kappa = base->kappa;
  ScalarField s;
  s.impl_ = std::move(impl);
  return s;
}

ScalarField ScalarField::operator+(const ScalarField& o) const {
  auto a = impl_;
  auto b = o.impl_;
  auto impl = std::make_shared<Impl>();
  impl->name = a->name + "+" + b->name;
  impl->eval = [a, b](const Point& p) { return a->eval(p) + b->eval(p); };
  if (a->expr && b->expr) {
    impl->expr = *a->expr + *b->expr;
    impl->eval = [ex = *impl->expr](const Point& p) { return ex.eval(p); };
  }
  if (a->singular_at)
    impl->singular_at = a->singular_at;
  else if (b->singular_at)
    impl->singular_at = b->singular_at;
  ScalarField s;
  s.impl_ = std::move(impl);
  return s;
}

const std::string& ScalarField::name() const { return impl_->name; }

double ScalarField::operator()(const Point& p) const {
  if (impl_->singular_at && gauge_dist(p, *impl_->singular_at) == 0.0)
    throw SingularPointError("field '" + impl_->name +
                             "' evaluated at its singular point");
  double v = impl_->eval(p);
  if (!std::isfinite(v)) {
    if (impl_->singular_at)
      throw SingularPointError("field '" + impl_->name +
                               "' non-finite near its singular point");
    throw NonFiniteError("field '" + impl_->name + "' produced a non-finite value");
  }
  return v;
}

bool ScalarField::has_analytic() const { return impl_->expr.has_value(); }

double ScalarField::analytic_derivative(std::span<const Frame> word,
                                        const Point& p) const {
  if (!impl_->expr)
    throw std::logic_error("field '" + impl_->name + "' has no analytic form");
  return impl_->expr->derive(word).eval(p);
}

const sym::GaugeExpr* ScalarField::expr() const {
  return impl_->expr ? &*impl_->expr : nullptr;
}

std::optional<Point> ScalarField::singular_point() const {
  return impl_->singular_at;
}

std::optional<double> ScalarField::homogeneity_at_singularity() const {
  return impl_->kappa;
}

}  // namespace h1
