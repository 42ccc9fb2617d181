#include "koethe/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "koethe/detail/random.hpp"
#include "koethe/errors.hpp"
#include "koethe/optimize.hpp"

namespace koethe {

std::string_view to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::holds:
      return "holds";
    case Hypothesis::unverified:
      return "unverified";
    default:
      return "not_applicable";
  }
}

SequenceSpace::SequenceSpace(std::size_t dim, std::string label, SpaceFlags flags,
                             std::shared_ptr<const NormImpl> impl,
                             std::optional<SpaceDescriptor> descriptor,
                             std::optional<double> lp_exponent,
                             std::shared_ptr<const SequenceSpace> predual)
    : dim_(dim),
      label_(std::move(label)),
      flags_(flags),
      impl_(std::move(impl)),
      descriptor_(std::move(descriptor)),
      lp_exponent_(lp_exponent),
      predual_(std::move(predual)) {
  if (dim_ == 0) throw ConstructionError("space dimension must be positive");
}

void SequenceSpace::check_dim(std::size_t n, const char* what) const {
  if (n != dim_) {
    throw DimensionError(std::string(what) + " has length " + std::to_string(n) + " but space " +
                         label_ + " has dimension " + std::to_string(dim_));
  }
}

double SequenceSpace::norm(const CoefficientVector& x) const {
  check_dim(x.size(), "vector");
  return impl_->norm(x.view());
}

double SequenceSpace::norm_and_support(std::span<const double> x, std::vector<double>& s) const {
  s.assign(dim_, 0.0);
  return impl_->norm_and_support(x, s);
}

std::vector<double> SequenceSpace::support(std::span<const double> x) const {
  std::vector<double> s;
  norm_and_support(x, s);
  return s;
}

namespace {

double max_entry(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, v);
  return m;
}

class LpNorm final : public NormImpl {
 public:
  explicit LpNorm(double p) : p_(p) {}

  double norm(std::span<const double> x) const override {
    if (std::isinf(p_)) return max_entry(x);
    if (p_ == 1.0) return std::accumulate(x.begin(), x.end(), 0.0);
    const double m = max_entry(x);
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) s += std::pow(v / m, p_);
    return m * std::pow(s, 1.0 / p_);
  }

  double norm_and_support(std::span<const double> x, std::span<double> s) const override {
    const double nx = norm(x);
    if (nx == 0.0) return 0.0;
    if (std::isinf(p_)) {
      s[static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin())] = 1.0;
    } else if (p_ == 1.0) {
      std::fill(s.begin(), s.end(), 1.0);
    } else {
      for (std::size_t k = 0; k < x.size(); ++k) s[k] = std::pow(x[k] / nx, p_ - 1.0);
    }
    return nx;
  }

 private:
  double p_;
};

class LorentzNorm final : public NormImpl {
 public:
  LorentzNorm(std::vector<double> w, double p) : w_(std::move(w)), p_(p) {}

  double norm(std::span<const double> x) const override {
    const auto order = decreasing_order(x);
    return value(x, order);
  }

  double norm_and_support(std::span<const double> x, std::span<double> s) const override {
    const auto order = decreasing_order(x);
    const double nx = value(x, order);
    if (nx == 0.0) return 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const double xs = x[order[k]];
      s[order[k]] = p_ == 1.0 ? w_[k] : std::pow(xs / nx, p_ - 1.0) * w_[k];
    }
    return nx;
  }

 private:
  double value(std::span<const double> x, const std::vector<std::size_t>& order) const {
    if (p_ == 1.0) {
      double s = 0.0;
      for (std::size_t k = 0; k < order.size(); ++k) s += x[order[k]] * w_[k];
      return s;
    }
    const double m = x.empty() ? 0.0 : x[order[0]];
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) s += std::pow(x[order[k]] / m, p_) * w_[k];
    return m * std::pow(s, 1.0 / p_);
  }

  std::vector<double> w_;
  double p_;
};

class MarcinkiewiczNorm final : public NormImpl {
 public:
  explicit MarcinkiewiczNorm(std::vector<double> psi) : psi_(std::move(psi)) {}

  double norm(std::span<const double> x) const override {
    std::size_t best = 0;
    return value(x, decreasing_order(x), best);
  }

  double norm_and_support(std::span<const double> x, std::span<double> s) const override {
    const auto order = decreasing_order(x);
    std::size_t best = 0;
    const double nx = value(x, order, best);
    if (nx == 0.0) return 0.0;
    for (std::size_t k = 0; k <= best; ++k) s[order[k]] = 1.0 / psi_[best];
    return nx;
  }

 private:
  double value(std::span<const double> x, const std::vector<std::size_t>& order,
               std::size_t& best) const {
    double partial = 0.0;
    double out = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      partial += x[order[k]];
      const double q = partial / psi_[k];
      if (q > out) {
        out = q;
        best = k;
      }
    }
    return out;
  }

  std::vector<double> psi_;
};

class PowerNorm final : public NormImpl {
 public:
  PowerNorm(SequenceSpace base, double r) : base_(std::move(base)), r_(r) {}

  double norm(std::span<const double> x) const override {
    const auto u = root(x);
    return std::pow(base_.eval(u), r_);
  }

  double norm_and_support(std::span<const double> x, std::span<double> s) const override {
    const auto u = root(x);
    std::vector<double> g;
    const double nu = base_.norm_and_support(u, g);
    if (nu == 0.0) return 0.0;
    const double scale = std::pow(nu, r_ - 1.0);
    for (std::size_t k = 0; k < u.size(); ++k) {
      s[k] = u[k] > 0.0 ? scale * g[k] * std::pow(u[k], 1.0 - r_) : 0.0;
    }
    return std::pow(nu, r_);
  }

 private:
  std::vector<double> root(std::span<const double> x) const {
    std::vector<double> u(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) u[k] = r_ == 1.0 ? x[k] : std::pow(x[k], 1.0 / r_);
    return u;
  }

  SequenceSpace base_;
  double r_;
};

class DualNorm final : public NormImpl {
 public:
  DualNorm(SequenceSpace base, OptimizerConfig cfg) : base_(std::move(base)), cfg_(cfg) {}

  double norm(std::span<const double> z) const override {
    return linear_max(base_, CoefficientVector(std::vector<double>(z.begin(), z.end())), cfg_).value;
  }

  double norm_and_support(std::span<const double> z, std::span<double> s) const override {
    const auto est =
        linear_max(base_, CoefficientVector(std::vector<double>(z.begin(), z.end())), cfg_);
    if (est.value == 0.0) return 0.0;
    std::copy(est.witness.begin(), est.witness.end(), s.begin());
    return est.value;
  }

 private:
  SequenceSpace base_;
  OptimizerConfig cfg_;
};

class CustomNorm final : public NormImpl {
 public:
  explicit CustomNorm(std::function<double(std::span<const double>)> fn) : fn_(std::move(fn)) {}

  double norm(std::span<const double> x) const override { return fn_(x); }

  double norm_and_support(std::span<const double> x, std::span<double> s) const override {
    const double nx = fn_(x);
    if (nx == 0.0) return 0.0;
    const double h = 1e-7 * max_entry(x);
    std::vector<double> y(x.begin(), x.end());
    double sx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      y[k] = x[k] + h;
      s[k] = std::max(0.0, (fn_(y) - nx) / h);
      y[k] = x[k];
      sx += s[k] * x[k];
    }
    // Euler's identity for degree-one homogeneity pins the scale.
    if (sx > 0.0) {
      for (double& v : s) v *= nx / sx;
    }
    return nx;
  }

 private:
  std::function<double(std::span<const double>)> fn_;
};

bool all_equal_to(const std::vector<double>& v, const std::function<double(std::size_t)>& target) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (std::abs(v[k] - target(k)) > 1e-15 * std::max(1.0, std::abs(target(k)))) return false;
  }
  return true;
}

SequenceSpace build(const SpaceDescriptor& d, std::size_t n, const OptimizerConfig& inner) {
  const std::string label = to_shorthand(d);
  if (const auto* lp = std::get_if<LpSpec>(&d.kind)) {
    SpaceFlags flags;
    flags.symmetric = true;
    flags.has_closed_form_dual = true;
    return {n, label, flags, std::make_shared<LpNorm>(lp->p), d, lp->p};
  }
  if (const auto* lo = std::get_if<LorentzSpec>(&d.kind)) {
    auto w = weight_values(lo->weights, n);
    std::optional<double> exponent;
    if (all_equal_to(w, [](std::size_t) { return 1.0; })) exponent = lo->p;
    SpaceFlags flags;
    flags.symmetric = true;
    flags.has_closed_form_dual = exponent.has_value();
    return {n, label, flags, std::make_shared<LorentzNorm>(std::move(w), lo->p), d, exponent};
  }
  if (const auto* ma = std::get_if<MarcinkiewiczSpec>(&d.kind)) {
    auto psi = psi_values(ma->psi, n);
    std::optional<double> exponent;
    if (all_equal_to(psi, [](std::size_t k) { return static_cast<double>(k + 1); })) exponent = kInf;
    SpaceFlags flags;
    flags.symmetric = true;
    flags.has_closed_form_dual = exponent.has_value();
    return {n, label, flags, std::make_shared<MarcinkiewiczNorm>(std::move(psi)), d, exponent};
  }
  if (const auto* pw = std::get_if<PowerSpec>(&d.kind)) {
    return power(build(*pw->base, n, inner), pw->r);
  }
  return dual(build(*std::get<DualSpec>(d.kind).base, n, inner), inner);
}

}  // namespace

SequenceSpace make_space(const SpaceDescriptor& d, const OptimizerConfig& inner) {
  if (d.dim == 0) throw ConstructionError("descriptor dimension N is not set");
  d.validate();
  validate(inner);
  return build(d.with_dimension(d.dim), d.dim, inner);
}

SequenceSpace make_space(const SpaceDescriptor& d, std::size_t n, const OptimizerConfig& inner) {
  return make_space(d.with_dimension(n), inner);
}

SequenceSpace power(const SequenceSpace& E, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ConstructionError("power requires r > 0");
  SpaceFlags flags;
  flags.symmetric = E.flags().symmetric;
  // E^r is normed exactly when E is max(1,r)-convex with constant 1.
  bool holds = r <= 1.0 && E.flags().convex();
  if (const auto q = E.lp_exponent(); q && r <= *q) holds = true;
  if (const auto& d = E.descriptor()) {
    if (const auto* lo = std::get_if<LorentzSpec>(&d->kind); lo && r <= lo->p) holds = true;
  }
  flags.convexity_hypothesis = holds ? Hypothesis::holds : Hypothesis::unverified;
  flags.optimization_backed = E.flags().optimization_backed;
  std::optional<double> exponent;
  if (const auto q = E.lp_exponent(); q && *q / r >= 1.0) exponent = *q / r;
  flags.has_closed_form_dual = exponent.has_value();
  std::optional<SpaceDescriptor> desc;
  if (E.descriptor()) desc = SpaceDescriptor::power(*E.descriptor(), r, E.dim());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", r);
  const std::string label = desc ? to_shorthand(*desc) : "power(" + E.label() + ",r=" + buf + ")";
  return {E.dim(), label, flags, std::make_shared<PowerNorm>(E, r), desc, exponent};
}

SequenceSpace dual(const SequenceSpace& E, const OptimizerConfig& cfg) {
  validate(cfg);
  SpaceFlags flags;
  flags.symmetric = E.flags().symmetric;
  std::optional<SpaceDescriptor> desc;
  if (E.descriptor()) desc = SpaceDescriptor::dual(*E.descriptor(), E.dim());
  const std::string label = desc ? to_shorthand(*desc) : "dual(" + E.label() + ")";
  auto predual = std::make_shared<const SequenceSpace>(E);
  if (const auto q = E.lp_exponent()) {
    const double p = conjugate_exponent(*q);
    flags.has_closed_form_dual = true;
    if (cfg.closed_forms) {
      return {E.dim(), label, flags, std::make_shared<LpNorm>(p), desc, p, predual};
    }
    flags.optimization_backed = true;
    return {E.dim(), label, flags, std::make_shared<DualNorm>(E, cfg), desc, p, predual};
  }
  flags.optimization_backed = true;
  return {E.dim(), label, flags, std::make_shared<DualNorm>(E, cfg), desc, std::nullopt, predual};
}

SequenceSpace custom_space(std::size_t dim, std::string label,
                           std::function<double(std::span<const double>)> norm, bool symmetric) {
  SpaceFlags flags;
  flags.symmetric = symmetric;
  return {dim, std::move(label), flags, std::make_shared<CustomNorm>(std::move(norm))};
}

double convexity_ratio(const SequenceSpace& E, double r, const std::vector<CoefficientVector>& family) {
  std::vector<double> combined(E.dim(), 0.0);
  double denom = 0.0;
  for (const auto& x : family) {
    E.check_dim(x.size(), "family vector");
    for (std::size_t k = 0; k < x.size(); ++k) combined[k] += std::pow(x[k], r);
    denom += std::pow(E.eval(x.view()), r);
  }
  if (denom == 0.0) return 0.0;
  for (double& v : combined) v = std::pow(v, 1.0 / r);
  return E.eval(combined) / std::pow(denom, 1.0 / r);
}

NormEstimate convexity_constant_lb(const SequenceSpace& E, double r, int samples, std::uint64_t seed) {
  if (!(r >= 1.0)) throw PreconditionError("convexity constant requires r >= 1");
  if (samples < 1) throw PreconditionError("convexity constant requires samples >= 1");
  const std::size_t n = E.dim();
  NormEstimate best;
  best.upper_bound = std::numeric_limits<double>::infinity();
  best.witness = CoefficientVector(n);
  auto consider = [&](const std::vector<CoefficientVector>& family) {
    const double ratio = convexity_ratio(E, r, family);
    if (ratio > best.value) {
      best.value = ratio;
      std::vector<double> combined(n, 0.0);
      for (const auto& x : family) {
        for (std::size_t k = 0; k < n; ++k) combined[k] += std::pow(x[k], r);
      }
      for (double& v : combined) v = std::pow(v, 1.0 / r);
      best.witness = CoefficientVector(std::move(combined));
    }
  };
  std::vector<CoefficientVector> units;
  for (std::size_t k = 0; k < n; ++k) units.push_back(CoefficientVector::unit(n, k));
  consider({units[0]});
  consider(units);
  for (int i = 0; i < samples; ++i) {
    auto rng = detail::make_rng(seed, static_cast<std::uint64_t>(i));
    const std::size_t m = 1 + detail::uniform_index(rng, 4);
    std::vector<CoefficientVector> family;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> v(n);
      for (double& e : v) e = detail::uniform01(rng) < 0.3 ? 0.0 : detail::uniform01(rng);
      family.emplace_back(std::move(v));
    }
    consider(family);
  }
  best.restarts = samples;
  return best;
}

}  // namespace koethe
