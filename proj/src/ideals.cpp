#include "koethe/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>

#include "koethe/errors.hpp"
#include "koethe/multipliers.hpp"
#include "koethe/optimize.hpp"

namespace koethe {

FiniteMultilinearOperator::FiniteMultilinearOperator(std::size_t arity, std::size_t dim)
    : arity_(arity), dim_(dim) {
  if (arity_ == 0) throw PreconditionError("operator arity must be positive");
  if (dim_ == 0) throw PreconditionError("operator dimension must be positive");
}

FiniteMultilinearOperator FiniteMultilinearOperator::diagonal(std::size_t arity, const DiagonalSymbol& alpha) {
  FiniteMultilinearOperator T(arity, alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha.moduli()[i] != 0.0) T.set(std::vector<std::size_t>(arity, i), i, alpha.signed_value(i));
  }
  return T;
}

void FiniteMultilinearOperator::check(const std::vector<std::size_t>& inputs, std::size_t output) const {
  if (inputs.size() != arity_) {
    throw DimensionError("operator takes " + std::to_string(arity_) + " arguments, got " +
                         std::to_string(inputs.size()));
  }
  for (std::size_t i : inputs) {
    if (i >= dim_) throw DimensionError("input index " + std::to_string(i) + " out of range");
  }
  if (output >= dim_) throw DimensionError("output index " + std::to_string(output) + " out of range");
}

void FiniteMultilinearOperator::set(const std::vector<std::size_t>& inputs, std::size_t output, double value) {
  check(inputs, output);
  Key key(inputs);
  key.push_back(output);
  if (value == 0.0) {
    coeffs_.erase(key);
  } else {
    coeffs_[key] = value;
  }
}

double FiniteMultilinearOperator::get(const std::vector<std::size_t>& inputs, std::size_t output) const {
  check(inputs, output);
  Key key(inputs);
  key.push_back(output);
  const auto it = coeffs_.find(key);
  return it == coeffs_.end() ? 0.0 : it->second;
}

namespace {

NormEstimate zero_estimate(std::size_t N) {
  NormEstimate out;
  out.kind = EstimateKind::exact;
  out.witness = CoefficientVector(N);
  return out;
}

// Optimal y for sup { ||alpha y^n||_{lp(b)} : y in B_{lp(a)} } with 1/c = 1/b - n/a > 0.
std::vector<double> lp_diagonal_witness(const CoefficientVector& a, double pa, double c, double value,
                                        std::size_t n) {
  const std::size_t N = a.size();
  std::vector<double> y(N, 0.0);
  if (std::isinf(c)) {
    y[static_cast<std::size_t>(std::max_element(a.begin(), a.end()) - a.begin())] = 1.0;
  } else if (std::isinf(pa)) {
    std::fill(y.begin(), y.end(), 1.0);
  } else {
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k < N; ++k) y[k] = std::pow(std::pow(a[k] / value, c * dn / pa), 1.0 / dn);
  }
  return y;
}

std::optional<double> lp_diagonal_exponent(std::optional<double> pa, std::optional<double> pb, std::size_t n) {
  if (!pa || !pb) return std::nullopt;
  const double inv_c = std::max(0.0, 1.0 / *pb - static_cast<double>(n) / *pa);
  return inv_c == 0.0 ? kInf : 1.0 / inv_c;
}

NormEstimate closed_form(const SequenceSpace& E, const CoefficientVector& a, double c, std::size_t n) {
  NormEstimate out;
  out.kind = EstimateKind::exact;
  out.value = make_space(SpaceDescriptor::lp(c, a.size())).norm(a);
  out.upper_bound = out.value;
  out.witness = CoefficientVector(retract(E, lp_diagonal_witness(a, *E.lp_exponent(), c, out.value, n)));
  return out;
}

Objective diagonal_objective(const SequenceSpace* F, const CoefficientVector& alpha, std::size_t n) {
  Objective f;
  auto a = std::make_shared<std::vector<double>>(alpha.values());
  auto space = F ? std::make_shared<SequenceSpace>(*F) : nullptr;
  const double dn = static_cast<double>(n);
  f.degree = dn;
  if (!space) {
    f.value = [a, dn](std::span<const double> y) {
      double s = 0.0;
      for (std::size_t k = 0; k < y.size(); ++k) s += (*a)[k] * std::pow(y[k], dn);
      return s;
    };
    f.gradient = [a, dn](std::span<const double> y, std::span<double> g) {
      for (std::size_t k = 0; k < y.size(); ++k) g[k] = dn * (*a)[k] * std::pow(y[k], dn - 1.0);
    };
    return f;
  }
  f.value = [a, dn, space](std::span<const double> y) {
    std::vector<double> v(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) v[k] = (*a)[k] * std::pow(y[k], dn);
    return space->eval(v);
  };
  f.gradient = [a, dn, space](std::span<const double> y, std::span<double> g) {
    std::vector<double> v(y.size()), s;
    for (std::size_t k = 0; k < y.size(); ++k) v[k] = (*a)[k] * std::pow(y[k], dn);
    space->norm_and_support(v, s);
    for (std::size_t k = 0; k < y.size(); ++k) g[k] = dn * (*a)[k] * std::pow(y[k], dn - 1.0) * s[k];
  };
  return f;
}

void check_arity(std::size_t n) {
  if (n == 0) throw PreconditionError("arity n must be at least 1");
}

class IdealNorm final : public NormImpl {
 public:
  IdealNorm(SequenceSpace E, std::optional<SequenceSpace> F, std::size_t n, OptimizerConfig cfg)
      : E_(std::move(E)), F_(std::move(F)), n_(n), cfg_(cfg) {}

  double norm(std::span<const double> gamma) const override { return lookup(gamma).value; }

  double norm_and_support(std::span<const double> gamma, std::span<double> s) const override {
    const auto& entry = lookup(gamma);
    std::copy(entry.support.begin(), entry.support.end(), s.begin());
    return entry.value;
  }

 private:
  struct Entry {
    double value = 0.0;
    std::vector<double> support;
  };

  const Entry& lookup(std::span<const double> gamma) const {
    std::vector<double> key(gamma.size());
    for (std::size_t k = 0; k < gamma.size(); ++k) key[k] = std::round(gamma[k] * 1e12) * 1e-12;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const CoefficientVector g(std::vector<double>(gamma.begin(), gamma.end()));
    const auto est = F_ ? diag_sup_norm(E_, *F_, n_, g, cfg_) : diag_scalar_norm(E_, n_, g, cfg_);
    Entry entry;
    entry.value = est.value;
    entry.support.assign(gamma.size(), 0.0);
    const double dn = static_cast<double>(n_);
    std::vector<double> yn(gamma.size()), v(gamma.size()), sf;
    for (std::size_t k = 0; k < gamma.size(); ++k) {
      yn[k] = std::pow(est.witness[k], dn);
      v[k] = gamma[k] * yn[k];
    }
    if (F_) {
      F_->norm_and_support(v, sf);
      for (std::size_t k = 0; k < gamma.size(); ++k) entry.support[k] = yn[k] * sf[k];
    } else {
      entry.support = yn;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(std::move(key), std::move(entry)).first->second;
  }

  SequenceSpace E_;
  std::optional<SequenceSpace> F_;
  std::size_t n_;
  OptimizerConfig cfg_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<double>, Entry> cache_;
};

SequenceSpace ideal_space(const SequenceSpace& E, const SequenceSpace* F, std::size_t n,
                          const OptimizerConfig& cfg) {
  check_arity(n);
  validate(cfg);
  if (F) F->check_dim(E.dim(), "target space dimension");
  SpaceFlags flags;
  flags.symmetric = E.flags().symmetric && (!F || F->flags().symmetric);
  const auto exponent = lp_diagonal_exponent(E.lp_exponent(), F ? F->lp_exponent() : std::optional(1.0), n);
  const bool closed = cfg.closed_forms && exponent.has_value();
  flags.optimization_backed = !closed;
  flags.has_closed_form_dual = closed;
  const std::string label = "l_" + std::to_string(n) + "(B;" + E.label() + (F ? "," + F->label() : "") + ")";
  std::optional<SequenceSpace> target;
  if (F) target = *F;
  return {E.dim(), label, flags, std::make_shared<IdealNorm>(E, target, n, cfg), std::nullopt,
          closed ? exponent : std::nullopt};
}

NormEstimate integral_from(const SequenceSpace& D, const DiagonalSymbol& alpha, const OptimizerConfig& cfg) {
  auto est = dual_norm(D, alpha.moduli(), cfg);
  if (D.flags().optimization_backed) est.kind = EstimateKind::lower_bound;
  return est;
}

}  // namespace

NormEstimate diag_sup_norm(const SequenceSpace& E, const SequenceSpace& F, std::size_t n,
                           const DiagonalSymbol& alpha, const OptimizerConfig& cfg) {
  check_arity(n);
  validate(cfg);
  E.check_dim(alpha.size(), "symbol");
  F.check_dim(alpha.size(), "symbol");
  const auto& a = alpha.moduli();
  if (a.is_zero()) return zero_estimate(a.size());
  if (n == 1) return multiplier_norm(E, F, alpha, cfg);
  if (cfg.closed_forms) {
    if (const auto c = lp_diagonal_exponent(E.lp_exponent(), F.lp_exponent(), n)) {
      return closed_form(E, a, *c, n);
    }
    if (const auto pa = E.lp_exponent(); pa && std::isinf(*pa)) {
      NormEstimate out;
      out.value = F.norm(a);
      out.kind = F.flags().optimization_backed ? EstimateKind::lower_bound : EstimateKind::exact;
      out.upper_bound = out.value;
      out.witness = CoefficientVector(a.size(), 1.0);
      return out;
    }
  }
  return convex_max(E, diagonal_objective(&F, a, n), cfg);
}

NormEstimate diag_scalar_norm(const SequenceSpace& E, std::size_t n, const DiagonalSymbol& alpha,
                              const OptimizerConfig& cfg) {
  check_arity(n);
  validate(cfg);
  E.check_dim(alpha.size(), "symbol");
  const auto& a = alpha.moduli();
  if (a.is_zero()) return zero_estimate(a.size());
  if (n == 1) return dual_norm(E, a, cfg);
  if (cfg.closed_forms) {
    if (const auto c = lp_diagonal_exponent(E.lp_exponent(), 1.0, n)) return closed_form(E, a, *c, n);
  }
  return convex_max(E, diagonal_objective(nullptr, a, n), cfg);
}

SequenceSpace sup_ideal_space(const SequenceSpace& E, const SequenceSpace& F, std::size_t n,
                              const OptimizerConfig& cfg) {
  return ideal_space(E, &F, n, cfg);
}

SequenceSpace scalar_ideal_space(const SequenceSpace& E, std::size_t n, const OptimizerConfig& cfg) {
  return ideal_space(E, nullptr, n, cfg);
}

NormEstimate diag_integral_norm(const SequenceSpace& E, const SequenceSpace& F, std::size_t n,
                                const DiagonalSymbol& alpha, const OptimizerConfig& cfg) {
  check_arity(n);
  E.check_dim(alpha.size(), "symbol");
  F.check_dim(alpha.size(), "symbol");
  if (alpha.is_zero()) return zero_estimate(alpha.size());
  const auto D = sup_ideal_space(dual(E, cfg), dual(F, cfg), n, cfg);
  return integral_from(D, alpha, cfg);
}

NormEstimate diag_integral_scalar_norm(const SequenceSpace& E, std::size_t n, const DiagonalSymbol& alpha,
                                       const OptimizerConfig& cfg) {
  check_arity(n);
  E.check_dim(alpha.size(), "symbol");
  if (alpha.is_zero()) return zero_estimate(alpha.size());
  const auto D = scalar_ideal_space(dual(E, cfg), n, cfg);
  return integral_from(D, alpha, cfg);
}

DiagonalSymbol diagonal_part(const FiniteMultilinearOperator& T) {
  std::vector<double> alpha(T.dim(), 0.0);
  for (const auto& [key, value] : T.coefficients()) {
    const std::size_t j = key.back();
    if (std::all_of(key.begin(), key.end() - 1, [j](std::size_t i) { return i == j; })) alpha[j] = value;
  }
  return DiagonalSymbol::from_signed(alpha);
}

double pairing(const DiagonalSymbol& beta, const FiniteMultilinearOperator& T) {
  if (beta.size() != T.dim()) {
    throw DimensionError("symbol has length " + std::to_string(beta.size()) + " but operator dimension is " +
                         std::to_string(T.dim()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < T.dim(); ++i) {
    const double v = T.get(std::vector<std::size_t>(T.arity(), i), i);
    s += beta.signed_value(i) * v;
  }
  return s;
}

}  // namespace koethe
