#include "koethe/summing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "koethe/detail/random.hpp"
#include "koethe/errors.hpp"
#include "koethe/ideals.hpp"
#include "koethe/optimize.hpp"

namespace koethe {

void WitnessFamily::validate() const {
  if (vectors.empty()) throw PreconditionError("witness family must contain at least one vector");
  for (const auto& x : vectors) {
    if (x.size() != vectors.front().size()) throw DimensionError("witness family vectors differ in length");
  }
}

void validate(const SummingConfig& cfg) {
  if (cfg.m_max < 1) throw PreconditionError("m_max must be at least 1");
  if (cfg.witness_restarts < 0) throw PreconditionError("witness_restarts must be nonnegative");
  if (cfg.local_steps < 0) throw PreconditionError("local_steps must be nonnegative");
  if (!(cfg.inclusion_cap > 0.0)) throw PreconditionError("inclusion_cap must be positive");
  validate(cfg.base);
}

namespace {

double lp_value(std::span<const double> v, double p) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  if (m == 0.0 || std::isinf(p)) return m;
  double s = 0.0;
  for (double x : v) s += std::pow(x / m, p);
  return m * std::pow(s, 1.0 / p);
}

void lp_support(std::span<const double> v, double p, std::span<double> s) {
  const double nv = lp_value(v, p);
  std::fill(s.begin(), s.end(), 0.0);
  if (nv == 0.0) return;
  if (std::isinf(p)) {
    s[static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin())] = 1.0;
  } else {
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = std::pow(v[i] / nv, p - 1.0);
  }
}

void check_p(double p) {
  if (!(p >= 1.0)) throw PreconditionError("summing exponent p must be >= 1");
}

std::vector<double> pad(std::vector<double> v, std::size_t n) {
  v.resize(n, 0.0);
  return v;
}

}  // namespace

NormEstimate weak_p_norm(const SequenceSpace& E, const WitnessFamily& X, double p, const OptimizerConfig& cfg) {
  check_p(p);
  validate(cfg);
  X.validate();
  E.check_dim(X.dim(), "witness vector");
  const std::size_t N = E.dim();
  const std::size_t m = X.m();
  NormEstimate out;
  out.upper_bound = std::numeric_limits<double>::infinity();
  if (const auto q = E.lp_exponent(); q && (std::isinf(*q) || *q == 1.0)) {
    out.kind = EstimateKind::exact;
    std::vector<double> col(m);
    if (std::isinf(*q)) {
      // Dual ball is B_{l_1}; the convex aggregate peaks at a vertex e_k.
      std::size_t best = 0;
      for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t i = 0; i < m; ++i) col[i] = X.vectors[i][k];
        const double v = lp_value(col, p);
        if (v > out.value) {
          out.value = v;
          best = k;
        }
      }
      out.witness = CoefficientVector::unit(N, best);
    } else {
      // Dual ball is the unit cube; monotonicity puts the peak at the all-ones vertex.
      for (std::size_t i = 0; i < m; ++i) {
        col[i] = std::accumulate(X.vectors[i].begin(), X.vectors[i].end(), 0.0);
      }
      out.value = lp_value(col, p);
      out.witness = CoefficientVector(N, 1.0);
    }
    out.upper_bound = out.value;
    return out;
  }
  const auto D = dual(E, cfg);
  if (m == 1) return linear_max(D, X.vectors.front(), cfg);
  auto vecs = std::make_shared<std::vector<CoefficientVector>>(X.vectors);
  Objective f;
  f.degree = 1.0;
  f.value = [vecs, p](std::span<const double> xp) {
    std::vector<double> v(vecs->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = dot(xp, (*vecs)[i].view());
    return lp_value(v, p);
  };
  f.gradient = [vecs, p](std::span<const double> xp, std::span<double> g) {
    std::vector<double> v(vecs->size()), s(vecs->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = dot(xp, (*vecs)[i].view());
    lp_support(v, p, s);
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t k = 0; k < g.size(); ++k) g[k] += s[i] * (*vecs)[i][k];
    }
  };
  return convex_max(D, f, cfg);
}

NormEstimate inclusion_constant(const SequenceSpace& E, double p, const OptimizerConfig& cfg) {
  check_p(p);
  validate(cfg);
  const std::size_t N = E.dim();
  const auto Lp = make_space(SpaceDescriptor::lp(p, N));
  if (const auto q = E.lp_exponent(); q && cfg.closed_forms) {
    const double e = std::max(0.0, 1.0 / *q - 1.0 / p);
    NormEstimate out;
    out.kind = EstimateKind::exact;
    out.value = std::pow(static_cast<double>(N), e);
    out.upper_bound = out.value;
    out.witness = CoefficientVector(e > 0.0 ? retract(Lp, std::vector<double>(N, 1.0))
                                            : CoefficientVector::unit(N, 0).values());
    return out;
  }
  Objective f;
  auto space = std::make_shared<SequenceSpace>(E);
  f.degree = 1.0;
  f.value = [space](std::span<const double> x) { return space->eval(x); };
  f.gradient = [space](std::span<const double> x, std::span<double> g) {
    std::vector<double> s;
    space->norm_and_support(x, s);
    std::copy(s.begin(), s.end(), g.begin());
  };
  return convex_max(Lp, f, cfg);
}

double summing_ratio(const SequenceSpace& E_idx, double p, std::size_t n, const SequenceSpace& domain,
                     const std::optional<SequenceSpace>& target, const DiagonalSymbol& alpha,
                     const WitnessFamily& X, const OptimizerConfig& cfg) {
  check_p(p);
  if (n == 0) throw PreconditionError("arity n must be at least 1");
  X.validate();
  domain.check_dim(X.dim(), "witness vector");
  domain.check_dim(alpha.size(), "symbol");
  if (target) target->check_dim(alpha.size(), "symbol");
  if (X.m() > E_idx.dim()) {
    throw DimensionError("family size " + std::to_string(X.m()) + " exceeds index space dimension " +
                         std::to_string(E_idx.dim()));
  }
  const auto& a = alpha.moduli();
  const double dn = static_cast<double>(n);
  std::vector<double> values(X.m());
  std::vector<double> image(a.size());
  for (std::size_t i = 0; i < X.m(); ++i) {
    for (std::size_t k = 0; k < a.size(); ++k) image[k] = a[k] * std::pow(X.vectors[i][k], dn);
    values[i] = target ? target->eval(image) : std::accumulate(image.begin(), image.end(), 0.0);
  }
  const double num = E_idx.eval(pad(values, E_idx.dim()));
  if (num == 0.0) return 0.0;
  const double w = weak_p_norm(domain, X, p, cfg).value;
  if (w == 0.0) return 0.0;
  return num / std::pow(w, dn);
}

SummingReport summing_norm_lb(const SequenceSpace& E_idx, double p, std::size_t n, const SequenceSpace& domain,
                              const std::optional<SequenceSpace>& target, const DiagonalSymbol& alpha,
                              const SummingConfig& cfg) {
  validate(cfg);
  check_p(p);
  if (n == 0) throw PreconditionError("arity n must be at least 1");
  domain.check_dim(alpha.size(), "symbol");
  if (target) target->check_dim(alpha.size(), "symbol");
  const std::size_t N = alpha.size();

  SummingReport report;
  report.inclusion_constant =
      inclusion_constant(power(E_idx, 1.0 / static_cast<double>(n)), p, cfg.base).value;
  if (report.inclusion_constant > cfg.inclusion_cap) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "inclusion constant estimate c_p = %.6g of lp(%g) into E_idx^(1/%zu) exceeds cap %.6g",
                  report.inclusion_constant, p, n, cfg.inclusion_cap);
    throw PreconditionError(buf);
  }
  const auto q = domain.lp_exponent();
  report.weak_norms_exact = q && (std::isinf(*q) || *q == 1.0);
  report.estimate.upper_bound = std::numeric_limits<double>::infinity();
  report.estimate.kind = EstimateKind::lower_bound;
  report.estimate.witness = CoefficientVector(N);

  const std::size_t m_top = std::min(static_cast<std::size_t>(cfg.m_max), E_idx.dim());
  report.m_profile.assign(m_top, 0.0);
  if (alpha.is_zero()) return report;

  OptimizerConfig inner = cfg.base;
  inner.restarts = std::min(inner.restarts, 4);
  auto ratio = [&](const WitnessFamily& X) {
    return summing_ratio(E_idx, p, n, domain, target, alpha, X, inner);
  };
  const auto by_alpha = decreasing_order(alpha.moduli().view());

  for (std::size_t m = 1; m <= m_top; ++m) {
    double best = 0.0;
    WitnessFamily best_family;
    auto consider = [&](const WitnessFamily& X) {
      const double r = ratio(X);
      if (r > best) {
        best = r;
        best_family = X;
      }
      return r;
    };
    if (m <= N) {
      WitnessFamily units;
      for (std::size_t i = 0; i < m; ++i) units.vectors.push_back(CoefficientVector::unit(N, by_alpha[i]));
      consider(units);
    }
    consider(WitnessFamily{std::vector<CoefficientVector>(m, CoefficientVector(N, 1.0))});
    consider(WitnessFamily{std::vector<CoefficientVector>(m, CoefficientVector::unit(N, by_alpha[0]))});
    for (int i = 0; i < cfg.witness_restarts; ++i) {
      auto rng = detail::make_rng(cfg.base.seed, m, static_cast<std::uint64_t>(i));
      std::vector<std::vector<double>> raw(m, std::vector<double>(N));
      for (auto& v : raw) {
        for (double& e : v) e = detail::uniform01(rng) < 0.3 ? 0.0 : detail::uniform01(rng);
        v[detail::uniform_index(rng, N)] += 0.5;
      }
      auto pack = [&]() {
        WitnessFamily X;
        for (const auto& v : raw) X.vectors.emplace_back(v);
        return X;
      };
      double current = consider(pack());
      for (int step = 0; step < cfg.local_steps; ++step) {
        const std::size_t vi = detail::uniform_index(rng, m);
        const std::size_t k = detail::uniform_index(rng, N);
        const double old = raw[vi][k];
        const double u = detail::uniform01(rng);
        raw[vi][k] = u < 0.2 ? 0.0 : (u < 0.4 ? detail::uniform01(rng) : old * std::exp(2.0 * detail::uniform01(rng) - 1.0));
        const double r = consider(pack());
        if (r > current) {
          current = r;
        } else {
          raw[vi][k] = old;
        }
      }
    }
    report.m_profile[m - 1] = best;
    if (best > report.estimate.value) {
      report.estimate.value = best;
      report.best_family = best_family;
    }
  }
  if (!report.best_family.vectors.empty()) report.estimate.witness = report.best_family.vectors.front();
  report.estimate.restarts = cfg.witness_restarts;
  return report;
}

std::pair<double, double> convexification_witness_gap(const SequenceSpace& E_idx, double p, std::size_t n,
                                                      const SequenceSpace& F, const SequenceSpace& G,
                                                      const DiagonalSymbol& alpha, const WitnessFamily& X) {
  check_p(p);
  if (n == 0) throw PreconditionError("arity n must be at least 1");
  X.validate();
  F.check_dim(X.dim(), "witness vector");
  G.check_dim(alpha.size(), "symbol");
  F.check_dim(alpha.size(), "symbol");
  if (X.m() > E_idx.dim()) throw DimensionError("family size exceeds index space dimension");
  const double dn = static_cast<double>(n);
  const auto Gn = power(G, 1.0 / dn);
  const auto En = power(E_idx, 1.0 / dn);
  const auto& a = alpha.moduli();
  std::vector<double> left(X.m()), right(X.m()), u(a.size()), v(a.size());
  for (std::size_t i = 0; i < X.m(); ++i) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      u[k] = std::pow(a[k], 1.0 / dn) * X.vectors[i][k];
      v[k] = a[k] * std::pow(X.vectors[i][k], dn);
    }
    left[i] = Gn.eval(u);
    right[i] = G.eval(v);
  }
  return {En.eval(pad(left, E_idx.dim())), std::pow(E_idx.eval(pad(right, E_idx.dim())), 1.0 / dn)};
}

CompositionBound composition_witness_bound(const SequenceSpace& E_idx, const SequenceSpace& Y,
                                           const SequenceSpace& target, const DiagonalSymbol& alpha,
                                           const std::vector<DiagonalSymbol>& deltas,
                                           const std::vector<WitnessFamily>& families,
                                           const OptimizerConfig& cfg) {
  const std::size_t n = deltas.size();
  if (n == 0 || families.size() != n) {
    throw PreconditionError("composition needs one family and one diagonal factor per slot");
  }
  Y.check_dim(alpha.size(), "symbol");
  target.check_dim(alpha.size(), "symbol");
  const std::size_t m = families.front().m();
  for (std::size_t j = 0; j < n; ++j) {
    families[j].validate();
    Y.check_dim(families[j].dim(), "witness vector");
    Y.check_dim(deltas[j].size(), "factor symbol");
    if (families[j].m() != m) throw DimensionError("witness families differ in length");
  }
  if (m > E_idx.dim()) throw DimensionError("family size exceeds index space dimension");
  const std::size_t N = alpha.size();
  CompositionBound out;
  out.operator_norm = diag_sup_norm(Y, target, n, alpha, cfg).value;
  std::vector<double> image(N), lhs_terms(m);
  std::vector<std::vector<double>> slot_terms(n, std::vector<double>(m));
  std::vector<double> u(N);
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(image.begin(), image.end(), 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < N; ++k) {
        u[k] = deltas[j].moduli()[k] * families[j].vectors[i][k];
        image[k] *= u[k];
      }
      slot_terms[j][i] = Y.eval(u);
    }
    for (std::size_t k = 0; k < N; ++k) image[k] *= alpha.moduli()[k];
    lhs_terms[i] = target.eval(image);
  }
  out.lhs = E_idx.eval(pad(lhs_terms, E_idx.dim()));
  const auto En = power(E_idx, 1.0 / static_cast<double>(n));
  out.rhs = out.operator_norm;
  for (std::size_t j = 0; j < n; ++j) out.rhs *= En.eval(pad(slot_terms[j], E_idx.dim()));
  return out;
}

std::pair<double, double> inclusion_witness_check(const SequenceSpace& domain, const WitnessFamily& X,
                                                  const CoefficientVector& beta, double p, double q,
                                                  const OptimizerConfig& cfg) {
  check_p(p);
  if (!(q > p)) throw PreconditionError("inclusion check requires p < q");
  X.validate();
  if (beta.size() != X.m()) throw DimensionError("beta must have one entry per family vector");
  const double r = std::isinf(q) ? p : 1.0 / (1.0 / p - 1.0 / q);
  WitnessFamily scaled;
  for (std::size_t i = 0; i < X.m(); ++i) {
    std::vector<double> v(X.vectors[i].begin(), X.vectors[i].end());
    for (double& e : v) e *= beta[i];
    scaled.vectors.emplace_back(std::move(v));
  }
  const double lhs = weak_p_norm(domain, scaled, p, cfg).value;
  const double rhs = lp_value(beta.view(), r) * weak_p_norm(domain, X, q, cfg).value;
  return {lhs, rhs};
}

}  // namespace koethe
