#include "koethe/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koethe/detail/random.hpp"
#include "koethe/errors.hpp"
#include "koethe/ideals.hpp"
#include "koethe/multipliers.hpp"
#include "koethe/optimize.hpp"
#include "koethe/space.hpp"
#include "koethe/summing.hpp"

namespace koethe {
namespace {

using Clock = std::chrono::steady_clock;
using detail::make_rng;
using detail::uniform01;
using detail::uniform_index;

/// Largest deviation seen so far plus the case that produced it.
struct Tally {
  double worst = 0.0;
  std::size_t cases = 0;
  std::string where;
  bool failed_hard = false;

  void add(double deviation, const std::string& label) {
    ++cases;
    if (!(deviation <= worst)) {  // NaN counts as worst
      worst = std::isnan(deviation) ? INFINITY : deviation;
      where = label;
    }
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Positive entries in (0.05, 1], with occasional exact zeros; never all zero.
CoefficientVector random_vector(std::mt19937_64& g, std::size_t n, double zero_rate = 0.1) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform01(g) < zero_rate ? 0.0 : 0.05 + 0.95 * uniform01(g);
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[uniform_index(g, n)] = 1.0;
  return CoefficientVector(std::move(v));
}

/// Direct lp evaluation, independent of the library's oracles.
double lp_direct(const CoefficientVector& x, double p) {
  if (std::isinf(p)) return x.max();
  double s = 0.0;
  for (double v : x) s += std::pow(v, p);
  return std::pow(s, 1.0 / p);
}

double conj(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

std::size_t top_dim(const VerifyOptions& o, std::size_t fallback, std::size_t cap) {
  const std::size_t n = o.N == 0 ? fallback : o.N;
  return std::clamp<std::size_t>(n, 2, cap);
}

/// Dimension for case i cycling through 2..top.
std::size_t cycle_dim(std::size_t i, std::size_t top) { return 2 + i % (top - 1); }

OptimizerConfig numeric(std::uint64_t seed) {
  OptimizerConfig c;
  c.closed_forms = false;
  c.seed = seed;
  return c;
}

SuiteReport finish(std::string name, const Tally& t, double tol, double limit, Clock::time_point start,
                   std::string extra = {}) {
  SuiteReport r;
  r.name = std::move(name);
  r.max_deviation = t.worst;
  r.tolerance = tol;
  r.cases = t.cases;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.time_limit = limit;
  const bool within = t.worst <= tol && !t.failed_hard;
  r.passed = within && r.seconds <= limit && t.cases > 0;
  r.detail = t.where.empty() ? std::string("no deviation") : "worst at " + t.where;
  if (!extra.empty()) r.detail += "; " + extra;
  if (r.seconds > limit) r.detail += fmt("; runtime %.1fs exceeds %.0fs", r.seconds, limit);
  return r;
}

// |dual_norm(lp(p), z) - ||z||_p'| relative, optimizer route only.
SuiteReport suite_holder(const VerifyOptions& o) {
  const auto start = Clock::now();
  Tally t;
  const std::size_t top = top_dim(o, 8, 64);
  int ip = 0;
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    ++ip;
    for (std::size_t N = 2; N <= top; ++N) {
      const auto E = make_space(SpaceDescriptor::lp(p, N));
      for (int i = 0; i < 100; ++i) {
        auto g = make_rng(o.seed, 100 + ip, N * 1000 + i);
        const auto z = random_vector(g, N);
        const auto est = dual_norm(E, z, numeric(o.seed + i));
        t.add(rel(est.value, lp_direct(z, conj(p))), fmt("p=%g N=%zu case %d", p, N, i));
      }
    }
  }
  return finish("holder", t, 1e-6, 10.0, start);
}

// dual_norm(dual(E), x) = norm(E, x), everything numeric.
SuiteReport suite_reflexivity(const VerifyOptions& o) {
  const auto start = Clock::now();
  Tally t;
  const std::size_t top = top_dim(o, 6, 16);
  const std::vector<std::pair<std::string, SpaceDescriptor>> spaces = {
      {"lp(1.5)", SpaceDescriptor::lp(1.5)},
      {"lorentz(theta=0.5,p=1)", SpaceDescriptor::lorentz(PowerWeights{0.5}, 1.0)},
      {"lorentz(theta=0.5,p=2)", SpaceDescriptor::lorentz(PowerWeights{0.5}, 2.0)},
  };
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    for (int i = 0; i < 50; ++i) {
      const std::size_t N = cycle_dim(i, top);
      const auto cfg = numeric(o.seed + i);
      const auto E = make_space(spaces[s].second, N);
      const auto Ex = dual(E, cfg);
      auto g = make_rng(o.seed, 200 + s, i);
      const auto x = random_vector(g, N);
      const double lhs = dual_norm(Ex, x, cfg).value;
      t.add(rel(lhs, E.norm(x)), fmt("%s N=%zu case %d", spaces[s].first.c_str(), N, i));
    }
  }
  return finish("reflexivity", t, 1e-5, 60.0, start);
}

SpaceDescriptor random_descriptor(std::mt19937_64& g) {
  const double theta = 0.2 + 0.8 * uniform01(g);
  const double p = 1.0 + 3.0 * uniform01(g);
  switch (uniform_index(g, 6)) {
    case 0:
      return SpaceDescriptor::lp(uniform01(g) < 0.15 ? kInf : p);
    case 1:
      return SpaceDescriptor::lorentz(PowerWeights{theta}, p);
    case 2:
      return SpaceDescriptor::lorentz(PowerWeights{theta}, 1.0);
    case 3:
      return SpaceDescriptor::marcinkiewicz(PowerWeights{theta});
    case 4:
      // r <= p keeps the convexity hypothesis.
      return SpaceDescriptor::power(SpaceDescriptor::lp(p), 1.0 + (p - 1.0) * uniform01(g));
    default:
      return SpaceDescriptor::power(SpaceDescriptor::lorentz(PowerWeights{theta}, p), 0.3 + 0.7 * uniform01(g));
  }
}

// linear_max against the brute-force grid on random spaces.
SuiteReport suite_oracle(const VerifyOptions& o) {
  const auto start = Clock::now();
  Tally t;
  const std::size_t top = top_dim(o, 3, 3);
  double worst_residual = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t N = cycle_dim(i, top);
    auto g = make_rng(o.seed, 300, i);
    const auto d = random_descriptor(g);
    const auto E = make_space(d, N);
    const auto z = random_vector(g, N, 0.0);
    const auto lm = linear_max(E, z, numeric(o.seed + i));
    const auto grid = grid_oracle(E, Objective::linear_functional(z), N == 2 ? 1024 : 256);
    worst_residual = std::max(worst_residual, grid.residual);
    // Excess of the gap over the grid's own error bound.
    const double excess = std::abs(lm.value - grid.value) - grid.residual;
    t.add(std::max(0.0, excess), fmt("%s N=%zu case %d", to_shorthand(d).c_str(), N, i));
  }
  return finish("oracle", t, 1e-6, 60.0, start, fmt("largest grid residual %.3g", worst_residual));
}

// Numerical M(lq, d(w,p)) against the closed-form Lorentz descriptor.
SuiteReport suite_lorentz_multipliers(const VerifyOptions& o) {
  const auto start = Clock::now();
  Tally t;
  const std::size_t top = top_dim(o, 12, 64);
  double two_sided_gap = 0.0;
  int grid_checks = 0;
  int ic = 0;
  for (double theta : {0.3, 0.5, 0.8}) {
    for (auto [p, q] : {std::pair{1.0, 2.0}, {2.0, 4.0}, {1.5, 3.0}}) {
      ++ic;
      for (int i = 0; i < 30; ++i) {
        const std::size_t N = cycle_dim(i, top);
        auto g = make_rng(o.seed, 400 + ic, i);
        const auto alpha = random_vector(g, N);
        const auto E = make_space(SpaceDescriptor::lp(q, N));
        const auto F = make_space(SpaceDescriptor::lorentz(PowerWeights{theta}, p, N));
        const double closed = make_space(lorentz_multiplier_descriptor(q, PowerWeights{theta}, p, N)).norm(alpha);
        const double num = multiplier_norm(E, F, alpha, numeric(o.seed + i)).value;
        const std::string label = fmt("theta=%g p=%g q=%g N=%zu case %d", theta, p, q, N, i);
        if (N <= 4) {
          t.add(rel(num, closed), label);
          two_sided_gap = std::max(two_sided_gap, rel(num, closed));
          const auto grid = grid_oracle(E, Objective::scaled_norm(F, alpha), N == 2 ? 1024 : N == 3 ? 256 : 64);
          ++grid_checks;
          // Grid points are feasible: never above the true value, and within residual of it.
          const double above = (grid.value - closed) / closed;
          const double below = (closed - grid.value - grid.residual) / closed;
          t.add(std::max({0.0, above, below}), label + " (grid)");
        } else {
          t.add(std::max(0.0, (num - closed) / closed), label);
        }
      }
    }
  }
  return finish("lorentz-multipliers", t, 1e-4, 300.0, start,
                fmt("two-sided gap %.3g over N<=4, %d grid cross-checks", two_sided_gap, grid_checks));
}

// l_2(B; lp, lq) against M(lp^2, lq), both numeric.
SuiteReport suite_lnconvexo(const VerifyOptions& o) {
  const auto start = Clock::now();
  Tally t;
  const std::size_t top = top_dim(o, 6, 32);
  double closed_gap = 0.0;
  int ic = 0;
  for (double p : {2.0, 3.0, 4.0}) {
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
      ++ic;
      for (int i = 0; i < 20; ++i) {
        const std::size_t N = cycle_dim(i, top);
        auto g = make_rng(o.seed, 500 + ic, i);
        const auto alpha = random_vector(g, N);
        const auto E = make_space(SpaceDescriptor::lp(p, N));
        const auto F = make_space(SpaceDescriptor::lp(q, N));
        const auto cfg = numeric(o.seed + i);
        const double lhs = diag_sup_norm(E, F, 2, alpha, cfg).value;
        const double rhs = multiplier_norm(power(E, 2.0), F, alpha, cfg).value;
        t.add(rel(lhs, rhs), fmt("p=%g q=%g N=%zu case %d", p, q, N, i));
        closed_gap = std::max(closed_gap, rel(lhs, diag_sup_norm(E, F, 2, alpha).value));
      }
    }
  }
  return finish("lnconvexo", t, 1e-4, 120.0, start, fmt("largest gap to closed form %.3g", closed_gap));
}

// l_2(B; l3, l2^x) against sup over B_l2 of the scalar ideal norm of alpha.beta.
SuiteReport suite_ln_multiplicadores(const VerifyOptions& o) {
  const auto start = Clock::now();
  Tally t;
  const std::size_t top = top_dim(o, 5, 16);
  for (int i = 0; i < 20; ++i) {
    const std::size_t N = cycle_dim(i, top);
    auto g = make_rng(o.seed, 600, i);
    const auto alpha = random_vector(g, N);
    const auto cfg = numeric(o.seed + i);
    const auto E = make_space(SpaceDescriptor::lp(3.0, N));
    const auto F = make_space(SpaceDescriptor::lp(2.0, N));
    const double lhs = diag_sup_norm(E, dual(F, cfg), 2, alpha, cfg).value;
    const double rhs = multiplier_norm(F, scalar_ideal_space(E, 2, cfg), alpha, cfg).value;
    t.add(rel(lhs, rhs), fmt("N=%zu case %d", N, i));
  }
  return finish("ln-multiplicadores", t, 1e-4, 120.0, start);
}

// Integral norm on l1 with scalar target is ||alpha||_inf; pairing bound with l_2(B; l_inf).
SuiteReport suite_integral_duality(const VerifyOptions& o) {
  const auto start = Clock::now();
  Tally t;
  const std::size_t top = top_dim(o, 4, 16);
  for (int i = 0; i < 10; ++i) {
    const std::size_t N = cycle_dim(i, top);
    auto g = make_rng(o.seed, 700, i);
    const auto alpha = random_vector(g, N);
    const auto E = make_space(SpaceDescriptor::lp(1.0, N));
    const double v = diag_integral_scalar_norm(E, 2, alpha, numeric(o.seed + i)).value;
    t.add(rel(v, alpha.max()), fmt("closed form N=%zu case %d", N, i));
  }
  double worst_ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t N = cycle_dim(i, top);
    auto g = make_rng(o.seed, 701, i);
    std::vector<double> a(N), b(N);
    for (std::size_t k = 0; k < N; ++k) {
      a[k] = (uniform01(g) < 0.5 ? -1.0 : 1.0) * uniform01(g);
      b[k] = (uniform01(g) < 0.5 ? -1.0 : 1.0) * uniform01(g);
    }
    // Every fourth pair aligned, where the bound is tightest.
    if (i % 4 == 0) {
      for (std::size_t k = 0; k < N; ++k) b[k] = a[k] < 0 ? -1.0 : 1.0;
    }
    const auto alpha = DiagonalSymbol::from_signed(a);
    const auto beta = DiagonalSymbol::from_signed(b);
    const auto cfg = numeric(o.seed + i);
    const auto E = make_space(SpaceDescriptor::lp(1.0, N));
    const double lhs = std::abs(pairing(beta, FiniteMultilinearOperator::diagonal(2, alpha)));
    const double integral = diag_integral_scalar_norm(E, 2, beta, cfg).value;
    const double sup = diag_scalar_norm(dual(E), 2, alpha, cfg).value;
    const double ratio = integral * sup == 0.0 ? 0.0 : lhs / (integral * sup);
    worst_ratio = std::max(worst_ratio, ratio);
    // Mapped onto the 1e-3 scale: excess over the (1 + 1e-4) factor, failing beyond it.
    if (ratio > 1.0 + 1e-4) {
      t.failed_hard = true;
      t.add(INFINITY, fmt("pairing N=%zu case %d ratio %.6g", N, i, ratio));
    } else {
      ++t.cases;
    }
  }
  return finish("integral-duality", t, 1e-3, 300.0, start,
                fmt("largest pairing ratio %.9g (bound 1+1e-4)", worst_ratio));
}

// n = 1 anchor: pi_(lp, p) of D_alpha : l_inf -> lp is ||alpha||_p.
SuiteReport suite_summing_anchor(const VerifyOptions& o) {
  const auto start = Clock::now();
  Tally t;
  const std::size_t top = top_dim(o, 4, 8);
  bool monotone = true;
  std::string monotone_where;
  int ip = 0;
  for (double p : {1.0, 2.0}) {
    ++ip;
    for (int i = 0; i < 6; ++i) {
      const std::size_t N = cycle_dim(i, top);
      auto g = make_rng(o.seed, 800 + ip, i);
      const auto alpha = random_vector(g, N);
      const auto target = make_space(SpaceDescriptor::lp(p, N));
      const auto domain = make_space(SpaceDescriptor::lp(kInf, N));
      SummingConfig sc;
      sc.base.seed = o.seed + i;
      const auto idx = make_space(SpaceDescriptor::lp(p, static_cast<std::size_t>(sc.m_max)));
      double prev = 0.0;
      for (int m : {1, 2, 4, 8}) {
        sc.m_max = m;
        const double v = summing_norm_lb(idx, p, 1, domain, target, alpha, sc).estimate.value;
        if (v < prev) {
          monotone = false;
          monotone_where = fmt("p=%g N=%zu case %d m_max=%d", p, N, i, m);
        }
        prev = v;
      }
      t.add(rel(prev, lp_direct(alpha, p)), fmt("p=%g N=%zu case %d", p, N, i));
    }
  }
  if (!monotone) t.failed_hard = true;
  return finish("summing-anchor", t, 0.05, 120.0, start,
                monotone ? std::string("monotone in m_max") : "not monotone at " + monotone_where);
}

// Per-witness convexification identity.
SuiteReport suite_convexification(const VerifyOptions& o) {
  const auto start = Clock::now();
  Tally t;
  const std::size_t N = top_dim(o, 4, 64);
  const std::vector<SpaceDescriptor> idx_kinds = {
      SpaceDescriptor::lp(1.0), SpaceDescriptor::lp(2.0), SpaceDescriptor::lp(kInf),
      SpaceDescriptor::lorentz(PowerWeights{0.5}, 1.0), SpaceDescriptor::marcinkiewicz(PowerWeights{0.5})};
  const std::vector<SpaceDescriptor> g_kinds = {
      SpaceDescriptor::lp(1.0), SpaceDescriptor::lp(3.0), SpaceDescriptor::lp(kInf),
      SpaceDescriptor::lorentz(PowerWeights{0.3}, 2.0), SpaceDescriptor::marcinkiewicz(PowerWeights{0.7})};
  const auto F = make_space(SpaceDescriptor::lp(kInf, N));
  for (int i = 0; i < 500; ++i) {
    auto g = make_rng(o.seed, 900, i);
    const std::size_t n = 2 + i % 2;
    const std::size_t m = 1 + uniform_index(g, 6);
    const auto E_idx = make_space(idx_kinds[uniform_index(g, idx_kinds.size())], m);
    const auto G = make_space(g_kinds[uniform_index(g, g_kinds.size())], N);
    const auto alpha = random_vector(g, N);
    WitnessFamily X;
    for (std::size_t j = 0; j < m; ++j) X.vectors.push_back(random_vector(g, N, 0.2));
    const auto [a, b] = convexification_witness_gap(E_idx, 2.0, n, F, G, alpha, X);
    t.add(rel(a, b), fmt("%s/%s n=%zu m=%zu case %d", E_idx.label().c_str(), G.label().c_str(), n, m, i));
  }
  return finish("convexification", t, 1e-10, 10.0, start);
}

struct AxiomSpace {
  std::string name;
  std::function<SequenceSpace(std::size_t)> build;
};

std::vector<AxiomSpace> axiom_catalog(std::uint64_t seed) {
  const auto d = [](SpaceDescriptor desc) {
    return [desc](std::size_t N) { return make_space(desc, N); };
  };
  const auto lor = [](double theta, double p) { return SpaceDescriptor::lorentz(PowerWeights{theta}, p); };
  const auto mar = [](double theta) { return SpaceDescriptor::marcinkiewicz(PowerWeights{theta}); };
  // Sampled axioms hold at 1e-12 only if the inner certificate gap is tighter than that.
  OptimizerConfig inner = numeric(seed);
  inner.tolerance = 1e-13;
  // Polyhedral ball: cutting planes terminate at an exact vertex.
  OptimizerConfig vertex = inner;
  vertex.tolerance = 1e-15;
  return {
      {"lp(1)", d(SpaceDescriptor::lp(1.0))},
      {"lp(1.5)", d(SpaceDescriptor::lp(1.5))},
      {"lp(2)", d(SpaceDescriptor::lp(2.0))},
      {"lp(3)", d(SpaceDescriptor::lp(3.0))},
      {"lp(inf)", d(SpaceDescriptor::lp(kInf))},
      {"lorentz(0.5,1)", d(lor(0.5, 1.0))},
      {"lorentz(0.3,2)", d(lor(0.3, 2.0))},
      {"lorentz(0.8,3)", d(lor(0.8, 3.0))},
      {"lorentz(explicit,1.5)",
       [](std::size_t N) {
         std::vector<double> w(N);
         for (std::size_t k = 0; k < N; ++k) w[k] = 1.0 / (1.0 + 0.7 * static_cast<double>(k));
         return make_space(SpaceDescriptor::lorentz(ExplicitWeights{w}, 1.5), N);
       }},
      {"marcinkiewicz(0.5)", d(mar(0.5))},
      {"marcinkiewicz(1)", d(mar(1.0))},
      {"power(lp(4),2)", d(SpaceDescriptor::power(SpaceDescriptor::lp(4.0), 2.0))},
      {"power(lp(2),0.5)", d(SpaceDescriptor::power(SpaceDescriptor::lp(2.0), 0.5))},
      {"power(lorentz(0.5,3),2)", d(SpaceDescriptor::power(lor(0.5, 3.0), 2.0))},
      {"power(marcinkiewicz(0.5),0.7)", d(SpaceDescriptor::power(mar(0.5), 0.7))},
      {"dual(lp(3))", d(SpaceDescriptor::dual(SpaceDescriptor::lp(3.0)))},
      {"dual(lorentz(0.5,1)) numeric", [=](std::size_t N) { return dual(make_space(lor(0.5, 1.0), N), inner); }},
      {"dual(lorentz(0.5,2)) numeric", [=](std::size_t N) { return dual(make_space(lor(0.5, 2.0), N), inner); }},
      {"dual(marcinkiewicz(0.5)) numeric", [=](std::size_t N) { return dual(make_space(mar(0.5), N), vertex); }},
  };
}

// Homogeneity, triangle, normality, rearrangement invariance and the power round trip.
SuiteReport suite_norm_axioms(const VerifyOptions& o) {
  const auto start = Clock::now();
  const std::size_t top = top_dim(o, 8, 32);
  const auto catalog = axiom_catalog(o.seed);
  // Each axiom has its own tolerance; deviations are reported as multiples of it.
  Tally t;
  std::map<std::string, double> worst;
  const auto record = [&](const char* axiom, double dev, double tol, const std::string& label) {
    worst[axiom] = std::max(worst[axiom], dev);
    t.add(dev / tol, std::string(axiom) + " " + label);
  };
  std::map<std::pair<std::size_t, std::size_t>, SequenceSpace> cache;
  const auto space = [&](std::size_t s, std::size_t N) -> const SequenceSpace& {
    auto it = cache.find({s, N});
    if (it == cache.end()) it = cache.emplace(std::pair{s, N}, catalog[s].build(N)).first;
    return it->second;
  };
  for (int i = 0; i < 1000; ++i) {
    auto g = make_rng(o.seed, 1000, i);
    const std::size_t s = static_cast<std::size_t>(i) % catalog.size();
    const std::size_t N = 1 + uniform_index(g, top);
    const auto& E = space(s, N);
    const std::string label = fmt("%s N=%zu case %d", catalog[s].name.c_str(), N, i);
    const auto x = random_vector(g, N, 0.2);
    const auto y = random_vector(g, N, 0.2);

    const double lambda = std::exp(8.0 * uniform01(g) - 4.0);
    std::vector<double> lx(N);
    for (std::size_t k = 0; k < N; ++k) lx[k] = lambda * x[k];
    const double nlx = E.norm(CoefficientVector(lx));
    record("homogeneity", nlx == 0.0 ? 0.0 : std::abs(nlx - lambda * E.norm(x)) / nlx, 1e-12, label);

    std::vector<double> sum(N);
    for (std::size_t k = 0; k < N; ++k) sum[k] = x[k] + y[k];
    if (E.flags().convex()) {
      record("triangle", std::max(0.0, E.norm(CoefficientVector(sum)) - E.norm(x) - E.norm(y)), 1e-9, label);
    }

    std::vector<double> below(N);
    for (std::size_t k = 0; k < N; ++k) below[k] = x[k] * uniform01(g);
    record("normality", std::max(0.0, E.norm(CoefficientVector(below)) - E.norm(x)), 1e-12, label);

    if (E.flags().symmetric) {
      std::vector<double> shuffled(x.begin(), x.end());
      std::shuffle(shuffled.begin(), shuffled.end(), g);
      record("rearrangement", rel(E.norm(CoefficientVector(shuffled)), E.norm(rearrange(x))), 1e-12, label);
    }

    const double r = 0.25 + 3.75 * uniform01(g);
    record("power round trip", rel(power(power(E, r), 1.0 / r).norm(x), E.norm(x)), 1e-10, label);
  }
  std::string summary;
  for (const auto& [axiom, dev] : worst) summary += fmt("%s%s %.3g", summary.empty() ? "" : ", ", axiom.c_str(), dev);
  t.cases = 1000;
  return finish("norm-axioms", t, 1.0, 30.0, start, summary + " (deviation column in tolerance units)");
}

using SuiteFn = SuiteReport (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"holder", suite_holder},
      {"reflexivity", suite_reflexivity},
      {"oracle", suite_oracle},
      {"lorentz-multipliers", suite_lorentz_multipliers},
      {"lnconvexo", suite_lnconvexo},
      {"ln-multiplicadores", suite_ln_multiplicadores},
      {"integral-duality", suite_integral_duality},
      {"summing-anchor", suite_summing_anchor},
      {"convexification", suite_convexification},
      {"norm-axioms", suite_norm_axioms},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

SuiteReport run_suite(std::string_view name, const VerifyOptions& opts) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) return fn(opts);
  }
  std::string known;
  for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw PreconditionError("unknown suite '" + std::string(name) + "' (known: all, " + known + ")");
}

std::string summary_line(const SuiteReport& r) {
  const auto& names = suite_names();
  const auto pos = std::find(names.begin(), names.end(), r.name) - names.begin() + 1;
  char head[160];
  std::snprintf(head, sizeof head, "%s  %2d %-20s max_dev=%.3e tol=%.1e cases=%zu time=%.2fs/%.0fs  ",
                r.passed ? "PASS" : "FAIL", static_cast<int>(pos), r.name.c_str(), r.max_deviation, r.tolerance,
                r.cases, r.seconds, r.time_limit);
  return head + r.detail;
}

std::vector<SuiteReport> run_suites(std::string_view name, const VerifyOptions& opts) {
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite(n, opts));
  } else {
    out.push_back(run_suite(name, opts));
  }
  return out;
}

}  // namespace koethe
