#include "koethe/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "koethe/detail/lp.hpp"
#include "koethe/detail/random.hpp"
#include "koethe/errors.hpp"

namespace koethe {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxCuts = 400;

// Linear maximization restricted to a subset of coordinates (the support of z, in
// the working order). Vectors passed to the space are zero-padded to full length.
class LinearProblem {
 public:
  LinearProblem(const SequenceSpace& E, std::vector<std::size_t> idx, std::vector<double> c)
      : E_(E), idx_(std::move(idx)), c_(std::move(c)), full_(E.dim(), 0.0) {}

  std::size_t size() const { return idx_.size(); }
  const std::vector<double>& c() const { return c_; }
  const std::vector<std::size_t>& idx() const { return idx_; }

  double norm(std::span<const double> x) const {
    pad(x);
    return E_.eval(full_);
  }

  double norm_and_support(std::span<const double> x, std::vector<double>& s) const {
    pad(x);
    const double nx = E_.norm_and_support(full_, full_support_);
    s.resize(idx_.size());
    for (std::size_t k = 0; k < idx_.size(); ++k) s[k] = full_support_[idx_[k]];
    return nx;
  }

 private:
  void pad(std::span<const double> x) const {
    for (std::size_t k = 0; k < idx_.size(); ++k) full_[idx_[k]] = x[k];
  }

  const SequenceSpace& E_;
  std::vector<std::size_t> idx_;
  std::vector<double> c_;
  mutable std::vector<double> full_;
  mutable std::vector<double> full_support_;
};

class LinearSolver {
 public:
  LinearSolver(const LinearProblem& prob, const OptimizerConfig& cfg, bool convex)
      : prob_(prob), cfg_(cfg), convex_(convex), n_(prob.size()) {
    best_x_.assign(n_, 0.0);
    for (std::size_t k = 0; k < n_; ++k) {
      std::vector<double> e(n_, 0.0);
      e[k] = 1.0;
      const double ne = prob_.norm(e);
      box_.push_back(e);
      box_.back()[k] = ne;
    }
  }

  double best() const { return best_value_; }
  const std::vector<double>& best_x() const { return best_x_; }
  double upper() const { return upper_; }

  bool certified() const {
    return convex_ && std::isfinite(upper_) && upper_ - best_value_ <= cfg_.tolerance * upper_;
  }

  double gap() const {
    if (!std::isfinite(upper_) || upper_ == 0.0) return kInfinity;
    return std::max(0.0, (upper_ - best_value_) / upper_);
  }

  // Evaluates the radial projection of x onto the sphere and records a cut there.
  bool consider(const std::vector<double>& x) {
    std::vector<double> s;
    const double nx = prob_.norm_and_support(x, s);
    if (!(nx > 0.0) || !std::isfinite(nx)) return false;
    std::vector<double> y(x);
    for (double& v : y) v /= nx;
    const double val = dot(prob_.c(), y);
    add_cut(s);
    if (val > best_value_) {
      best_value_ = val;
      best_x_ = std::move(y);
      return true;
    }
    return false;
  }

  // Ascent of h(u) = log(c . e^u) - log ||e^u|| (scale invariant) by BFGS.
  void polish(const std::vector<double>& start) {
    const double top = *std::max_element(start.begin(), start.end());
    if (!(top > 0.0)) return;
    std::vector<double> u(n_);
    for (std::size_t k = 0; k < n_; ++k) u[k] = std::log(std::max(start[k], 1e-9 * top));
    std::vector<double> g(n_), x;
    double h = 0.0;
    if (!evaluate(u, h, g, x)) return;
    std::vector<double> H(n_ * n_, 0.0);
    for (std::size_t k = 0; k < n_; ++k) H[k * n_ + k] = 1.0;
    const int iterations = std::min(cfg_.max_iterations, 300);
    std::vector<double> d(n_), u2(n_), g2(n_), x2;
    for (int it = 0; it < iterations; ++it) {
      double gmax = 0.0;
      for (double v : g) gmax = std::max(gmax, std::abs(v));
      if (gmax < 1e-14) break;
      for (std::size_t i = 0; i < n_; ++i) {
        d[i] = 0.0;
        for (std::size_t j = 0; j < n_; ++j) d[i] += H[i * n_ + j] * g[j];
      }
      double slope = dot(d, g);
      if (!(slope > 0.0)) {
        std::fill(H.begin(), H.end(), 0.0);
        for (std::size_t k = 0; k < n_; ++k) H[k * n_ + k] = 1.0;
        d = g;
        slope = dot(g, g);
      }
      double dmax = 0.0;
      for (double v : d) dmax = std::max(dmax, std::abs(v));
      double t = std::min(1.0, 5.0 / dmax);
      double h2 = 0.0;
      bool accepted = false;
      for (int ls = 0; ls < 40; ++ls) {
        for (std::size_t k = 0; k < n_; ++k) u2[k] = u[k] + t * d[k];
        if (evaluate(u2, h2, g2, x2) && h2 >= h + 1e-4 * t * slope) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;
      // BFGS update for the minimization of -h.
      std::vector<double> s(n_), y(n_), Hy(n_);
      for (std::size_t k = 0; k < n_; ++k) {
        s[k] = u2[k] - u[k];
        y[k] = g[k] - g2[k];
      }
      const double sy = dot(s, y);
      if (sy > 1e-300) {
        for (std::size_t i = 0; i < n_; ++i) {
          Hy[i] = 0.0;
          for (std::size_t j = 0; j < n_; ++j) Hy[i] += H[i * n_ + j] * y[j];
        }
        const double yHy = dot(y, Hy);
        for (std::size_t i = 0; i < n_; ++i) {
          for (std::size_t j = 0; j < n_; ++j) {
            H[i * n_ + j] += ((sy + yHy) * s[i] * s[j]) / (sy * sy) - (Hy[i] * s[j] + s[i] * Hy[j]) / sy;
          }
        }
      }
      const double improvement = h2 - h;
      u = u2;
      g = g2;
      h = h2;
      x = x2;
      if (improvement < 1e-16) break;
    }
    consider(x);
  }

  // Cutting-plane iterations; returns true once certified.
  bool kelley(int iterations) {
    for (int it = 0; it < iterations; ++it) {
      std::vector<std::vector<double>> rows(box_);
      rows.insert(rows.end(), cuts_.begin(), cuts_.end());
      const auto sol = detail::maximize_packing(prob_.c(), rows);
      if (sol.optimal) upper_ = std::min(upper_, sol.value);
      if (certified()) return true;
      if (!sol.optimal) return false;
      const bool improved = consider(sol.x);
      if (improved) polish(best_x_);
      if (certified()) return true;
    }
    return certified();
  }

 private:
  bool evaluate(const std::vector<double>& u, double& h, std::vector<double>& g,
                std::vector<double>& x) const {
    const double shift = *std::max_element(u.begin(), u.end());
    x.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) x[k] = std::exp(std::max(u[k] - shift, -700.0));
    std::vector<double> s;
    const double nx = prob_.norm_and_support(x, s);
    const double cx = dot(prob_.c(), x);
    if (!(nx > 0.0) || !(cx > 0.0) || !std::isfinite(nx)) return false;
    h = std::log(cx) - std::log(nx);
    for (std::size_t k = 0; k < n_; ++k) g[k] = x[k] * (prob_.c()[k] / cx - s[k] / nx);
    return std::isfinite(h);
  }

  // Entries below 1e-9 of the row maximum are dropped; lowering a coefficient of a
  // nonnegative cut only relaxes it, and near-zero pivots destabilize the simplex.
  void add_cut(const std::vector<double>& s) {
    if (!convex_) return;
    double smax = 0.0;
    for (double v : s) smax = std::max(smax, v);
    if (!(smax > 0.0) || !std::isfinite(smax)) return;
    std::vector<double> cut(s);
    for (double& v : cut) {
      if (v < 1e-9 * smax) v = 0.0;
    }
    const auto same = [&](const std::vector<double>& r) {
      for (std::size_t k = 0; k < n_; ++k) {
        if (std::abs(r[k] - cut[k]) > 1e-13 * smax) return false;
      }
      return true;
    };
    if (std::any_of(box_.begin(), box_.end(), same) || std::any_of(cuts_.begin(), cuts_.end(), same)) return;
    if (cuts_.size() >= kMaxCuts) cuts_.erase(cuts_.begin());
    cuts_.push_back(std::move(cut));
  }

  const LinearProblem& prob_;
  const OptimizerConfig& cfg_;
  bool convex_;
  std::size_t n_;
  std::vector<std::vector<double>> box_;
  std::vector<std::vector<double>> cuts_;
  std::vector<double> best_x_;
  double best_value_ = 0.0;
  double upper_ = kInfinity;
};

std::vector<double> normalized_power(const std::vector<double>& c, double e) {
  std::vector<double> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[k] = std::pow(c[k], e);
  return out;
}

}  // namespace

Objective Objective::linear_functional(const CoefficientVector& z) {
  Objective f;
  auto coeffs = std::make_shared<std::vector<double>>(z.values());
  f.value = [coeffs](std::span<const double> x) { return dot(*coeffs, x); };
  f.gradient = [coeffs](std::span<const double>, std::span<double> g) {
    std::copy(coeffs->begin(), coeffs->end(), g.begin());
  };
  f.degree = 1.0;
  f.linear = z;
  return f;
}

Objective Objective::scaled_norm(const SequenceSpace& F, const CoefficientVector& scale) {
  F.check_dim(scale.size(), "scale vector");
  Objective f;
  auto space = std::make_shared<SequenceSpace>(F);
  auto a = std::make_shared<std::vector<double>>(scale.values());
  f.value = [space, a](std::span<const double> x) {
    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = (*a)[k] * x[k];
    return space->eval(y);
  };
  f.gradient = [space, a](std::span<const double> x, std::span<double> g) {
    std::vector<double> y(x.size()), s;
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = (*a)[k] * x[k];
    space->norm_and_support(y, s);
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = (*a)[k] * s[k];
  };
  f.degree = 1.0;
  return f;
}

std::vector<double> retract(const SequenceSpace& E, std::span<const double> x) {
  const double nx = E.eval(x);
  std::vector<double> out(x.begin(), x.end());
  if (nx > 1.0) {
    for (double& v : out) v /= nx;
  }
  return out;
}

NormEstimate linear_max(const SequenceSpace& E, const CoefficientVector& z, const OptimizerConfig& cfg) {
  validate(cfg);
  E.check_dim(z.size(), "objective vector");
  const std::size_t N = E.dim();
  NormEstimate out;
  out.witness = CoefficientVector(N);
  const double zmax = z.max();
  if (zmax == 0.0) {
    out.kind = EstimateKind::exact;
    return out;
  }

  // Symmetric spaces: solve for the decreasing rearrangement of z, then undo the permutation.
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (E.flags().symmetric) order = decreasing_order(z.view());
  std::vector<std::size_t> idx;
  std::vector<double> c;
  for (std::size_t k : order) {
    if (z[k] > 0.0) {
      idx.push_back(k);
      c.push_back(z[k] / zmax);
    }
  }
  const std::size_t n = idx.size();
  LinearProblem prob(E, idx, c);
  LinearSolver solver(prob, cfg, E.flags().convex());

  // Phase A: canonical starts.
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> e(n, 0.0);
    e[k] = 1.0;
    solver.consider(e);
  }
  solver.consider(std::vector<double>(n, 1.0));
  solver.consider(c);
  solver.consider(normalized_power(c, 0.5));
  solver.consider(normalized_power(c, 2.0));
  {
    const auto by_c = decreasing_order(c);
    std::vector<double> top(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      top[by_c[k]] = 1.0;
      solver.consider(top);
    }
  }
  solver.polish(solver.best_x());
  solver.polish(std::vector<double>(n, 1.0));
  const int kelley_budget = std::max(1, std::min(cfg.max_iterations, 60));
  bool done = solver.kelley(kelley_budget);

  // Phase B: seeded random restarts until certified.
  int used = 0;
  for (int i = 0; !done && i < cfg.restarts; ++i) {
    auto rng = detail::make_rng(cfg.seed, static_cast<std::uint64_t>(i));
    std::vector<double> x(n);
    for (double& v : x) v = detail::uniform01(rng) + 1e-3;
    solver.consider(x);
    solver.polish(x);
    done = solver.kelley(kelley_budget);
    used = i + 1;
  }

  std::vector<double> w(N, 0.0);
  for (std::size_t k = 0; k < n; ++k) w[idx[k]] = solver.best_x()[k];
  out.witness = CoefficientVector(std::move(w));
  out.value = dot(z.view(), out.witness.view());
  out.upper_bound = std::isfinite(solver.upper()) ? solver.upper() * zmax : kInfinity;
  out.residual = solver.gap();
  out.restarts = used;
  out.kind = done ? EstimateKind::exact : EstimateKind::lower_bound;
  return out;
}

NormEstimate dual_norm(const SequenceSpace& E, const CoefficientVector& z, const OptimizerConfig& cfg) {
  validate(cfg);
  E.check_dim(z.size(), "vector");
  if (cfg.closed_forms && E.lp_exponent()) {
    const double p = *E.lp_exponent();
    const double q = conjugate_exponent(p);
    NormEstimate out;
    out.kind = EstimateKind::exact;
    const auto lq = make_space(SpaceDescriptor::lp(q, E.dim()));
    out.value = lq.norm(z);
    out.upper_bound = out.value;
    const auto w = ball_argmax(E, z.view(), cfg);
    out.witness = CoefficientVector(w);
    return out;
  }
  return linear_max(E, z, cfg);
}

std::vector<double> ball_argmax(const SequenceSpace& E, std::span<const double> g,
                                const OptimizerConfig& cfg) {
  const std::size_t N = E.dim();
  std::vector<double> x(N, 0.0);
  double gmax = 0.0;
  for (double v : g) gmax = std::max(gmax, v);
  if (gmax == 0.0) return x;
  if (const auto p = E.lp_exponent(); p && !E.flags().optimization_backed) {
    if (*p == 1.0) {
      x[static_cast<std::size_t>(std::max_element(g.begin(), g.end()) - g.begin())] = 1.0;
    } else if (std::isinf(*p)) {
      std::fill(x.begin(), x.end(), 1.0);
    } else {
      const double q = conjugate_exponent(*p);
      const auto lq = make_space(SpaceDescriptor::lp(q, N));
      const double ng = lq.eval(g);
      for (std::size_t k = 0; k < N; ++k) x[k] = std::pow(g[k] / ng, q - 1.0);
    }
    return retract(E, x);
  }
  if (const auto* pre = E.predual()) {
    pre->norm_and_support(g, x);
    return x;
  }
  return linear_max(E, CoefficientVector(std::vector<double>(g.begin(), g.end())), cfg).witness.values();
}

NormEstimate convex_max(const SequenceSpace& E, const Objective& f, const OptimizerConfig& cfg) {
  validate(cfg);
  if (f.linear) return linear_max(E, *f.linear, cfg);
  const std::size_t N = E.dim();

  auto value = [&](std::span<const double> x) {
    const double v = f.value(x);
    if (std::isnan(v) || v < 0.0) throw ObjectiveError("objective returned NaN or a negative value");
    return v;
  };
  auto gradient = [&](std::span<const double> x) {
    std::vector<double> g(N, 0.0);
    if (f.gradient) {
      f.gradient(x, g);
    } else {
      const double fx = value(x);
      double scale = 0.0;
      for (double v : x) scale = std::max(scale, v);
      const double h = 1e-7 * (scale > 0.0 ? scale : 1.0);
      std::vector<double> y(x.begin(), x.end());
      for (std::size_t k = 0; k < N; ++k) {
        y[k] = x[k] + h;
        g[k] = std::max(0.0, (value(y) - fx) / h);
        y[k] = x[k];
      }
    }
    for (double& v : g) {
      if (!(v >= 0.0)) v = 0.0;
    }
    return g;
  };

  NormEstimate out;
  out.witness = CoefficientVector(N);
  out.upper_bound = kInfinity;
  auto sphere = [&](std::vector<double> x) {
    const double nx = E.eval(x);
    if (nx > 0.0) {
      for (double& v : x) v /= nx;
    }
    return x;
  };
  auto ascend = [&](std::vector<double> x) {
    double fx = value(x);
    double last_rel = 0.0;
    for (int it = 0; it < cfg.max_iterations; ++it) {
      const auto g = gradient(x);
      auto y = sphere(ball_argmax(E, g, cfg));
      const double fy = value(y);
      if (!(fy > fx)) break;
      last_rel = (fy - fx) / fy;
      x = std::move(y);
      fx = fy;
      if (last_rel < cfg.tolerance * 1e-3) break;
    }
    if (fx > out.value || (out.value == 0.0 && fx == 0.0 && out.witness.is_zero())) {
      out.value = fx;
      out.witness = CoefficientVector(x);
      out.residual = last_rel;
    }
  };

  for (std::size_t k = 0; k < N; ++k) {
    std::vector<double> e(N, 0.0);
    e[k] = 1.0;
    ascend(sphere(e));
  }
  const auto constant = sphere(std::vector<double>(N, 1.0));
  ascend(constant);
  const auto g0 = gradient(constant);
  if (std::any_of(g0.begin(), g0.end(), [](double v) { return v > 0.0; })) {
    ascend(sphere(ball_argmax(E, g0, cfg)));
    ascend(sphere(g0));
  }
  for (int i = 0; i < cfg.restarts; ++i) {
    auto rng = detail::make_rng(cfg.seed, static_cast<std::uint64_t>(i), 1);
    std::vector<double> x(N);
    for (double& v : x) v = detail::uniform01(rng);
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) continue;
    ascend(sphere(x));
  }
  out.restarts = cfg.restarts;
  out.kind = EstimateKind::lower_bound;
  return out;
}

NormEstimate grid_oracle(const SequenceSpace& E, const Objective& f, int resolution) {
  const std::size_t N = E.dim();
  if (N > 4) throw RefusalError("grid oracle refuses dimension " + std::to_string(N) + " > 4");
  if (resolution < 16) throw PreconditionError("grid oracle resolution must be at least 16");
  const std::size_t axes = N - 1;
  const auto R = static_cast<std::size_t>(resolution);
  double total = 1.0;
  for (std::size_t a = 0; a < axes; ++a) total *= static_cast<double>(R);
  if (total > 2e7) throw RefusalError("grid oracle refuses more than 2e7 grid points");
  const auto count = static_cast<std::size_t>(total);

  std::vector<double> cosines(R), sines(R);
  for (std::size_t i = 0; i < R; ++i) {
    const double phi = (std::acos(0.0)) * static_cast<double>(i) / static_cast<double>(R - 1);
    cosines[i] = i + 1 == R ? 0.0 : std::cos(phi);
    sines[i] = i == 0 ? 0.0 : std::sin(phi);
  }
  std::vector<double> values(count);
  std::vector<std::size_t> digit(axes, 0);
  std::vector<double> x(N);
  NormEstimate out;
  out.witness = CoefficientVector(N);
  double best = -1.0;
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rem = flat;
    for (std::size_t a = 0; a < axes; ++a) {
      digit[a] = rem % R;
      rem /= R;
    }
    double prod = 1.0;
    for (std::size_t a = 0; a < axes; ++a) {
      x[a] = prod * cosines[digit[a]];
      prod *= sines[digit[a]];
    }
    x[N - 1] = prod;
    for (double& v : x) v = std::max(v, 0.0);
    const double nx = E.eval(x);
    for (double& v : x) v /= nx;
    const double fx = f.value(x);
    if (std::isnan(fx) || fx < 0.0) throw ObjectiveError("objective returned NaN or a negative value");
    values[flat] = fx;
    if (fx > best) {
      best = fx;
      out.witness = CoefficientVector(x);
    }
  }
  double residual = 0.0;
  std::size_t stride = 1;
  for (std::size_t a = 0; a < axes; ++a) {
    double worst = 0.0;
    for (std::size_t flat = 0; flat < count; ++flat) {
      if ((flat / stride) % R == 0) continue;
      worst = std::max(worst, std::abs(values[flat] - values[flat - stride]));
    }
    residual += worst;
    stride *= R;
  }
  out.value = best;
  out.kind = EstimateKind::lower_bound;
  out.residual = residual;
  out.upper_bound = best + residual;
  out.restarts = 0;
  return out;
}

}  // namespace koethe
