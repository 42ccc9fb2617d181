#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "koethe/detail/lp.hpp"

namespace koethe::detail {

PackingSolution maximize_packing(const std::vector<double>& c,
                                 const std::vector<std::vector<double>>& rows) {
  const std::size_t n = c.size();
  const std::size_t m = rows.size();
  constexpr double eps = 1e-12;

  // Dictionary: basic_i = b_i - sum_j t[i][j] * nonbasic_j ; objective = v + sum_j d_j * nonbasic_j.
  std::vector<std::vector<double>> t = rows;
  std::vector<double> b(m, 1.0);
  std::vector<double> d = c;
  double v = 0.0;
  std::vector<std::size_t> basic(m);
  std::vector<std::size_t> nonbasic(n);
  for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;
  for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;

  const std::size_t budget = 50 * (n + m) + 1000;
  bool bland = false;
  int degenerate_run = 0;
  PackingSolution out;
  for (std::size_t iter = 0; iter < budget; ++iter) {
    std::size_t e = n;
    double best = eps;
    for (std::size_t j = 0; j < n; ++j) {
      if (d[j] <= eps) continue;
      if (bland) {
        if (e == n || nonbasic[j] < nonbasic[e]) e = j;
      } else if (d[j] > best) {
        best = d[j];
        e = j;
      }
    }
    if (e == n) {
      out.optimal = true;
      break;
    }
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][e] > eps) ratio = std::min(ratio, b[i] / t[i][e]);
    }
    if (std::isinf(ratio)) return out;
    std::size_t l = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][e] <= eps || b[i] / t[i][e] > ratio + eps * (1.0 + ratio)) continue;
      if (l == m || basic[i] < basic[l]) l = i;
    }

    degenerate_run = b[l] <= eps ? degenerate_run + 1 : 0;
    if (degenerate_run > 20) bland = true;

    const double piv = t[l][e];
    auto& row = t[l];
    for (std::size_t j = 0; j < n; ++j) row[j] = j == e ? 1.0 / piv : row[j] / piv;
    b[l] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == l) continue;
      const double f = t[i][e];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) t[i][j] = j == e ? -f * row[j] : t[i][j] - f * row[j];
      b[i] = std::max(0.0, b[i] - f * b[l]);
    }
    const double fe = d[e];
    for (std::size_t j = 0; j < n; ++j) d[j] = j == e ? -fe * row[j] : d[j] - fe * row[j];
    v += fe * b[l];
    std::swap(basic[l], nonbasic[e]);
  }
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basic[i] < n) out.x[basic[i]] = b[i];
  }
  out.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.value += c[j] * out.x[j];
  // A point violating a row means the pivots lost accuracy; its value bounds nothing.
  for (const auto& r : rows) {
    double rx = 0.0;
    for (std::size_t j = 0; j < n; ++j) rx += r[j] * out.x[j];
    if (rx > 1.0 + 1e-9) out.optimal = false;
  }
  return out;
}

}  // namespace koethe::detail
