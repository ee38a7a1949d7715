#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls back into the library code under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace oracle {

using BigRational = boost::rational<boost::multiprecision::cpp_int>;

// Half-unit beliefs (0, 1, 2) against 0/1 truth.
inline BigRational system_error(const std::vector<std::vector<int>>& beliefs,
                                const std::vector<int>& truth) {
  BigRational sum(0);
  std::int64_t count = 0;
  for (const auto& row : beliefs) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      BigRational b(row[i], 2);
      BigRational t(truth[i]);
      BigRational d = b - t;
      sum += d < 0 ? -d : d;
      ++count;
    }
  }
  return sum / BigRational(count);
}

inline BigRational f_score(const std::vector<std::vector<int>>& beliefs,
                           const std::vector<int>& truth) {
  std::int64_t tp = 0, tn = 0, fp = 0, fn = 0, u = 0;
  for (const auto& row : beliefs) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == 1) ++u;
      else if (row[i] == 2 && truth[i] == 1) ++tp;
      else if (row[i] == 2) ++fp;
      else if (truth[i] == 0) ++tn;
      else ++fn;
    }
  }
  BigRational num(2 * (tp + tn));
  BigRational den = num + BigRational(fp + fn) + BigRational(u, 2);
  return num / den;
}

struct WeightedEdge {
  int a, b;
  double w;
};

// Every simple path from `from` to `to`; returns the minimum length and the
// lexicographically smallest node sequence among minimum-length paths.
inline std::pair<double, std::vector<int>> brute_shortest(int m, const std::vector<WeightedEdge>& edges,
                                                          int from, int to) {
  std::vector<std::vector<std::pair<int, double>>> adj(m);
  for (auto e : edges) {
    adj[e.a].push_back({e.b, e.w});
    adj[e.b].push_back({e.a, e.w});
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_path;
  std::vector<int> path{from};
  std::vector<bool> used(m, false);
  used[from] = true;
  auto dfs = [&](auto&& self, int u, double len) -> void {
    if (u == to) {
      const double tol = 1e-9 * std::max(1.0, len);
      if (best_path.empty() || len < best - tol || (std::abs(len - best) <= tol && path < best_path)) {
        best = std::min(best, len);
        best_path = path;
      }
      return;
    }
    for (auto [v, w] : adj[u]) {
      if (used[v]) continue;
      used[v] = true;
      path.push_back(v);
      self(self, v, len + w);
      path.pop_back();
      used[v] = false;
    }
  };
  dfs(dfs, from, 0.0);
  return {best, best_path};
}

// Floyd-Warshall metric closure.
inline std::vector<double> closure(int m, const std::vector<WeightedEdge>& edges) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(m * m, inf);
  for (int i = 0; i < m; ++i) d[i * m + i] = 0;
  for (auto e : edges) {
    d[e.a * m + e.b] = std::min(d[e.a * m + e.b], e.w);
    d[e.b * m + e.a] = std::min(d[e.b * m + e.a], e.w);
  }
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) d[i * m + j] = std::min(d[i * m + j], d[i * m + k] + d[k * m + j]);
  return d;
}

// Optimal closed tour over the metric closure by enumerating permutations.
inline double brute_tsp(int m, const std::vector<double>& d) {
  std::vector<int> perm(m - 1);
  std::iota(perm.begin(), perm.end(), 1);
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = d[perm.front()] + d[perm.back() * m];
    for (std::size_t i = 0; i + 1 < perm.size(); ++i) len += d[perm[i] * m + perm[i + 1]];
    best = std::min(best, len);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Coefficients of det(xI - A), highest degree first (Faddeev-LeVerrier).
inline std::vector<double> char_poly(const std::vector<double>& a, int n) {
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  std::vector<double> mk(n * n, 0.0), am(n * n);
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{k-1} I
    std::vector<double> next(n * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += a[i * n + l] * mk[l * n + j];
        next[i * n + j] = s + (i == j ? c[k - 1] : 0.0);
      }
    mk = next;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += a[i * n + l] * mk[l * n + j];
        am[i * n + j] = s;
      }
    double tr = 0;
    for (int i = 0; i < n; ++i) tr += am[i * n + i];
    c[k] = -tr / k;
  }
  return c;
}

inline double horner(const std::vector<double>& c, double x) {
  double v = 0;
  for (double k : c) v = v * x + k;
  return v;
}

// Real roots of the characteristic polynomial inside the Gershgorin bound,
// bracketed on a fine grid and refined by bisection. Ascending.
inline std::vector<double> char_poly_roots(const std::vector<double>& a, int n) {
  auto c = char_poly(a, n);
  double bound = 0;
  for (int i = 0; i < n; ++i) {
    double r = 0;
    for (int j = 0; j < n; ++j) r += std::abs(a[i * n + j]);
    bound = std::max(bound, r);
  }
  bound += 1.0;
  const int steps = 200000;
  std::vector<double> roots;
  double x0 = -bound, f0 = horner(c, x0);
  for (int s = 1; s <= steps; ++s) {
    double x1 = -bound + 2 * bound * s / steps, f1 = horner(c, x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if ((f0 < 0) != (f1 < 0) && f1 != 0.0) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi), fm = horner(c, mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace oracle
