#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "patrol/metrics.hpp"

namespace patrol {

namespace {

double max_off_diagonal(const std::vector<double>& a, std::size_t n) {
  double m = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) m = std::max(m, std::abs(a[p * n + q]));
  }
  return m;
}

// Zero a[p][q] with one Jacobi rotation, applied on both sides.
void rotate(std::vector<double>& a, std::size_t n, std::size_t p, std::size_t q) {
  const double apq = a[p * n + q];
  if (apq == 0.0) return;
  const double app = a[p * n + p];
  const double aqq = a[q * n + q];
  const double theta = (aqq - app) / (2.0 * apq);
  const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a[k * n + p];
    const double akq = a[k * n + q];
    const double nkp = c * akp - s * akq;
    const double nkq = s * akp + c * akq;
    a[k * n + p] = a[p * n + k] = nkp;
    a[k * n + q] = a[q * n + k] = nkq;
  }
  a[p * n + p] = app - t * apq;
  a[q * n + q] = aqq + t * apq;
  a[p * n + q] = a[q * n + p] = 0.0;
}

}  // namespace

EigenResult jacobi_eigenvalues(std::span<const double> matrix, std::size_t n, double tolerance,
                               int max_sweeps) {
  if (matrix.size() != n * n) throw std::invalid_argument("jacobi: matrix is not n*n");
  std::vector<double> a(matrix.begin(), matrix.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a[i * n + j] - a[j * n + i]) > 1e-12 * (1.0 + std::abs(a[i * n + j]))) {
        throw std::invalid_argument("jacobi: matrix is not symmetric");
      }
    }
  }

  EigenResult out;
  while (max_off_diagonal(a, n) >= tolerance) {
    if (out.sweeps >= max_sweeps) {
      throw std::runtime_error("jacobi: no convergence within sweep limit");
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, n, p, q);
    }
    ++out.sweeps;
  }
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a[i * n + i];
  std::sort(out.values.begin(), out.values.end());
  return out;
}

}  // namespace patrol
