#include "rmtlab/sym_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace rmtlab {

namespace {

constexpr int kMaxSweeps = 50;

double hypot_stable(double a, double b) {
  const double absa = std::abs(a);
  const double absb = std::abs(b);
  if (absa > absb) {
    const double r = absb / absa;
    return absa * std::sqrt(1.0 + r * r);
  }
  if (absb == 0.0) return 0.0;
  const double r = absa / absb;
  return absb * std::sqrt(1.0 + r * r);
}

void check_symmetry(const std::vector<double>& a, int n) {
  double amax = 0.0;
  for (double v : a) amax = std::max(amax, std::abs(v));
  const double tol = 1e-10 * std::max(1.0, amax);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(a[static_cast<std::size_t>(i) * n + j] -
                   a[static_cast<std::size_t>(j) * n + i]) > tol) {
        throw std::invalid_argument("symmetric_eigenvalues: symmetry defect above tolerance");
      }
    }
  }
}

}  // namespace

SymTridiag householder_tridiagonalize(std::vector<double>& a, int n) {
  if (n < 1) throw std::invalid_argument("householder_tridiagonalize: n must be >= 1");
  if (a.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("householder_tridiagonalize: bad matrix size");
  }
  SymTridiag t;
  t.diag.assign(n, 0.0);
  t.off.assign(std::max(0, n - 1), 0.0);
  if (n == 1) {
    t.diag[0] = a[0];
    return t;
  }

  std::vector<double> p(n, 0.0);
  // Work on full (not triangular) storage: the reflector-apply loops then run
  // over contiguous rows, which is what makes the O(n^3) part vectorize.
  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double* rowi = a.data() + static_cast<std::size_t>(i) * n;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(rowi[k]);
      if (scale == 0.0) {
        t.off[i - 1] = rowi[l];
      } else {
        for (int k = 0; k <= l; ++k) {
          rowi[k] /= scale;
          h += rowi[k] * rowi[k];
        }
        double f = rowi[l];
        const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        t.off[i - 1] = scale * g;
        h -= f * g;
        rowi[l] = f - g;
        // p = A u / h over the leading (l+1) x (l+1) block.
        for (int j = 0; j <= l; ++j) {
          const double* rowj = a.data() + static_cast<std::size_t>(j) * n;
          double acc = 0.0;
          for (int k = 0; k <= l; ++k) acc += rowj[k] * rowi[k];
          p[j] = acc / h;
        }
        double K = 0.0;
        for (int j = 0; j <= l; ++j) K += p[j] * rowi[j];
        K /= 2.0 * h;
        for (int j = 0; j <= l; ++j) p[j] -= K * rowi[j];  // p := w
        // Rank-2 update A -= u w^T + w u^T on the leading block.
        for (int j = 0; j <= l; ++j) {
          double* rowj = a.data() + static_cast<std::size_t>(j) * n;
          const double uj = rowi[j];
          const double wj = p[j];
          for (int k = 0; k <= l; ++k) {
            rowj[k] -= uj * p[k] + wj * rowi[k];
          }
        }
      }
    } else {
      t.off[i - 1] = rowi[l];
    }
  }
  for (int i = 0; i < n; ++i) {
    t.diag[i] = a[static_cast<std::size_t>(i) * n + i];
  }
  return t;
}

std::vector<double> tridiagonal_eigenvalues(SymTridiag t) {
  const int n = static_cast<int>(t.diag.size());
  if (n == 0) return {};
  if (t.off.size() + 1 != t.diag.size()) {
    throw std::invalid_argument("tridiagonal_eigenvalues: off size must be n-1");
  }
  std::vector<double>& d = t.diag;
  std::vector<double> e(n, 0.0);
  for (int i = 0; i < n - 1; ++i) e[i] = t.off[i];

  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps) {
          throw std::runtime_error("tridiagonal_eigenvalues: QL failed to converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot_stable(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, pshift = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = hypot_stable(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= pshift;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - pshift;
          r = (d[i] - g) * s + 2.0 * c * b;
          pshift = s * r;
          d[i + 1] = g + pshift;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= pshift;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> symmetric_eigenvalues(const std::vector<double>& a, int n) {
  if (n < 1 || a.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("symmetric_eigenvalues: bad dimensions");
  }
  check_symmetry(a, n);
  std::vector<double> work = a;
  return tridiagonal_eigenvalues(householder_tridiagonalize(work, n));
}

std::vector<double> hermitian_eigenvalues(const std::vector<double>& re,
                                          const std::vector<double>& im, int n) {
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  if (n < 1 || re.size() != nn || im.size() != nn) {
    throw std::invalid_argument("hermitian_eigenvalues: bad dimensions");
  }
  // Hermiticity check: X symmetric, Y antisymmetric (zero diagonal).
  double amax = 0.0;
  for (std::size_t k = 0; k < nn; ++k) {
    amax = std::max(amax, std::max(std::abs(re[k]), std::abs(im[k])));
  }
  const double tol = 1e-10 * std::max(1.0, amax);
  for (int i = 0; i < n; ++i) {
    if (std::abs(im[static_cast<std::size_t>(i) * n + i]) > tol) {
      throw std::invalid_argument("hermitian_eigenvalues: diagonal not real");
    }
    for (int j = i + 1; j < n; ++j) {
      const std::size_t ij = static_cast<std::size_t>(i) * n + j;
      const std::size_t ji = static_cast<std::size_t>(j) * n + i;
      if (std::abs(re[ij] - re[ji]) > tol || std::abs(im[ij] + im[ji]) > tol) {
        throw std::invalid_argument("hermitian_eigenvalues: symmetry defect above tolerance");
      }
    }
  }

  const int m = 2 * n;
  std::vector<double> b(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = re[static_cast<std::size_t>(i) * n + j];
      const double y = im[static_cast<std::size_t>(i) * n + j];
      b[static_cast<std::size_t>(i) * m + j] = x;
      b[static_cast<std::size_t>(i) * m + (n + j)] = -y;
      b[static_cast<std::size_t>(n + i) * m + j] = y;
      b[static_cast<std::size_t>(n + i) * m + (n + j)] = x;
    }
  }
  std::vector<double> doubled = tridiagonal_eigenvalues(householder_tridiagonalize(b, m));
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = doubled[2 * static_cast<std::size_t>(i)];
  return out;
}

}  // namespace rmtlab
