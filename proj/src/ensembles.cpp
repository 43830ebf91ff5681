#include "rmtlab/ensembles.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "rmtlab/parallel.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"
#include "rmtlab/sym_eigen.hpp"

namespace rmtlab::ensembles {

namespace {

EntryDistribution three_point(double atom) {
  EntryDistribution d;
  d.atoms = {-atom, 0.0, atom};
  d.probs = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
  return d;
}

double draw_entry(Rng& rng, const EntryDistribution& d) {
  if (d.is_gaussian()) {
    return rng.normal() * std::sqrt(d.variance);
  }
  const double u = rng.uniform01();
  double cum = 0.0;
  for (std::size_t k = 0; k < d.atoms.size(); ++k) {
    cum += d.probs[k];
    if (u < cum) return d.atoms[k];
  }
  return d.atoms.back();
}

// S = X* X / n for an m x n data matrix with unit-variance entries.
SampledMatrix covariance_from_data(const std::vector<double>& xr,
                                   const std::vector<double>& xi, int m, int n,
                                   bool complex_entries) {
  SampledMatrix s;
  s.n = n;
  s.complex_entries = complex_entries;
  s.re.assign(static_cast<std::size_t>(n) * n, 0.0);
  if (complex_entries) s.im.assign(static_cast<std::size_t>(n) * n, 0.0);
  const double inv_n = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      double acc_re = 0.0, acc_im = 0.0;
      if (complex_entries) {
        for (int i = 0; i < m; ++i) {
          const std::size_t ij = static_cast<std::size_t>(i) * n + j;
          const std::size_t ik = static_cast<std::size_t>(i) * n + k;
          acc_re += xr[ij] * xr[ik] + xi[ij] * xi[ik];
          acc_im += xr[ij] * xi[ik] - xi[ij] * xr[ik];
        }
      } else {
        for (int i = 0; i < m; ++i) {
          acc_re += xr[static_cast<std::size_t>(i) * n + j] *
                    xr[static_cast<std::size_t>(i) * n + k];
        }
      }
      const std::size_t jk = static_cast<std::size_t>(j) * n + k;
      const std::size_t kj = static_cast<std::size_t>(k) * n + j;
      s.re[jk] = acc_re * inv_n;
      s.re[kj] = s.re[jk];
      if (complex_entries) {
        s.im[jk] = (j == k) ? 0.0 : acc_im * inv_n;
        s.im[kj] = -s.im[jk];
      }
    }
  }
  return s;
}

// Jacobi-rotation-free scaling: eigenvalues of T/c are eig(T)/c.
void scale_tridiag(SymTridiag& t, double factor) {
  for (double& v : t.diag) v *= factor;
  for (double& v : t.off) v *= factor;
}

SymTridiag wigner_tridiagonal(const EnsembleSpec& spec, Rng& rng) {
  // Householder-equivalent tridiagonal model of the Gaussian ensembles
  // (Dumitriu-Edelman): for beta = 2 the unscaled matrix has N(0,1) diagonal
  // and chi_{2k}/sqrt(2) off-diagonals, for beta = 1 N(0,2) diagonal and
  // chi_k off-diagonals, k = n-1, ..., 1.
  const int n = spec.n;
  SymTridiag t;
  t.diag.resize(n);
  t.off.resize(n > 1 ? n - 1 : 0);
  const bool complex_case = spec.kind == EnsembleKind::GUE;
  for (int i = 0; i < n; ++i) {
    t.diag[i] = complex_case ? rng.normal() : std::sqrt(2.0) * rng.normal();
  }
  for (int i = 0; i + 1 < n; ++i) {
    const double k = static_cast<double>(n - 1 - i);
    t.off[i] = complex_case ? rng.chi(2.0 * k) / std::sqrt(2.0) : rng.chi(k);
  }
  scale_tridiag(t, 1.0 / std::sqrt(static_cast<double>(n)));
  return t;
}

SymTridiag laguerre_tridiagonal(const EnsembleSpec& spec, Rng& rng) {
  // Golub-Kahan bidiagonal model of the Gaussian data matrix: X = U B V*
  // with B upper bidiagonal, diagonal chi_{m}, ..., chi_{m-n+1} and
  // superdiagonal chi_{n-1}, ..., chi_1 (degrees doubled and scaled by
  // 1/sqrt(2) in the complex case). The spectrum of S = X*X/n is that of
  // B^T B / n, a symmetric tridiagonal matrix.
  const int n = spec.n;
  const int m = spec.m;
  const bool complex_case = spec.kind == EnsembleKind::LUE;
  std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) {
    const double dof = static_cast<double>(m - i);
    d[i] = complex_case ? rng.chi(2.0 * dof) / std::sqrt(2.0) : rng.chi(dof);
  }
  for (int i = 0; i + 1 < n; ++i) {
    const double dof = static_cast<double>(n - 1 - i);
    e[i] = complex_case ? rng.chi(2.0 * dof) / std::sqrt(2.0) : rng.chi(dof);
  }
  SymTridiag t;
  t.diag.resize(n);
  t.off.resize(n > 1 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) {
    t.diag[i] = d[i] * d[i] + (i > 0 ? e[i - 1] * e[i - 1] : 0.0);
  }
  for (int i = 0; i + 1 < n; ++i) {
    t.off[i] = d[i] * e[i];
  }
  scale_tridiag(t, 1.0 / static_cast<double>(n));
  return t;
}

// P := W * P for Hermitian/symmetric W (dense, row-major).
void matmul_left(const SampledMatrix& w, std::vector<double>& pre,
                 std::vector<double>& pim) {
  const int n = w.n;
  std::vector<double> out_re(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> out_im;
  const bool cplx = w.complex_entries;
  if (cplx) out_im.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const std::size_t ik = static_cast<std::size_t>(i) * n + k;
      const double wr = w.re[ik];
      const double wi = cplx ? w.im[ik] : 0.0;
      const std::size_t krow = static_cast<std::size_t>(k) * n;
      const std::size_t irow = static_cast<std::size_t>(i) * n;
      if (cplx) {
        for (int j = 0; j < n; ++j) {
          out_re[irow + j] += wr * pre[krow + j] - wi * pim[krow + j];
          out_im[irow + j] += wr * pim[krow + j] + wi * pre[krow + j];
        }
      } else {
        for (int j = 0; j < n; ++j) {
          out_re[irow + j] += wr * pre[krow + j];
        }
      }
    }
  }
  pre.swap(out_re);
  if (cplx) pim.swap(out_im);
}

double trace_power(const SampledMatrix& w, int power) {
  if (power == 2) return w.trace_square();
  const int half = power / 2;
  std::vector<double> pre = w.re;
  std::vector<double> pim = w.im;
  for (int i = 1; i < half; ++i) matmul_left(w, pre, pim);
  // W^power = (W^half)* (W^half), so the trace is the squared Frobenius norm.
  double acc = 0.0;
  for (double v : pre) acc += v * v;
  for (double v : pim) acc += v * v;
  return acc;
}

}  // namespace

EntryDistribution EntryDistribution::make(EntryKind kind) {
  EntryDistribution d;
  d.kind = kind;
  switch (kind) {
    case EntryKind::GaussianRealUnit:
      d.variance = 1.0;
      break;
    case EntryKind::GaussianRealVar2:
      d.variance = 2.0;
      break;
    case EntryKind::GaussianComplexHalves:
      d.variance = 0.5;
      break;
    case EntryKind::ThreePointComplexHalves:
      d = three_point(std::sqrt(1.5));
      break;
    case EntryKind::ThreePointRealUnit:
      d = three_point(std::sqrt(3.0));
      break;
    case EntryKind::ThreePointRealVar2:
      d = three_point(std::sqrt(6.0));
      break;
    case EntryKind::RademacherReal:
      d.atoms = {-1.0, 1.0};
      d.probs = {0.5, 0.5};
      break;
  }
  d.kind = kind;
  return d;
}

bool EntryDistribution::is_gaussian() const {
  return kind == EntryKind::GaussianRealUnit || kind == EntryKind::GaussianRealVar2 ||
         kind == EntryKind::GaussianComplexHalves;
}

void EntryDistribution::validate() const {
  if (is_gaussian()) {
    if (!(variance > 0.0)) {
      throw std::invalid_argument("EntryDistribution: variance must be positive");
    }
    return;
  }
  if (atoms.empty() || atoms.size() != probs.size()) {
    throw std::invalid_argument("EntryDistribution: atoms and probabilities must match");
  }
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("EntryDistribution: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-14) {
    throw std::invalid_argument("EntryDistribution: probabilities must sum to 1");
  }
}

Moments entry_moments(const EntryDistribution& dist) {
  dist.validate();
  Moments m;
  if (dist.is_gaussian()) {
    m.m1 = 0.0;
    m.m2 = dist.variance;
    m.m3 = 0.0;
    m.m4 = 3.0 * dist.variance * dist.variance;
    return m;
  }
  for (std::size_t k = 0; k < dist.atoms.size(); ++k) {
    const double a = dist.atoms[k];
    const double p = dist.probs[k];
    m.m1 += p * a;
    m.m2 += p * a * a;
    m.m3 += p * a * a * a;
    m.m4 += p * a * a * a * a;
  }
  return m;
}

EnsembleSpec EnsembleSpec::gue(int n) {
  EnsembleSpec s;
  s.kind = EnsembleKind::GUE;
  s.n = n;
  s.offdiag = EntryDistribution::make(EntryKind::GaussianComplexHalves);
  s.diag = EntryDistribution::make(EntryKind::GaussianRealUnit);
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::goe(int n) {
  EnsembleSpec s;
  s.kind = EnsembleKind::GOE;
  s.n = n;
  s.offdiag = EntryDistribution::make(EntryKind::GaussianRealUnit);
  s.diag = EntryDistribution::make(EntryKind::GaussianRealVar2);
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::wigner_complex_matched(int n) {
  EnsembleSpec s;
  s.kind = EnsembleKind::WignerComplexMatched;
  s.n = n;
  s.offdiag = EntryDistribution::make(EntryKind::ThreePointComplexHalves);
  s.diag = EntryDistribution::make(EntryKind::RademacherReal);
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::wigner_real_matched(int n) {
  EnsembleSpec s;
  s.kind = EnsembleKind::WignerRealMatched;
  s.n = n;
  s.offdiag = EntryDistribution::make(EntryKind::ThreePointRealUnit);
  s.diag = EntryDistribution::make(EntryKind::ThreePointRealVar2);
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::lue(int n, int m) {
  EnsembleSpec s;
  s.kind = EnsembleKind::LUE;
  s.n = n;
  s.m = m;
  s.offdiag = EntryDistribution::make(EntryKind::GaussianComplexHalves);
  s.diag = s.offdiag;
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::loe(int n, int m) {
  EnsembleSpec s;
  s.kind = EnsembleKind::LOE;
  s.n = n;
  s.m = m;
  s.offdiag = EntryDistribution::make(EntryKind::GaussianRealUnit);
  s.diag = s.offdiag;
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::covariance_matched(int n, int m) {
  EnsembleSpec s;
  s.kind = EnsembleKind::CovarianceMatched;
  s.n = n;
  s.m = m;
  s.offdiag = EntryDistribution::make(EntryKind::ThreePointComplexHalves);
  s.diag = s.offdiag;
  s.validate();
  return s;
}

bool EnsembleSpec::is_covariance() const {
  return kind == EnsembleKind::LUE || kind == EnsembleKind::LOE ||
         kind == EnsembleKind::CovarianceMatched;
}

bool EnsembleSpec::is_complex() const {
  return kind == EnsembleKind::GUE || kind == EnsembleKind::WignerComplexMatched ||
         kind == EnsembleKind::LUE || kind == EnsembleKind::CovarianceMatched;
}

bool EnsembleSpec::has_fast_path() const {
  return kind == EnsembleKind::GUE || kind == EnsembleKind::GOE ||
         kind == EnsembleKind::LUE || kind == EnsembleKind::LOE;
}

void EnsembleSpec::validate() const {
  if (n < 1) throw std::invalid_argument("EnsembleSpec: n must be >= 1");
  if (is_covariance() && m < n) {
    throw std::invalid_argument("EnsembleSpec: covariance kinds need m >= n");
  }
  offdiag.validate();
  diag.validate();
}

std::string EnsembleSpec::kind_name() const {
  switch (kind) {
    case EnsembleKind::GUE: return "gue";
    case EnsembleKind::GOE: return "goe";
    case EnsembleKind::WignerComplexMatched: return "wigner-complex-matched";
    case EnsembleKind::WignerRealMatched: return "wigner-real-matched";
    case EnsembleKind::LUE: return "lue";
    case EnsembleKind::LOE: return "loe";
    case EnsembleKind::CovarianceMatched: return "covariance-matched";
  }
  return "unknown";
}

double SampledMatrix::trace() const {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += re[static_cast<std::size_t>(i) * n + i];
  return acc;
}

double SampledMatrix::trace_square() const {
  double acc = 0.0;
  for (double v : re) acc += v * v;
  for (double v : im) acc += v * v;
  return acc;
}

SampledMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  if (spec.is_covariance()) {
    const int m = spec.m;
    const int n = spec.n;
    const bool cplx = spec.is_complex();
    std::vector<double> xr(static_cast<std::size_t>(m) * n);
    std::vector<double> xi;
    if (cplx) xi.resize(xr.size());
    for (std::size_t k = 0; k < xr.size(); ++k) {
      xr[k] = draw_entry(rng, spec.offdiag);
      if (cplx) xi[k] = draw_entry(rng, spec.offdiag);
    }
    return covariance_from_data(xr, xi, m, n, cplx);
  }

  const int n = spec.n;
  const bool cplx = spec.is_complex();
  SampledMatrix w;
  w.n = n;
  w.complex_entries = cplx;
  w.re.assign(static_cast<std::size_t>(n) * n, 0.0);
  if (cplx) w.im.assign(static_cast<std::size_t>(n) * n, 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    w.re[static_cast<std::size_t>(i) * n + i] = draw_entry(rng, spec.diag) * scale;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::size_t ij = static_cast<std::size_t>(i) * n + j;
      const std::size_t ji = static_cast<std::size_t>(j) * n + i;
      w.re[ij] = draw_entry(rng, spec.offdiag) * scale;
      w.re[ji] = w.re[ij];
      if (cplx) {
        w.im[ij] = draw_entry(rng, spec.offdiag) * scale;
        w.im[ji] = -w.im[ij];
      }
    }
  }
  return w;
}

std::vector<double> matrix_eigenvalues(const SampledMatrix& w) {
  if (w.complex_entries) return hermitian_eigenvalues(w.re, w.im, w.n);
  return symmetric_eigenvalues(w.re, w.n);
}

SpectrumSample sample_spectrum(const EnsembleSpec& spec, std::uint64_t seed,
                               bool fast) {
  spec.validate();
  SpectrumSample out;
  out.spec = spec;
  out.seed = seed;
  if (!fast) {
    out.eigenvalues = matrix_eigenvalues(sample_matrix(spec, seed));
    return out;
  }
  if (!spec.has_fast_path()) {
    throw std::invalid_argument(
        "sample_spectrum: the fast path covers the Gaussian kinds only");
  }
  Rng rng(seed);
  SymTridiag t = spec.is_covariance() ? laguerre_tridiagonal(spec, rng)
                                      : wigner_tridiagonal(spec, rng);
  out.eigenvalues = tridiagonal_eigenvalues(std::move(t));
  return out;
}

MeanStderr trace_power_mean(const EnsembleSpec& spec, int power, int replicates,
                            std::uint64_t seed, int workers) {
  spec.validate();
  if (replicates < 2) throw std::invalid_argument("trace_power_mean: need R >= 2");
  if (power < 2 || power % 2 != 0) {
    throw std::invalid_argument("trace_power_mean: power must be even and >= 2");
  }
  std::vector<double> values(replicates);
  parallel_for(replicates, workers, [&](std::size_t r) {
    const SampledMatrix w = sample_matrix(spec, child_seed(seed, r));
    values[r] = trace_power(w, power);
  });
  const double mean = pairwise_sum(values) / replicates;
  std::vector<double> sq(replicates);
  for (int r = 0; r < replicates; ++r) {
    sq[r] = (values[r] - mean) * (values[r] - mean);
  }
  MeanStderr out;
  out.mean = mean;
  out.stderr_ = std::sqrt(pairwise_sum(sq) /
                          (static_cast<double>(replicates) * (replicates - 1)));
  return out;
}

}  // namespace rmtlab::ensembles
