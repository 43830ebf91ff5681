#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rmtlab::ensembles {

enum class EntryKind {
  GaussianRealUnit,        // N(0, 1)
  GaussianRealVar2,        // N(0, 2)
  GaussianComplexHalves,   // one part of a complex entry: N(0, 1/2)
  ThreePointComplexHalves, // atoms +-sqrt(3/2) w.p. 1/6, 0 w.p. 2/3
  ThreePointRealUnit,      // atoms +-sqrt(3) w.p. 1/6, 0 w.p. 2/3
  ThreePointRealVar2,      // atoms +-sqrt(6) w.p. 1/6, 0 w.p. 2/3
  RademacherReal,          // atoms +-1 w.p. 1/2
};

/// Scalar law of one matrix-entry component. Discrete kinds carry their atom
/// locations and probabilities; Gaussian kinds carry the variance.
struct EntryDistribution {
  EntryKind kind = EntryKind::GaussianRealUnit;
  std::vector<double> atoms;
  std::vector<double> probs;
  double variance = 1.0;  // Gaussian kinds only

  static EntryDistribution make(EntryKind kind);
  bool is_gaussian() const;
  void validate() const;
};

struct Moments {
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
};

/// Exact first four raw moments: finite sums over atoms for discrete kinds,
/// closed form for Gaussian kinds.
Moments entry_moments(const EntryDistribution& dist);

enum class EnsembleKind {
  GUE,
  GOE,
  WignerComplexMatched,
  WignerRealMatched,
  LUE,
  LOE,
  CovarianceMatched,
};

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::GUE;
  int n = 1;      // matrix dimension (eigenvalue count)
  int m = 0;      // row count of the data matrix, covariance kinds only
  EntryDistribution offdiag;
  EntryDistribution diag;

  static EnsembleSpec gue(int n);
  static EnsembleSpec goe(int n);
  static EnsembleSpec wigner_complex_matched(int n);
  static EnsembleSpec wigner_real_matched(int n);
  static EnsembleSpec lue(int n, int m);
  static EnsembleSpec loe(int n, int m);
  static EnsembleSpec covariance_matched(int n, int m);

  bool is_covariance() const;
  bool is_complex() const;
  /// Gaussian ensembles admit the tridiagonal/bidiagonal sampling path.
  bool has_fast_path() const;
  void validate() const;
  std::string kind_name() const;
};

/// Dense draw: W = M/sqrt(n) for Wigner kinds, S = X*X/n for covariance
/// kinds. Real kinds leave `im` empty; complex kinds fill both parts.
/// Hermitian symmetry is exact by construction (the upper triangle is drawn,
/// the lower mirrored).
struct SampledMatrix {
  int n = 0;
  bool complex_entries = false;
  std::vector<double> re;  // row-major n*n
  std::vector<double> im;  // row-major n*n, empty for real kinds

  double trace() const;
  /// Frobenius norm squared = trace of W^2 for Hermitian W.
  double trace_square() const;
};

struct SpectrumSample {
  EnsembleSpec spec;
  std::uint64_t seed = 0;  // replicate seed that produced the draw
  std::vector<double> eigenvalues;  // ascending
};

SampledMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t seed);

/// Eigenvalues of a sampled matrix, ascending (front door over the dense
/// symmetric / Hermitian solvers).
std::vector<double> matrix_eigenvalues(const SampledMatrix& w);

/// fast = false: sample_matrix composed with the dense eigensolver.
/// fast = true: the equal-in-law tridiagonal (Wigner) or bidiagonal
/// (Laguerre) model, Gaussian kinds only; throws for matched kinds.
SpectrumSample sample_spectrum(const EnsembleSpec& spec, std::uint64_t seed,
                               bool fast);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Monte Carlo mean of Tr(W^power) over `replicates` dense draws, with the
/// standard error of the mean. Replicate r uses child_seed(seed, r).
MeanStderr trace_power_mean(const EnsembleSpec& spec, int power, int replicates,
                            std::uint64_t seed, int workers = 1);

}  // namespace rmtlab::ensembles
