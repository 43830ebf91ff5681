#pragma once

#include <vector>

namespace rmtlab {

struct SymTridiag {
  std::vector<double> diag;  // size n
  std::vector<double> off;   // size n-1, off[i] couples i and i+1
};

/// Householder reduction of a dense symmetric matrix (row-major n*n, full
/// storage, destroyed in place) to tridiagonal form. Eigenvalue-only variant:
/// the orthogonal factor is not accumulated.
SymTridiag householder_tridiagonalize(std::vector<double>& a, int n);

/// All eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
/// algorithm, ascending. Throws std::runtime_error if any eigenvalue fails to
/// converge within 50 sweeps.
std::vector<double> tridiagonal_eigenvalues(SymTridiag t);

/// Eigenvalues of a dense real symmetric matrix, ascending. The input is
/// checked for symmetry (max |a_ij - a_ji| <= 1e-10 * max(1, |a|_max)).
std::vector<double> symmetric_eigenvalues(const std::vector<double>& a, int n);

/// Eigenvalues of a dense complex Hermitian matrix H = X + iY given the real
/// and imaginary parts (row-major n*n). Solved through the real symmetric
/// 2n x 2n embedding [[X, -Y], [Y, X]], whose spectrum is that of H doubled;
/// every second value of the sorted doubled list is kept.
std::vector<double> hermitian_eigenvalues(const std::vector<double>& re,
                                          const std::vector<double>& im, int n);

}  // namespace rmtlab
