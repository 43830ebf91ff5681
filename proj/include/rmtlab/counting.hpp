#pragma once

#include <cstdint>
#include <vector>

namespace rmtlab::counting {

/// Normalized oscillator functions for the probabilists' Hermite weight:
/// phi_0(u) = (2 pi)^(-1/4) exp(-u^2/4),
/// phi_{k+1}(u) = (u phi_k(u) - sqrt(k) phi_{k-1}(u)) / sqrt(k+1).
/// Fills out[0..count-1] with phi_k(u). The recurrence carries a binary
/// exponent alongside the mantissa pair, so deep-tail arguments (u^2/4 far
/// beyond the double exponent range) stay finite all the way to k ~ 2048.
void oscillator_functions(int count, double u, double* out);

struct BernoulliRepresentation {
  std::vector<double> p;      // success probabilities, clamped to [0, 1]
  double clamp_defect = 0.0;  // largest excursion outside [0, 1] before clamping
};

/// Order-N Christoffel-Darboux kernel of the scaled Gaussian unitary
/// spectrum, K(x, y) = sqrt(N) sum_k phi_k(sqrt(N) x) phi_k(sqrt(N) y), on a
/// truncated window [-2-delta, 2+delta] with a composite Gauss-Legendre rule.
/// Construction verifies that the windowed trace integral recovers N (panel
/// resolution doubles until it does) and that the mass outside the window is
/// negligible.
class KernelModel {
 public:
  explicit KernelModel(int n, double delta = 0.5, int nodes_per_panel = 64,
                       double panel_width = 0.25, int order_cap = 2048);

  int order() const { return n_; }
  double delta() const { return delta_; }
  double window_lo() const { return lo_; }
  double window_hi() const { return hi_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Kernel value; x and y must lie in the window.
  double eval(double x, double y) const;

  /// E[N_t]: the diagonal integral over window nodes <= t.
  double counting_mean(double t) const;

  /// Var(N_t) = int_{<=t} K(x,x) dx - int int_{<=t} K(x,y)^2 dx dy, clamped
  /// to >= 0 (values below -1e-8 throw).
  double counting_variance(double t) const;

  /// Nystrom discretization of the kernel restricted to nodes <= t. The
  /// nonzero spectrum of A_ij = sqrt(w_i w_j) K(x_i, x_j) equals that of the
  /// order-N Gram matrix sqrt(N) sum_i w_i phi(x_i) phi(x_i)^T, which is what
  /// gets diagonalized. Eigenvalue excursions beyond [0,1] larger than 1e-6
  /// throw (insufficient quadrature resolution).
  BernoulliRepresentation bernoulli_representation(double t) const;

 private:
  void build(int nodes_per_panel);
  double gram_frobenius_sq(double t) const;
  std::vector<double> gram_matrix(double t) const;

  int n_ = 0;
  double delta_ = 0.5;
  double panel_width_ = 0.25;
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> nodes_, weights_;
  std::vector<double> phi_;    // node-major: phi_[i*n + k] = phi_k(sqrt(n) x_i)
  std::vector<double> kdiag_;  // K(x_i, x_i)
};

/// One draw of the Bernoulli sum defined by a representation.
int sample_counting(const BernoulliRepresentation& rep, std::uint64_t seed);

/// 2 exp(-u^2 / (2 sigma2 + u)): tail bound for a centered sum of independent
/// Bernoulli variables with variance sigma2.
double bernstein_bound(double sigma2, double u);

struct OffsetBound {
  double offset = 0.0;  // deviation threshold the bound applies to
  double bound = 0.0;
};

/// Bound for P(|N_t - N rho_t| >= u + c1) where c1 absorbs the offset of the
/// kernel mean from N rho_t.
OffsetBound counting_deviation_bound(double sigma2, double u, double c1);

/// Real-symmetric counterpart via the interlacing identity:
/// P(|N_t - N rho_t| >= u + c1p) <= 2 sqrt(2) exp(-u^2 / (4 sigma2 + 2u)),
/// sigma2 being the *unitary* counting variance at the same t.
OffsetBound goe_counting_bound(double sigma2, double u, double c1p);

/// 4 exp(-C^2 u^2 / (2 c_delta log N + C u)), asserted for the event
/// |lambda_j - gamma_j| >= u/N with bulk j. C and c_delta are calibrated by
/// the experiment harness, not fixed here.
double eigenvalue_deviation_bound_bulk(int n, double u, double big_c,
                                       double c_delta);

/// 4 exp(-C^2 u^2 / (cp log(N-j) + C u)) with C = 2^(-5/6) (3 pi)^(-2/3)
/// fixed, asserted for |lambda_j - gamma_j| >= u / (N^(2/3) (N-j)^(1/3)).
double eigenvalue_deviation_bound_intermediate(int n, int j, double u, double cp);

/// The fixed constant of the intermediate-regime bound.
double intermediate_bound_constant();

}  // namespace rmtlab::counting
