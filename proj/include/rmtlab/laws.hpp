#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rmtlab::laws {

/// Semicircle density (1/2pi) sqrt(4 - x^2) on [-2, 2], 0 outside.
double sc_density(double x);

/// Semicircle distribution function, closed form, clamped to [0, 1].
double sc_cdf(double x);

/// Inverse of sc_cdf on [-2, 2]: bracketed bisection then Newton polish,
/// |sc_cdf(result) - p| <= 1e-12. Throws for p outside [0, 1].
double sc_quantile(double p);

struct QuantileTable {
  int n = 0;
  std::vector<double> values;  // locations for j = 1..n, ascending
  std::string law;             // "semicircle" or "marchenko-pastur"
};

/// Theoretical eigenvalue locations: value j is the j/n quantile of the
/// semicircle law.
QuantileTable gamma_table(int n);

struct EdgeBounds {
  double lo = 0.0, hi = 0.0;
};

/// Two-sided bounds on 2 - gamma_j for the right half of the spectrum
/// (n/2 <= j <= n): lo = (3 pi (n-j) / (2n))^(2/3),
/// hi = (3 pi (n-j) / (sqrt(2) n))^(2/3). Throws for j < n/2.
EdgeBounds gamma_edge_bounds(int n, int j);

/// Upper bound on the spacing gamma_j - gamma_{j-1} for 2 <= j <= n:
/// (3 pi)^(2/3) 2^(-1/6) / (n^(2/3) min(j, n+1-j)^(1/3)).
double gamma_spacing_bound(int n, int j);

/// Support edges of the Marchenko-Pastur law with ratio m/n (m >= n >= 1):
/// a = (1 - sqrt(m/n))^2, b = (1 + sqrt(m/n))^2.
std::pair<double, double> mp_edges(int m, int n);

/// Marchenko-Pastur law with aspect ratio rho >= 1. The distribution
/// function is computed once at construction by composite Gauss-Legendre on
/// the square-root substitution panels and cached; density and quantile
/// queries are pure afterwards.
class MarchenkoPasturLaw {
 public:
  explicit MarchenkoPasturLaw(double rho);
  static MarchenkoPasturLaw from_counts(int m, int n);

  double rho() const { return rho_; }
  double a() const { return a_; }
  double b() const { return b_; }

  double density(double x) const;
  double cdf(double x) const;
  /// Throws for p outside [0, 1] and for hard-edge (rho == 1) requests with
  /// p < 0.01, where the inverse is not supported.
  double quantile(double p) const;

  /// j/n quantiles for j = 1..n (rho > 1 only).
  QuantileTable locations(int n) const;

 private:
  double mass_below_mid(double t) const;   // x = a + t^2 branch
  double mass_above_mid(double s) const;   // x = b - s^2 branch

  double rho_ = 1.0, a_ = 0.0, b_ = 4.0, mid_ = 2.0;
  double t_max_ = 0.0, s_max_ = 0.0, total_ = 1.0;
  int panels_ = 0;
  std::vector<double> cum_left_, cum_right_;  // prefix masses at panel edges
};

}  // namespace rmtlab::laws
