#pragma once

#include <functional>
#include <vector>

namespace rmtlab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule, nodes by Newton iteration on P_n.
const GaussRule& gauss_legendre(int n);

struct CompositeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lo = 0.0, hi = 0.0;
};

/// Composite Gauss-Legendre over [a, b]: equal panels of width at most
/// `panel_width`, `nodes_per_panel` points each.
CompositeRule composite_gauss_legendre(double a, double b, double panel_width,
                                       int nodes_per_panel);

/// Integrate f over [a, b] with one n-point Gauss-Legendre panel.
double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int n = 16);

/// Sum a vector with a fixed pairwise reduction tree. The tree depends only
/// on the length, so parallel producers that fill slots by index reproduce
/// the sequential result bit for bit.
double pairwise_sum(const double* data, std::size_t n);
double pairwise_sum(const std::vector<double>& v);

}  // namespace rmtlab
