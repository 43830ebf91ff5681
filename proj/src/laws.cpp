#include "rmtlab/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rmtlab/quadrature.hpp"

namespace rmtlab::laws {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double sc_density(double x) {
  const double s = 4.0 - x * x;
  if (s <= 0.0) return 0.0;
  return std::sqrt(s) / (2.0 * kPi);
}

double sc_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  const double v = 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * kPi) +
                   std::asin(0.5 * x) / kPi;
  return std::clamp(v, 0.0, 1.0);
}

double sc_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("sc_quantile: p must lie in [0, 1]");
  }
  if (p == 0.0) return -2.0;
  if (p == 1.0) return 2.0;
  double lo = -2.0, hi = 2.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (sc_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 5; ++i) {
    const double d = sc_density(x);
    if (d < 1e-8) break;
    x -= (sc_cdf(x) - p) / d;
    x = std::clamp(x, -2.0, 2.0);
  }
  return x;
}

QuantileTable gamma_table(int n) {
  if (n < 1) throw std::invalid_argument("gamma_table: n must be >= 1");
  QuantileTable t;
  t.n = n;
  t.law = "semicircle";
  t.values.resize(n);
  for (int j = 1; j <= n; ++j) {
    t.values[j - 1] = sc_quantile(static_cast<double>(j) / n);
  }
  return t;
}

EdgeBounds gamma_edge_bounds(int n, int j) {
  if (n < 1 || j > n) throw std::invalid_argument("gamma_edge_bounds: need 1 <= j <= n");
  if (2 * j < n) {
    throw std::invalid_argument(
        "gamma_edge_bounds: derived for the right half (j >= n/2); mirror the left half");
  }
  const double frac = static_cast<double>(n - j) / n;
  EdgeBounds b;
  b.lo = std::pow(1.5 * kPi * frac, 2.0 / 3.0);
  b.hi = std::pow(3.0 * kPi * frac / std::sqrt(2.0), 2.0 / 3.0);
  return b;
}

double gamma_spacing_bound(int n, int j) {
  if (j < 2 || j > n) throw std::invalid_argument("gamma_spacing_bound: need 2 <= j <= n");
  const double c = std::pow(3.0 * kPi, 2.0 / 3.0) * std::pow(2.0, -1.0 / 6.0);
  const double rank = static_cast<double>(std::min(j, n + 1 - j));
  return c / (std::pow(static_cast<double>(n), 2.0 / 3.0) * std::cbrt(rank));
}

std::pair<double, double> mp_edges(int m, int n) {
  if (n < 1 || m < n) throw std::invalid_argument("mp_edges: need m >= n >= 1");
  const double r = std::sqrt(static_cast<double>(m) / n);
  return {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r)};
}

MarchenkoPasturLaw::MarchenkoPasturLaw(double rho) {
  if (!(rho >= 1.0)) throw std::invalid_argument("MarchenkoPasturLaw: rho must be >= 1");
  rho_ = rho;
  const double r = std::sqrt(rho);
  a_ = (1.0 - r) * (1.0 - r);
  b_ = (1.0 + r) * (1.0 + r);
  mid_ = 0.5 * (a_ + b_);
  t_max_ = std::sqrt(mid_ - a_);
  s_max_ = std::sqrt(b_ - mid_);

  // Cumulative masses at uniform panel edges in the substituted variables
  // x = a + t^2 (left half) and x = b - s^2 (right half); the substitution
  // removes the square-root endpoints so each panel integrand is smooth.
  // Panel count doubles until the cached mass stabilizes below 1e-12.
  auto left_f = [this](double t) {
    const double x = a_ + t * t;
    return density(x) * 2.0 * t;
  };
  auto right_f = [this](double s) {
    const double x = b_ - s * s;
    return density(x) * 2.0 * s;
  };
  double prev_total = -1.0;
  for (int panels = 8; panels <= 4096; panels *= 2) {
    cum_left_.assign(panels + 1, 0.0);
    cum_right_.assign(panels + 1, 0.0);
    const double ht = t_max_ / panels;
    const double hs = s_max_ / panels;
    for (int p = 0; p < panels; ++p) {
      cum_left_[p + 1] = cum_left_[p] + gl_integrate(left_f, p * ht, (p + 1) * ht, 64);
      cum_right_[p + 1] = cum_right_[p] + gl_integrate(right_f, p * hs, (p + 1) * hs, 64);
    }
    total_ = cum_left_[panels] + cum_right_[panels];
    panels_ = panels;
    if (prev_total >= 0.0 && std::abs(total_ - prev_total) < 1e-12) break;
    prev_total = total_;
  }
  if (std::abs(total_ - 1.0) > 1e-10) {
    throw std::runtime_error("MarchenkoPasturLaw: normalization guard failed");
  }
}

MarchenkoPasturLaw MarchenkoPasturLaw::from_counts(int m, int n) {
  if (n < 1 || m < n) throw std::invalid_argument("MarchenkoPasturLaw: need m >= n >= 1");
  return MarchenkoPasturLaw(static_cast<double>(m) / n);
}

double MarchenkoPasturLaw::density(double x) const {
  if (x <= a_ || x >= b_) return 0.0;
  return std::sqrt((b_ - x) * (x - a_)) / (2.0 * kPi * x);
}

double MarchenkoPasturLaw::mass_below_mid(double t) const {
  const double ht = t_max_ / panels_;
  int p = std::min(panels_ - 1, static_cast<int>(t / ht));
  auto left_f = [this](double u) {
    const double x = a_ + u * u;
    return density(x) * 2.0 * u;
  };
  return cum_left_[p] + gl_integrate(left_f, p * ht, t, 64);
}

double MarchenkoPasturLaw::mass_above_mid(double s) const {
  const double hs = s_max_ / panels_;
  int p = std::min(panels_ - 1, static_cast<int>(s / hs));
  auto right_f = [this](double u) {
    const double x = b_ - u * u;
    return density(x) * 2.0 * u;
  };
  return cum_right_[p] + gl_integrate(right_f, p * hs, s, 64);
}

double MarchenkoPasturLaw::cdf(double x) const {
  if (x <= a_) return 0.0;
  if (x >= b_) return 1.0;
  double v;
  if (x <= mid_) {
    v = mass_below_mid(std::sqrt(x - a_));
  } else {
    v = total_ - mass_above_mid(std::sqrt(b_ - x));
  }
  return std::clamp(v, 0.0, 1.0);
}

double MarchenkoPasturLaw::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("MarchenkoPasturLaw::quantile: p must lie in [0, 1]");
  }
  if (rho_ == 1.0 && p < 0.01) {
    throw std::invalid_argument(
        "MarchenkoPasturLaw::quantile: hard edge (rho = 1) near p = 0 is unsupported");
  }
  if (p == 0.0) return a_;
  if (p == 1.0) return b_;
  double lo = a_, hi = b_;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double c = cdf(mid);
    if (std::abs(c - p) <= 1e-11) return mid;
    if (c < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

QuantileTable MarchenkoPasturLaw::locations(int n) const {
  if (n < 1) throw std::invalid_argument("MarchenkoPasturLaw::locations: n must be >= 1");
  if (rho_ == 1.0) {
    throw std::invalid_argument("MarchenkoPasturLaw::locations: requires rho > 1");
  }
  QuantileTable t;
  t.n = n;
  t.law = "marchenko-pastur";
  t.values.resize(n);
  for (int j = 1; j <= n; ++j) {
    t.values[j - 1] = quantile(static_cast<double>(j) / n);
  }
  return t;
}

}  // namespace rmtlab::laws
