#include "snrg/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace snrg {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double transfer_probability(double omega, double delta, double t) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("transfer_probability: omega must be > 0");
  }
  if (!(t >= 0.0) || !std::isfinite(t) || !std::isfinite(delta)) {
    throw std::invalid_argument("transfer_probability: bad delta or t");
  }
  const double rho_sq = omega * omega + delta * delta;
  const double p = omega * omega / (2.0 * rho_sq) * (1.0 - std::cos(std::sqrt(rho_sq) * t));
  return std::clamp(p, 0.0, 1.0);
}

double ideal_pi_fidelity(double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("ideal_pi_fidelity: r must be finite");
  const double one_r2 = 1.0 + r * r;
  const double p = (1.0 - std::cos(kPi * std::sqrt(one_r2))) / (2.0 * one_r2);
  return p * p;
}

void FidelityCurve::validate() const {
  if (points.empty()) throw std::invalid_argument("FidelityCurve: empty");
  double prev_r = -std::numeric_limits<double>::infinity();
  for (const auto& [r, f] : points) {
    if (!std::isfinite(r) || !std::isfinite(f)) {
      throw std::invalid_argument("FidelityCurve: non-finite entry");
    }
    if (r <= prev_r) throw std::invalid_argument("FidelityCurve: r values must be strictly increasing");
    if (f < 0.0 || f > 1.0) throw std::invalid_argument("FidelityCurve: f outside [0, 1]");
    prev_r = r;
  }
}

FidelityCurve ideal_fidelity_curve(double r_max, int n) {
  if (!(r_max > 0.0) || n < 2) throw std::invalid_argument("ideal_fidelity_curve: bad grid");
  FidelityCurve c;
  c.points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double r = r_max * static_cast<double>(i) / static_cast<double>(n - 1);
    c.points.emplace_back(r, ideal_pi_fidelity(r));
  }
  return c;
}

double bandwidth_from_curve(const FidelityCurve& c, double threshold, double rel_tol) {
  c.validate();
  if (c.points.front().second <= threshold) {
    throw OnResonanceFailureError("bandwidth_from_curve: fidelity already below threshold at r = 0");
  }
  std::size_t cross = 0;
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    if (c.points[i].second < threshold) {
      cross = i;
      break;
    }
  }
  if (cross == 0) throw NoCrossingError("bandwidth_from_curve: curve never drops below threshold");

  const auto [r_lo, f_lo] = c.points[cross - 1];
  const auto [r_hi, f_hi] = c.points[cross];
  const auto interp = [&](double r) {
    return f_lo + (f_hi - f_lo) * (r - r_lo) / (r_hi - r_lo);
  };
  double lo = r_lo, hi = r_hi;
  while (hi - lo > rel_tol * std::max(std::abs(hi), 1e-300)) {
    const double mid = 0.5 * (lo + hi);
    (interp(mid) < threshold ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double bandwidth_from_function(const std::function<double(double)>& f, double r_max,
                               double threshold, double rel_tol, int coarse_steps) {
  if (!(r_max > 0.0) || coarse_steps < 2) {
    throw std::invalid_argument("bandwidth_from_function: bad search range");
  }
  double lo = 0.0;
  double f_prev = f(0.0);
  if (f_prev <= threshold) {
    throw OnResonanceFailureError("bandwidth_from_function: fidelity already below threshold at r = 0");
  }
  double hi = -1.0;
  for (int i = 1; i <= coarse_steps; ++i) {
    const double r = r_max * static_cast<double>(i) / static_cast<double>(coarse_steps);
    if (f(r) < threshold) {
      hi = r;
      break;
    }
    lo = r;
  }
  if (hi < 0.0) throw NoCrossingError("bandwidth_from_function: no crossing up to r_max");
  while (hi - lo > rel_tol * std::max(std::abs(hi), 1e-300)) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < threshold ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace snrg
