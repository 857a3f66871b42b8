#include "snrg/spincore.hpp"

#include <cmath>
#include <stdexcept>

namespace snrg {

namespace {
constexpr cplx kImag{0.0, 1.0};
}

SpinState SpinState::normalized(cplx a0, cplx a1) {
  const double n = std::sqrt(std::norm(a0) + std::norm(a1));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("SpinState: amplitudes must be a finite nonzero vector");
  }
  return {a0 / n, a1 / n};
}

Propagator Propagator::rotation(double angle, double phi) {
  if (!std::isfinite(angle) || !std::isfinite(phi)) {
    throw std::invalid_argument("rotation: non-finite angle or phi");
  }
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const double nx = std::cos(phi);
  const double ny = std::sin(phi);
  // cos(a/2) I - i sin(a/2) (nx sigma_x + ny sigma_y)
  return {cplx{c, 0.0}, cplx{-ny * s, -nx * s}, cplx{ny * s, -nx * s}, cplx{c, 0.0}};
}

Propagator Propagator::dagger() const {
  return {std::conj(u00), std::conj(u10), std::conj(u01), std::conj(u11)};
}

double Propagator::unitarity_error() const {
  const Propagator g = dagger() * (*this);
  double err = std::abs(g.u00 - cplx{1.0, 0.0});
  err = std::max(err, std::abs(g.u01));
  err = std::max(err, std::abs(g.u10));
  err = std::max(err, std::abs(g.u11 - cplx{1.0, 0.0}));
  return err;
}

Propagator operator*(const Propagator& a, const Propagator& b) {
  return {a.u00 * b.u00 + a.u01 * b.u10, a.u00 * b.u01 + a.u01 * b.u11,
          a.u10 * b.u00 + a.u11 * b.u10, a.u10 * b.u01 + a.u11 * b.u11};
}

Propagator propagator(const DriveParams& p) {
  if (!std::isfinite(p.omega) || !std::isfinite(p.phi) || !std::isfinite(p.delta) ||
      !std::isfinite(p.duration)) {
    throw std::invalid_argument("propagator: non-finite drive parameters");
  }
  if (p.omega < 0.0) throw std::invalid_argument("propagator: omega must be >= 0");
  if (p.duration < 0.0) throw std::invalid_argument("propagator: duration must be >= 0");

  const double rho = std::sqrt(p.omega * p.omega + p.delta * p.delta);
  if (rho == 0.0 || p.duration == 0.0) return Propagator::identity();

  const double half = 0.5 * rho * p.duration;
  const double c = std::cos(half);
  const double s = std::sin(half);
  const double inv_rho = 1.0 / rho;
  const double nx = p.omega * std::cos(p.phi) * inv_rho;
  const double ny = p.omega * std::sin(p.phi) * inv_rho;
  const double nz = p.delta * inv_rho;

  // U = cos(rho t/2) I - i sin(rho t/2) (n . sigma)
  return {cplx{c, -nz * s}, cplx{-ny * s, -nx * s}, cplx{ny * s, -nx * s}, cplx{c, nz * s}};
}

SpinState apply(const Propagator& u, const SpinState& s) {
  return {u.u00 * s.amp0 + u.u01 * s.amp1, u.u10 * s.amp0 + u.u11 * s.amp1};
}

Propagator compose(std::span<const Propagator> us) {
  if (us.empty()) throw std::invalid_argument("compose: empty propagator list");
  Propagator acc = us[0];
  for (std::size_t i = 1; i < us.size(); ++i) acc = us[i] * acc;
  return acc;
}

double sz_expectation(const SpinState& s) {
  return 0.5 * (std::norm(s.amp0) - std::norm(s.amp1));
}

double population1(const SpinState& s) { return std::norm(s.amp1); }

double distance_mod_phase(const Propagator& u, const Propagator& v) {
  // W = V^dag U is unitary; || U - e^{ia} V ||_op = max_k | w_k - e^{ia} |
  // over the unit-circle eigenvalues w_k of W. The minimum over a places
  // e^{ia} at the midpoint of the short arc between the two eigenphases.
  //
  // Phase-normalize W into SU(2), where W' = cos(f) I - i sin(f) n.sigma has
  // eigenphases +-f. sin(f) comes from the off-diagonal / diagonal-difference
  // entries directly (no O(1) cancellation), so near-identical inputs
  // resolve to ~1e-15 rather than rounding noise.
  const Propagator w = v.dagger() * u;
  const cplx root_det = std::sqrt(w.det());
  const cplx w00 = w.u00 / root_det;
  const cplx w01 = w.u01 / root_det;
  const cplx w10 = w.u10 / root_det;
  const cplx w11 = w.u11 / root_det;

  const double cos_f = 0.5 * (w00.real() + w11.real());
  const double sin_sq = 0.5 * (std::norm(w01) + std::norm(w10)) + 0.25 * std::norm(w00 - w11);
  const double f = std::atan2(std::sqrt(std::max(sin_sq, 0.0)), cos_f);  // in [0, pi]

  constexpr double kHalfPi = 1.57079632679489661923;
  const double half_arc = f <= kHalfPi ? 0.5 * f : 0.5 * (3.14159265358979323846 - f);
  return 2.0 * std::sin(half_arc);
}

}  // namespace snrg
