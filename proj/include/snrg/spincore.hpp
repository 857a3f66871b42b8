#pragma once

// Exact two-level spin algebra: states, drive parameters, closed-form SU(2)
// propagators, composition, and observables.
//
// Conventions (fixed once, used everywhere):
//   - qubit basis order (|0>, |-1>), so <S_z> = +1/2 for |0>
//   - spin-1/2 operators S_k = sigma_k / 2
//   - all frequencies are angular (rad/s), all times are seconds
//   - a drive segment evolves under H = delta*S_z + omega*(cos(phi) S_x +
//     sin(phi) S_y) for its duration, U = exp(-i * duration * H)

#include <complex>
#include <span>
#include <vector>

namespace snrg {

using cplx = std::complex<double>;

struct SpinState {
  cplx amp0{1.0, 0.0};  // amplitude of |0>
  cplx amp1{0.0, 0.0};  // amplitude of |-1>

  static SpinState ket0() { return {}; }
  static SpinState ket1() { return {cplx{0.0, 0.0}, cplx{1.0, 0.0}}; }

  // Normalizes the given amplitude pair; rejects the zero vector.
  static SpinState normalized(cplx a0, cplx a1);

  double norm_sq() const { return std::norm(amp0) + std::norm(amp1); }
};

// 2x2 complex unitary, row-major {u00, u01, u10, u11}.
struct Propagator {
  cplx u00{1.0, 0.0}, u01{0.0, 0.0}, u10{0.0, 0.0}, u11{1.0, 0.0};

  static Propagator identity() { return {}; }

  // exp(-i * angle * (cos(phi) S_x + sin(phi) S_y)): an ideal instantaneous
  // rotation about an equatorial axis. Used for zero-duration DD pulses.
  static Propagator rotation(double angle, double phi);

  static Propagator pi_x() { return rotation(3.14159265358979323846, 0.0); }
  static Propagator pi_y() { return rotation(3.14159265358979323846, 1.57079632679489661923); }

  Propagator dagger() const;

  // Deviation from unitarity, max-abs entry of U^dag U - I.
  double unitarity_error() const;
  cplx det() const { return u00 * u11 - u01 * u10; }

  friend Propagator operator*(const Propagator& a, const Propagator& b);
};

struct DriveParams {
  double omega = 0.0;     // Rabi frequency, angular rad/s, >= 0
  double phi = 0.0;       // drive-axis azimuth, rad
  double delta = 0.0;     // total z detuning, angular rad/s
  double duration = 0.0;  // seconds, >= 0
};

// Closed-form propagator for a constant-Hamiltonian interval via the SU(2)
// axis-angle formula; the degenerate rho = 0 case returns the identity.
// Throws std::invalid_argument for negative omega/duration or non-finite input.
Propagator propagator(const DriveParams& p);

SpinState apply(const Propagator& u, const SpinState& s);

// Right-to-left product: the first element acts first.
// Throws std::invalid_argument on an empty list.
Propagator compose(std::span<const Propagator> us);

double sz_expectation(const SpinState& s);

// Population of |-1>.
double population1(const SpinState& s);

// min over global phase alpha of the operator norm ||U - e^{i alpha} V||.
// Zero iff U and V coincide up to global phase; at most sqrt(2) for unitaries.
double distance_mod_phase(const Propagator& u, const Propagator& v);

}  // namespace snrg
