#pragma once

// Pulse-sequence construction for the three control schemes:
//
//   Rabi      - one continuous drive segment, constant gradient.
//   DPG       - the drive is split into segments interleaved with DD pi
//               pulses (CPMG: all-X pulses; XY-8: the symmetric pattern
//               X Y X Y Y X Y X), gradient constant throughout. The DD
//               refocuses noise *and* the gradient detuning.
//   SNRG      - XY-8 DD, but the gradient sign alternates with every pulse
//               and is zeroed during the pulses, so the detuning term
//               survives while noise is still refocused.
//
// Phase cycling: after every pi_Y pulse the drive phase is inverted
// (phi: 0 <-> pi) so that segment rotations keep accumulating
// constructively; the builders bake this into each segment's phi.
//
// All builders produce exact target rotations: segment duration is
// theta / (segment count * omega).

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "snrg/spincore.hpp"

namespace snrg {

struct InfeasibleSequenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SegmentKind : std::uint8_t { Drive, DdPulse, Wait };

enum class Scheme : std::uint8_t { Rabi, DpgCpmg, DpgXy8, SnrgXy8 };

const char* scheme_name(Scheme s);

struct Segment {
  SegmentKind kind = SegmentKind::Drive;
  double omega = 0.0;     // angular rad/s; for finite pulses, pi / eps
  double phi = 0.0;       // drive azimuth (phase cycling included); pulses: 0 or pi/2
  int detuning_sign = 0;  // multiplier on the gradient detuning during this interval
  double duration = 0.0;  // s; zero-duration DdPulse = ideal instantaneous pi pulse
};

struct Timings {
  std::vector<double> t;  // strictly increasing switch times, t.front() == 0
};

struct Sequence {
  std::vector<Segment> segments;
  int n_cycles = 0;  // DD cycles; 0 for plain Rabi
  Scheme scheme = Scheme::Rabi;
  double total_theta = 0.0;  // accumulated drive rotation, rad
  double delta_z = 0.0;      // gradient detuning amplitude, angular rad/s
  double eps = 0.0;          // DD pulse duration, s
  double tau_bar = 0.0;      // drive segment duration, s (0 for Rabi)
  bool fm_tracking = false;  // drive frequency follows the alternating gradient

  double wall_time() const;
  double drive_time() const;
  int pulse_count() const;

  // Physical switch times: {0} plus the end of every nonzero-duration segment.
  Timings boundaries() const;

  Sequence with_delta_z(double dz) const;

  // Throws std::logic_error if structural invariants are violated
  // (rotation accounting, sign alternation, nominal pi pulses).
  void check_invariants() const;
};

// Single drive segment of duration theta / omega at azimuth phi.
Sequence build_rabi(double omega, double theta, double phi);

// CPMG-protected gate: N cycles of (drive theta/2N, pi_X) twice per cycle;
// gradient constant (+1) everywhere, including during finite pulses.
// eps = 0 means ideal instantaneous pulses.
Sequence build_dpg_cpmg(int n, double theta, double omega, double eps);

// XY-8-protected gate: N cycles of 8 drive segments (theta/8N each)
// interleaved with the X Y X Y Y X Y X pulses; gradient constant.
// `spacing` is the drive-segment duration and must equal
// theta / (8 n omega); pass the value you derived from the rotation.
Sequence build_dpg_xy8(int n, double theta, double omega, double eps, double spacing);

// Selective gate: XY-8 DD, drive segments of theta/8N, gradient sign
// alternating +1/-1 across drive segments and 0 during pulses.
Sequence build_snrg(int n, double theta, double omega, double eps, double delta_z);

// XY-8 sequence filling a wall-clock duration: as many whole cycles as fit
// (cycle wall time 8 (spacing + eps)) plus a plain-drive tail. Used by the
// duration scans, where rotation is whatever accumulates.
// Throws InfeasibleSequenceError if the duration is shorter than one cycle.
Sequence build_xy8_for_duration(Scheme scheme, double wall_duration, double omega, double eps,
                                double spacing, double delta_z);

// Magnetic-field switching times for an 8N-segment gradient train with
// segment duration tau_bar and pulse duration eps: T_0 = 0,
//   T_i = tau_bar * i/2 + eps * (i-1)/2   (i odd,  1 <= i <= 8N)
//   T_i = tau_bar * i/2 + eps * i/2       (i even, 1 <= i <= 8N)
// and T_{8N+1} = 8N (tau_bar + eps), the total wall time. 8N+2 entries.
Timings switching_times(int n, double tau_bar, double eps);

// Rectangular pulse-train value at time t against a switch-time list:
// the interval [T_i, T_{i+1}) carries the cyclic pattern +1, 0, -1, 0.
// Throws std::invalid_argument when t is outside [T_0, T_last].
int pulse_train_u(double t, const Timings& tm);

// One carrier tone per field segment.
struct FmTone {
  double freq_hz = 0.0;    // instantaneous drive frequency, gamma * B
  double phase_rad = 0.0;  // offset such that carrier_k(t) = cos(2 pi f_k t - phase_k)
};

// Frequency/phase schedule for a piecewise-constant field B_z so that the
// concatenated carrier cos(2 pi gamma integral B_z) is phase-continuous.
// `segments` holds (field value, duration) pairs; gamma is in Hz per field unit.
std::vector<FmTone> fm_params(const std::vector<std::pair<double, double>>& segments,
                              double gamma);

}  // namespace snrg
