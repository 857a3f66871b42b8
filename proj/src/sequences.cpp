#include "snrg/sequences.hpp"

#include <cmath>

namespace snrg {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

// Chronological pulse axes of one symmetric XY-8 cycle; true = Y.
constexpr bool kXy8AxisIsY[8] = {false, true, false, true, true, false, true, false};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("sequence builder: ") + what + " must be > 0");
  }
}

Segment drive_segment(double omega, int frame_sign, int detuning_sign, double duration) {
  Segment s;
  s.kind = SegmentKind::Drive;
  s.omega = omega;
  s.phi = frame_sign > 0 ? 0.0 : kPi;
  s.detuning_sign = detuning_sign;
  s.duration = duration;
  return s;
}

Segment pulse_segment(bool axis_y, int detuning_sign, double eps) {
  Segment s;
  s.kind = SegmentKind::DdPulse;
  s.omega = eps > 0.0 ? kPi / eps : 0.0;
  s.phi = axis_y ? kHalfPi : 0.0;
  s.detuning_sign = detuning_sign;
  s.duration = eps;
  return s;
}

// Shared XY-8 assembly. alternate_gradient selects SNRG behavior: drive
// detuning sign flips at every pulse and the gradient is zeroed during
// pulses; otherwise the gradient is constant (+1) throughout.
void append_xy8_cycles(Sequence& seq, int n, double omega, double tau_bar, double eps,
                       bool alternate_gradient) {
  int frame_sign = 1;
  int gradient_sign = 1;
  for (int cycle = 0; cycle < n; ++cycle) {
    for (int k = 0; k < 8; ++k) {
      const int drive_sign = alternate_gradient ? gradient_sign : 1;
      seq.segments.push_back(drive_segment(omega, frame_sign, drive_sign, tau_bar));
      const bool axis_y = kXy8AxisIsY[k];
      const int pulse_sign = alternate_gradient ? 0 : 1;
      seq.segments.push_back(pulse_segment(axis_y, pulse_sign, eps));
      if (axis_y) frame_sign = -frame_sign;
      if (alternate_gradient) gradient_sign = -gradient_sign;
    }
  }
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Rabi: return "rabi";
    case Scheme::DpgCpmg: return "dpg_cpmg";
    case Scheme::DpgXy8: return "dpg_xy8";
    case Scheme::SnrgXy8: return "snrg";
  }
  return "unknown";
}

double Sequence::wall_time() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

double Sequence::drive_time() const {
  double t = 0.0;
  for (const auto& s : segments) {
    if (s.kind == SegmentKind::Drive) t += s.duration;
  }
  return t;
}

int Sequence::pulse_count() const {
  int n = 0;
  for (const auto& s : segments) {
    if (s.kind == SegmentKind::DdPulse) ++n;
  }
  return n;
}

Timings Sequence::boundaries() const {
  Timings tm;
  tm.t.push_back(0.0);
  double t = 0.0;
  for (const auto& s : segments) {
    if (s.duration > 0.0) {
      t += s.duration;
      tm.t.push_back(t);
    }
  }
  return tm;
}

Sequence Sequence::with_delta_z(double dz) const {
  Sequence copy = *this;
  copy.delta_z = dz;
  return copy;
}

void Sequence::check_invariants() const {
  double theta_acc = 0.0;
  for (const auto& s : segments) {
    if (s.kind == SegmentKind::Drive) {
      theta_acc += s.omega * s.duration;
      if (!(s.duration > 0.0)) throw std::logic_error("Sequence: non-positive drive duration");
    } else if (s.kind == SegmentKind::DdPulse && s.duration > 0.0) {
      if (std::abs(s.omega * s.duration - kPi) > 1e-9) {
        throw std::logic_error("Sequence: DD pulse is not a nominal pi rotation");
      }
    }
    if (s.detuning_sign < -1 || s.detuning_sign > 1) {
      throw std::logic_error("Sequence: detuning sign outside {-1, 0, +1}");
    }
  }
  if (std::abs(theta_acc - total_theta) > 1e-9 * std::max(1.0, std::abs(total_theta))) {
    throw std::logic_error("Sequence: drive rotation does not accumulate to total_theta");
  }
  if (scheme == Scheme::SnrgXy8) {
    int expected = 1;
    for (const auto& s : segments) {
      if (s.kind == SegmentKind::DdPulse) {
        if (s.detuning_sign != 0) throw std::logic_error("SNRG: gradient not zeroed during pulse");
      } else if (s.kind == SegmentKind::Drive && s.detuning_sign != 0) {
        if (s.detuning_sign != expected) {
          throw std::logic_error("SNRG: gradient sign does not alternate across drive segments");
        }
        expected = -expected;
      }
    }
  }
}

Sequence build_rabi(double omega, double theta, double phi) {
  require_positive(omega, "omega");
  require_positive(theta, "theta");
  if (!std::isfinite(phi)) throw std::invalid_argument("build_rabi: phi must be finite");

  Sequence seq;
  seq.scheme = Scheme::Rabi;
  seq.n_cycles = 0;
  seq.total_theta = theta;
  Segment s;
  s.kind = SegmentKind::Drive;
  s.omega = omega;
  s.phi = phi;
  s.detuning_sign = 1;
  s.duration = theta / omega;
  seq.segments.push_back(s);
  return seq;
}

Sequence build_dpg_cpmg(int n, double theta, double omega, double eps) {
  if (n < 1) throw std::invalid_argument("build_dpg_cpmg: n must be >= 1");
  require_positive(theta, "theta");
  require_positive(omega, "omega");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("build_dpg_cpmg: eps must be >= 0");
  }

  Sequence seq;
  seq.scheme = Scheme::DpgCpmg;
  seq.n_cycles = n;
  seq.total_theta = theta;
  seq.eps = eps;
  seq.tau_bar = theta / (2.0 * n * omega);
  for (int cycle = 0; cycle < n; ++cycle) {
    for (int half = 0; half < 2; ++half) {
      seq.segments.push_back(drive_segment(omega, 1, 1, seq.tau_bar));
      seq.segments.push_back(pulse_segment(false, 1, eps));
    }
  }
  return seq;
}

Sequence build_dpg_xy8(int n, double theta, double omega, double eps, double spacing) {
  if (n < 1) throw std::invalid_argument("build_dpg_xy8: n must be >= 1");
  require_positive(theta, "theta");
  require_positive(omega, "omega");
  require_positive(spacing, "spacing");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("build_dpg_xy8: eps must be >= 0");
  }
  if (!(spacing > eps)) throw std::invalid_argument("build_dpg_xy8: spacing must exceed eps");

  const double tau_bar = theta / (8.0 * n * omega);
  if (!(tau_bar > 0.0)) throw InfeasibleSequenceError("build_dpg_xy8: non-positive segment duration");
  if (std::abs(tau_bar - spacing) > 1e-9 * spacing) {
    throw std::invalid_argument(
        "build_dpg_xy8: spacing inconsistent with theta / (8 n omega)");
  }

  Sequence seq;
  seq.scheme = Scheme::DpgXy8;
  seq.n_cycles = n;
  seq.total_theta = theta;
  seq.eps = eps;
  seq.tau_bar = tau_bar;
  append_xy8_cycles(seq, n, omega, tau_bar, eps, /*alternate_gradient=*/false);
  return seq;
}

Sequence build_snrg(int n, double theta, double omega, double eps, double delta_z) {
  if (n < 1) throw std::invalid_argument("build_snrg: n must be >= 1");
  require_positive(theta, "theta");
  require_positive(omega, "omega");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("build_snrg: eps must be >= 0");
  }
  if (!std::isfinite(delta_z)) throw std::invalid_argument("build_snrg: delta_z must be finite");

  Sequence seq;
  seq.scheme = Scheme::SnrgXy8;
  seq.n_cycles = n;
  seq.total_theta = theta;
  seq.delta_z = delta_z;
  seq.eps = eps;
  seq.tau_bar = theta / (8.0 * n * omega);
  seq.fm_tracking = true;
  append_xy8_cycles(seq, n, omega, seq.tau_bar, eps, /*alternate_gradient=*/true);
  return seq;
}

Sequence build_xy8_for_duration(Scheme scheme, double wall_duration, double omega, double eps,
                                double spacing, double delta_z) {
  if (scheme != Scheme::DpgXy8 && scheme != Scheme::SnrgXy8) {
    throw std::invalid_argument("build_xy8_for_duration: XY-8 schemes only");
  }
  require_positive(wall_duration, "wall_duration");
  require_positive(omega, "omega");
  require_positive(spacing, "spacing");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("build_xy8_for_duration: eps must be >= 0");
  }

  const double cycle_wall = 8.0 * (spacing + eps);
  const int n = static_cast<int>(std::floor(wall_duration / cycle_wall + 1e-12));
  if (n < 1) {
    throw InfeasibleSequenceError("build_xy8_for_duration: duration shorter than one DD cycle");
  }

  const bool alternate = scheme == Scheme::SnrgXy8;
  Sequence seq;
  seq.scheme = scheme;
  seq.n_cycles = n;
  seq.delta_z = delta_z;
  seq.eps = eps;
  seq.tau_bar = spacing;
  seq.fm_tracking = alternate;
  append_xy8_cycles(seq, n, omega, spacing, eps, alternate);

  const double tail = wall_duration - n * cycle_wall;
  if (tail > 1e-15 * wall_duration && tail > 0.0) {
    seq.segments.push_back(drive_segment(omega, 1, 1, tail));
  }
  seq.total_theta = omega * (8.0 * n * spacing) + omega * std::max(tail, 0.0);
  return seq;
}

Timings switching_times(int n, double tau_bar, double eps) {
  if (n < 1) throw std::invalid_argument("switching_times: n must be >= 1");
  require_positive(tau_bar, "tau_bar");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("switching_times: eps must be >= 0");
  }

  Timings tm;
  const int count = 8 * n;
  tm.t.reserve(static_cast<std::size_t>(count) + 2);
  tm.t.push_back(0.0);
  for (int i = 1; i <= count; ++i) {
    const double half_i = 0.5 * static_cast<double>(i);
    const double eps_steps = (i % 2 == 1) ? 0.5 * static_cast<double>(i - 1) : half_i;
    tm.t.push_back(tau_bar * half_i + eps * eps_steps);
  }
  tm.t.push_back(static_cast<double>(count) * (tau_bar + eps));
  return tm;
}

int pulse_train_u(double t, const Timings& tm) {
  if (tm.t.size() < 2) throw std::invalid_argument("pulse_train_u: need at least two switch times");
  if (!(t >= tm.t.front()) || !(t <= tm.t.back())) {
    throw std::invalid_argument("pulse_train_u: t outside the switching range");
  }
  // Largest interval index i with T_i <= t; t == T_last stays in the last interval.
  std::size_t lo = 0, hi = tm.t.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (tm.t[mid] <= t ? lo : hi) = mid;
  }
  static constexpr int kPattern[4] = {1, 0, -1, 0};
  return kPattern[lo % 4];
}

std::vector<FmTone> fm_params(const std::vector<std::pair<double, double>>& segments,
                              double gamma) {
  if (segments.empty()) throw std::invalid_argument("fm_params: empty segment list");
  std::vector<FmTone> tones;
  tones.reserve(segments.size());
  double start_time = 0.0;
  double field_area = 0.0;  // integral of B_z up to the segment start
  for (const auto& [field, duration] : segments) {
    FmTone tone;
    tone.freq_hz = gamma * field;
    tone.phase_rad = 2.0 * kPi * gamma * (field * start_time - field_area);
    tones.push_back(tone);
    start_time += duration;
    field_area += field * duration;
  }
  return tones;
}

}  // namespace snrg
