#include "snrg/waveform.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "snrg/units.hpp"

namespace snrg {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

struct SegmentWindow {
  double start = 0.0;
  double end = 0.0;
  double fm_phase_start = 0.0;  // accumulated FM phase at segment start, rad
  double fm_rate = 0.0;         // FM angular rate during the segment, rad/s
  const Segment* seg = nullptr;
};

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

Waveform render_waveform(const Sequence& seq, double sample_rate, double gamma,
                         CarrierModel model, double f0_hz) {
  if (!(sample_rate > 0.0)) throw std::invalid_argument("render_waveform: sample_rate must be > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("render_waveform: gamma must be > 0");
  if (seq.segments.empty()) throw std::invalid_argument("render_waveform: empty sequence");

  std::vector<SegmentWindow> windows;
  windows.reserve(seq.segments.size());
  double t = 0.0;
  double fm_phase = 0.0;
  for (const auto& s : seq.segments) {
    if (s.kind == SegmentKind::DdPulse && s.duration == 0.0) {
      throw std::invalid_argument("render_waveform: instantaneous pulses cannot be sampled");
    }
    SegmentWindow w;
    w.start = t;
    w.end = t + s.duration;
    w.fm_phase_start = fm_phase;
    w.fm_rate = seq.fm_tracking ? seq.delta_z * static_cast<double>(s.detuning_sign) : 0.0;
    w.seg = &s;
    windows.push_back(w);
    fm_phase += w.fm_rate * s.duration;
    t = w.end;
  }
  const double wall = t;

  // Highest instantaneous frequency seen by the sampler.
  const double f_mod = std::abs(seq.delta_z) / kTwoPi;
  const double f_max_baseband = seq.fm_tracking ? f_mod : 0.0;
  const double f_max = model == CarrierModel::Rf ? std::abs(f0_hz) + f_mod : f_max_baseband;
  if (f_max > 0.0 && sample_rate < 10.0 * f_max) {
    throw UndersamplingError("render_waveform: sample rate below 10x the highest frequency");
  }

  const double b1 = seq.delta_z / (kTwoPi * gamma);

  Waveform wf;
  wf.sample_rate = sample_rate;
  wf.model = model;
  wf.header.emplace_back("scheme", scheme_name(seq.scheme));
  wf.header.emplace_back("carrier_model", model == CarrierModel::Rf ? "rf" : "baseband");
  wf.header.emplace_back("sample_rate_hz", format_g(sample_rate));
  wf.header.emplace_back("gamma_hz_per_gauss", format_g(gamma));
  wf.header.emplace_back("f0_hz", format_g(f0_hz));
  wf.header.emplace_back("delta_z_rad_s", format_g(seq.delta_z));
  wf.header.emplace_back("gradient_amplitude_gauss", format_g(b1));
  wf.header.emplace_back("n_cycles", std::to_string(seq.n_cycles));
  wf.header.emplace_back("pulse_s", format_g(seq.eps));
  wf.header.emplace_back("segment_s", format_g(seq.tau_bar));
  wf.header.emplace_back("total_theta_rad", format_g(seq.total_theta));
  wf.header.emplace_back("wall_time_s", format_g(wall));
  wf.header.emplace_back("units", "t:s gradient:gauss drive:gauss marker:bool");

  const auto n_samples = static_cast<std::size_t>(std::floor(wall * sample_rate)) + 1;
  wf.t.reserve(n_samples);
  wf.gradient.reserve(n_samples);
  wf.drive_i.reserve(n_samples);
  wf.drive_q.reserve(n_samples);
  wf.marker.reserve(n_samples);

  std::size_t w = 0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double tk = static_cast<double>(k) / sample_rate;
    while (w + 1 < windows.size() && tk >= windows[w].end) ++w;
    const SegmentWindow& win = windows[w];
    const Segment& s = *win.seg;

    const double fm = win.fm_phase_start + win.fm_rate * (tk - win.start);
    const double amp = s.omega / (kTwoPi * gamma);
    const double phase = fm + s.phi;
    double di = amp * std::cos(phase);
    double dq = amp * std::sin(phase);
    if (model == CarrierModel::Rf) {
      const double carrier = kTwoPi * f0_hz * tk;
      di = di * std::cos(carrier) - dq * std::sin(carrier);
      dq = 0.0;
    }

    wf.t.push_back(tk);
    wf.gradient.push_back(b1 * static_cast<double>(s.detuning_sign));
    wf.drive_i.push_back(di);
    wf.drive_q.push_back(dq);
    wf.marker.push_back(s.kind == SegmentKind::DdPulse ? 1 : 0);
  }
  return wf;
}

void write_waveform_csv(std::ostream& os, const Waveform& wf) {
  os << "# snrg waveform v1\n";
  for (const auto& [key, value] : wf.header) os << "# " << key << " = " << value << "\n";
  os << "t_s,gradient_gauss,drive_i_gauss,drive_q_gauss,marker\n";
  char buf[200];
  for (std::size_t k = 0; k < wf.t.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g,%d\n", wf.t[k], wf.gradient[k],
                  wf.drive_i[k], wf.drive_q[k], wf.marker[k]);
    os << buf;
  }
}

}  // namespace snrg
