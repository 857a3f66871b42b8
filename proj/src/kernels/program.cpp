#include <cmath>

#include "snrg/kernels.hpp"

namespace snrg {

SegmentProgram SegmentProgram::compile(const Sequence& seq) {
  SegmentProgram prog;
  const auto n = seq.segments.size();
  prog.omega.reserve(n);
  prog.cos_phi.reserve(n);
  prog.sin_phi.reserve(n);
  prog.base_detuning.reserve(n);
  prog.duration.reserve(n);
  prog.inv_duration.reserve(n);
  prog.pulse_ordinal.reserve(n);
  prog.instant_pulse.reserve(n);
  prog.is_pulse.reserve(n);

  int pulse_ordinal = 0;
  for (const auto& s : seq.segments) {
    prog.omega.push_back(s.omega);
    prog.cos_phi.push_back(std::cos(s.phi));
    prog.sin_phi.push_back(std::sin(s.phi));
    prog.base_detuning.push_back(seq.delta_z * static_cast<double>(s.detuning_sign));
    prog.duration.push_back(s.duration);
    prog.inv_duration.push_back(s.duration > 0.0 ? 1.0 / s.duration : 0.0);
    const bool pulse = s.kind == SegmentKind::DdPulse;
    prog.is_pulse.push_back(pulse ? 1 : 0);
    prog.instant_pulse.push_back(pulse && s.duration == 0.0 ? 1 : 0);
    prog.pulse_ordinal.push_back(pulse ? pulse_ordinal++ : -1);
  }
  prog.n_segments = static_cast<int>(n);
  prog.n_pulses = pulse_ordinal;
  return prog;
}

void SegmentProgram::prepare_ou(const OuParams& p) {
  p.validate();
  ou_decay.resize(duration.size());
  ou_diffusion.resize(duration.size());
  for (std::size_t k = 0; k < duration.size(); ++k) {
    const double decay = std::exp(-duration[k] / p.tau_c);
    ou_decay[k] = decay;
    ou_diffusion[k] = p.b * std::sqrt(1.0 - decay * decay);
  }
}

}  // namespace snrg
