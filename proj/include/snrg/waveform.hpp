#pragma once

// Sampled waveform synthesis for AWG-style export.
//
// Channels, time-aligned on a fixed sample grid:
//   gradient  - B1 * u(t), the gradient field in Gauss
//   drive_i/q - baseband drive in Gauss: amplitude Omega / (2 pi gamma) with
//               phase = FM phase (schemes that track the alternating field)
//               plus the segment's drive azimuth (phase cycling / pulse axis)
//   marker    - 1 during DD pulses
//
// In rf mode drive_i carries the full field
//   B_x(t) = I cos(2 pi f0 t) - Q sin(2 pi f0 t)
// and drive_q is zero. Sampling below 10x the highest instantaneous
// frequency raises UndersamplingError.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "snrg/sequences.hpp"

namespace snrg {

struct UndersamplingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CarrierModel : std::uint8_t { Baseband, Rf };

struct Waveform {
  double sample_rate = 0.0;  // Hz
  CarrierModel model = CarrierModel::Baseband;
  std::vector<std::pair<std::string, std::string>> header;  // key/value provenance
  std::vector<double> t;         // s
  std::vector<double> gradient;  // Gauss
  std::vector<double> drive_i;   // Gauss
  std::vector<double> drive_q;   // Gauss
  std::vector<int> marker;
};

// Samples the sequence at `sample_rate`. gamma converts fields to
// frequencies (Hz per Gauss); f0_hz is the rf-mode carrier.
// Instantaneous (eps = 0) pulses cannot be sampled and are rejected.
Waveform render_waveform(const Sequence& seq, double sample_rate, double gamma,
                         CarrierModel model, double f0_hz = 0.0);

// Self-describing text header ("# key = value" lines plus a column row)
// followed by CSV rows at 9 significant digits. Byte-stable for fixed inputs.
void write_waveform_csv(std::ostream& os, const Waveform& wf);

}  // namespace snrg
