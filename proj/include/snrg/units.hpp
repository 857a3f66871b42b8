#pragma once

// Unit conversions between user-facing units (kHz, us, ns, Gauss) and the
// internal convention: angular frequencies in rad/s, times in seconds.
// The simulation core never sees lab units; conversion happens at the
// configuration boundary and in waveform export.

namespace snrg::units {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Frequencies quoted in kHz (ordinary frequency) map to angular rad/s.
inline constexpr double khz_to_rad_s(double khz) { return two_pi * 1.0e3 * khz; }
inline constexpr double rad_s_to_khz(double w) { return w / (two_pi * 1.0e3); }

inline constexpr double us_to_s(double us) { return us * 1.0e-6; }
inline constexpr double s_to_us(double s) { return s * 1.0e6; }
inline constexpr double ns_to_s(double ns) { return ns * 1.0e-9; }
inline constexpr double s_to_ns(double s) { return s * 1.0e9; }

// NV-center constants, used only for waveform synthesis and unit conversion.
inline constexpr double nv_gamma_hz_per_gauss = 2.8e6;
inline constexpr double nv_zero_field_splitting_hz = 2.87e9;

}  // namespace snrg::units
