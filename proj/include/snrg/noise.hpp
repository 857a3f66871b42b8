#pragma once

// Stochastic models: Ornstein-Uhlenbeck bath detuning and random DD
// pulse-angle imperfection.
//
// The OU process delta(t) is stationary Gaussian noise with autocorrelation
// b^2 exp(-t / tau_c). Traces use the exact discretization
//   delta_{k+1} = delta_k e^{-dt/tau_c} + b sqrt(1 - e^{-2 dt/tau_c}) xi_k
// with a stationary start delta_0 ~ N(0, b^2), so statistics are exact at
// any step size.

#include <cstdint>
#include <vector>

#include "snrg/rng.hpp"

namespace snrg {

struct OuParams {
  double b = 0.0;      // bath coupling, angular rad/s, >= 0
  double tau_c = 1.0;  // correlation time, s, > 0

  void validate() const;  // throws std::invalid_argument
};

struct NoiseTrace {
  double dt = 0.0;             // sample spacing, s
  std::vector<double> values;  // detuning samples, angular rad/s
};

struct DdImperfection {
  // Std of the absolute rotation-angle error of a nominal pi pulse,
  // in radians (not a fraction of pi), >= 0.
  double sigma = 0.0;

  void validate() const;
};

// n samples of the OU process on a fixed grid of spacing dt, deterministic
// given the seed. Throws std::invalid_argument on non-positive dt or n < 1.
NoiseTrace ou_trace(const OuParams& p, double dt, int n, std::uint64_t seed);

// One stationary draw delta ~ N(0, b^2), held constant for a whole shot.
double quasi_static_sample(const OuParams& p, std::uint64_t seed);
double quasi_static_sample(const OuParams& p, Rng& rng);

// DD pulse rotation angle pi + eta, eta ~ N(0, sigma^2) in radians,
// independent per pulse.
double perturb_pi(const DdImperfection& imp, Rng& rng);

// Steps the OU process across segments of varying duration.
class OuSegmentSampler {
 public:
  OuSegmentSampler(const OuParams& p, Rng& rng);  // stationary initial value

  double current() const { return value_; }

  // Advances by `duration` and returns the new value.
  double step(double duration);

 private:
  OuParams params_;
  Rng* rng_;
  double value_;
};

}  // namespace snrg
