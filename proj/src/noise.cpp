#include "snrg/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace snrg {

void OuParams::validate() const {
  if (!(b >= 0.0) || !std::isfinite(b)) throw std::invalid_argument("OuParams: b must be >= 0");
  if (!(tau_c > 0.0) || !std::isfinite(tau_c)) {
    throw std::invalid_argument("OuParams: tau_c must be > 0");
  }
}

void DdImperfection::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("DdImperfection: sigma must be >= 0");
  }
}

NoiseTrace ou_trace(const OuParams& p, double dt, int n, std::uint64_t seed) {
  p.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("ou_trace: dt must be > 0");
  if (n < 1) throw std::invalid_argument("ou_trace: need at least one sample");

  Rng rng(seed);
  NoiseTrace trace;
  trace.dt = dt;
  trace.values.resize(static_cast<std::size_t>(n));

  const double decay = std::exp(-dt / p.tau_c);
  const double diffusion = p.b * std::sqrt(1.0 - decay * decay);

  double x = p.b * rng.normal();
  trace.values[0] = x;
  for (int k = 1; k < n; ++k) {
    x = x * decay + diffusion * rng.normal();
    trace.values[static_cast<std::size_t>(k)] = x;
  }
  return trace;
}

double quasi_static_sample(const OuParams& p, std::uint64_t seed) {
  Rng rng(seed);
  return quasi_static_sample(p, rng);
}

double quasi_static_sample(const OuParams& p, Rng& rng) {
  p.validate();
  return p.b * rng.normal();
}

double perturb_pi(const DdImperfection& imp, Rng& rng) {
  imp.validate();
  constexpr double kPi = 3.14159265358979323846;
  if (imp.sigma == 0.0) return kPi;
  return kPi + imp.sigma * rng.normal();
}

OuSegmentSampler::OuSegmentSampler(const OuParams& p, Rng& rng) : params_(p), rng_(&rng) {
  p.validate();
  value_ = p.b * rng.normal();
}

double OuSegmentSampler::step(double duration) {
  const double decay = std::exp(-duration / params_.tau_c);
  const double diffusion = params_.b * std::sqrt(1.0 - decay * decay);
  value_ = value_ * decay + diffusion * rng_->normal();
  return value_;
}

}  // namespace snrg
