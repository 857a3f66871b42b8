#pragma once

// Closed-form figures of merit for detuned driving: the generalized Rabi
// transfer probability, the ideal resonant pi-gate fidelity curve, and the
// bandwidth extraction rule (first detuning at which fidelity drops below a
// threshold, refined by bisection).

#include <functional>
#include <stdexcept>
#include <vector>

namespace snrg {

struct NoCrossingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OnResonanceFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// |0> -> |-1> transfer probability after driving for time t with Rabi
// frequency omega (> 0, angular) at detuning delta:
//   P1 = omega^2 / (omega^2 + delta^2) * sin^2(sqrt(omega^2 + delta^2) t / 2)
// Reduces to the resonant Rabi formula sin^2(omega t / 2) at delta = 0.
double transfer_probability(double omega, double delta, double t);

// Fidelity of an ideal resonant pi gate as a function of the dimensionless
// detuning ratio r = delta / omega. This is the square of the pi-pulse
// transfer probability:
//   F(r) = [ (1 - cos(pi sqrt(1 + r^2))) / (2 (1 + r^2)) ]^2
// Even in r; F(0) = 1, F(1) ~= 0.100, F(5) ~= 1.4e-3.
double ideal_pi_fidelity(double r);

// Tabulated fidelity-vs-detuning curve. r values strictly increasing,
// fidelities in [0, 1].
struct FidelityCurve {
  // (r, f) pairs
  std::vector<std::pair<double, double>> points;

  void validate() const;  // throws std::invalid_argument on malformed curves
};

// Fidelity curve of the ideal pi gate sampled on n points over [0, r_max].
FidelityCurve ideal_fidelity_curve(double r_max, int n);

// Smallest r >= 0 at which the curve first drops below `threshold`, refined
// between the bracketing grid points by bisection on the linear interpolant
// to relative tolerance `rel_tol`.
// Throws OnResonanceFailureError if f(0) <= threshold, NoCrossingError if the
// curve never drops below the threshold.
double bandwidth_from_curve(const FidelityCurve& c, double threshold = 0.1,
                            double rel_tol = 1e-3);

// Same rule for a continuous fidelity function on [0, r_max]: outward coarse
// scan with `coarse_steps` points, then bisection on the function itself.
double bandwidth_from_function(const std::function<double(double)>& f, double r_max,
                               double threshold = 0.1, double rel_tol = 1e-3,
                               int coarse_steps = 64);

}  // namespace snrg
