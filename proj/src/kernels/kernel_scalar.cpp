#include "sincos_poly.hpp"
#include "snrg/kernels.hpp"

namespace snrg {

// Reference kernel. The per-lane operation sequence here is the contract the
// vector kernels reproduce; any change must be mirrored there.
void run_batch_scalar(const ShotBatchView& view) {
  const SegmentProgram& prog = *view.program;
  const std::size_t stride = view.stride;

  for (int lane = 0; lane < view.batch; ++lane) {
    double ar = 1.0, ai = 0.0, br = 0.0, bi = 0.0;

    for (int seg = 0; seg < prog.n_segments; ++seg) {
      const auto k = static_cast<std::size_t>(seg);
      double c, tx, ty, tz;

      if (prog.instant_pulse[k]) {
        const double angle =
            view.pulse_angles[static_cast<std::size_t>(prog.pulse_ordinal[k]) * stride +
                              static_cast<std::size_t>(lane)];
        const double half = 0.5 * angle;
        double sin_h, cos_h;
        detail::sincos_poly(half, &sin_h, &cos_h);
        c = cos_h;
        tx = prog.cos_phi[k] * sin_h;
        ty = prog.sin_phi[k] * sin_h;
        tz = 0.0;
      } else {
        const double om =
            prog.is_pulse[k]
                ? view.pulse_angles[static_cast<std::size_t>(prog.pulse_ordinal[k]) * stride +
                                    static_cast<std::size_t>(lane)] *
                      prog.inv_duration[k]
                : prog.omega[k];
        const double dlt =
            prog.base_detuning[k] + view.deltas[k * stride + static_cast<std::size_t>(lane)];
        const double rho = std::sqrt(om * om + dlt * dlt);
        const double half = (0.5 * prog.duration[k]) * rho;
        double sin_h, cos_h;
        detail::sincos_poly(half, &sin_h, &cos_h);
        const double f = rho > 0.0 ? sin_h / rho : 0.0;
        c = cos_h;
        tx = (om * prog.cos_phi[k]) * f;
        ty = (om * prog.sin_phi[k]) * f;
        tz = dlt * f;
      }

      const double ar2 = ((c * ar + tz * ai) - ty * br) + tx * bi;
      const double ai2 = ((c * ai - tz * ar) - ty * bi) - tx * br;
      const double br2 = ((ty * ar + tx * ai) + c * br) - tz * bi;
      const double bi2 = ((ty * ai - tx * ar) + c * bi) + tz * br;
      ar = ar2;
      ai = ai2;
      br = br2;
      bi = bi2;
    }

    const double n0 = ar * ar + ai * ai;
    const double p1 = br * br + bi * bi;
    view.out_p1[lane] = p1;
    view.out_sz[lane] = 0.5 * (n0 - p1);
    if (view.out_state != nullptr) {
      view.out_state[0 * stride + static_cast<std::size_t>(lane)] = ar;
      view.out_state[1 * stride + static_cast<std::size_t>(lane)] = ai;
      view.out_state[2 * stride + static_cast<std::size_t>(lane)] = br;
      view.out_state[3 * stride + static_cast<std::size_t>(lane)] = bi;
    }
  }
}

}  // namespace snrg
