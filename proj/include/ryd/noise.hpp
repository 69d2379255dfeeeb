#pragma once

#include "ryd/density_matrix.hpp"

#include <vector>

namespace ryd {

/// Device timing and error parameters. Times with suffix _s are seconds,
/// _us are microseconds; rabi_mhz is an ordinary (not angular) frequency.
struct DeviceParams {
    double t1_s = 4.00;
    double t2_s = 1.49;
    double rabi_mhz = 1.0;
    double eps_init = 0.003;
    double t_init_us = 300.0;
    double v_move_um_per_us = 0.55; // recorded for documentation; movement is
                                    // modelled as fixed-duration blocks
    double tau_move_a_us = 100.0;
    double tau_move_b_us = 40.0;
    double t_cz_us = 0.5;
    double t_ccz_us = 1.0;

    /// Throws std::invalid_argument on unphysical values
    /// (t1 <= 0, t2 outside (0, 2*t1], negative durations, eps outside [0,1)).
    void validate() const;

    /// Pure dephasing time: 1/T_phi = 1/T2 - 1/(2*T1).
    double t_phi_s() const;
};

using KrausSet = std::vector<std::vector<cplx>>;

/// Two-operator amplitude damping for elapsed time t, decay probability
/// p = 1 - exp(-t/t1).
KrausSet amplitude_damping(double t_s, double t1_s);

/// Phase-flip channel with flip probability q = (1 - exp(-t/T_phi))/2.
KrausSet pure_dephasing(double t_s, double t1_s, double t2_s);

/// Composition amplitude_damping( pure_dephasing( rho ) ) for elapsed time t,
/// merged into three Kraus operators. Trace preserving.
KrausSet idle_channel_s(double t_s, const DeviceParams& params);

/// Same with time in microseconds (the unit used by the scheduler).
KrausSet idle_channel_us(double t_us, const DeviceParams& params);

} // namespace ryd
