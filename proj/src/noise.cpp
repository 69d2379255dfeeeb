#include "ryd/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ryd {

void DeviceParams::validate() const {
    if (t1_s <= 0.0) throw std::invalid_argument("DeviceParams: t1 must be positive");
    if (t2_s <= 0.0 || t2_s > 2.0 * t1_s + 1e-15)
        throw std::invalid_argument("DeviceParams: t2 must satisfy 0 < t2 <= 2*t1");
    if (rabi_mhz <= 0.0) throw std::invalid_argument("DeviceParams: rabi frequency must be positive");
    if (eps_init < 0.0 || eps_init >= 1.0)
        throw std::invalid_argument("DeviceParams: eps_init must be in [0, 1)");
    for (double d : {t_init_us, v_move_um_per_us, tau_move_a_us, tau_move_b_us, t_cz_us, t_ccz_us})
        if (d < 0.0) throw std::invalid_argument("DeviceParams: durations must be non-negative");
}

double DeviceParams::t_phi_s() const {
    const double rate = 1.0 / t2_s - 1.0 / (2.0 * t1_s);
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / rate;
}

KrausSet amplitude_damping(double t_s, double t1_s) {
    if (t_s < 0.0) throw std::invalid_argument("amplitude_damping: negative time");
    const double p = 1.0 - std::exp(-t_s / t1_s);
    const double s = std::sqrt(1.0 - p);
    const double a = std::sqrt(p);
    return {
        {cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{s, 0.0}},
        {cplx{0.0, 0.0}, cplx{a, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}},
    };
}

KrausSet pure_dephasing(double t_s, double t1_s, double t2_s) {
    if (t_s < 0.0) throw std::invalid_argument("pure_dephasing: negative time");
    DeviceParams p;
    p.t1_s = t1_s;
    p.t2_s = t2_s;
    p.validate();
    const double t_phi = p.t_phi_s();
    const double q = std::isinf(t_phi) ? 0.0 : 0.5 * (1.0 - std::exp(-t_s / t_phi));
    const double w0 = std::sqrt(1.0 - q);
    const double w1 = std::sqrt(q);
    return {
        {cplx{w0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{w0, 0.0}},
        {cplx{w1, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{-w1, 0.0}},
    };
}

KrausSet idle_channel_s(double t_s, const DeviceParams& params) {
    if (t_s < 0.0) throw std::invalid_argument("idle_channel: negative time");
    params.validate();
    const double p = 1.0 - std::exp(-t_s / params.t1_s);
    const double t_phi = params.t_phi_s();
    const double q = std::isinf(t_phi) ? 0.0 : 0.5 * (1.0 - std::exp(-t_s / t_phi));
    const double s = std::sqrt(1.0 - p);
    // Damping after dephasing; the two damping-branch products collapse onto
    // a single |0><1| operator, leaving three Kraus terms in total.
    const double w0 = std::sqrt(1.0 - q);
    const double w1 = std::sqrt(q);
    return {
        {cplx{w0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{w0 * s, 0.0}},
        {cplx{w1, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{-w1 * s, 0.0}},
        {cplx{0.0, 0.0}, cplx{std::sqrt(p), 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}},
    };
}

KrausSet idle_channel_us(double t_us, const DeviceParams& params) {
    return idle_channel_s(t_us * 1e-6, params);
}

} // namespace ryd
