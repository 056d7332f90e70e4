#include "atomrad/rates.hpp"

#include <cmath>
#include <numeric>

namespace atomrad {

SpectralRates spectral_rates(const Scenario& scenario, const AtomSpec& atom, Method method,
                             const OracleControls& controls) {
    SpectralRates sr{};
    if (method == Method::ClosedForm) {
        SpectralResult em = fourier_closed_form(scenario, atom, TransitionSign::Emission);
        SpectralResult ex = fourier_closed_form(scenario, atom, TransitionSign::Excitation);
        sr.g_plus = std::accumulate(em.per_axis.begin(), em.per_axis.end(), 0.0);
        sr.g_minus = std::accumulate(ex.per_axis.begin(), ex.per_axis.end(), 0.0);
    } else {
        auto both = fourier_oracle_both(scenario, atom, controls);
        sr.g_plus = std::accumulate(both[0].per_axis.begin(), both[0].per_axis.end(), 0.0);
        sr.g_minus = std::accumulate(both[1].per_axis.begin(), both[1].per_axis.end(), 0.0);
        sr.achieved_error = both[0].achieved_error + both[1].achieved_error;
    }
    sr.a_down = sr.g_plus;
    sr.a_up = sr.g_minus;
    return sr;
}

EnergyRates energy_rates(const SpectralRates& sr, double omega0) {
    if (!std::isfinite(sr.g_plus) || !std::isfinite(sr.g_minus))
        throw std::invalid_argument("energy_rates: spectral rates must be finite");
    EnergyRates er{};
    const double half_w = 0.5 * omega0;
    er.vf_excited = -half_w * (sr.g_plus + sr.g_minus);
    er.vf_ground = half_w * (sr.g_plus + sr.g_minus);
    er.rr_any_state = -half_w * (sr.g_plus - sr.g_minus);
    er.total_excited = er.vf_excited + er.rr_any_state;
    er.total_ground = er.vf_ground + er.rr_any_state;
    return er;
}

double polarization_contact_ratio(const std::array<double, 3>& alpha) {
    // f_x = f_y = 1, f_z = -1 in the contact limit
    return alpha[2] * 2.0;
}

EquivalenceReport equivalence_check(double omega0, double z0, double a) {
    if (!(omega0 > 0.0) || !(a > 0.0) || !(z0 > 0.0))
        throw std::invalid_argument("equivalence_check: omega0, z0, a must be > 0");
    EquivalenceReport rep{};
    const bool no_boundary = std::isinf(z0);
    const double fx_accel = no_boundary ? 0.0 : f_accelerated(omega0, z0, a);
    const double fx_static = no_boundary ? 0.0 : f_static(omega0, z0).f_x;
    rep.accelerated_factor = 1.0 + a * a / (omega0 * omega0) - fx_accel;
    rep.thermal_factor = 1.0 - fx_static;
    rep.difference = rep.accelerated_factor - rep.thermal_factor;
    return rep;
}

}  // namespace atomrad
