#pragma once

#include "atomrad/spectral.hpp"

// Einstein coefficients and energy-change rates assembled from the
// spectral quantities.

namespace atomrad {

enum class Method { ClosedForm, Oracle };

struct SpectralRates {
    double g_plus;   // emission rate, sum over axes
    double g_minus;  // excitation rate
    double a_down;   // == g_plus
    double a_up;     // == g_minus
    double achieved_error = 0.0;  // 0 for closed form
};

SpectralRates spectral_rates(const Scenario& scenario, const AtomSpec& atom, Method method,
                             const OracleControls& controls = {});

struct EnergyRates {
    double vf_excited;
    double vf_ground;
    double rr_any_state;  // same value for either initial state
    double total_excited;
    double total_ground;
};

// vf = -(w0/2)(g+ + g-) (excited; opposite sign for ground),
// rr = -(w0/2)(g+ - g-), total = vf + rr.
EnergyRates energy_rates(const SpectralRates& sr, double omega0);

// Ratio of the total rate to the no-boundary rate in the contact limit
// z0 -> 0, where f_x = f_y = 1 and f_z = -1 exactly.
double polarization_contact_ratio(const std::array<double, 3>& alpha);

struct EquivalenceReport {
    double accelerated_factor;  // 1 + a^2/w0^2 - f_x(w0,z0,a)
    double thermal_factor;      // 1 - f_x(w0,z0) at beta = 2*pi/a
    double difference;
};

// Compares the x-axis emission factors of the accelerated mirror and the
// static mirror at the matching Unruh temperature. z0 = kInf drops the
// boundary terms exactly.
EquivalenceReport equivalence_check(double omega0, double z0, double a);

}  // namespace atomrad
