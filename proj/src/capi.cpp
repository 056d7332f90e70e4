#include "atomrad.h"

#include <cstring>
#include <string>

#include "atomrad/dynamics.hpp"
#include "atomrad/rates.hpp"

#ifndef ATOMRAD_VERSION
#define ATOMRAD_VERSION "0.0.0"
#endif

struct atomrad_atom {
    atomrad::AtomSpec spec;
};

struct atomrad_scenario {
    atomrad::Scenario scenario;
};

namespace {

thread_local std::string g_last_error;

atomrad_status fail(atomrad_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <class F>
atomrad_status guarded(F&& body) {
    try {
        return body();
    } catch (const atomrad::PolarizationError& e) {
        return fail(ATOMRAD_ERR_POLARIZATION, e.what());
    } catch (const atomrad::ConvergenceError& e) {
        return fail(ATOMRAD_ERR_CONVERGENCE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(ATOMRAD_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(ATOMRAD_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(ATOMRAD_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ATOMRAD_ERR_INTERNAL, "unknown error");
    }
}

atomrad::OracleControls convert(const atomrad_oracle_controls* c) {
    atomrad::OracleControls oc;
    if (c) {
        oc.eps0 = c->eps0;
        oc.levels = c->levels;
        oc.window = c->window;
        oc.image_tol = c->image_tol;
        oc.max_panels = c->max_panels;
        oc.fail_above = c->fail_above;
    }
    return oc;
}

atomrad_spectral_rates convert(const atomrad::SpectralRates& sr) {
    return {sr.g_plus, sr.g_minus, sr.a_down, sr.a_up, sr.achieved_error};
}

atomrad::SpectralRates convert(const atomrad_spectral_rates& sr) {
    atomrad::SpectralRates out;
    out.g_plus = sr.g_plus;
    out.g_minus = sr.g_minus;
    out.a_down = sr.a_down;
    out.a_up = sr.a_up;
    out.achieved_error = sr.achieved_error;
    return out;
}

}  // namespace

extern "C" {

const char* atomrad_version(void) { return ATOMRAD_VERSION; }

const char* atomrad_last_error(void) { return g_last_error.c_str(); }

atomrad_status atomrad_atom_create(double omega0, double gamma0, const double alpha[3],
                                   atomrad_atom** out) {
    if (!alpha || !out) return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_atom_create: null pointer");
    return guarded([&] {
        atomrad::AtomSpec spec;
        spec.omega0 = omega0;
        spec.gamma0 = gamma0;
        spec.alpha = {alpha[0], alpha[1], alpha[2]};
        spec.validate();
        *out = new atomrad_atom{spec};
        return ATOMRAD_OK;
    });
}

void atomrad_atom_destroy(atomrad_atom* atom) { delete atom; }

atomrad_status atomrad_scenario_free_space(atomrad_scenario** out) {
    if (!out) return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_scenario_free_space: null pointer");
    *out = new atomrad_scenario{atomrad::StaticFreeSpace{}};
    return ATOMRAD_OK;
}

atomrad_status atomrad_scenario_static_mirror(double z0, double beta, atomrad_scenario** out) {
    if (!out) return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_scenario_static_mirror: null pointer");
    return guarded([&] {
        atomrad::Scenario s = atomrad::StaticMirrorThermal{z0, beta};
        atomrad::validate(s);
        *out = new atomrad_scenario{s};
        return ATOMRAD_OK;
    });
}

atomrad_status atomrad_scenario_accelerated_mirror(double a, double z0, atomrad_scenario** out) {
    if (!out)
        return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_scenario_accelerated_mirror: null pointer");
    return guarded([&] {
        atomrad::Scenario s = atomrad::AcceleratedMirror{a, z0};
        atomrad::validate(s);
        *out = new atomrad_scenario{s};
        return ATOMRAD_OK;
    });
}

void atomrad_scenario_destroy(atomrad_scenario* scenario) { delete scenario; }

atomrad_status atomrad_trajectory_point(const atomrad_scenario* scenario, double tau,
                                        double out_txyz[4]) {
    if (!scenario || !out_txyz)
        return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_trajectory_point: null pointer");
    return guarded([&] {
        auto p = atomrad::trajectory_point(scenario->scenario, tau);
        out_txyz[0] = p.t;
        out_txyz[1] = p.x;
        out_txyz[2] = p.y;
        out_txyz[3] = p.z;
        return ATOMRAD_OK;
    });
}

atomrad_status atomrad_unruh_beta(double a, double* out) {
    if (!out) return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_unruh_beta: null pointer");
    return guarded([&] {
        *out = atomrad::unruh_beta(a);
        return ATOMRAD_OK;
    });
}

atomrad_status atomrad_f_static(double omega0, double z0, double* out_fx, double* out_fz) {
    if (!out_fx || !out_fz) return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_f_static: null pointer");
    return guarded([&] {
        auto f = atomrad::f_static(omega0, z0);
        *out_fx = f.f_x;
        *out_fz = f.f_z;
        return ATOMRAD_OK;
    });
}

atomrad_status atomrad_f_accelerated(double omega0, double z0, double a, double* out_fx) {
    if (!out_fx) return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_f_accelerated: null pointer");
    return guarded([&] {
        *out_fx = atomrad::f_accelerated(omega0, z0, a);
        return ATOMRAD_OK;
    });
}

void atomrad_oracle_controls_default(atomrad_oracle_controls* out) {
    if (!out) return;
    atomrad::OracleControls oc;
    out->eps0 = oc.eps0;
    out->levels = oc.levels;
    out->window = oc.window;
    out->image_tol = oc.image_tol;
    out->max_panels = oc.max_panels;
    out->fail_above = oc.fail_above;
}

atomrad_status atomrad_spectral_rates_closed(const atomrad_scenario* scenario,
                                             const atomrad_atom* atom,
                                             atomrad_spectral_rates* out) {
    if (!scenario || !atom || !out)
        return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_spectral_rates_closed: null pointer");
    return guarded([&] {
        *out = convert(atomrad::spectral_rates(scenario->scenario, atom->spec,
                                               atomrad::Method::ClosedForm));
        return ATOMRAD_OK;
    });
}

atomrad_status atomrad_spectral_rates_oracle(const atomrad_scenario* scenario,
                                             const atomrad_atom* atom,
                                             const atomrad_oracle_controls* controls,
                                             atomrad_spectral_rates* out) {
    if (!scenario || !atom || !out)
        return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_spectral_rates_oracle: null pointer");
    return guarded([&] {
        *out = convert(atomrad::spectral_rates(scenario->scenario, atom->spec,
                                               atomrad::Method::Oracle, convert(controls)));
        return ATOMRAD_OK;
    });
}

atomrad_status atomrad_energy_rates_compute(const atomrad_spectral_rates* rates, double omega0,
                                    atomrad_energy_rates* out) {
    if (!rates || !out) return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_energy_rates_compute: null pointer");
    return guarded([&] {
        auto er = atomrad::energy_rates(convert(*rates), omega0);
        out->vf_excited = er.vf_excited;
        out->vf_ground = er.vf_ground;
        out->rr_any_state = er.rr_any_state;
        out->total_excited = er.total_excited;
        out->total_ground = er.total_ground;
        return ATOMRAD_OK;
    });
}

atomrad_status atomrad_polarization_contact_ratio(const double alpha[3], double* out) {
    if (!alpha || !out)
        return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_polarization_contact_ratio: null pointer");
    return guarded([&] {
        *out = atomrad::polarization_contact_ratio({alpha[0], alpha[1], alpha[2]});
        return ATOMRAD_OK;
    });
}

atomrad_status atomrad_equivalence_check(double omega0, double z0, double a,
                                         atomrad_equivalence_report* out) {
    if (!out) return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_equivalence_check: null pointer");
    return guarded([&] {
        auto rep = atomrad::equivalence_check(omega0, z0, a);
        out->accelerated_factor = rep.accelerated_factor;
        out->thermal_factor = rep.thermal_factor;
        out->difference = rep.difference;
        return ATOMRAD_OK;
    });
}

atomrad_status atomrad_relaxation_analytic(const atomrad_spectral_rates* rates, double omega0,
                                           double excited_fraction, const double* times,
                                           size_t n_times, double* out_energy,
                                           double* out_equilibrium, double* out_decay_rate) {
    if (!rates || !times || !out_energy)
        return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_relaxation_analytic: null pointer");
    return guarded([&] {
        auto init = atomrad::InitialState::mixed(excited_fraction);
        auto curve = atomrad::analytic_relaxation(convert(*rates), omega0, init,
                                                  std::vector<double>(times, times + n_times));
        std::memcpy(out_energy, curve.energy.data(), n_times * sizeof(double));
        if (out_equilibrium) *out_equilibrium = curve.equilibrium_energy;
        if (out_decay_rate) *out_decay_rate = curve.decay_rate;
        return ATOMRAD_OK;
    });
}

atomrad_status atomrad_relaxation_monte_carlo(const atomrad_spectral_rates* rates, double omega0,
                                              double excited_fraction, const double* times,
                                              size_t n_times, long n_atoms, uint64_t seed,
                                              double* out_energy, double* out_std_error,
                                              long* out_excited_count) {
    if (!rates || !times || !out_energy)
        return fail(ATOMRAD_ERR_NULL_POINTER, "atomrad_relaxation_monte_carlo: null pointer");
    return guarded([&] {
        auto init = atomrad::InitialState::mixed(excited_fraction);
        auto mc = atomrad::monte_carlo_relaxation(convert(*rates), omega0, init,
                                                  std::vector<double>(times, times + n_times),
                                                  n_atoms, seed);
        std::memcpy(out_energy, mc.mean_energy.data(), n_times * sizeof(double));
        if (out_std_error)
            std::memcpy(out_std_error, mc.std_error.data(), n_times * sizeof(double));
        if (out_excited_count)
            std::memcpy(out_excited_count, mc.excited_count.data(), n_times * sizeof(long));
        return ATOMRAD_OK;
    });
}

}  // extern "C"
