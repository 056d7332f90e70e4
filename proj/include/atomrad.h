#ifndef ATOMRAD_H
#define ATOMRAD_H

/* C interface to the atomrad library.
 *
 * All functions return atomrad_status; outputs are written through pointers.
 * On failure a thread-local message is available via atomrad_last_error().
 * Handles are opaque and must be released with the matching _destroy call.
 * Natural units (hbar = c = k_B = 1); beta = INFINITY encodes T = 0.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum atomrad_status {
    ATOMRAD_OK = 0,
    ATOMRAD_ERR_NULL_POINTER = 1,
    ATOMRAD_ERR_INVALID_ARGUMENT = 2,
    ATOMRAD_ERR_POLARIZATION = 3,
    ATOMRAD_ERR_CONVERGENCE = 4,
    ATOMRAD_ERR_INTERNAL = 5
} atomrad_status;

typedef struct atomrad_atom atomrad_atom;
typedef struct atomrad_scenario atomrad_scenario;

const char* atomrad_version(void);

/* Message describing the most recent failure on this thread; never NULL. */
const char* atomrad_last_error(void);

/* --- atom ---------------------------------------------------------------- */

/* omega0 > 0, gamma0 >= 0, alpha entries in [0,1] summing to 1. */
atomrad_status atomrad_atom_create(double omega0, double gamma0, const double alpha[3],
                                   atomrad_atom** out);
void atomrad_atom_destroy(atomrad_atom* atom);

/* --- scenarios ----------------------------------------------------------- */

atomrad_status atomrad_scenario_free_space(atomrad_scenario** out);
atomrad_status atomrad_scenario_static_mirror(double z0, double beta, atomrad_scenario** out);
atomrad_status atomrad_scenario_accelerated_mirror(double a, double z0, atomrad_scenario** out);
void atomrad_scenario_destroy(atomrad_scenario* scenario);

/* Worldline point at proper time tau, written as (t, x, y, z). */
atomrad_status atomrad_trajectory_point(const atomrad_scenario* scenario, double tau,
                                        double out_txyz[4]);

/* 2*pi/a. */
atomrad_status atomrad_unruh_beta(double a, double* out);

/* --- boundary functions -------------------------------------------------- */

atomrad_status atomrad_f_static(double omega0, double z0, double* out_fx, double* out_fz);
atomrad_status atomrad_f_accelerated(double omega0, double z0, double a, double* out_fx);

/* --- spectral rates ------------------------------------------------------ */

typedef struct atomrad_oracle_controls {
    double eps0;       /* leading regulator; 0 = auto */
    int levels;        /* Richardson depth */
    double window;     /* integration half-window; 0 = auto */
    double image_tol;
    long max_panels;
    double fail_above; /* relative error ceiling before the oracle fails */
} atomrad_oracle_controls;

void atomrad_oracle_controls_default(atomrad_oracle_controls* out);

typedef struct atomrad_spectral_rates {
    double g_plus;  /* emission transform, summed over axes; == a_down */
    double g_minus; /* excitation transform; == a_up */
    double a_down;
    double a_up;
    double achieved_error; /* 0 for the closed form */
} atomrad_spectral_rates;

atomrad_status atomrad_spectral_rates_closed(const atomrad_scenario* scenario,
                                             const atomrad_atom* atom,
                                             atomrad_spectral_rates* out);

/* controls may be NULL for defaults. */
atomrad_status atomrad_spectral_rates_oracle(const atomrad_scenario* scenario,
                                             const atomrad_atom* atom,
                                             const atomrad_oracle_controls* controls,
                                             atomrad_spectral_rates* out);

/* --- energy rates -------------------------------------------------------- */

typedef struct atomrad_energy_rates {
    double vf_excited;
    double vf_ground;
    double rr_any_state;
    double total_excited;
    double total_ground;
} atomrad_energy_rates;

atomrad_status atomrad_energy_rates_compute(const atomrad_spectral_rates* rates, double omega0,
                                    atomrad_energy_rates* out);

/* Total rate relative to the no-boundary rate in the contact limit z0 -> 0. */
atomrad_status atomrad_polarization_contact_ratio(const double alpha[3], double* out);

typedef struct atomrad_equivalence_report {
    double accelerated_factor;
    double thermal_factor;
    double difference;
} atomrad_equivalence_report;

/* z0 = INFINITY drops the boundary terms exactly. */
atomrad_status atomrad_equivalence_check(double omega0, double z0, double a,
                                         atomrad_equivalence_report* out);

/* --- relaxation dynamics ------------------------------------------------- */

/* Writes n_times energies to out_energy; equilibrium/decay outputs optional
 * (pass NULL to skip). */
atomrad_status atomrad_relaxation_analytic(const atomrad_spectral_rates* rates, double omega0,
                                           double excited_fraction, const double* times,
                                           size_t n_times, double* out_energy,
                                           double* out_equilibrium, double* out_decay_rate);

/* Stochastic ensemble of n_atoms two-state atoms; deterministic in seed.
 * out_std_error and out_excited_count are optional (NULL to skip). */
atomrad_status atomrad_relaxation_monte_carlo(const atomrad_spectral_rates* rates, double omega0,
                                              double excited_fraction, const double* times,
                                              size_t n_times, long n_atoms, uint64_t seed,
                                              double* out_energy, double* out_std_error,
                                              long* out_excited_count);

#ifdef __cplusplus
}
#endif

#endif /* ATOMRAD_H */
