#pragma once

#include <cstdint>
#include <vector>

#include "atomrad/rates.hpp"

// Population and mean-energy relaxation: analytic rate-equation solution
// and a stochastic per-atom jump-process oracle.

namespace atomrad {

struct RelaxationCurve {
    std::vector<double> times;
    std::vector<double> energy;
    double equilibrium_energy;
    double decay_rate;  // A_up + A_down
};

// <H_A(tau)> = equilibrium + (<H_A(0)> - equilibrium) e^{-(A_up+A_down) tau},
// equilibrium = -w0/2 + w0 A_up/(A_up+A_down). The degenerate
// A_up = A_down = 0 case yields a constant curve.
RelaxationCurve analytic_relaxation(const SpectralRates& sr, double omega0, InitialState initial,
                                    std::vector<double> times);

// Right-hand side of the mean-energy ODE at energy h.
double ode_rhs(const SpectralRates& sr, double omega0, double h);

struct MonteCarloResult {
    std::vector<double> times;
    std::vector<double> mean_energy;
    std::vector<double> std_error;      // binomial standard error per grid point
    std::vector<long> excited_count;
    long n_atoms;
    std::uint64_t seed;
    int workers = 1;
};

// Independent two-state Markov atoms with exact exponential waiting times;
// deterministic for a fixed seed (per-atom streams derived from it).
MonteCarloResult monte_carlo_relaxation(const SpectralRates& sr, double omega0,
                                        InitialState initial, const std::vector<double>& times,
                                        long n_atoms, std::uint64_t seed);

}  // namespace atomrad
