#pragma once

#include <array>

#include "atomrad/domain.hpp"
#include "atomrad/wightman.hpp"

// One-sided Fourier transforms of the field correlators, two ways: closed
// forms and a regularized quadrature oracle, plus the oscillating boundary
// functions f_i.

namespace atomrad {

struct PolarizationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BoundaryFunctions {
    double f_x, f_y, f_z;
};

// Mirror corrections for the static atom; f_x = f_y. Switches to a
// Maclaurin series below 2*omega0*z0 = 1e-2 to avoid cancellation.
BoundaryFunctions f_static(double omega0, double z0);

// Boundary correction for the accelerated atom, x polarization. a = 0
// delegates to f_static; a*z0 < 1e-3 uses the second-order small-a
// expansion around the static value.
double f_accelerated(double omega0, double z0, double a);

enum class TransitionSign { Emission, Excitation };  // lambda = +omega0 / -omega0

struct SpectralResult {
    std::array<double, 3> per_axis;  // dipole-weighted rate per polarization axis
    double lambda;
    double achieved_error;  // 0 for closed forms
};

// Closed forms transcribed from the per-scenario rate tables. Accelerated
// scenarios carry the x axis only and reject atoms with alpha_y or
// alpha_z nonzero.
SpectralResult fourier_closed_form(const Scenario& scenario, const AtomSpec& atom,
                                   TransitionSign sign);

struct OracleControls {
    double eps0 = 0.0;    // leading regulator; 0 = auto
    int levels = 5;       // Richardson depth over eps_k = eps0 / 2^k
    double window = 0.0;  // integration half-window L; 0 = auto
    double image_tol = 1e-12;
    long max_panels = 60000;
    double fail_above = 1e-3;  // throw if achieved_error exceeds this (relative)
};

// Regularized quadrature of int e^{i lambda u} G_ii(u - i eps) du with
// Richardson extrapolation of the eps sequence to 0. Independent of the
// closed forms above; achieved_error aggregates extrapolation residual,
// quadrature error, window tail and image-sum truncation.
SpectralResult fourier_oracle(const Scenario& scenario, const AtomSpec& atom, double lambda,
                              const OracleControls& controls = {});

// Both signs (lambda = +omega0 and -omega0) on a shared set of correlator
// evaluations; index 0 is emission, 1 excitation.
std::array<SpectralResult, 2> fourier_oracle_both(const Scenario& scenario, const AtomSpec& atom,
                                                  const OracleControls& controls = {});

}  // namespace atomrad
