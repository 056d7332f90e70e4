#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

// Shared physical types and scenario definitions. Natural units
// (hbar = c = k_B = 1) throughout; beta = infinity encodes T = 0.

namespace atomrad {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Two-level atom: gap omega0, vacuum emission rate gamma0, relative
// polarizabilities alpha (sum to 1).
struct AtomSpec {
    double omega0 = 1.0;
    double gamma0 = 1.0;
    std::array<double, 3> alpha = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

    void validate() const;

    // e^2 |<+|r_i|->|^2 for axis i, the dipole weight multiplying the
    // raw Fourier transform of the correlator.
    double dipole_weight(int axis) const {
        return gamma0 * alpha[static_cast<std::size_t>(axis)] * 3.0 * M_PI /
               (omega0 * omega0 * omega0);
    }
};

struct StaticFreeSpace {};

struct StaticMirrorThermal {
    double z0;
    double beta;  // inverse temperature; kInf means T = 0
};

struct AcceleratedMirror {
    double a;
    double z0;
};

using Scenario = std::variant<StaticFreeSpace, StaticMirrorThermal, AcceleratedMirror>;

void validate(const Scenario& scenario);

struct InitialState {
    double excited_fraction = 1.0;  // 1 = excited, 0 = ground

    static InitialState excited() { return {1.0}; }
    static InitialState ground() { return {0.0}; }
    static InitialState mixed(double p);

    double energy(double omega0) const { return omega0 * (excited_fraction - 0.5); }
};

struct FourVector {
    double t, x, y, z;
};

// Worldline point at proper time tau. Static scenarios sit at
// (tau, 0, 0, z0); the accelerated one follows the Rindler hyperbola
// (sinh(a tau)/a, cosh(a tau)/a, 0, z0).
FourVector trajectory_point(const Scenario& scenario, double tau);

// Effective inverse Unruh temperature 2*pi/a.
double unruh_beta(double a);

// Planck occupation 1/(e^{beta*omega}-1); exactly 0 for beta = infinity.
double planck_occupation(double beta, double omega);

}  // namespace atomrad
