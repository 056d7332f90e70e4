#pragma once

#include <complex>
#include <string>

#include "atomrad/domain.hpp"

// Electric-field two-point functions G_ij(u - i eps) along the stationary
// trajectories, diagonal components only. The regulator is applied
// uniformly, u -> u - i eps in every factor containing u.

namespace atomrad {

using Complex = std::complex<double>;

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Controls for the imaginary-time image sum (thermal k-sum).
struct ImageSumPolicy {
    double tol = 1e-12;      // stop when a +/-k pair is below tol * |partial sum|
    double abs_floor = 0.0;  // additionally stop below this absolute size
    long max_terms = 1000000;
    long fixed_terms = 0;    // > 0: sum exactly k = -K..K, ignore tolerances
};

struct CorrelatorDiag {
    Complex xx, yy, zz;
    double tail_bound = 0.0;  // bound on the truncated image tail
};

// Mirror-at-z=0, temperature 1/beta, static atom at height z0 (diagonal
// components; xx = yy). beta = kInf keeps only the k = 0 image.
CorrelatorDiag correlator_static_thermal(double z0, double beta, double u, double epsilon,
                                         const ImageSumPolicy& policy = {});

// No boundary: free-space thermal correlator, all diagonal components equal.
CorrelatorDiag correlator_free_space_thermal(double beta, double u, double epsilon,
                                             const ImageSumPolicy& policy = {});

// Uniformly accelerated atom (acceleration a along x) at height z0 above
// the mirror, T = 0, xx component only.
Complex correlator_accel_mirror_xx(double a, double z0, double u, double epsilon);

// Real-u pole positions of the boundary term (epsilon = 0), used by the
// quadrature oracle to lay out panels.
double static_boundary_pole(double z0);             // 2 z0
double accel_boundary_pole(double a, double z0);    // (2/a) asinh(a z0)

// ---------------------------------------------------------------------------
// Independent oracle: numerically differentiate the four-potential two-point
// function. The regulator enters through complexified time coordinates, so
// points are complex 4-vectors.

struct FourVectorC {
    Complex t, x, y, z;
};

// <E_i(x) E_j(x')> via high-order central differences of the potential
// correlator; z0 enters only through the image point (the mirror sits at
// z = 0). beta = kInf for T = 0. Throws ConvergenceError if Richardson
// halving fails to stabilise.
Complex correlator_from_potential(double beta, const FourVectorC& x, const FourVectorC& xp,
                                  int i, int j, const ImageSumPolicy& policy = {});

}  // namespace atomrad
