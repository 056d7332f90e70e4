#include "atomrad/wightman.hpp"

#include <cmath>
#include <sstream>

namespace atomrad {

namespace {

constexpr double kInvPi2 = 1.0 / (M_PI * M_PI);

inline Complex inv4(Complex w) {
    Complex w2 = w * w;
    return 1.0 / (w2 * w2);
}

// Boundary image term of the static correlator for one k-image,
// w = u - i eps + i k beta. c = +1 for xx/yy, -1 for zz.
inline Complex boundary_term(Complex w, double z0, double c) {
    Complex w2 = w * w;
    Complex d = w2 - 4.0 * z0 * z0;
    return (c * w2 + 4.0 * z0 * z0) / (d * d * d);
}

struct TermPair {
    Complex xx, zz;
};

// Bound on the omitted k > K images: terms decay at least as (k beta)^-4
// once settled, so the tail is below the last computed pair times K.
inline double image_tail_bound(double last_pair_mag, long k) {
    return kInvPi2 * last_pair_mag * static_cast<double>(k);
}

}  // namespace

CorrelatorDiag correlator_static_thermal(double z0, double beta, double u, double epsilon,
                                         const ImageSumPolicy& policy) {
    if (!(z0 > 0.0)) throw std::invalid_argument("correlator_static_thermal: z0 must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("correlator_static_thermal: beta must be > 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("correlator_static_thermal: epsilon must be > 0");

    const Complex u_eps(u, -epsilon);
    auto term = [&](long k) -> TermPair {
        Complex w = k == 0 ? u_eps : u_eps + Complex(0.0, static_cast<double>(k) * beta);
        Complex free = inv4(w);
        return {free - boundary_term(w, z0, +1.0), free - boundary_term(w, z0, -1.0)};
    };

    TermPair sum = term(0);
    CorrelatorDiag out;
    if (std::isinf(beta)) {
        out.xx = out.yy = kInvPi2 * sum.xx;
        out.zz = kInvPi2 * sum.zz;
        return out;
    }

    const double settled = 2.0 * (std::fabs(u) + 2.0 * z0 + epsilon + 1.0);
    long k = 0;
    double pair_mag = 0.0;
    for (;;) {
        ++k;
        if (policy.fixed_terms > 0 && k > policy.fixed_terms) break;
        if (k > policy.max_terms) {
            std::ostringstream msg;
            msg << "correlator_static_thermal: image sum not converged after " << policy.max_terms
                << " terms (achieved bound " << image_tail_bound(pair_mag, k) << ")";
            throw ConvergenceError(msg.str());
        }
        TermPair tp = term(k);
        TermPair tm = term(-k);
        sum.xx += tp.xx + tm.xx;
        sum.zz += tp.zz + tm.zz;
        pair_mag = std::abs(tp.xx) + std::abs(tm.xx) + std::abs(tp.zz) + std::abs(tm.zz);
        if (policy.fixed_terms > 0) continue;
        double ref = std::abs(sum.xx) + std::abs(sum.zz);
        if (static_cast<double>(k) * beta > settled &&
            (pair_mag <= policy.tol * ref || pair_mag * kInvPi2 <= policy.abs_floor))
            break;
    }
    out.xx = out.yy = kInvPi2 * sum.xx;
    out.zz = kInvPi2 * sum.zz;
    out.tail_bound = image_tail_bound(pair_mag, k);
    return out;
}

CorrelatorDiag correlator_free_space_thermal(double beta, double u, double epsilon,
                                             const ImageSumPolicy& policy) {
    if (!(beta > 0.0)) throw std::invalid_argument("correlator_free_space_thermal: beta must be > 0");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("correlator_free_space_thermal: epsilon must be > 0");

    const Complex u_eps(u, -epsilon);
    Complex sum = inv4(u_eps);
    CorrelatorDiag out;
    if (!std::isinf(beta)) {
        const double settled = 2.0 * (std::fabs(u) + epsilon + 1.0);
        long k = 0;
        double pair_mag = 0.0;
        for (;;) {
            ++k;
            if (policy.fixed_terms > 0 && k > policy.fixed_terms) break;
            if (k > policy.max_terms)
                throw ConvergenceError("correlator_free_space_thermal: image sum not converged");
            Complex tp = inv4(u_eps + Complex(0.0, static_cast<double>(k) * beta));
            Complex tm = inv4(u_eps - Complex(0.0, static_cast<double>(k) * beta));
            sum += tp + tm;
            pair_mag = std::abs(tp) + std::abs(tm);
            if (policy.fixed_terms > 0) continue;
            if (static_cast<double>(k) * beta > settled &&
                (pair_mag <= policy.tol * std::abs(sum) || pair_mag * kInvPi2 <= policy.abs_floor))
                break;
        }
        out.tail_bound = image_tail_bound(pair_mag, k);
    }
    out.xx = out.yy = out.zz = kInvPi2 * sum;
    return out;
}

Complex correlator_accel_mirror_xx(double a, double z0, double u, double epsilon) {
    if (!(a > 0.0)) throw std::invalid_argument("correlator_accel_mirror_xx: a must be > 0");
    if (!(z0 > 0.0)) throw std::invalid_argument("correlator_accel_mirror_xx: z0 must be > 0");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("correlator_accel_mirror_xx: epsilon must be > 0");
    if (std::fabs(a * u) > 600.0) return {0.0, 0.0};  // both terms below underflow

    const Complex arg = 0.5 * a * Complex(u, -epsilon);
    const Complex s = std::sinh(arg);
    const Complex s2 = s * s;
    const double az2 = a * z0 * a * z0;
    const Complex d = az2 - s2;
    const double pref = a * a * a * a / (16.0 * M_PI * M_PI);
    return pref * (1.0 / (s2 * s2) + (az2 + s2) / (d * d * d));
}

double static_boundary_pole(double z0) { return 2.0 * z0; }

double accel_boundary_pole(double a, double z0) { return 2.0 * std::asinh(a * z0) / a; }

// ---------------------------------------------------------------------------
// Finite-difference oracle on the four-potential two-point function.

namespace {

// k-summed image-series of 1/S1 and 1/S2, S1/S2 the squared intervals to
// the direct and mirror point. Regulator lives in the complex coordinates.
struct PotentialInverses {
    Complex inv_s1, inv_s2;
};

PotentialInverses potential_inverses(double beta, const FourVectorC& x, const FourVectorC& xp,
                                     const ImageSumPolicy& policy) {
    const Complex dt = x.t - xp.t;
    const Complex dx = x.x - xp.x;
    const Complex dy = x.y - xp.y;
    const Complex dz = x.z - xp.z;
    const Complex sz = x.z + xp.z;
    const Complex space1 = dx * dx + dy * dy + dz * dz;
    const Complex space2 = dx * dx + dy * dy + sz * sz;

    auto term = [&](long k) -> PotentialInverses {
        Complex tk = k == 0 ? dt : dt + Complex(0.0, static_cast<double>(k) * beta);
        Complex tk2 = tk * tk;
        return {1.0 / (tk2 - space1), 1.0 / (tk2 - space2)};
    };

    PotentialInverses sum = term(0);
    if (std::isinf(beta)) return sum;

    const double settled =
        2.0 * (std::abs(dt) + std::sqrt(std::abs(space1)) + std::sqrt(std::abs(space2)) + 1.0);
    long k = 0;
    for (;;) {
        ++k;
        if (policy.fixed_terms > 0 && k > policy.fixed_terms) break;
        if (k > policy.max_terms)
            throw ConvergenceError("potential_inverses: image sum not converged");
        PotentialInverses tp = term(k);
        PotentialInverses tm = term(-k);
        sum.inv_s1 += tp.inv_s1 + tm.inv_s1;
        sum.inv_s2 += tp.inv_s2 + tm.inv_s2;
        if (policy.fixed_terms > 0) continue;
        double pair_mag = std::abs(tp.inv_s1) + std::abs(tm.inv_s1) + std::abs(tp.inv_s2) +
                          std::abs(tm.inv_s2);
        if (static_cast<double>(k) * beta > settled &&
            pair_mag <= policy.tol * (std::abs(sum.inv_s1) + std::abs(sum.inv_s2)))
            break;
    }
    return sum;
}

inline Complex& component(FourVectorC& v, int mu) {
    switch (mu) {
        case 0: return v.t;
        case 1: return v.x;
        case 2: return v.y;
        default: return v.z;
    }
}

// <A_i A_j> for spatial i, j (diagonal metric plus the zz mirror flip).
Complex potential_spatial(double beta, const FourVectorC& x, const FourVectorC& xp, int i, int j,
                          const ImageSumPolicy& policy) {
    if (i != j) return {0.0, 0.0};
    auto inv = potential_inverses(beta, x, xp, policy);
    const double mirror = (i == 3) ? -1.0 : 1.0;
    return (-inv.inv_s1 + mirror * inv.inv_s2) / (4.0 * M_PI * M_PI);
}

Complex potential_temporal(double beta, const FourVectorC& x, const FourVectorC& xp,
                           const ImageSumPolicy& policy) {
    auto inv = potential_inverses(beta, x, xp, policy);
    return (inv.inv_s1 - inv.inv_s2) / (4.0 * M_PI * M_PI);
}

// Mixed derivative d/dx_mu d/dx'_nu with 6th-order 7-point stencils and
// Richardson halving until two successive estimates agree.
template <class F>
Complex fd_mixed(const F& f, FourVectorC x, FourVectorC xp, int mu, int nu, double h0,
                 double scale) {
    static constexpr std::array<double, 7> stencil = {-1.0 / 60.0, 3.0 / 20.0, -3.0 / 4.0, 0.0,
                                                      3.0 / 4.0,   -3.0 / 20.0, 1.0 / 60.0};
    auto deriv = [&](double h) {
        Complex acc{0.0, 0.0};
        for (int m = -3; m <= 3; ++m) {
            const double cm = stencil[static_cast<std::size_t>(m + 3)];
            if (cm == 0.0) continue;
            for (int n = -3; n <= 3; ++n) {
                const double cn = stencil[static_cast<std::size_t>(n + 3)];
                if (cn == 0.0) continue;
                FourVectorC xa = x, xb = xp;
                component(xa, mu) += static_cast<double>(m) * h;
                component(xb, nu) += static_cast<double>(n) * h;
                acc += cm * cn * f(xa, xb);
            }
        }
        return acc / (h * h);
    };

    const double f0 = std::abs(f(x, xp));
    Complex prev = deriv(h0);
    double h = h0;
    for (int iter = 0; iter < 8; ++iter) {
        h *= 0.5;
        if (h < 1e-8 * scale)
            throw ConvergenceError("fd_mixed: step-size underflow before convergence (h=" +
                                   std::to_string(h) + ")");
        Complex cur = deriv(h);
        // one Richardson step on the O(h^6) leading error; the floor admits
        // the cancellation noise of the divided differences (components whose
        // true value is zero never clear a purely relative criterion)
        Complex extrap = (64.0 * cur - prev) / 63.0;
        const double noise_floor = 1e-12 * f0 / (h * h);
        if (std::abs(cur - prev) <= 1e-7 * std::abs(extrap) + noise_floor + 1e-300) return extrap;
        prev = cur;
    }
    throw ConvergenceError("fd_mixed: Richardson halving failed to converge");
}

}  // namespace

Complex correlator_from_potential(double beta, const FourVectorC& x, const FourVectorC& xp, int i,
                                  int j, const ImageSumPolicy& policy) {
    if (i < 1 || i > 3 || j < 1 || j > 3)
        throw std::invalid_argument("correlator_from_potential: spatial components are 1..3");
    if (!(x.z.real() > 0.0) || !(xp.z.real() > 0.0))
        throw std::invalid_argument("correlator_from_potential: both points must be off the mirror");

    const Complex dt = x.t - xp.t;
    const Complex dz = x.z - xp.z;
    const Complex sz = x.z + xp.z;
    double d1 = std::sqrt(std::abs(dt * dt - dz * dz));
    double d2 = std::sqrt(std::abs(dt * dt - sz * sz));

    // Freeze the image count for the whole stencil: an adaptive cutoff
    // varies between stencil points and the resulting jitter never
    // cancels in the divided differences.
    ImageSumPolicy frozen = policy;
    if (!std::isinf(beta) && frozen.fixed_terms == 0) {
        double k_needed = 40.0 * (std::abs(dt) + std::abs(sz) + 1.0) / beta;
        frozen.fixed_terms = static_cast<long>(std::min(
            static_cast<double>(policy.max_terms), std::max(400.0, k_needed)));
    }
    double scale = std::min({d1 > 0 ? d1 : 1.0, d2 > 0 ? d2 : 1.0, 1.0,
                             std::isinf(beta) ? 1.0 : 0.5 * beta});
    if (!(scale > 0.0)) throw ConvergenceError("correlator_from_potential: singular separation");
    const double h0 = 1e-2 * scale;

    auto spatial = [&](const FourVectorC& a, const FourVectorC& b) {
        return potential_spatial(beta, a, b, i, j, frozen);
    };
    auto temporal = [&](const FourVectorC& a, const FourVectorC& b) {
        return potential_temporal(beta, a, b, frozen);
    };

    Complex time_part = (i == j) ? fd_mixed(spatial, x, xp, 0, 0, h0, scale) : Complex{0.0, 0.0};
    Complex space_part = fd_mixed(temporal, x, xp, i, j, h0, scale);
    return time_part + space_part;
}

}  // namespace atomrad
