#include "atomrad/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "atomrad/quadrature.hpp"

namespace atomrad {

// ---------------------------------------------------------------------------
// Boundary functions

namespace {

constexpr double kSeriesThresholdX = 1e-2;   // on x = 2 omega0 z0
constexpr double kSmallAccelS = 1e-3;        // on s = a z0

// Small-a correction coefficient: f_accel = f_static + (a z0)^2 g(x) + O(a^4).
double accel_correction_g(double x) {
    if (x < kSeriesThresholdX) {
        const double x2 = x * x;
        return 4.0 / x2 - 4.0 + 0.6 * x2 - (2.0 / 63.0) * x2 * x2;
    }
    const double x3 = x * x * x;
    return 1.5 / x3 *
           ((0.5 - (4.0 / 3.0) * x * x) * std::sin(x) +
            ((13.0 / 6.0) * x - x * x * x / 6.0) * std::cos(x));
}

}  // namespace

BoundaryFunctions f_static(double omega0, double z0) {
    if (!(omega0 > 0.0) || !(z0 > 0.0))
        throw std::invalid_argument("f_static: omega0 and z0 must be > 0");
    const double x = 2.0 * omega0 * z0;
    if (x < kSeriesThresholdX) {
        const double x2 = x * x;
        const double x4 = x2 * x2;
        const double fx = 1.0 - x2 / 5.0 + 3.0 * x4 / 280.0 - x2 * x4 / 3780.0;
        const double fz = -1.0 + x2 / 10.0 - x4 / 280.0 + x2 * x4 / 15120.0;
        return {fx, fx, fz};
    }
    const double x3 = x * x * x;
    const double fx = 1.5 / x3 * (x * std::cos(x) + (x * x - 1.0) * std::sin(x));
    const double fz = 3.0 / x3 * (x * std::cos(x) - std::sin(x));
    return {fx, fx, fz};
}

double f_accelerated(double omega0, double z0, double a) {
    if (!(omega0 > 0.0) || !(z0 > 0.0) || !(a >= 0.0))
        throw std::invalid_argument("f_accelerated: omega0, z0 must be > 0 and a >= 0");
    if (a == 0.0) return f_static(omega0, z0).f_x;
    const double s = a * z0;
    if (s < kSmallAccelS)
        return f_static(omega0, z0).f_x + s * s * accel_correction_g(2.0 * omega0 * z0);
    const double wz = omega0 * z0;
    const double s2 = s * s;
    const double eta2 = 1.0 + s2;
    const double phi = 2.0 * omega0 * std::asinh(s) / a;
    const double amp_sin =
        (4.0 * wz * wz * eta2 - 2.0 * s2 * (1.0 + 2.0 * s2) - 1.0) / (eta2 * eta2 * std::sqrt(eta2));
    const double amp_cos = 2.0 * wz * (1.0 + 4.0 * s2) / (eta2 * eta2);
    return 3.0 / (16.0 * wz * wz * wz) * (amp_sin * std::sin(phi) + amp_cos * std::cos(phi));
}

// ---------------------------------------------------------------------------
// Closed-form transforms

namespace {

void require_x_polarization(const AtomSpec& atom) {
    if (atom.alpha[1] != 0.0 || atom.alpha[2] != 0.0)
        throw PolarizationError(
            "accelerated scenarios support x polarization only (alpha_y = alpha_z = 0)");
}

}  // namespace

SpectralResult fourier_closed_form(const Scenario& scenario, const AtomSpec& atom,
                                   TransitionSign sign) {
    atom.validate();
    validate(scenario);
    const double w0 = atom.omega0;
    SpectralResult out{};
    out.lambda = (sign == TransitionSign::Emission) ? w0 : -w0;
    out.achieved_error = 0.0;

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, StaticFreeSpace>) {
                const double occ = (sign == TransitionSign::Emission) ? 1.0 : 0.0;
                for (int i = 0; i < 3; ++i)
                    out.per_axis[static_cast<std::size_t>(i)] =
                        atom.gamma0 * atom.alpha[static_cast<std::size_t>(i)] * occ;
            } else if constexpr (std::is_same_v<T, StaticMirrorThermal>) {
                const double n = planck_occupation(s.beta, w0);
                const double occ = (sign == TransitionSign::Emission) ? 1.0 + n : n;
                const BoundaryFunctions f = f_static(w0, s.z0);
                const std::array<double, 3> fi = {f.f_x, f.f_y, f.f_z};
                for (std::size_t i = 0; i < 3; ++i)
                    out.per_axis[i] = atom.gamma0 * atom.alpha[i] * (1.0 - fi[i]) * occ;
            } else {
                require_x_polarization(atom);
                const double n = planck_occupation(unruh_beta(s.a), w0);
                const double occ = (sign == TransitionSign::Emission) ? 1.0 + n : n;
                const double factor =
                    1.0 + s.a * s.a / (w0 * w0) - f_accelerated(w0, s.z0, s.a);
                out.per_axis = {atom.gamma0 * atom.alpha[0] * factor * occ, 0.0, 0.0};
            }
        },
        scenario);
    return out;
}

// ---------------------------------------------------------------------------
// Quadrature oracle

namespace {

struct ScenarioShape {
    std::vector<double> poles;   // boundary-term poles on u >= 0 (incl. 0)
    bool mirror = false;         // distinct zz component
    double beta = kInf;          // thermal image spacing (kInf: none)
    double z0 = 0.0;
    double a = 0.0;              // > 0 for the accelerated case
    bool accel = false;
};

ScenarioShape shape_of(const Scenario& scenario) {
    ScenarioShape sh;
    sh.poles = {0.0};
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, StaticMirrorThermal>) {
                sh.mirror = true;
                sh.beta = s.beta;
                sh.z0 = s.z0;
                sh.poles.push_back(static_boundary_pole(s.z0));
            } else if constexpr (std::is_same_v<T, AcceleratedMirror>) {
                sh.mirror = true;
                sh.accel = true;
                sh.a = s.a;
                sh.z0 = s.z0;
                sh.poles.push_back(accel_boundary_pole(s.a, s.z0));
            }
        },
        scenario);
    return sh;
}

// Distinct correlator components at lag u - i eps, plus the local
// image-sum truncation bound. The accelerated and free-space cases carry
// one value; the static mirror carries {xx, zz}.
struct GValue {
    Complex comp[2];
    double tail = 0.0;
    int n = 1;
};

GValue eval_correlator(const ScenarioShape& sh, double u, double eps,
                       const ImageSumPolicy& policy) {
    GValue g;
    if (sh.accel) {
        g.comp[0] = correlator_accel_mirror_xx(sh.a, sh.z0, u, eps);
        g.n = 1;
    } else if (sh.mirror) {
        CorrelatorDiag c = correlator_static_thermal(sh.z0, sh.beta, u, eps, policy);
        g.comp[0] = c.xx;
        g.comp[1] = c.zz;
        g.n = 2;
        g.tail = c.tail_bound;
    } else {
        CorrelatorDiag c = correlator_free_space_thermal(sh.beta, u, eps, policy);
        g.comp[0] = c.xx;
        g.n = 1;
        g.tail = c.tail_bound;
    }
    return g;
}

std::vector<double> build_breakpoints(const ScenarioShape& sh, double eps, double L,
                                      double lambda_max) {
    std::vector<double> pts;
    pts.push_back(0.0);
    pts.push_back(L);
    for (double p : sh.poles) {
        const double lo = std::max(0.0, p - 8.0 * eps);
        const double hi = std::min(L, p + 8.0 * eps);
        for (double x = lo; x < hi + 0.1 * eps; x += 0.25 * eps) pts.push_back(std::min(x, hi));
    }
    double wmax = std::min(M_PI / (4.0 * lambda_max), 1.0);
    if (sh.accel) wmax = std::min(wmax, 0.5 / sh.a);
    for (double x = wmax; x < L; x += wmax) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    out.push_back(pts.front());
    for (double x : pts)
        if (x - out.back() > 0.1 * eps) out.push_back(x);
    if (out.back() < L) out.push_back(L);
    return out;
}

// Neville extrapolation of a geometric-ratio-2 eps sequence to eps -> 0,
// assuming a polynomial error model; returns value and residual estimate.
std::pair<double, double> richardson(const std::vector<double>& vals) {
    const std::size_t m = vals.size();
    std::vector<std::vector<double>> t(m);
    for (std::size_t i = 0; i < m; ++i) {
        t[i].resize(i + 1);
        t[i][0] = vals[i];
        double pow2 = 1.0;
        for (std::size_t j = 1; j <= i; ++j) {
            pow2 *= 2.0;
            t[i][j] = (pow2 * t[i][j - 1] - t[i - 1][j - 1]) / (pow2 - 1.0);
        }
    }
    const double best = t[m - 1][m - 1];
    const double res =
        std::fabs(best - t[m - 1][m - 2]) + std::fabs(best - t[m - 2][m - 2]);
    return {best, res};
}

struct RawTransforms {
    // raw (unweighted) transform per distinct component per lambda
    std::array<std::array<double, 2>, 2> value{};  // [component][lambda index]
    std::array<std::array<double, 2>, 2> error{};
};

RawTransforms raw_transforms(const Scenario& scenario, const std::array<double, 2>& lambdas,
                             int nlambda, const OracleControls& controls) {
    validate(scenario);
    const ScenarioShape sh = shape_of(scenario);
    double lambda_max = 0.0;
    for (int l = 0; l < nlambda; ++l)
        lambda_max = std::max(lambda_max, std::fabs(lambdas[static_cast<std::size_t>(l)]));
    if (!(lambda_max > 0.0)) throw std::invalid_argument("fourier_oracle: lambda must be nonzero");

    double eps0 = controls.eps0;
    if (eps0 <= 0.0) {
        eps0 = std::min(0.1, 0.25 / lambda_max);
        if (sh.mirror) eps0 = std::min(eps0, 0.25 * sh.z0);
        if (sh.accel) eps0 = std::min(eps0, 0.25 * accel_boundary_pole(sh.a, sh.z0));
    }
    const int levels = std::max(3, controls.levels);

    double L = controls.window;
    if (L <= 0.0) {
        L = 50.0 / lambda_max;
        if (!std::isinf(sh.beta)) L = std::max(L, 20.0 * sh.beta);
        if (sh.accel) L = std::max(20.0 / sh.a, 20.0 / lambda_max);
        L = std::min(L, 400.0);
    }

    // Truncate the image sum on an absolute floor tied to the transform
    // scale; a tolerance relative to the local correlator would stop far
    // too early near the poles, where |G| ~ eps^-4 dwarfs the transform.
    ImageSumPolicy policy;
    policy.tol = 0.0;
    policy.abs_floor = controls.image_tol * 0.1 * lambda_max * lambda_max * lambda_max;

    const int ncomp_g = sh.accel || !sh.mirror ? 1 : 2;
    const std::size_t ncomp = static_cast<std::size_t>(ncomp_g * nlambda);
    // finite-temperature runs integrate the local image-truncation bound
    // as one extra component
    const bool track_tail = !std::isinf(sh.beta);
    const std::size_t ncomp_int = ncomp + (track_tail ? 1 : 0);

    const double scale = lambda_max * lambda_max * lambda_max / (3.0 * M_PI) *
                         (1.0 + 2.0 * planck_occupation(std::isinf(sh.beta) && sh.accel
                                                            ? unruh_beta(sh.a)
                                                            : sh.beta,
                                                        lambda_max)) *
                         (sh.accel ? 1.0 + sh.a * sh.a / (lambda_max * lambda_max) : 1.0) *
                         M_PI * M_PI;
    const double abs_tol = 1e-10 * scale;

    std::vector<std::vector<double>> per_eps(ncomp);  // [component][eps level]
    double quad_err_max = 0.0, sum_abs_max = 0.0, image_err = 0.0;
    std::array<double, quad::kMaxComponents> tail_rem{};

    double eps = eps0;
    for (int level = 0; level < levels; ++level, eps *= 0.5) {
        auto integrand = [&](double u) {
            quad::VecSample s;
            GValue g = eval_correlator(sh, u, eps, policy);
            std::size_t c = 0;
            for (int ig = 0; ig < ncomp_g; ++ig)
                for (int l = 0; l < nlambda; ++l) {
                    const double lam = lambdas[static_cast<std::size_t>(l)];
                    s.v[c++] = 2.0 * (std::cos(lam * u) * g.comp[ig].real() -
                                      std::sin(lam * u) * g.comp[ig].imag());
                }
            if (track_tail) s.v[c] = 2.0 * g.tail;
            return s;
        };
        auto bps = build_breakpoints(sh, eps, L, lambda_max);
        auto r = quad::integrate(integrand, ncomp_int, bps, abs_tol,
                                 static_cast<std::size_t>(controls.max_panels));
        quad_err_max = std::max(quad_err_max, r.err_est);
        sum_abs_max = std::max(sum_abs_max, r.sum_abs);
        if (track_tail) image_err = std::max(image_err, std::fabs(r.value[ncomp]));

        // window-tail correction from integration by parts at u = L
        const double h = std::min(0.05, 0.1 / lambda_max);
        GValue gm2 = eval_correlator(sh, L - 2.0 * h, eps, policy);
        GValue gm1 = eval_correlator(sh, L - h, eps, policy);
        GValue g0 = eval_correlator(sh, L, eps, policy);
        std::size_t c = 0;
        for (int ig = 0; ig < ncomp_g; ++ig) {
            const Complex gv = g0.comp[ig];
            const Complex gp = (3.0 * g0.comp[ig] - 4.0 * gm1.comp[ig] + gm2.comp[ig]) / (2.0 * h);
            const Complex gpp = (g0.comp[ig] - 2.0 * gm1.comp[ig] + gm2.comp[ig]) / (h * h);
            for (int l = 0; l < nlambda; ++l) {
                const double lam = lambdas[static_cast<std::size_t>(l)];
                const Complex phase(std::cos(lam * L), std::sin(lam * L));
                const Complex corr =
                    phase * (Complex(0.0, 1.0) * gv / lam - gp / (lam * lam));
                per_eps[c].push_back(r.value[c] + 2.0 * corr.real());
                tail_rem[c] = std::max(tail_rem[c], 2.0 * std::abs(gpp) * L / (lam * lam));
                ++c;
            }
        }
    }

    RawTransforms out;
    const double roundoff = 8.0 * 1e-16 * sum_abs_max;
    std::size_t c = 0;
    for (int ig = 0; ig < ncomp_g; ++ig)
        for (int l = 0; l < nlambda; ++l) {
            auto [val, res] = richardson(per_eps[c]);
            out.value[static_cast<std::size_t>(ig)][static_cast<std::size_t>(l)] = val;
            out.error[static_cast<std::size_t>(ig)][static_cast<std::size_t>(l)] =
                res + 2.0 * quad_err_max + tail_rem[c] + image_err + roundoff;
            ++c;
        }
    return out;
}

}  // namespace

namespace {

SpectralResult assemble_oracle_result(const Scenario& scenario, const AtomSpec& atom,
                                      const RawTransforms& raw, std::size_t l, double lambda,
                                      const OracleControls& controls) {
    SpectralResult out{};
    out.lambda = lambda;
    const bool accel = std::holds_alternative<AcceleratedMirror>(scenario);
    const bool mirror_static = std::holds_alternative<StaticMirrorThermal>(scenario);
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (accel && i > 0) continue;
        const std::size_t comp = (mirror_static && i == 2) ? 1 : 0;
        const double w = atom.dipole_weight(static_cast<int>(i));
        out.per_axis[i] = w * raw.value[comp][l];
        err += w * raw.error[comp][l];
    }
    out.achieved_error = err;
    if (out.achieved_error >
        controls.fail_above * (std::fabs(out.per_axis[0]) + std::fabs(out.per_axis[1]) +
                               std::fabs(out.per_axis[2]) + atom.gamma0)) {
        std::ostringstream msg;
        msg << "fourier_oracle: achieved error " << out.achieved_error
            << " exceeds requested tolerance at lambda=" << lambda;
        throw ConvergenceError(msg.str());
    }
    return out;
}

}  // namespace

SpectralResult fourier_oracle(const Scenario& scenario, const AtomSpec& atom, double lambda,
                              const OracleControls& controls) {
    atom.validate();
    if (std::holds_alternative<AcceleratedMirror>(scenario)) require_x_polarization(atom);
    const std::array<double, 2> lambdas = {lambda, 0.0};
    RawTransforms raw = raw_transforms(scenario, lambdas, 1, controls);
    return assemble_oracle_result(scenario, atom, raw, 0, lambda, controls);
}

std::array<SpectralResult, 2> fourier_oracle_both(const Scenario& scenario, const AtomSpec& atom,
                                                  const OracleControls& controls) {
    atom.validate();
    if (std::holds_alternative<AcceleratedMirror>(scenario)) require_x_polarization(atom);
    const std::array<double, 2> lambdas = {atom.omega0, -atom.omega0};
    RawTransforms raw = raw_transforms(scenario, lambdas, 2, controls);
    return {assemble_oracle_result(scenario, atom, raw, 0, atom.omega0, controls),
            assemble_oracle_result(scenario, atom, raw, 1, -atom.omega0, controls)};
}

}  // namespace atomrad
