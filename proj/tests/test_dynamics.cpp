#include <cmath>
#include <vector>

#include "atomrad/dynamics.hpp"
#include "doctest.h"

using namespace atomrad;

namespace {

SpectralRates thermal_rates(double gamma0, double beta_w0) {
    SpectralRates sr{};
    double n = 1.0 / std::expm1(beta_w0);
    sr.g_plus = gamma0 * (1.0 + n);
    sr.g_minus = gamma0 * n;
    sr.a_down = sr.g_plus;
    sr.a_up = sr.g_minus;
    return sr;
}

std::vector<double> grid(double t_end, int n) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = t_end * i / (n - 1);
    return t;
}

}  // namespace

TEST_CASE("analytic relaxation starts at the initial energy") {
    auto sr = thermal_rates(1.0, 1.0);
    for (auto init : {InitialState::excited(), InitialState::ground(), InitialState::mixed(0.3)}) {
        auto curve = analytic_relaxation(sr, 2.0, init, grid(5.0, 11));
        CHECK(curve.energy.front() == init.energy(2.0));
    }
}

TEST_CASE("thermal equilibrium energy is the Gibbs average") {
    const double w0 = 1.3;
    for (double beta_w0 : {0.5, 1.0, 2.0, 5.0}) {
        auto sr = thermal_rates(0.7, beta_w0);
        auto curve = analytic_relaxation(sr, w0, InitialState::excited(), grid(1.0, 3));
        CHECK(curve.equilibrium_energy ==
              doctest::Approx(-0.5 * w0 * std::tanh(0.5 * beta_w0)).epsilon(1e-12));
    }
}

TEST_CASE("zero-temperature relaxation decays to the ground state") {
    SpectralRates sr{};
    sr.g_plus = sr.a_down = 2.0;
    auto curve = analytic_relaxation(sr, 1.0, InitialState::excited(), grid(3.0, 31));
    CHECK(curve.equilibrium_energy == -0.5);
    CHECK(curve.decay_rate == 2.0);
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        CHECK(curve.energy[i] ==
              doctest::Approx(-0.5 + std::exp(-2.0 * curve.times[i])).epsilon(1e-14));
    }
}

TEST_CASE("degenerate zero-rate case is constant") {
    SpectralRates sr{};
    auto curve = analytic_relaxation(sr, 1.0, InitialState::ground(), grid(10.0, 5));
    CHECK(curve.decay_rate == 0.0);
    for (double e : curve.energy) CHECK(e == -0.5);
}

TEST_CASE("ode_rhs endpoints reproduce the total rates") {
    auto sr = thermal_rates(1.1, 0.8);
    const double w0 = 2.0;
    CHECK(ode_rhs(sr, w0, +0.5 * w0) == doctest::Approx(-w0 * sr.g_plus).epsilon(1e-14));
    CHECK(ode_rhs(sr, w0, -0.5 * w0) == doctest::Approx(+w0 * sr.g_minus).epsilon(1e-14));
    auto curve = analytic_relaxation(sr, w0, InitialState::excited(), grid(1.0, 3));
    CHECK(std::fabs(ode_rhs(sr, w0, curve.equilibrium_energy)) < 1e-14);
}

TEST_CASE("RK4 integration of ode_rhs reproduces the analytic curve") {
    auto sr = thermal_rates(1.0, 1.0);
    const double w0 = 1.0;
    const double decay = sr.a_up + sr.a_down;
    const double t_end = 5.0 / decay;
    const double dt = 1e-3 / decay;
    double h = InitialState::excited().energy(w0);
    double t = 0.0;
    while (t < t_end - 0.5 * dt) {
        double k1 = ode_rhs(sr, w0, h);
        double k2 = ode_rhs(sr, w0, h + 0.5 * dt * k1);
        double k3 = ode_rhs(sr, w0, h + 0.5 * dt * k2);
        double k4 = ode_rhs(sr, w0, h + dt * k3);
        h += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
    }
    auto curve = analytic_relaxation(sr, w0, InitialState::excited(), {t});
    CHECK(h == doctest::Approx(curve.energy[0]).epsilon(1e-8));
}

TEST_CASE("population and energy solutions are the same curve") {
    // population route: p(t) = p_eq + (p0 - p_eq) exp(-decay t), energy = w0 (p - 1/2)
    auto sr = thermal_rates(0.9, 1.7);
    const double w0 = 1.4;
    const double decay = sr.a_up + sr.a_down;
    const double p_eq = sr.a_up / decay;
    auto times = grid(6.0 / decay, 25);
    auto curve = analytic_relaxation(sr, w0, InitialState::mixed(0.8), times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        double p = p_eq + (0.8 - p_eq) * std::exp(-decay * times[i]);
        double e = w0 * (p - 0.5);
        CHECK(std::fabs(curve.energy[i] - e) <= 1e-14 * std::max(1.0, std::fabs(e)));
    }
}

TEST_CASE("energies stay within the two-level band") {
    auto sr = thermal_rates(1.0, 0.5);
    auto curve = analytic_relaxation(sr, 1.0, InitialState::excited(), grid(20.0, 200));
    for (double e : curve.energy) {
        CHECK(e <= 0.5);
        CHECK(e >= -0.5);
    }
    auto mc = monte_carlo_relaxation(sr, 1.0, InitialState::excited(), grid(20.0, 40), 2000, 99);
    for (double e : mc.mean_energy) {
        CHECK(e <= 0.5);
        CHECK(e >= -0.5);
    }
}

TEST_CASE("Monte Carlo ensemble matches the analytic curve within 3 sigma") {
    auto sr = thermal_rates(1.0, 1.0);
    const long n_atoms = 100000;
    auto times = grid(6.0, 20);
    auto mc = monte_carlo_relaxation(sr, 1.0, InitialState::excited(), times, n_atoms, 20240817);
    auto curve = analytic_relaxation(sr, 1.0, InitialState::excited(), times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        double sigma = std::max(mc.std_error[i], 1e-12);
        CHECK(std::fabs(mc.mean_energy[i] - curve.energy[i]) <= 3.0 * sigma);
    }
    // long-time populations approach a_up / (a_up + a_down)
    double p_inf = sr.a_up / (sr.a_up + sr.a_down);
    double p_end = static_cast<double>(mc.excited_count.back()) / n_atoms;
    double sig_p = std::sqrt(p_inf * (1.0 - p_inf) / n_atoms);
    CHECK(std::fabs(p_end - p_inf) <= 3.0 * sig_p);
}

TEST_CASE("Monte Carlo is deterministic in the seed") {
    auto sr = thermal_rates(1.0, 2.0);
    auto times = grid(4.0, 10);
    auto a = monte_carlo_relaxation(sr, 1.0, InitialState::excited(), times, 500, 7);
    auto b = monte_carlo_relaxation(sr, 1.0, InitialState::excited(), times, 500, 7);
    CHECK(a.excited_count == b.excited_count);
    auto c = monte_carlo_relaxation(sr, 1.0, InitialState::excited(), times, 500, 8);
    CHECK(a.excited_count != c.excited_count);
}

TEST_CASE("zero-rate ensemble never jumps") {
    SpectralRates sr{};
    auto mc = monte_carlo_relaxation(sr, 1.0, InitialState::excited(), grid(10.0, 5), 100, 3);
    for (long c : mc.excited_count) CHECK(c == 100);
}

TEST_CASE("Monte Carlo error scales as 1/sqrt(N)") {
    auto sr = thermal_rates(1.0, 1.0);
    auto times = grid(4.0, 9);
    auto curve = analytic_relaxation(sr, 1.0, InitialState::excited(), times);

    // average absolute deviation over grid points and replicates, per N
    std::vector<double> log_n, log_err;
    for (long n : {1000L, 10000L, 100000L}) {
        double acc = 0.0;
        int count = 0;
        for (std::uint64_t seed = 100; seed < 108; ++seed) {
            auto mc = monte_carlo_relaxation(sr, 1.0, InitialState::excited(), times, n,
                                             seed * 7919 + n);
            for (std::size_t i = 1; i < times.size(); ++i) {
                acc += std::fabs(mc.mean_energy[i] - curve.energy[i]);
                ++count;
            }
        }
        log_n.push_back(std::log(static_cast<double>(n)));
        log_err.push_back(std::log(acc / count));
    }
    // least-squares slope on 3 points
    double mx = (log_n[0] + log_n[1] + log_n[2]) / 3.0;
    double my = (log_err[0] + log_err[1] + log_err[2]) / 3.0;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        num += (log_n[static_cast<std::size_t>(i)] - mx) * (log_err[static_cast<std::size_t>(i)] - my);
        den += (log_n[static_cast<std::size_t>(i)] - mx) * (log_n[static_cast<std::size_t>(i)] - mx);
    }
    double slope = num / den;
    CHECK(slope == doctest::Approx(-0.5).epsilon(0.2));
}

TEST_CASE("input validation") {
    SpectralRates sr{};
    sr.g_plus = sr.a_down = 1.0;
    CHECK_THROWS_AS(monte_carlo_relaxation(sr, 1.0, InitialState::excited(), {0.0, 1.0}, 0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(monte_carlo_relaxation(sr, 1.0, InitialState::excited(), {1.0, 0.5}, 10, 1),
                    std::invalid_argument);
    SpectralRates bad{};
    bad.a_down = -1.0;
    CHECK_THROWS_AS(analytic_relaxation(bad, 1.0, InitialState::excited(), {0.0}),
                    std::invalid_argument);
}
