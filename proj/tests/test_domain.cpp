#include <cmath>
#include <random>

#include "atomrad/domain.hpp"
#include "doctest.h"

using namespace atomrad;

TEST_CASE("static trajectory sits at rest") {
    Scenario s = StaticMirrorThermal{1.0, 1.0};
    auto p = trajectory_point(s, 5.0);
    CHECK(p.t == 5.0);
    CHECK(p.x == 0.0);
    CHECK(p.y == 0.0);
    CHECK(p.z == 1.0);
}

TEST_CASE("accelerated trajectory follows the Rindler hyperbola") {
    Scenario s = AcceleratedMirror{1.0, 1.0};
    auto p0 = trajectory_point(s, 0.0);
    CHECK(p0.t == 0.0);
    CHECK(p0.x == 1.0);
    CHECK(p0.z == 1.0);

    Scenario s2 = AcceleratedMirror{2.0, 0.5};
    auto p1 = trajectory_point(s2, 1.0);
    CHECK(p1.t == doctest::Approx(std::sinh(2.0) / 2.0).epsilon(1e-14));
    CHECK(p1.x == doctest::Approx(std::cosh(2.0) / 2.0).epsilon(1e-14));
    CHECK(p1.t == doctest::Approx(1.8134302039235094).epsilon(1e-14));
    CHECK(p1.x == doctest::Approx(1.8810978455418157).epsilon(1e-14));
    CHECK(p1.y == 0.0);
    CHECK(p1.z == 0.5);
}

TEST_CASE("accelerated trajectory is proper-time normalized") {
    Scenario s = AcceleratedMirror{1.7, 0.8};
    const double h = 1e-5;
    for (double tau : {-2.0, -0.5, 0.0, 0.3, 1.0, 2.5}) {
        auto pp = trajectory_point(s, tau + h);
        auto pm = trajectory_point(s, tau - h);
        double dt = (pp.t - pm.t) / (2.0 * h);
        double dx = (pp.x - pm.x) / (2.0 * h);
        CHECK(dt * dt - dx * dx == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("trajectory intervals are stationary") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    auto interval = [](const FourVector& p, const FourVector& q) {
        double dt = p.t - q.t, dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
        return dt * dt - dx * dx - dy * dy - dz * dz;
    };
    for (Scenario s : {Scenario{StaticMirrorThermal{0.9, 2.0}}, Scenario{AcceleratedMirror{1.3, 0.6}}}) {
        for (int i = 0; i < 30; ++i) {
            double tau = unif(rng), taup = unif(rng), shift = unif(rng);
            double s1 = interval(trajectory_point(s, tau), trajectory_point(s, taup));
            double s2 = interval(trajectory_point(s, tau + shift), trajectory_point(s, taup + shift));
            CHECK(std::fabs(s1 - s2) <= 1e-10 * std::max(1.0, std::fabs(s1)));
        }
    }
}

TEST_CASE("unruh_beta") {
    CHECK(unruh_beta(2.0 * M_PI) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(unruh_beta(1.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(unruh_beta(1e-12) > 1e12);
    CHECK_THROWS_AS(unruh_beta(0.0), std::domain_error);
    CHECK_THROWS_AS(unruh_beta(-1.0), std::domain_error);
}

TEST_CASE("planck occupation") {
    CHECK(planck_occupation(kInf, 1.0) == 0.0);
    CHECK(planck_occupation(std::log(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // small beta*omega: n ~ 1/(beta*omega), expm1 keeps precision
    CHECK(planck_occupation(1e-9, 1.0) == doctest::Approx(1e9).epsilon(1e-6));
}

TEST_CASE("atom validation") {
    AtomSpec ok;
    CHECK_NOTHROW(ok.validate());
    AtomSpec bad_omega = ok;
    bad_omega.omega0 = 0.0;
    CHECK_THROWS_AS(bad_omega.validate(), std::invalid_argument);
    AtomSpec bad_gamma = ok;
    bad_gamma.gamma0 = -1.0;
    CHECK_THROWS_AS(bad_gamma.validate(), std::invalid_argument);
    AtomSpec bad_sum = ok;
    bad_sum.alpha = {0.5, 0.5, 0.1};
    CHECK_THROWS_AS(bad_sum.validate(), std::invalid_argument);
    AtomSpec bad_range = ok;
    bad_range.alpha = {1.5, -0.25, -0.25};
    CHECK_THROWS_AS(bad_range.validate(), std::invalid_argument);
}

TEST_CASE("scenario validation") {
    CHECK_NOTHROW(validate(Scenario{StaticFreeSpace{}}));
    CHECK_NOTHROW(validate(Scenario{StaticMirrorThermal{1.0, kInf}}));
    CHECK_THROWS_AS(validate(Scenario{StaticMirrorThermal{0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Scenario{StaticMirrorThermal{1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Scenario{AcceleratedMirror{0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Scenario{AcceleratedMirror{1.0, -1.0}}), std::invalid_argument);
}

TEST_CASE("initial state energy") {
    CHECK(InitialState::excited().energy(2.0) == 1.0);
    CHECK(InitialState::ground().energy(2.0) == -1.0);
    CHECK(InitialState::mixed(0.5).energy(3.0) == 0.0);
    CHECK_THROWS_AS(InitialState::mixed(1.5), std::invalid_argument);
}

TEST_CASE("dipole weight") {
    AtomSpec atom;
    atom.omega0 = 2.0;
    atom.gamma0 = 0.5;
    atom.alpha = {1.0, 0.0, 0.0};
    CHECK(atom.dipole_weight(0) == doctest::Approx(0.5 * 3.0 * M_PI / 8.0).epsilon(1e-15));
    CHECK(atom.dipole_weight(1) == 0.0);
}
