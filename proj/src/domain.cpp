#include "atomrad/domain.hpp"

#include <cmath>

namespace atomrad {

void AtomSpec::validate() const {
    if (!(omega0 > 0.0)) throw std::invalid_argument("AtomSpec: omega0 must be > 0");
    if (!(gamma0 >= 0.0)) throw std::invalid_argument("AtomSpec: gamma0 must be >= 0");
    double sum = 0.0;
    for (double ai : alpha) {
        if (!(ai >= 0.0 && ai <= 1.0))
            throw std::invalid_argument("AtomSpec: each alpha_i must lie in [0,1]");
        sum += ai;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("AtomSpec: alpha components must sum to 1");
}

void validate(const Scenario& scenario) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, StaticMirrorThermal>) {
                if (!(s.z0 > 0.0) || std::isinf(s.z0))
                    throw std::invalid_argument("Scenario: z0 must be finite and > 0");
                if (!(s.beta > 0.0))
                    throw std::invalid_argument("Scenario: beta must be > 0 (inf for T=0)");
            } else if constexpr (std::is_same_v<T, AcceleratedMirror>) {
                if (!(s.a > 0.0) || std::isinf(s.a))
                    throw std::invalid_argument(
                        "Scenario: a must be finite and > 0 (use a static scenario for a=0)");
                if (!(s.z0 > 0.0) || std::isinf(s.z0))
                    throw std::invalid_argument("Scenario: z0 must be finite and > 0");
            }
        },
        scenario);
}

InitialState InitialState::mixed(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("InitialState: excited_fraction must lie in [0,1]");
    return {p};
}

FourVector trajectory_point(const Scenario& scenario, double tau) {
    validate(scenario);
    return std::visit(
        [tau](const auto& s) -> FourVector {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, StaticFreeSpace>) {
                return {tau, 0.0, 0.0, 0.0};
            } else if constexpr (std::is_same_v<T, StaticMirrorThermal>) {
                return {tau, 0.0, 0.0, s.z0};
            } else {
                return {std::sinh(s.a * tau) / s.a, std::cosh(s.a * tau) / s.a, 0.0, s.z0};
            }
        },
        scenario);
}

double unruh_beta(double a) {
    if (!(a > 0.0)) throw std::domain_error("unruh_beta: a must be > 0");
    return 2.0 * M_PI / a;
}

double planck_occupation(double beta, double omega) {
    if (std::isinf(beta)) return 0.0;
    return 1.0 / std::expm1(beta * omega);
}

}  // namespace atomrad
