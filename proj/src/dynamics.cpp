#include "atomrad/dynamics.hpp"

#include <cmath>
#include <random>

namespace atomrad {

RelaxationCurve analytic_relaxation(const SpectralRates& sr, double omega0, InitialState initial,
                                    std::vector<double> times) {
    if (!(sr.a_up >= 0.0) || !(sr.a_down >= 0.0))
        throw std::invalid_argument("analytic_relaxation: rates must be nonnegative");
    RelaxationCurve curve;
    curve.decay_rate = sr.a_up + sr.a_down;
    const double h0 = initial.energy(omega0);
    curve.equilibrium_energy =
        curve.decay_rate > 0.0 ? -0.5 * omega0 + omega0 * sr.a_up / curve.decay_rate : h0;
    curve.energy.reserve(times.size());
    for (double t : times) {
        const double decay = curve.decay_rate > 0.0 ? std::exp(-curve.decay_rate * t) : 1.0;
        curve.energy.push_back(curve.equilibrium_energy +
                               (h0 - curve.equilibrium_energy) * decay);
    }
    curve.times = std::move(times);
    return curve;
}

double ode_rhs(const SpectralRates& sr, double omega0, double h) {
    return 0.5 * omega0 * (sr.g_minus - sr.g_plus) - (sr.g_minus + sr.g_plus) * h;
}

namespace {

// splitmix64, used to derive independent per-atom streams from the master seed
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

MonteCarloResult monte_carlo_relaxation(const SpectralRates& sr, double omega0,
                                        InitialState initial, const std::vector<double>& times,
                                        long n_atoms, std::uint64_t seed) {
    if (n_atoms < 1) throw std::invalid_argument("monte_carlo_relaxation: need at least one atom");
    if (!(sr.a_up >= 0.0) || !(sr.a_down >= 0.0))
        throw std::invalid_argument("monte_carlo_relaxation: rates must be nonnegative");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] < times[i - 1])
            throw std::invalid_argument("monte_carlo_relaxation: times must be nondecreasing");

    MonteCarloResult res;
    res.times = times;
    res.n_atoms = n_atoms;
    res.seed = seed;
    res.excited_count.assign(times.size(), 0);

    std::uint64_t derive = seed;
    for (long atom = 0; atom < n_atoms; ++atom) {
        std::uint64_t s = derive;
        std::mt19937_64 rng(splitmix64(s));
        ++derive;
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        bool excited = initial.excited_fraction >= 1.0 ||
                       (initial.excited_fraction > 0.0 && unif(rng) < initial.excited_fraction);
        double t = 0.0;
        std::size_t g = 0;
        for (;;) {
            const double rate = excited ? sr.a_down : sr.a_up;
            double t_next;
            if (rate > 0.0) {
                std::exponential_distribution<double> expo(rate);
                t_next = t + expo(rng);
            } else {
                t_next = std::numeric_limits<double>::infinity();
            }
            while (g < times.size() && times[g] < t_next) {
                if (excited) ++res.excited_count[g];
                ++g;
            }
            if (g >= times.size()) break;
            t = t_next;
            excited = !excited;
        }
    }

    res.mean_energy.reserve(times.size());
    res.std_error.reserve(times.size());
    const double n = static_cast<double>(n_atoms);
    for (long c : res.excited_count) {
        const double p = static_cast<double>(c) / n;
        res.mean_energy.push_back(omega0 * (p - 0.5));
        res.std_error.push_back(omega0 * std::sqrt(p * (1.0 - p) / n));
    }
    return res;
}

}  // namespace atomrad
