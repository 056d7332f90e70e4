// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Runs the full closed-form/oracle grids, the Monte Carlo ensembles,
// and the CLI determinism check, so expect a runtime of a few minutes.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "atomrad/dynamics.hpp"
#include "atomrad/rates.hpp"

using namespace atomrad;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail = "") {
    std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", index, name,
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

// 1. boundary-function limits
void criterion_boundary_limits() {
    std::ostringstream detail;
    bool ok = true;

    const double z0_near = 0.5e-4;  // 2 w0 z0 = 1e-4
    auto near = f_static(1.0, z0_near);
    ok &= std::fabs(near.f_x - 1.0) < 1e-6;
    ok &= std::fabs(near.f_y - 1.0) < 1e-6;
    ok &= std::fabs(near.f_z + 1.0) < 1e-6;
    detail << "f_x(2w0z0=1e-4)-1 = " << near.f_x - 1.0;

    auto far = f_static(1.0, 500.0);
    ok &= std::fabs(far.f_x) < 1e-2;
    ok &= std::fabs(far.f_z) < 1e-2;
    ok &= std::fabs(f_accelerated(1.0, 500.0, 1.0)) < 1e-2;

    report(1, "boundary-function limits", ok, detail.str());
}

// 2. closed form vs oracle on random grids
void criterion_closed_vs_oracle() {
    std::mt19937 rng(20260824);
    std::uniform_real_distribution<double> zdist(0.2, 5.0);
    std::uniform_real_distribution<double> bdist(0.0, 1.0);
    std::uniform_real_distribution<double> adist(0.1, 3.0);

    bool ok = true;
    std::ostringstream detail;
    double worst = 0.0;
    int checked = 0;

    auto check_point = [&](const Scenario& sc, const AtomSpec& atom) {
        auto closed_p = fourier_closed_form(sc, atom, TransitionSign::Emission);
        auto closed_m = fourier_closed_form(sc, atom, TransitionSign::Excitation);
        auto oracle = fourier_oracle_both(sc, atom);
        for (int s = 0; s < 2; ++s) {
            const auto& cl = s == 0 ? closed_p : closed_m;
            double csum = 0.0, osum = 0.0;
            for (int i = 0; i < 3; ++i) {
                csum += cl.per_axis[static_cast<std::size_t>(i)];
                osum += oracle[static_cast<std::size_t>(s)].per_axis[static_cast<std::size_t>(i)];
            }
            double tol = std::max(1e-6 * std::fabs(csum),
                                  oracle[static_cast<std::size_t>(s)].achieved_error);
            double diff = std::fabs(csum - osum);
            worst = std::max(worst, diff / tol);
            if (diff > tol) {
                ok = false;
                detail << " miss at sign " << (s == 0 ? "+" : "-") << " diff " << diff << " tol "
                       << tol << ";";
            }
            ++checked;
        }
    };

    AtomSpec iso;
    for (int i = 0; i < 30; ++i) {
        double z0 = zdist(rng);
        double u = bdist(rng);
        double beta = u < 0.15 ? kInf : 0.5 + (u - 0.15) / 0.85 * 7.5;
        check_point(StaticMirrorThermal{z0, beta}, iso);
    }
    AtomSpec xpol;
    xpol.alpha = {1.0, 0.0, 0.0};
    for (int i = 0; i < 30; ++i) {
        check_point(AcceleratedMirror{adist(rng), zdist(rng)}, xpol);
    }

    std::ostringstream summary;
    summary << checked << " comparisons, worst difference at " << worst
            << " of its tolerance" << detail.str();
    report(2, "closed form vs oracle (30 static + 30 accelerated draws)", ok, summary.str());
}

// 3. detailed balance
void criterion_detailed_balance() {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> zdist(0.2, 5.0);
    std::uniform_real_distribution<double> bdist(0.5, 8.0);
    std::uniform_real_distribution<double> adist(0.1, 3.0);
    bool ok = true;

    AtomSpec iso;
    for (int i = 0; i < 30; ++i) {
        Scenario sc = StaticMirrorThermal{zdist(rng), bdist(rng)};
        auto sr = spectral_rates(sc, iso, Method::ClosedForm);
        double beta = std::get<StaticMirrorThermal>(sc).beta;
        ok &= std::fabs(sr.a_up / sr.a_down - std::exp(-beta)) <= 1e-12 * std::exp(-beta);
    }
    AtomSpec xpol;
    xpol.alpha = {1.0, 0.0, 0.0};
    for (int i = 0; i < 30; ++i) {
        double a = adist(rng);
        auto sr = spectral_rates(AcceleratedMirror{a, zdist(rng)}, xpol, Method::ClosedForm);
        double expect = std::exp(-2.0 * M_PI / a);
        ok &= std::fabs(sr.a_up / sr.a_down - expect) <= 1e-12 * expect;
    }
    report(3, "detailed balance to 1e-12 (thermal and accelerated grids)", ok);
}

// 4. contact-limit polarization ratios
void criterion_polarization_ratios() {
    bool ok = true;
    ok &= std::fabs(polarization_contact_ratio({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}) - 2.0 / 3.0) <=
          1e-12;
    ok &= std::fabs(polarization_contact_ratio({0.0, 0.0, 1.0}) - 2.0) <= 1e-12;
    ok &= std::fabs(polarization_contact_ratio({0.5, 0.5, 0.0})) <= 1e-12;
    report(4, "contact-limit polarization ratios 2/3, 2, 0", ok);
}

// 5. non-equivalence of acceleration and thermal bath
void criterion_non_equivalence() {
    auto rep = equivalence_check(1.0, 1.0, 1.0);
    bool ok = std::fabs(rep.difference - 1.4123133046589617) <= 1e-6;
    ok &= std::fabs(rep.difference) > 1e-3;

    auto far = equivalence_check(2.0, kInf, 3.0);
    ok &= far.difference == 9.0 / 4.0;  // a^2/w0^2 exactly

    std::ostringstream detail;
    detail << "difference(1,1,1) = " << rep.difference << ", z0->inf difference = "
           << far.difference;
    report(5, "acceleration/thermal non-equivalence", ok, detail.str());
}

// 6. Monte Carlo vs analytic relaxation
void criterion_relaxation() {
    bool ok = true;
    std::ostringstream detail;
    const long n_atoms = 100000;
    const std::uint64_t seed = 20260824;

    for (double beta_w0 : {0.5, 1.0, 2.0}) {
        SpectralRates sr{};
        double n = 1.0 / std::expm1(beta_w0);
        sr.g_plus = sr.a_down = 1.0 + n;
        sr.g_minus = sr.a_up = n;

        std::vector<double> times(20);
        for (int i = 0; i < 20; ++i) times[static_cast<std::size_t>(i)] = 6.0 * i / 19.0;

        auto mc = monte_carlo_relaxation(sr, 1.0, InitialState::excited(), times, n_atoms,
                                         seed + static_cast<std::uint64_t>(beta_w0 * 100));
        auto curve = analytic_relaxation(sr, 1.0, InitialState::excited(), times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            double sigma = std::max(mc.std_error[i], 1e-12);
            if (std::fabs(mc.mean_energy[i] - curve.energy[i]) > 3.0 * sigma) {
                ok = false;
                detail << " beta_w0=" << beta_w0 << " t=" << times[i] << " off by "
                       << std::fabs(mc.mean_energy[i] - curve.energy[i]) / sigma << " sigma;";
            }
        }

        double eq_expect = -0.5 * std::tanh(0.5 * beta_w0);
        double sigma_end = std::max(mc.std_error.back(), 1e-12);
        if (std::fabs(mc.mean_energy.back() - eq_expect) > 3.0 * sigma_end) {
            ok = false;
            detail << " equilibrium miss at beta_w0=" << beta_w0 << ";";
        }
    }
    report(6, "Monte Carlo matches analytic relaxation within 3 sigma", ok, detail.str());
}

// 7. vf + rr = total decomposition on a sweep
void criterion_decomposition() {
    bool ok = true;
    AtomSpec iso;
    AtomSpec xpol;
    xpol.alpha = {1.0, 0.0, 0.0};
    std::vector<std::pair<Scenario, const AtomSpec*>> rows;
    for (double z0 : {0.3, 1.0, 2.5}) {
        for (double beta : {0.7, 2.0, kInf}) rows.push_back({StaticMirrorThermal{z0, beta}, &iso});
        for (double a : {0.4, 1.0, 2.2}) rows.push_back({AcceleratedMirror{a, z0}, &xpol});
    }
    rows.push_back({StaticFreeSpace{}, &iso});
    for (const auto& [sc, atom] : rows) {
        auto sr = spectral_rates(sc, *atom, Method::ClosedForm);
        auto er = energy_rates(sr, atom->omega0);
        ok &= er.total_excited == er.vf_excited + er.rr_any_state;  // bit-exact
        ok &= er.total_ground == er.vf_ground + er.rr_any_state;
        // rr is state independent: recompute from the ground-state side
        auto er2 = energy_rates(sr, atom->omega0);
        ok &= er.rr_any_state == er2.rr_any_state;
    }
    report(7, "vf + rr = total, bit-exact, rr state-independent", ok);
}

// 8. CLI determinism
void criterion_cli_determinism() {
#ifndef ATOMRAD_CLI_PATH
    report(8, "CLI determinism", false, "CLI path not configured");
#else
    namespace fs = std::filesystem;
    const fs::path work = fs::temp_directory_path() / "atomrad_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    const fs::path cfg = work / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "config_version = 1\n"
               "scenario = static_mirror\n"
               "z0 = [0.5, 1.0, 2.0]\n"
               "beta = [inf, 2.0]\n"
               "quantities = [boundary, spectral, rates, relaxation]\n"
               "relax_points = 8\n"
               "relax_n_atoms = 5000\n"
               "seed = 4242\n";
    }

    auto run = [&](const std::string& out_dir) {
        std::ostringstream cmd;
        cmd << ATOMRAD_CLI_PATH << " run " << cfg.string() << " --method both --out "
            << (work / out_dir).string();
        return std::system(cmd.str().c_str());
    };

    bool ok = run("a") == 0 && run("b") == 0;
    std::ostringstream detail;
    if (!ok) detail << "CLI run failed";
    for (const char* f : {"boundary.tsv", "spectral.tsv", "rates.tsv", "relaxation.tsv",
                          "compare.tsv"}) {
        std::ifstream fa(work / "a" / f, std::ios::binary);
        std::ifstream fb(work / "b" / f, std::ios::binary);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        if (!fa || !fb || sa.str().empty() || sa.str() != sb.str()) {
            ok = false;
            detail << " " << f << " differs or missing;";
        }
    }
    report(8, "CLI determinism (byte-identical tables for same config+seed)", ok, detail.str());
    fs::remove_all(work);
#endif
}

}  // namespace

int main() {
    criterion_boundary_limits();
    criterion_closed_vs_oracle();
    criterion_detailed_balance();
    criterion_polarization_ratios();
    criterion_non_equivalence();
    criterion_relaxation();
    criterion_decomposition();
    criterion_cli_determinism();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
