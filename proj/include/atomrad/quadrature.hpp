#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

// Globally adaptive Gauss-Kronrod 7-15 for small vector-valued integrands
// with caller-supplied initial breakpoints.

namespace atomrad::quad {

inline constexpr std::size_t kMaxComponents = 8;

struct VecSample {
    std::array<double, kMaxComponents> v{};
};

struct VecResult {
    std::array<double, kMaxComponents> value{};
    double err_est = 0.0;   // accumulated G7-K15 error estimate
    double sum_abs = 0.0;   // sum of |panel contributions|, for roundoff tracking
    std::size_t panels = 0;
    bool converged = true;
};

namespace detail {

// QUADPACK G7-K15 abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> xgk_half = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> wgk_half = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> wg_half = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    std::array<double, kMaxComponents> value{};
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel eval_panel(const F& f, std::size_t ncomp, double a, double b) {
    Panel p;
    p.a = a;
    p.b = b;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<double, kMaxComponents> k15{}, g7{};
    for (std::size_t i = 0; i < 8; ++i) {
        const double x = h * xgk_half[i];
        VecSample s = f(c + x);
        if (i < 7) {
            VecSample s2 = f(c - x);
            for (std::size_t j = 0; j < ncomp; ++j) s.v[j] += s2.v[j];
        }
        for (std::size_t j = 0; j < ncomp; ++j) k15.at(j) += wgk_half[i] * s.v[j];
        if (i % 2 == 1 || i == 7) {
            const double wg = wg_half[i / 2];
            for (std::size_t j = 0; j < ncomp; ++j) g7[j] += wg * s.v[j];
        }
    }
    double err = 0.0;
    for (std::size_t j = 0; j < ncomp; ++j) {
        k15[j] *= h;
        g7[j] *= h;
        p.value[j] = k15[j];
        err += std::fabs(k15[j] - g7[j]);
    }
    // QUADPACK-style sharpening of the raw difference
    p.err = err * std::sqrt(std::min(1.0, 200.0 * err));
    return p;
}

}  // namespace detail

// Integrate f over the union of [breakpoints[i], breakpoints[i+1]],
// refining the worst panel until the total error estimate drops below
// abs_tol or max_panels is reached.
template <class F>
VecResult integrate(const F& f, std::size_t ncomp, const std::vector<double>& breakpoints,
                    double abs_tol, std::size_t max_panels) {
    VecResult res;
    std::priority_queue<detail::Panel> heap;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i])) continue;
        auto p = detail::eval_panel(f, ncomp, breakpoints[i], breakpoints[i + 1]);
        total_err += p.err;
        heap.push(p);
    }
    while (total_err > abs_tol && heap.size() < max_panels) {
        detail::Panel worst = heap.top();
        if (worst.err <= abs_tol / (10.0 * static_cast<double>(heap.size()))) break;
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // width at roundoff floor
            heap.push(worst);
            break;
        }
        auto left = detail::eval_panel(f, ncomp, worst.a, mid);
        auto right = detail::eval_panel(f, ncomp, mid, worst.b);
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    res.converged = total_err <= 10.0 * abs_tol;
    res.err_est = total_err;
    res.panels = heap.size();
    while (!heap.empty()) {
        const auto& p = heap.top();
        double pa = 0.0;
        for (std::size_t j = 0; j < ncomp; ++j) {
            res.value[j] += p.value[j];
            pa += std::fabs(p.value[j]);
        }
        res.sum_abs += pa;
        heap.pop();
    }
    return res;
}

}  // namespace atomrad::quad
