#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "frz/common.hpp"

namespace frz {

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1].
inline constexpr double kGK15Nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr double kGK15Weights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double kG7Weights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        double fx = f(c + h * kGK15Nodes[i]);
        kron += kGK15Weights[i] * fx;
        if (i % 2 == 1) gauss += kG7Weights[i / 2] * fx;
    }
    value = kron * h;
    error = std::abs((kron - gauss) * h);
}

}  // namespace detail

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod on a finite interval. Bisects the worst panel until
/// the summed error estimate meets abs/rel tolerance or the evaluation cap.
template <class F>
QuadResult integrate(const F& f, double a, double b, double rel_tol = 1e-10,
                     double abs_tol = 0.0, long max_evals = 2'000'000) {
    struct Panel {
        double a, b, value, error;
    };
    QuadResult out;
    if (a == b) return out;
    std::vector<Panel> panels;
    double v, e;
    detail::gk15(f, a, b, v, e);
    out.evaluations = 15;
    panels.push_back({a, b, v, e});
    while (true) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        out.value = total;
        out.error = err;
        if (err <= std::max(abs_tol, rel_tol * std::abs(total))) return out;
        if (out.evaluations >= max_evals || panels.size() > 100000) {
            out.converged = false;
            return out;
        }
        Panel p = panels[worst];
        double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {  // interval exhausted at float resolution
            out.converged = panels.size() < 2 ? false : out.converged;
            panels[worst].error = 0.0;
            continue;
        }
        Panel l{p.a, mid, 0, 0}, r{mid, p.b, 0, 0};
        detail::gk15(f, l.a, l.b, l.value, l.error);
        detail::gk15(f, r.a, r.b, r.value, r.error);
        out.evaluations += 30;
        panels[worst] = l;
        panels.push_back(r);
    }
}

/// Integrate f over (a,b) with integrable endpoint singularities via
/// tanh-sinh (double-exponential) quadrature. Abscissas are tracked as
/// distances from the endpoints so power singularities like u^-0.95 are
/// resolved without cancellation; non-finite integrand values in the
/// negligible-weight fringe are dropped.
template <class F>
QuadResult integrate_singular(const F& f, double a, double b, double rel_tol = 1e-9,
                              long max_evals = 4'000'000) {
    QuadResult out;
    const double span = b - a;
    if (span <= 0) return out;
    const double tmax = 6.1;
    auto node_sum = [&](double h) {
        double acc = 0.0;
        const int jmax = static_cast<int>(tmax / h);
        for (int j = -jmax; j <= jmax; ++j) {
            double t = j * h;
            double z = 0.5 * M_PI * std::sinh(t);
            // distance fraction from the nearer endpoint and weight
            double e2 = std::exp(-2.0 * std::abs(z));
            double dfrac = e2 / (1.0 + e2);          // min(sigma, 1-sigma)
            double sigprod = dfrac / (1.0 + e2);     // sigma * (1-sigma)
            double w = span * M_PI * std::cosh(t) * sigprod;
            double x = (t >= 0.0) ? b - span * dfrac : a + span * dfrac;
            if (x <= a || x >= b) continue;
            double fx = f(x);
            out.evaluations += 1;
            if (std::isfinite(fx)) acc += w * fx;
        }
        return acc * h;
    };
    double h = 0.5;
    double prev = node_sum(h);
    for (int level = 1; level <= 10; ++level) {
        h *= 0.5;
        double cur = node_sum(h);
        out.error = std::abs(cur - prev);
        prev = cur;
        if (out.error <= rel_tol * std::abs(cur) || out.evaluations > max_evals) break;
    }
    out.value = prev;
    out.converged = out.error <= std::max(rel_tol * std::abs(prev), 1e-300);
    return out;
}

}  // namespace frz
