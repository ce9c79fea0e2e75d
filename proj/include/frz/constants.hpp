#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "frz/common.hpp"
#include "frz/fields.hpp"
#include "frz/quadrature.hpp"

namespace frz {

/// One evaluated constant with its inputs and an error estimate; value is
/// +inf with `violated` naming the condition when inadmissible.
struct ConstantReport {
    std::string name;
    double value = 0.0;
    std::map<std::string, double> inputs;
    std::string method;  // "closed form" | "quadrature" | "monte-carlo"
    double error_estimate = 0.0;
    std::string violated;  // empty when admissible

    bool finite() const { return std::isfinite(value); }
};

/// Admissible interval for epsilon: (0, 2*alpha) intersected with
/// epsilon < k/H - 2(n-alpha). Empty (lo >= hi) signals inadmissibility.
struct EpsilonRange {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(hi > lo); }
    bool contains(double eps) const { return eps > lo && eps < hi; }
};

inline EpsilonRange epsilon_range(int n, double alpha, double H, int k) {
    if (!(alpha > 0.0 && alpha < static_cast<double>(n)))
        throw std::invalid_argument("epsilon_range: need 0 < alpha < n");
    if (!(H > 0.0 && H < 1.0)) throw std::invalid_argument("epsilon_range: need 0 < H < 1");
    EpsilonRange r;
    r.lo = 0.0;
    r.hi = std::min(2.0 * alpha, static_cast<double>(k) / H - 2.0 * (static_cast<double>(n) - alpha));
    return r;
}

/// int_{[0,1]^k} int_{[0,1]^k} |t-s|^-a ds dt. Closed form for k=1,
/// polar-reduced quadrature for k=2; +inf with divergence flag for a >= k.
inline ConstantReport grid_integral(int k, double a) {
    ConstantReport rep;
    rep.name = "grid_integral";
    rep.inputs = {{"k", static_cast<double>(k)}, {"a", a}};
    if (a >= static_cast<double>(k)) {
        rep.value = kInf;
        rep.violated = "a < k required for convergence of |t-s|^-a over the unit cube";
        return rep;
    }
    if (k == 1) {
        rep.value = 2.0 / ((1.0 - a) * (2.0 - a));
        rep.method = "closed form";
        rep.error_estimate = 1e-15;
        return rep;
    }
    if (k == 2) {
        // 8 * int_0^{pi/4} int_0^{1/cos th} (1 - r cos)(1 - r sin) r^{1-a} dr dth,
        // with the radial integral in closed form
        auto inner = [&](double th) {
            double c = std::cos(th), s = std::sin(th);
            double R = 1.0 / c;
            double t1 = std::pow(R, 2.0 - a) / (2.0 - a);
            double t2 = (c + s) * std::pow(R, 3.0 - a) / (3.0 - a);
            double t3 = c * s * std::pow(R, 4.0 - a) / (4.0 - a);
            return t1 - t2 + t3;
        };
        QuadResult q = integrate(inner, 0.0, M_PI / 4.0, 1e-12);
        rep.value = 8.0 * q.value;
        rep.method = "quadrature";
        rep.error_estimate = 8.0 * q.error;
        return rep;
    }
    throw std::invalid_argument("grid_integral: only k = 1 and k = 2 are supported");
}

/// Seeded Monte-Carlo companion for k = 2 (polar difference variable, so the
/// integrand is bounded near the diagonal for a <= 1): the independent oracle
/// paired with the quadrature route.
inline ConstantReport grid_integral_montecarlo(double a, std::size_t samples, std::uint64_t seed) {
    ConstantReport rep;
    rep.name = "grid_integral";
    rep.inputs = {{"k", 2.0}, {"a", a}, {"samples", static_cast<double>(samples)}};
    if (a >= 2.0) {
        rep.value = kInf;
        rep.violated = "a < k required for convergence of |t-s|^-a over the unit cube";
        return rep;
    }
    RngStream rng(seed, 0x9d2c);
    std::vector<double> vals;
    vals.reserve(samples);
    double sum_sq = 0.0;
    const double box = std::sqrt(2.0) * M_PI / 2.0;
    for (std::size_t i = 0; i < samples; ++i) {
        double r = rng.uniform(0.0, std::sqrt(2.0));
        double th = rng.uniform(0.0, M_PI / 2.0);
        double u1 = r * std::cos(th), u2 = r * std::sin(th);
        double w = 0.0;
        if (u1 < 1.0 && u2 < 1.0)
            w = 4.0 * (1.0 - u1) * (1.0 - u2) * std::pow(r, 1.0 - a) * box;
        vals.push_back(w);
        sum_sq += w * w;
    }
    rep.value = pairwise_sum(vals) / static_cast<double>(samples);
    double var = sum_sq / static_cast<double>(samples) - sqr(rep.value);
    rep.method = "monte-carlo";
    rep.error_estimate = std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
    return rep;
}

/// int_{R^n} exp(-|eta|^2/2) |eta|^p d eta
///   = (2 pi^{n/2}/Gamma(n/2)) 2^{(p+n)/2-1} Gamma((p+n)/2), p > -n.
inline ConstantReport gaussian_moment(int n, double p) {
    ConstantReport rep;
    rep.name = "gaussian_moment";
    rep.inputs = {{"n", static_cast<double>(n)}, {"p", p}};
    if (p <= -static_cast<double>(n)) {
        rep.value = kInf;
        rep.violated = "p > -n required for integrability at the origin";
        return rep;
    }
    double surf = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
    rep.value = surf * std::pow(2.0, 0.5 * (p + n) - 1.0) * std::tgamma(0.5 * (p + n));
    rep.method = "closed form";
    rep.error_estimate = 4e-16 * rep.value;
    return rep;
}

/// Radial quadrature cross-check of gaussian_moment.
inline double gaussian_moment_quadrature(int n, double p) {
    auto f = [&](double r) { return std::pow(r, p + n - 1.0) * std::exp(-0.5 * r * r); };
    QuadResult q = integrate_singular(f, 0.0, 50.0, 1e-12);
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n) * q.value;
}

/// C(n,H,alpha,eps) = grid_integral(k, (2n+eps-2alpha)H) *
///                    gaussian_moment(n, n+eps-2alpha).
inline ConstantReport berman_C(int n, double H, double alpha, double eps, int k) {
    ConstantReport rep;
    rep.name = "berman_C";
    rep.inputs = {{"n", static_cast<double>(n)}, {"H", H},
                  {"alpha", alpha},             {"eps", eps},
                  {"k", static_cast<double>(k)}};
    EpsilonRange er = epsilon_range(n, alpha, H, k);
    if (!er.contains(eps)) {
        rep.value = kInf;
        rep.violated = "eps outside the admissible interval (0, min(2 alpha, k/H - 2(n-alpha)))";
        return rep;
    }
    ConstantReport gi = grid_integral(k, (2.0 * n + eps - 2.0 * alpha) * H);
    ConstantReport gm = gaussian_moment(n, static_cast<double>(n) + eps - 2.0 * alpha);
    rep.value = gi.value * gm.value;
    rep.method = gi.method + std::string(" x ") + gm.method;
    rep.error_estimate = gi.error_estimate * gm.value + gm.error_estimate * gi.value;
    return rep;
}

/// M0(n,alpha,H,eps) = (1/2pi) (1/(n-alpha) + sqrt(C)/sqrt(eps)).
inline ConstantReport m0_bound(int n, double alpha, double H, double eps, int k) {
    ConstantReport rep;
    rep.name = "m0_bound";
    rep.inputs = {{"n", static_cast<double>(n)}, {"alpha", alpha},
                  {"H", H},                      {"eps", eps},
                  {"k", static_cast<double>(k)}};
    ConstantReport C = berman_C(n, H, alpha, eps, k);
    if (!C.finite()) {
        rep.value = kInf;
        rep.violated = C.violated;
        return rep;
    }
    rep.value = (1.0 / (2.0 * M_PI)) *
                (1.0 / (static_cast<double>(n) - alpha) + std::sqrt(C.value) / std::sqrt(eps));
    rep.method = C.method;
    rep.error_estimate = C.error_estimate / (4.0 * M_PI * std::sqrt(C.value * eps));
    return rep;
}

inline double double_factorial_odd(int ell) {  // (ell-1)!! for even ell
    double v = 1.0;
    for (int i = ell - 1; i >= 3; i -= 2) v *= i;
    return v;
}

/// M1 = M0 + n^{ell/2} (ell-1)!! (k^{ell H/2} + 1); requires even ell > 2k/H.
inline ConstantReport m1_bound(int n, double alpha, double H, double eps, int k, int ell) {
    if (ell % 2 != 0 || !(static_cast<double>(ell) > 2.0 * k / H))
        throw std::invalid_argument(
            "m1_bound: the moment bound needs an even integer ell with ell > 2k/H");
    ConstantReport rep = m0_bound(n, alpha, H, eps, k);
    rep.name = "m1_bound";
    rep.inputs["ell"] = static_cast<double>(ell);
    if (!rep.finite()) return rep;
    rep.value += std::pow(static_cast<double>(n), 0.5 * ell) * double_factorial_odd(ell) *
                 (std::pow(static_cast<double>(k), 0.5 * ell * H) + 1.0);
    return rep;
}

/// Explicit Hoelder-embedding constant for W^{delta,ell}([0,1]^k) into the
/// (delta - k/ell)-Hoelder seminorm, delta > k/ell. Derived by dyadic-cube
/// chaining of averaged increments (Garsia-Rodemich-Rumsey style):
///   |f(x)-f(y)| <= c(k,delta,ell) [f]_{delta,ell} |x-y|^{delta-k/ell},
///   c = (1+2 sqrt(k))^{(k+delta ell)/ell} k^{k/ell}
///       + 2 * 2^{k/ell} k^{(k+delta ell)/(2 ell)} / (1 - 2^{-(delta-k/ell)}).
inline double sobolev_embedding_constant(int k, double delta, int ell) {
    if (!(delta > static_cast<double>(k) / ell))
        throw std::invalid_argument("sobolev_embedding_constant: need delta > k/ell");
    const double kk = static_cast<double>(k), ll = static_cast<double>(ell);
    const double expo = (kk + delta * ll) / ll;
    const double hol = delta - kk / ll;
    double top = std::pow(1.0 + 2.0 * std::sqrt(kk), expo) * std::pow(kk, kk / ll);
    double chain = 2.0 * std::pow(2.0, kk / ll) * std::pow(kk, 0.5 * expo) /
                   (1.0 - std::pow(2.0, -hol));
    return top + chain;
}

/// rho1 = c(k, H - k/ell, ell) M^{1/ell}; with a target gamma < H - 2k/ell
/// supplied, the scaling k^{(H-gamma)/2 - k/ell} is applied on top.
inline ConstantReport rho1_bound(int n, double alpha, double H, double eps, int k, int ell,
                                 double M, std::optional<double> target_gamma = std::nullopt) {
    ConstantReport m1 = m1_bound(n, alpha, H, eps, k, ell);
    ConstantReport rep;
    rep.name = "rho1_bound";
    rep.inputs = m1.inputs;
    rep.inputs["M"] = M;
    if (!m1.finite()) {
        rep.value = kInf;
        rep.violated = m1.violated;
        return rep;
    }
    if (!(M > m1.value))
        throw std::invalid_argument("rho1_bound: need M > M1 = " + std::to_string(m1.value));
    double c = sobolev_embedding_constant(k, H - static_cast<double>(k) / ell, ell);
    rep.value = c * std::pow(M, 1.0 / ell);
    rep.method = "closed form";
    if (target_gamma) {
        double g = *target_gamma;
        if (!(g < H - 2.0 * k / static_cast<double>(ell)))
            throw std::invalid_argument("rho1_bound: target gamma must satisfy gamma < H - 2k/ell");
        rep.inputs["gamma"] = g;
        rep.value *= std::pow(static_cast<double>(k), 0.5 * (H - g) - static_cast<double>(k) / ell);
    }
    rep.error_estimate = 0.0;
    return rep;
}

/// Bridge constant C'(n,H,alpha,eps): the workable upper bound
///   2 int_0^1 (1-u) u^{-(2n+eps-2alpha)H} (1 - u^e)^{-(n+eps/2-alpha)} du
///     * gaussian_moment(n, n+eps-2alpha),
/// with e = 2-2H on the H >= 1/2 branch and e = 2H on the H <= 1/2 branch.
inline ConstantReport bridge_C_prime(int n, double alpha, double H, double eps) {
    ConstantReport rep;
    rep.name = "bridge_C_prime";
    rep.inputs = {{"n", static_cast<double>(n)}, {"alpha", alpha}, {"H", H}, {"eps", eps}};
    const double Hm = std::max(H, 1.0 - H);
    if (!(alpha > static_cast<double>(n) - 1.0 / (2.0 * Hm) && alpha < static_cast<double>(n))) {
        throw std::invalid_argument(
            "bridge_C_prime: hypothesis n - 1/(2 max(H,1-H)) < alpha < n violated");
    }
    if (!(eps > 0.0 && eps < 2.0 * alpha &&
          Hm < 1.0 / (2.0 * (static_cast<double>(n) - alpha) + eps))) {
        throw std::invalid_argument(
            "bridge_C_prime: eps must satisfy 0 < eps < 2 alpha and max(H,1-H) < 1/(2(n-alpha)+eps)");
    }
    const double a = (2.0 * n + eps - 2.0 * alpha) * H;
    const double beta = static_cast<double>(n) + 0.5 * eps - alpha;
    const double e = (H >= 0.5) ? 2.0 - 2.0 * H : 2.0 * H;
    auto f = [&](double u) {
        return (1.0 - u) * std::pow(u, -a) * std::pow(1.0 - std::pow(u, e), -beta);
    };
    QuadResult q = integrate_singular(f, 0.0, 1.0, 1e-10);
    ConstantReport gm = gaussian_moment(n, static_cast<double>(n) + eps - 2.0 * alpha);
    rep.value = 2.0 * q.value * gm.value;
    rep.method = "quadrature";
    rep.error_estimate = 2.0 * q.error * gm.value;
    return rep;
}

/// Monte-Carlo cross-check of the u-integral inside bridge_C_prime, using
/// importance density proportional to u^-a (seeded, finite variance).
inline double bridge_C_prime_montecarlo(int n, double alpha, double H, double eps,
                                        std::size_t samples, std::uint64_t seed) {
    const double a = (2.0 * n + eps - 2.0 * alpha) * H;
    const double beta = static_cast<double>(n) + 0.5 * eps - alpha;
    const double e = (H >= 0.5) ? 2.0 - 2.0 * H : 2.0 * H;
    RngStream rng(seed, 0xb71d);
    std::vector<double> vals;
    vals.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        double u = std::pow(rng.uniform(), 1.0 / (1.0 - a));  // density (1-a) u^-a
        double w = (1.0 - u) * std::pow(1.0 - std::pow(u, e), -beta) / (1.0 - a);
        vals.push_back(w);
    }
    double integral = pairwise_sum(vals) / static_cast<double>(samples);
    return 2.0 * integral * gaussian_moment(n, static_cast<double>(n) + eps - 2.0 * alpha).value;
}

/// Pitt-type integral condition: sup over grid s of
/// int_0^1 |det sigma^2(s,t)|^{-((n-alpha)/(2n) + delta)} dt (k = 1 grids).
/// For the fBf model det sigma^2 = |t-s|^{2Hn} and the integral is finite iff
/// H(n-alpha) + 2Hn delta < k, checked analytically before quadrature.
inline ConstantReport pitt_condition(const CovModel& cov, int n, double alpha, double delta,
                                     int k) {
    ConstantReport rep;
    rep.name = "pitt_condition";
    rep.inputs = {{"n", static_cast<double>(n)},
                  {"alpha", alpha},
                  {"delta", delta},
                  {"H", cov.H},
                  {"k", static_cast<double>(k)}};
    if (!(delta > 0.0)) throw std::invalid_argument("pitt_condition: need delta > 0");
    if (k != 1 || cov.k != 1)
        throw std::invalid_argument("pitt_condition: only k = 1 grids are evaluated");
    const double q = (static_cast<double>(n) - alpha) / (2.0 * n) + delta;
    if (cov.kind == CovKind::FBF) {
        const double expo = 2.0 * cov.H * static_cast<double>(n) * q;
        if (expo >= static_cast<double>(k)) {
            rep.value = kInf;
            rep.violated = "divergent: H(n-alpha) + 2Hn delta >= k";
            return rep;
        }
    }
    double best = 0.0;
    const int grid = 33;
    for (int i = 0; i < grid; ++i) {
        double s = static_cast<double>(i) / (grid - 1);
        auto f = [&](double t) {
            double tt = t, ss = s;
            double var = cov.increment_variance(std::span<const double>(&ss, 1),
                                                std::span<const double>(&tt, 1));
            double det = std::pow(var, n);
            return std::pow(det, -q);
        };
        QuadResult left = (s > 0.0) ? integrate_singular(f, 0.0, s, 1e-9) : QuadResult{};
        QuadResult right = (s < 1.0) ? integrate_singular(f, s, 1.0, 1e-9) : QuadResult{};
        best = std::max(best, left.value + right.value);
        rep.error_estimate = std::max(rep.error_estimate, left.error + right.error);
    }
    rep.value = best;
    rep.method = "quadrature";
    return rep;
}

}  // namespace frz
