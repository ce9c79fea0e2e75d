#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "frz/analysis.hpp"
#include "frz/common.hpp"
#include "frz/fields.hpp"

namespace frz {

/// Planar Koch-type generator: 4 similar maps of contraction ratio 4^-gamma.
/// The generator closes only for gamma > 1/2 (ratio < 1/2); below that the
/// bump folds back onto itself and the fBm witness must be used instead.
struct KochSpec {
    double gamma = std::log(3.0) / std::log(4.0);
    int level = 5;
    int n = 2;

    void validate() const {
        if (n != 2) throw std::invalid_argument("KochSpec: only the planar construction (n=2) is supported");
        if (level < 0 || level > 9) throw std::invalid_argument("KochSpec: level must be in [0,9]");
        if (!(gamma > 0.5 && gamma < 1.0))
            throw std::invalid_argument(
                "KochSpec: gamma must lie in (1/2,1); for gamma <= 1/2 use the fBm witness (feasible_init)");
    }
};

/// Level-`level` polygonal stage of the self-similar curve whose generator
/// has 4 maps of ratio r = 4^-gamma: two base segments and a two-segment bump
/// whose apex angle solves 2r + 2r cos(theta) = 1. Parametrized by quaternary
/// intervals, X(0) = 0, X(1) = (1,0).
inline SampledField koch_curve(const KochSpec& spec) {
    spec.validate();
    const double r = std::pow(4.0, -spec.gamma);
    const double c = (1.0 - 2.0 * r) / (2.0 * r);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double gen[4][2] = {{1.0, 0.0}, {c, s}, {c, -s}, {1.0, 0.0}};
    std::vector<double> dirs = {1.0, 0.0};  // unit directions of the current stage
    for (int lev = 0; lev < spec.level; ++lev) {
        std::vector<double> next;
        next.reserve(dirs.size() * 4);
        for (std::size_t i = 0; i < dirs.size(); i += 2) {
            const double dx = dirs[i], dy = dirs[i + 1];
            for (const auto& g : gen) {
                next.push_back(dx * g[0] - dy * g[1]);
                next.push_back(dy * g[0] + dx * g[1]);
            }
        }
        dirs = std::move(next);
    }
    const std::size_t segs = dirs.size() / 2;
    const double seglen = std::pow(r, spec.level);
    SampledField f;
    f.k = 1;
    f.n = 2;
    f.m = static_cast<int>(segs + 1);
    f.values.assign(2 * (segs + 1), 0.0);
    double x = 0.0, y = 0.0;
    for (std::size_t i = 0; i < segs; ++i) {
        x += seglen * dirs[2 * i];
        y += seglen * dirs[2 * i + 1];
        f.values[2 * (i + 1)] = x;
        f.values[2 * (i + 1) + 1] = y;
    }
    return f;
}

/// Arithmetic admissibility gate k(floor(1/gamma)+1) <= n < k/gamma + alpha
/// for the deterministic bi-Hoelder witness.
inline bool assouad_condition(int k, double gamma, int n, double alpha) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("assouad_condition: need 0 < gamma < 1");
    if (!(alpha > 0.0 && alpha < static_cast<double>(n)))
        throw std::invalid_argument("assouad_condition: need 0 < alpha < n");
    const double left = static_cast<double>(k) * (std::floor(1.0 / gamma) + 1.0);
    return left <= static_cast<double>(n) &&
           static_cast<double>(n) < static_cast<double>(k) / gamma + alpha;
}

/// Discrete Hoelder seminorm used when building feasible initializers:
/// all pairs for k = 1, a seeded 2^16-pair subsample inflated by 10% for
/// k >= 2 (the inflation keeps the ball guarantee conservative).
inline double witness_seminorm(const SampledField& field, double gamma, std::uint64_t seed) {
    if (field.k == 1) return holder_seminorm(field, gamma, PairPolicy::all());
    return 1.1 * holder_seminorm(field, gamma, PairPolicy::sampled(1 << 16, seed));
}

/// Feasibility witness inside the Hoelder ball: sample a fractional Brownian
/// field with gamma < H < k/(n-alpha), rescale by rho/(K+1) with K its
/// measured gamma-seminorm. With an endpoint p (k=1 only), bridge the path
/// first, scale by (rho-|p|)/(K+1) and add the drift t*p, so X(1)=p exactly
/// and the seminorm still stays strictly below rho.
inline SampledField feasible_init(double alpha, double gamma, double rho, int k, int n, int m,
                                  std::uint64_t seed,
                                  const std::vector<double>* endpoint = nullptr) {
    if (!(rho > 0.0)) throw std::invalid_argument("feasible_init: need rho > 0");
    const double hi = std::min(static_cast<double>(k) / (static_cast<double>(n) - alpha), 1.0);
    if (!(gamma > 0.0 && gamma < hi))
        throw std::invalid_argument(
            "feasible_init: infeasible parameters, the existence hypothesis needs gamma < k/(n-alpha) and gamma < 1");
    const double H = 0.5 * (gamma + hi);
    FieldSpec fs{H, k, n, m, seed};
    SampledField base = sample_fbf(fs);
    if (endpoint != nullptr) {
        if (k != 1) throw std::invalid_argument("feasible_init: endpoint constraints require k = 1");
        if (static_cast<int>(endpoint->size()) != n)
            throw std::invalid_argument("feasible_init: endpoint dimension mismatch");
        double pn = norm(*endpoint);
        if (!(rho > pn))
            throw feasibility_error(
                "feasible_init: endpoint needs rho > |p| (the seminorm of any curve from 0 to p is at least |p|)");
        SampledField bridged = make_bridge(base, H);
        double K = witness_seminorm(bridged, gamma, seed);
        double scale = (rho - pn) / (K + 1.0);
        const std::size_t g = bridged.grid_size();
        for (std::size_t i = 0; i < g; ++i) {
            double t = static_cast<double>(i) / static_cast<double>(m - 1);
            auto v = bridged.value(i);
            for (int d = 0; d < n; ++d)
                v[static_cast<std::size_t>(d)] =
                    scale * v[static_cast<std::size_t>(d)] + t * (*endpoint)[static_cast<std::size_t>(d)];
        }
        // exactness of the pins against round-off
        for (int d = 0; d < n; ++d) {
            bridged.values[static_cast<std::size_t>(d)] = 0.0;
            bridged.value(g - 1)[static_cast<std::size_t>(d)] = (*endpoint)[static_cast<std::size_t>(d)];
        }
        return bridged;
    }
    double K = witness_seminorm(base, gamma, seed);
    double scale = rho / (K + 1.0);
    for (double& v : base.values) v *= scale;
    return base;
}

}  // namespace frz
