#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "frz/common.hpp"
#include "frz/kernels.hpp"

namespace frz {

/// Weighted point cloud in R^n. Atoms are stored flat (n doubles per atom).
struct DiscreteMeasure {
    int n = 1;
    std::vector<double> atoms;    // size count*n, row-major
    std::vector<double> weights;  // size count

    std::size_t count() const { return weights.size(); }
    std::span<const double> atom(std::size_t i) const {
        return {atoms.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }
    double total_mass() const {
        return pairwise_sum(weights);
    }
    void push_atom(std::span<const double> x, double w) {
        if (static_cast<int>(x.size()) != n)
            throw std::invalid_argument("DiscreteMeasure: atom dimension mismatch");
        if (w < 0.0) throw std::invalid_argument("DiscreteMeasure: negative weight");
        atoms.insert(atoms.end(), x.begin(), x.end());
        weights.push_back(w);
    }
    void validate() const {
        if (atoms.size() != count() * static_cast<std::size_t>(n))
            throw std::invalid_argument("DiscreteMeasure: atoms/weights length mismatch");
        for (double w : weights)
            if (w < 0.0) throw std::invalid_argument("DiscreteMeasure: negative weight");
    }
};

/// Values of a map X:[0,1]^k -> R^n on the uniform grid with m points per
/// axis; grid index i corresponds to parameter i/(m-1), endpoints included.
struct SampledField {
    int k = 1;
    int n = 1;
    int m = 2;
    std::vector<double> values;  // size m^k * n, row-major over the grid multi-index
    bool origin_pinned = true;

    std::size_t grid_size() const {
        std::size_t g = 1;
        for (int i = 0; i < k; ++i) g *= static_cast<std::size_t>(m);
        return g;
    }
    std::span<double> value(std::size_t flat) {
        return {values.data() + flat * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }
    std::span<const double> value(std::size_t flat) const {
        return {values.data() + flat * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }
    /// Parameter of grid node `flat` (row-major), written into t (size k).
    void parameter(std::size_t flat, std::span<double> t) const {
        for (int d = k - 1; d >= 0; --d) {
            t[static_cast<std::size_t>(d)] =
                static_cast<double>(flat % static_cast<std::size_t>(m)) / static_cast<double>(m - 1);
            flat /= static_cast<std::size_t>(m);
        }
    }
    void validate() const {
        if (k < 1 || n < 1 || m < 2) throw std::invalid_argument("SampledField: need k,n >= 1, m >= 2");
        if (values.size() != grid_size() * static_cast<std::size_t>(n))
            throw std::invalid_argument("SampledField: value buffer size mismatch");
        if (origin_pinned)
            for (int d = 0; d < n; ++d)
                if (values[static_cast<std::size_t>(d)] != 0.0)
                    throw std::invalid_argument("SampledField: origin_pinned but X(0) != 0");
    }
};

/// Pushforward of the uniform grid measure: one atom per grid cell at the
/// sampled value, each of weight m^-k, so the total mass is 1.
inline DiscreteMeasure occupation_measure(const SampledField& field) {
    field.validate();
    DiscreteMeasure mu;
    mu.n = field.n;
    const std::size_t g = field.grid_size();
    mu.atoms = field.values;
    mu.weights.assign(g, 1.0 / static_cast<double>(g));
    return mu;
}

inline double riesz_potential(const DiscreteMeasure& mu, std::span<const double> x, double alpha,
                              int workers = 1) {
    if (static_cast<int>(x.size()) != mu.n)
        throw std::invalid_argument("riesz_potential: point dimension mismatch");
    if (!(alpha > 0.0 && alpha < static_cast<double>(mu.n)))
        throw std::invalid_argument("riesz_potential: need 0 < alpha < n");
    const double expo = alpha - static_cast<double>(mu.n);
    bool hit = false;
    double val = block_sum(
        mu.count(),
        [&](std::size_t i) {
            double w = mu.weights[i];
            if (w == 0.0) return 0.0;
            double d = dist(x, mu.atom(i));
            if (d == 0.0) {
                hit = true;
                return 0.0;
            }
            return w * std::pow(d, expo);
        },
        workers);
    return hit ? kInf : val;
}

inline double bessel_potential(const DiscreteMeasure& mu, std::span<const double> x, double alpha,
                               int workers = 1) {
    if (static_cast<int>(x.size()) != mu.n)
        throw std::invalid_argument("bessel_potential: point dimension mismatch");
    if (!(alpha > 0.0)) throw std::invalid_argument("bessel_potential: need alpha > 0");
    bool hit = false;
    double val = block_sum(
        mu.count(),
        [&](std::size_t i) {
            double w = mu.weights[i];
            if (w == 0.0) return 0.0;
            double d = dist(x, mu.atom(i));
            double kern = bessel_kernel_radial(alpha, mu.n, d);
            if (kern == kInf) {
                hit = true;
                return 0.0;
            }
            return w * kern;
        },
        workers);
    return hit ? kInf : val;
}

/// I^alpha(mu, nu): double sum of the Riesz kernel. Coincident atoms give
/// +inf only when both weights are positive.
inline double mutual_energy(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double alpha,
                            int workers = 1) {
    if (mu.n != nu.n) throw std::invalid_argument("mutual_energy: dimension mismatch");
    if (!(alpha > 0.0 && alpha < static_cast<double>(mu.n)))
        throw std::invalid_argument("mutual_energy: need 0 < alpha < n");
    const double expo = alpha - static_cast<double>(mu.n);
    const std::size_t cn = nu.count();
    bool hit = false;
    double val = block_sum(
        mu.count() * cn,
        [&](std::size_t flat) {
            std::size_t i = flat / cn, j = flat % cn;
            double w = mu.weights[i] * nu.weights[j];
            if (w == 0.0) return 0.0;
            double d = dist(mu.atom(i), nu.atom(j));
            if (d == 0.0) {
                hit = true;
                return 0.0;
            }
            return w * std::pow(d, expo);
        },
        workers);
    return hit ? kInf : val;
}

enum class DiagonalRule { Exclude, CellMidpoint };

/// Self-interaction energy I^alpha(mu) from the off-diagonal double sum.
/// Exclude drops i=j pairs (systematic underestimate, never spuriously +inf);
/// CellMidpoint adds, per atom, the kernel at half the displacement to the
/// next atom in storage order, as a refinement diagnostic.
inline double self_energy(const DiscreteMeasure& mu, double alpha,
                          DiagonalRule rule = DiagonalRule::Exclude, int workers = 1) {
    if (!(alpha > 0.0 && alpha < static_cast<double>(mu.n)))
        throw std::invalid_argument("self_energy: need 0 < alpha < n");
    const double expo = alpha - static_cast<double>(mu.n);
    const std::size_t c = mu.count();
    bool hit = false;
    double off = block_sum(
        c * c,
        [&](std::size_t flat) {
            std::size_t i = flat / c, j = flat % c;
            if (i == j) return 0.0;
            double w = mu.weights[i] * mu.weights[j];
            if (w == 0.0) return 0.0;
            double d = dist(mu.atom(i), mu.atom(j));
            if (d == 0.0) {
                hit = true;
                return 0.0;
            }
            return w * std::pow(d, expo);
        },
        workers);
    if (hit) return kInf;
    if (rule == DiagonalRule::CellMidpoint && c >= 2) {
        double diag = block_sum(
            c,
            [&](std::size_t i) {
                std::size_t nb = (i + 1 < c) ? i + 1 : i - 1;
                double d = dist(mu.atom(i), mu.atom(nb));
                if (d == 0.0) {
                    hit = true;
                    return 0.0;
                }
                return mu.weights[i] * mu.weights[i] * std::pow(0.5 * d, expo);
            },
            workers);
        if (hit) return kInf;
        off += diag;
    }
    return off;
}

/// mu_hat(xi) = sum_i w_i exp(i <a_i, xi>).
inline std::complex<double> fourier_transform(const DiscreteMeasure& mu,
                                              std::span<const double> xi, int workers = 1) {
    if (static_cast<int>(xi.size()) != mu.n)
        throw std::invalid_argument("fourier_transform: frequency dimension mismatch");
    double re = block_sum(
        mu.count(),
        [&](std::size_t i) {
            double phase = 0.0;
            auto a = mu.atom(i);
            for (int d = 0; d < mu.n; ++d) phase += a[static_cast<std::size_t>(d)] * xi[static_cast<std::size_t>(d)];
            return mu.weights[i] * std::cos(phase);
        },
        workers);
    double im = block_sum(
        mu.count(),
        [&](std::size_t i) {
            double phase = 0.0;
            auto a = mu.atom(i);
            for (int d = 0; d < mu.n; ++d) phase += a[static_cast<std::size_t>(d)] * xi[static_cast<std::size_t>(d)];
            return mu.weights[i] * std::sin(phase);
        },
        workers);
    return {re, im};
}

/// Maximum of the Riesz potential over an explicit evaluation set (points
/// stored flat, n doubles per point).
inline double sup_potential(const DiscreteMeasure& mu, std::span<const double> eval_points,
                            double alpha, int workers = 1) {
    if (eval_points.empty()) throw std::invalid_argument("sup_potential: empty evaluation set");
    if (eval_points.size() % static_cast<std::size_t>(mu.n) != 0)
        throw std::invalid_argument("sup_potential: evaluation set dimension mismatch");
    const std::size_t npts = eval_points.size() / static_cast<std::size_t>(mu.n);
    double best = -kInf;
    for (std::size_t p = 0; p < npts; ++p) {
        std::span<const double> x{eval_points.data() + p * static_cast<std::size_t>(mu.n),
                                  static_cast<std::size_t>(mu.n)};
        best = std::max(best, riesz_potential(mu, x, alpha, workers));
        if (best == kInf) break;
    }
    return best;
}

/// Truncated fractional Hardy-Littlewood maximal function
/// M_{gamma,R} nu(x) = sup_{0<r<R} r^(gamma-n) nu(B(x,r)), computed exactly:
/// nu(B(x,r)) only jumps at atom distances, and r^(gamma-n) is nonincreasing,
/// so the supremum is attained along the jump radii.
inline double maximal_function(const DiscreteMeasure& nu, std::span<const double> x, double gamma,
                               double R) {
    if (static_cast<int>(x.size()) != nu.n)
        throw std::invalid_argument("maximal_function: point dimension mismatch");
    if (!(R > 0.0)) throw std::invalid_argument("maximal_function: need R > 0");
    if (gamma < 0.0 || gamma > static_cast<double>(nu.n))
        throw std::invalid_argument("maximal_function: need 0 <= gamma <= n");
    std::vector<std::pair<double, double>> jumps;  // (distance, weight)
    for (std::size_t i = 0; i < nu.count(); ++i) {
        if (nu.weights[i] == 0.0) continue;
        double d = dist(x, nu.atom(i));
        if (d < R) jumps.emplace_back(d, nu.weights[i]);
    }
    if (jumps.empty()) return 0.0;
    std::sort(jumps.begin(), jumps.end());
    const double expo = gamma - static_cast<double>(nu.n);
    double mass = 0.0, best = 0.0;
    for (std::size_t i = 0; i < jumps.size(); ++i) {
        mass += jumps[i].second;
        if (i + 1 < jumps.size() && jumps[i + 1].first == jumps[i].first) continue;
        double r = jumps[i].first;
        if (r == 0.0 && expo < 0.0) return kInf;
        best = std::max(best, std::pow(r, expo) * mass);
    }
    return best;
}

}  // namespace frz
