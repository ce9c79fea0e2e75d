#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "frz/common.hpp"
#include "frz/measures.hpp"

namespace frz {

struct PairPolicy {
    enum class Kind { AllPairs, Sampled } kind = Kind::AllPairs;
    std::size_t count = 1 << 16;
    std::uint64_t seed = 0;

    static PairPolicy all() { return {}; }
    static PairPolicy sampled(std::size_t c, std::uint64_t s) {
        return {Kind::Sampled, c, s};
    }
};

/// Discrete Hoelder seminorm max |X(t)-X(s)| / |t-s|^gamma over the chosen
/// pair set. The sampled policy underestimates the all-pairs value.
inline double holder_seminorm(const SampledField& field, double gamma,
                              PairPolicy policy = PairPolicy::all()) {
    field.validate();
    const std::size_t g = field.grid_size();
    std::vector<double> ti(static_cast<std::size_t>(field.k)), tj(static_cast<std::size_t>(field.k));
    double best = 0.0;
    auto consider = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        field.parameter(a, ti);
        field.parameter(b, tj);
        double dt = dist(ti, tj);
        double dx = dist(field.value(a), field.value(b));
        best = std::max(best, dx / std::pow(dt, gamma));
    };
    if (policy.kind == PairPolicy::Kind::AllPairs) {
        if (field.k == 1) {
            // 1-d fast path: precompute the gap powers
            std::vector<double> gap_pow(g, 0.0);
            for (std::size_t d = 1; d < g; ++d)
                gap_pow[d] = std::pow(static_cast<double>(d) / static_cast<double>(field.m - 1), -gamma);
            for (std::size_t a = 0; a < g; ++a)
                for (std::size_t b = a + 1; b < g; ++b)
                    best = std::max(best, dist(field.value(a), field.value(b)) * gap_pow[b - a]);
            return best;
        }
        for (std::size_t a = 0; a < g; ++a)
            for (std::size_t b = a + 1; b < g; ++b) consider(a, b);
    } else {
        RngStream rng(policy.seed, 0x70a1);
        for (std::size_t c = 0; c < policy.count; ++c) {
            std::size_t a = rng.below(g), b = rng.below(g);
            consider(a, b);
        }
    }
    return best;
}

struct BoxDimensionResult {
    double estimate = 0.0;
    double r_squared = 0.0;
    std::vector<double> scales;       // as supplied
    std::vector<std::size_t> counts;  // N(eps) per scale
    std::size_t window_begin = 0;     // fitted contiguous sub-window [begin,end)
    std::size_t window_end = 0;
    bool degenerate = false;          // cloud diameter 0
};

/// Box-counting dimension: occupied cells of an anchored lattice per scale,
/// least-squares slope of log N against log(1/eps) over the contiguous
/// sub-window of >= 4 scales maximizing R^2. Constant-count windows carry no
/// slope information and are skipped.
inline BoxDimensionResult box_dimension(std::span<const double> points, int n,
                                        std::span<const double> scales) {
    if (n < 1 || points.size() % static_cast<std::size_t>(n) != 0)
        throw std::invalid_argument("box_dimension: bad point buffer");
    if (scales.size() < 4)
        throw std::invalid_argument("box_dimension: need at least 4 scales");
    const std::size_t npts = points.size() / static_cast<std::size_t>(n);
    if (npts == 0) throw std::invalid_argument("box_dimension: empty cloud");
    BoxDimensionResult out;
    out.scales.assign(scales.begin(), scales.end());
    // diameter check via bounding box
    double diam2 = 0.0;
    for (int d = 0; d < n; ++d) {
        double lo = kInf, hi = -kInf;
        for (std::size_t i = 0; i < npts; ++i) {
            double v = points[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(d)];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        diam2 += sqr(hi - lo);
    }
    if (diam2 == 0.0) {
        out.degenerate = true;
        out.counts.assign(scales.size(), 1);
        return out;
    }
    std::vector<std::vector<std::int64_t>> cells;
    for (double eps : scales) {
        if (!(eps > 0.0)) throw std::invalid_argument("box_dimension: scales must be positive");
        cells.clear();
        cells.reserve(npts);
        std::vector<std::int64_t> key(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < npts; ++i) {
            for (int d = 0; d < n; ++d)
                key[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(
                    std::floor(points[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(d)] / eps));
            cells.push_back(key);
        }
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        out.counts.push_back(cells.size());
    }
    std::vector<double> x(scales.size()), y(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        x[i] = std::log(1.0 / scales[i]);
        y[i] = std::log(static_cast<double>(out.counts[i]));
    }
    double best_r2 = -kInf;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 4; j <= x.size(); ++j) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
            double cnt = static_cast<double>(j - i);
            for (std::size_t q = i; q < j; ++q) {
                sx += x[q];
                sy += y[q];
                sxx += x[q] * x[q];
                sxy += x[q] * y[q];
                syy += y[q] * y[q];
            }
            double vxx = sxx - sx * sx / cnt, vxy = sxy - sx * sy / cnt, vyy = syy - sy * sy / cnt;
            if (vyy < 1e-12 || vxx <= 0.0) continue;  // constant counts: no slope information
            double slope = vxy / vxx;
            double r2 = vxy * vxy / (vxx * vyy);
            if (r2 > best_r2 + 1e-12) {
                best_r2 = r2;
                out.estimate = slope;
                out.r_squared = r2;
                out.window_begin = i;
                out.window_end = j;
            }
        }
    }
    if (best_r2 == -kInf) {
        // all windows degenerate (counts saturated everywhere)
        out.estimate = 0.0;
        out.r_squared = 0.0;
        out.window_end = x.size();
    }
    return out;
}

inline BoxDimensionResult box_dimension(const DiscreteMeasure& cloud,
                                        std::span<const double> scales) {
    return box_dimension(cloud.atoms, cloud.n, scales);
}

/// Resample a curve (k=1) to a denser polyline by linear interpolation;
/// used to box-count an image above the sampling cutoff.
inline std::vector<double> densify_curve(const SampledField& field, int factor) {
    field.validate();
    if (field.k != 1) throw std::invalid_argument("densify_curve: requires k = 1");
    if (factor < 1) throw std::invalid_argument("densify_curve: factor >= 1");
    const std::size_t m = static_cast<std::size_t>(field.m);
    std::vector<double> out;
    out.reserve(((m - 1) * static_cast<std::size_t>(factor) + 1) * static_cast<std::size_t>(field.n));
    for (std::size_t i = 0; i + 1 < m; ++i) {
        auto a = field.value(i), b = field.value(i + 1);
        for (int f = 0; f < factor; ++f) {
            double w = static_cast<double>(f) / factor;
            for (int d = 0; d < field.n; ++d)
                out.push_back((1.0 - w) * a[static_cast<std::size_t>(d)] + w * b[static_cast<std::size_t>(d)]);
        }
    }
    auto last = field.value(m - 1);
    out.insert(out.end(), last.begin(), last.end());
    return out;
}

struct ModuliRow {
    double h = 0.0;
    double upper = 0.0;        // sup_t sup_{0<|t-s|<=h} |X(t)-X(s)|, t in [h,1-h]
    double lower = 0.0;        // inf_t sup_{0<|t-s|<=h} |X(t)-X(s)|
    double upper_ratio = 0.0;  // upper / h^kappa_plus
    double lower_ratio = 0.0;  // lower / h^kappa_minus
    bool skipped = false;      // h below grid resolution
};

struct ModuliReport {
    double kappa_plus = 0.0;
    double kappa_minus = 0.0;
    std::vector<ModuliRow> rows;
};

/// Oscillation statistics behind the upper/lower modulus conditions, on a
/// curve (k=1), reported against the reference powers h^kappa.
inline ModuliReport oscillation_moduli(const SampledField& field, std::span<const double> h_values,
                                       double kappa_plus, double kappa_minus) {
    field.validate();
    if (field.k != 1) throw std::invalid_argument("oscillation_moduli: requires k = 1");
    ModuliReport rep;
    rep.kappa_plus = kappa_plus;
    rep.kappa_minus = kappa_minus;
    const int m = field.m;
    const double step = 1.0 / (m - 1);
    for (double h : h_values) {
        if (!(h > 0.0 && h < 0.5)) throw std::invalid_argument("oscillation_moduli: need 0 < h < 1/2");
        ModuliRow row;
        row.h = h;
        if (h < step) {
            row.skipped = true;
            rep.rows.push_back(row);
            continue;
        }
        const int win = static_cast<int>(std::floor(h / step + 1e-12));
        double upper = 0.0, lower = kInf;
        for (int i = 0; i < m; ++i) {
            double t = i * step;
            if (t < h - 1e-12 || t > 1.0 - h + 1e-12) continue;
            double osc = 0.0;
            for (int j = std::max(0, i - win); j <= std::min(m - 1, i + win); ++j) {
                if (j == i) continue;
                osc = std::max(osc, dist(field.value(static_cast<std::size_t>(i)),
                                         field.value(static_cast<std::size_t>(j))));
            }
            upper = std::max(upper, osc);
            lower = std::min(lower, osc);
        }
        if (lower == kInf) {
            row.skipped = true;
            rep.rows.push_back(row);
            continue;
        }
        row.upper = upper;
        row.lower = lower;
        row.upper_ratio = upper / std::pow(h, kappa_plus);
        row.lower_ratio = lower / std::pow(h, kappa_minus);
        rep.rows.push_back(row);
    }
    return rep;
}

struct BdpotRow {
    double h = 0.0;
    double lower_stat = 0.0;   // inf_t sup_{0<|t-s|<=h}|X(t)-X(s)|
    double lower_ratio = 0.0;  // lower_stat / h^kappa_minus
};

struct BdpotReport {
    double potential_sup = 0.0;  // sup_t (1/m) sum_s |X(t)-X(s)|^(alpha-n), s != t
    double kappa_minus = 0.0;
    std::vector<BdpotRow> rows;
    bool flagged = false;  // bounded potential with vanishing lower statistic
};

/// Diagnostic for the bounded-potential vs lower-modulus mechanism: reports
/// the discrete sup of the path potential next to the lower oscillation
/// statistic at dyadic h, and flags the contradiction pattern (finite
/// potential while the lower statistic collapses, e.g. on plateaus).
inline BdpotReport bdpot_diagnostic(const SampledField& field, double alpha, double kappa_minus) {
    field.validate();
    if (field.k != 1) throw std::invalid_argument("bdpot_diagnostic: requires k = 1");
    if (!(alpha > 0.0 && alpha < static_cast<double>(field.n)))
        throw std::invalid_argument("bdpot_diagnostic: need 0 < alpha < n");
    if (!(kappa_minus > 1.0 / (static_cast<double>(field.n) - alpha)))
        throw std::invalid_argument("bdpot_diagnostic: need kappa_minus > 1/(n-alpha)");
    BdpotReport rep;
    rep.kappa_minus = kappa_minus;
    const int m = field.m;
    const double expo = alpha - static_cast<double>(field.n);
    double best = 0.0;
    bool unbounded = false;
    for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            double d = dist(field.value(static_cast<std::size_t>(i)),
                            field.value(static_cast<std::size_t>(j)));
            if (d == 0.0) {
                unbounded = true;
                continue;
            }
            acc += std::pow(d, expo);
        }
        best = std::max(best, acc / m);
    }
    rep.potential_sup = unbounded ? kInf : best;
    const double step = 1.0 / (m - 1);
    std::vector<double> hs;
    for (double h = 0.25; h >= 2.0 * step; h *= 0.5) hs.push_back(h);
    ModuliReport mod = oscillation_moduli(field, hs, kappa_minus, kappa_minus);
    for (const auto& row : mod.rows) {
        if (row.skipped) continue;
        rep.rows.push_back({row.h, row.lower, row.lower_ratio});
        // vanishing lower statistic contradicts a bounded potential in the
        // limit (the plateau pattern); the discrete potential may still be
        // finite at this resolution, so flag on the statistic itself
        if (row.lower == 0.0) rep.flagged = true;
    }
    return rep;
}

}  // namespace frz
