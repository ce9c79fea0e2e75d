#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "frz/analysis.hpp"
#include "frz/common.hpp"
#include "frz/measures.hpp"
#include "frz/minimize.hpp"

namespace frz {

/// Scalar cell-constant function on a uniform grid over a box (n = 1 or 2).
/// Cell values determine the jump faces, and the gradient measure is exactly
/// computable: one atom per interior face with weight |jump| * face area.
struct BVGridFunction {
    int n = 2;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
    std::array<int, 2> cells{1, 1};       // cells per axis; cells[1] unused for n=1
    std::vector<double> values;           // row-major: ix * cells[1] + iy (n=2), ix (n=1)

    double cell_size(int axis) const {
        return (hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]) /
               cells[static_cast<std::size_t>(axis)];
    }
    double value_at_cell(int ix, int iy = 0) const {
        if (n == 1) return values[static_cast<std::size_t>(ix)];
        return values[static_cast<std::size_t>(ix) * static_cast<std::size_t>(cells[1]) +
                      static_cast<std::size_t>(iy)];
    }
    void validate() const {
        if (n != 1 && n != 2) throw std::invalid_argument("BVGridFunction: n must be 1 or 2");
        std::size_t expect = static_cast<std::size_t>(cells[0]);
        if (n == 2) expect *= static_cast<std::size_t>(cells[1]);
        for (int a = 0; a < n; ++a) {
            if (cells[static_cast<std::size_t>(a)] < 1 ||
                !(hi[static_cast<std::size_t>(a)] > lo[static_cast<std::size_t>(a)]))
                throw std::invalid_argument("BVGridFunction: bad box or cell counts");
        }
        if (values.size() != expect)
            throw std::invalid_argument("BVGridFunction: value buffer size mismatch");
    }
};

/// Total-variation measure of the cell-constant function: atoms at interior
/// face centers with weight |jump| * face area.
inline DiscreteMeasure gradient_measure(const BVGridFunction& phi) {
    phi.validate();
    DiscreteMeasure mu;
    mu.n = phi.n;
    if (phi.n == 1) {
        const double h = phi.cell_size(0);
        for (int i = 0; i + 1 < phi.cells[0]; ++i) {
            double jump = std::abs(phi.value_at_cell(i + 1) - phi.value_at_cell(i));
            if (jump == 0.0) continue;
            double x = phi.lo[0] + (i + 1) * h;
            mu.push_atom(std::span<const double>(&x, 1), jump);
        }
        return mu;
    }
    const double hx = phi.cell_size(0), hy = phi.cell_size(1);
    double pt[2];
    for (int ix = 0; ix + 1 < phi.cells[0]; ++ix)
        for (int iy = 0; iy < phi.cells[1]; ++iy) {
            double jump = std::abs(phi.value_at_cell(ix + 1, iy) - phi.value_at_cell(ix, iy));
            if (jump == 0.0) continue;
            pt[0] = phi.lo[0] + (ix + 1) * hx;
            pt[1] = phi.lo[1] + (iy + 0.5) * hy;
            mu.push_atom(std::span<const double>(pt, 2), jump * hy);
        }
    for (int ix = 0; ix < phi.cells[0]; ++ix)
        for (int iy = 0; iy + 1 < phi.cells[1]; ++iy) {
            double jump = std::abs(phi.value_at_cell(ix, iy + 1) - phi.value_at_cell(ix, iy));
            if (jump == 0.0) continue;
            pt[0] = phi.lo[0] + (ix + 0.5) * hx;
            pt[1] = phi.lo[1] + (iy + 1) * hy;
            mu.push_atom(std::span<const double>(pt, 2), jump * hx);
        }
    return mu;
}

/// Discrete Gagliardo seminorm [u]_{delta,ell} over the field's parameter
/// domain, diagonal excluded, cell weight m^-k per point; ell = +inf gives
/// the Hoelder sup ratio.
inline double gagliardo_seminorm(const SampledField& u, double delta, double ell) {
    u.validate();
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("gagliardo_seminorm: need 0 < delta < 1");
    if (!(ell >= 1.0)) throw std::invalid_argument("gagliardo_seminorm: need ell >= 1");
    if (std::isinf(ell)) return holder_seminorm(u, delta, PairPolicy::all());
    const std::size_t g = u.grid_size();
    const double cellw = 1.0 / static_cast<double>(g);
    const double expo = static_cast<double>(u.k) + delta * ell;
    std::vector<double> ti(static_cast<std::size_t>(u.k)), tj(static_cast<std::size_t>(u.k));
    double total = block_sum(g * g, [&](std::size_t flat) {
        std::size_t a = flat / g, b = flat % g;
        if (a == b) return 0.0;
        // parameters from flat indices (k <= 2 in practice, pow dominates anyway)
        std::size_t ra = a, rb = b;
        double dt2 = 0.0;
        for (int d = u.k - 1; d >= 0; --d) {
            double pa = static_cast<double>(ra % static_cast<std::size_t>(u.m)) / (u.m - 1);
            double pb = static_cast<double>(rb % static_cast<std::size_t>(u.m)) / (u.m - 1);
            ra /= static_cast<std::size_t>(u.m);
            rb /= static_cast<std::size_t>(u.m);
            dt2 += sqr(pa - pb);
        }
        double dx = dist(u.value(a), u.value(b));
        return std::pow(dx, ell) / std::pow(std::sqrt(dt2), expo) * cellw * cellw;
    });
    return std::pow(total, 1.0 / ell);
}

/// V_{phi,s,p}(u) = (1/m^k) sum_x (U^{1-s} ||D phi||(u(x)))^p for finite p,
/// the grid max for p = +inf. +inf when a sample coincides with a gradient
/// atom.
inline double v_functional(const BVGridFunction& phi, const SampledField& u, double s, double p) {
    phi.validate();
    u.validate();
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("v_functional: need 0 < s < 1");
    if (!(p >= 1.0)) throw std::invalid_argument("v_functional: need p >= 1");
    if (u.n != phi.n) throw std::invalid_argument("v_functional: u must map into phi's ambient space");
    DiscreteMeasure grad = gradient_measure(phi);
    const std::size_t g = u.grid_size();
    if (grad.count() == 0) return 0.0;
    const double alpha = 1.0 - s;
    double maxval = 0.0;
    std::vector<double> terms;
    terms.reserve(g);
    for (std::size_t i = 0; i < g; ++i) {
        double pot = riesz_potential(grad, u.value(i), alpha);
        if (!std::isfinite(pot)) return kInf;
        if (std::isinf(p))
            maxval = std::max(maxval, pot);
        else
            terms.push_back(std::pow(pot, p));
    }
    if (std::isinf(p)) return maxval;
    return pairwise_sum(terms) / static_cast<double>(g);
}

struct ComposeOutcome {
    SampledField composed;        // scalar field on u's grid
    double jump_mass = 0.0;       // occupation mass of samples landing on jump faces
    std::size_t jump_hits = 0;
};

namespace detail {

/// Cell lookup with exact-face detection. Returns the cell index per axis and
/// whether the coordinate sits exactly on an interior face.
inline void locate(double coord, double lo, double h, int cells, int& idx, bool& on_face) {
    double q = (coord - lo) / h;
    double fl = std::floor(q);
    on_face = (q == fl) && fl > 0.0 && fl < static_cast<double>(cells);
    int i = static_cast<int>(fl);
    if (on_face) i -= 1;  // attribute exact hits to the lower cell
    idx = std::clamp(i, 0, cells - 1);
}

}  // namespace detail

/// Pointwise composition phi(u(x)) of the cell-value representative. Samples
/// landing exactly on a face that carries a jump are counted; if their
/// occupation mass exceeds `tolerance` the composition is refused, since the
/// composition is only well defined when the occupation measure does not
/// charge the discontinuity set.
inline ComposeOutcome compose(const BVGridFunction& phi, const SampledField& u,
                              double tolerance = 1e-6) {
    phi.validate();
    u.validate();
    if (u.n != phi.n) throw std::invalid_argument("compose: u must map into phi's ambient space");
    const std::size_t g = u.grid_size();
    ComposeOutcome out;
    out.composed.k = u.k;
    out.composed.n = 1;
    out.composed.m = u.m;
    out.composed.origin_pinned = false;
    out.composed.values.assign(g, 0.0);
    for (std::size_t i = 0; i < g; ++i) {
        auto v = u.value(i);
        int ix = 0, iy = 0;
        bool fx = false, fy = false;
        detail::locate(v[0], phi.lo[0], phi.cell_size(0), phi.cells[0], ix, fx);
        if (phi.n == 2) detail::locate(v[1], phi.lo[1], phi.cell_size(1), phi.cells[1], iy, fy);
        bool jump_hit = false;
        if (fx) {
            double a = phi.value_at_cell(ix, iy);
            double b = phi.value_at_cell(std::min(ix + 1, phi.cells[0] - 1), iy);
            jump_hit |= (a != b);
        }
        if (fy) {
            double a = phi.value_at_cell(ix, iy);
            double b = phi.value_at_cell(ix, std::min(iy + 1, phi.cells[1] - 1));
            jump_hit |= (a != b);
        }
        if (jump_hit) ++out.jump_hits;
        out.composed.values[i] = phi.value_at_cell(ix, iy);
    }
    out.jump_mass = static_cast<double>(out.jump_hits) / static_cast<double>(g);
    if (out.jump_mass > tolerance)
        throw feasibility_error(
            "compose: occupation mass " + std::to_string(out.jump_mass) +
            " on jump faces exceeds tolerance; the composition is not well defined when the "
            "occupation measure charges the discontinuity set");
    return out;
}

/// Exponent bookkeeping for the multiplicative estimate; validates the
/// trading gate 1/p + s/q <= 1/r and the admissible range of beta.
struct CompositionParams {
    double s = 0.5;
    double theta = 0.6;
    double p = 2.0;  // +inf allowed
    double q = 4.0;  // +inf allowed
    double r = 1.5;  // +inf allowed
    double beta = 0.25;

    void validate() const {
        if (!(s > 0.0 && s < 1.0) || !(theta > 0.0 && theta < 1.0))
            throw std::invalid_argument("CompositionParams: need s, theta in (0,1)");
        for (double e : {p, q, r})
            if (!(e >= 1.0)) throw std::invalid_argument("CompositionParams: exponents must lie in [1, inf]");
        auto inv = [](double v) { return std::isinf(v) ? 0.0 : 1.0 / v; };
        if (inv(p) + s * inv(q) > inv(r) + 1e-15)
            throw std::invalid_argument(
                "CompositionParams: parameter trading gate violated, need 1/p + s/q <= 1/r");
        if (beta > theta * s + 1e-15)
            throw std::invalid_argument("CompositionParams: need beta < theta*s (or = with the tail condition)");
        if (beta == theta * s) {
            bool ok = std::isinf(r) || (!std::isinf(r) && q == s * r);
            if (!ok)
                throw std::invalid_argument(
                    "CompositionParams: beta = theta*s only admissible for r = inf or q = s*r");
        }
        if (!(beta > 0.0)) throw std::invalid_argument("CompositionParams: need beta > 0");
    }
};

struct MainEstimateReport {
    double lhs = 0.0;                 // [phi o u]_{beta,r}
    double rhs_factor_seminorm = 0.0; // [u]_{theta,q}^s
    double rhs_factor_V = 0.0;        // V_{phi,s,p}(u)^{1/p} (or V_inf)
    double ratio = 0.0;               // empirical constant for this instance
    double jump_mass = 0.0;
};

/// Both sides of the multiplicative estimate on one (phi, u) instance; the
/// ratio is the instance's empirical constant.
inline MainEstimateReport verify_main_estimate(const BVGridFunction& phi, const SampledField& u,
                                               const CompositionParams& params) {
    params.validate();
    MainEstimateReport rep;
    ComposeOutcome comp = compose(phi, u);
    rep.jump_mass = comp.jump_mass;
    rep.lhs = gagliardo_seminorm(comp.composed, params.beta, params.r);
    rep.rhs_factor_seminorm = std::pow(gagliardo_seminorm(u, params.theta, params.q), params.s);
    double V = v_functional(phi, u, params.s, params.p);
    rep.rhs_factor_V = std::isinf(params.p) ? V : std::pow(V, 1.0 / params.p);
    rep.ratio = rep.lhs / (rep.rhs_factor_seminorm * rep.rhs_factor_V);
    return rep;
}

struct PointwiseBVReport {
    double max_ratio = 0.0;
    double q50 = 0.0, q90 = 0.0, q99 = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;  // pairs touching a jump face
};

/// Per-pair ratios |phi(xi)-phi(eta)| / (|xi-eta|^s [M(xi)+M(eta)]) with the
/// truncated maximal function M at radius 4|xi-eta|; the max is the empirical
/// backend constant for this instance.
inline PointwiseBVReport pointwise_bv_check(const BVGridFunction& phi,
                                            std::span<const double> pair_points, double s) {
    phi.validate();
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("pointwise_bv_check: need 0 < s < 1");
    const std::size_t stride = 2 * static_cast<std::size_t>(phi.n);
    if (pair_points.size() % stride != 0)
        throw std::invalid_argument("pointwise_bv_check: pair buffer must hold 2n doubles per pair");
    DiscreteMeasure grad = gradient_measure(phi);
    PointwiseBVReport rep;
    std::vector<double> ratios;
    auto phi_at = [&](std::span<const double> x, bool& on_jump) -> double {
        int ix = 0, iy = 0;
        bool fx = false, fy = false;
        detail::locate(x[0], phi.lo[0], phi.cell_size(0), phi.cells[0], ix, fx);
        if (phi.n == 2) detail::locate(x[1], phi.lo[1], phi.cell_size(1), phi.cells[1], iy, fy);
        on_jump = false;
        if (fx && phi.value_at_cell(ix, iy) !=
                      phi.value_at_cell(std::min(ix + 1, phi.cells[0] - 1), iy))
            on_jump = true;
        if (phi.n == 2 && fy &&
            phi.value_at_cell(ix, iy) != phi.value_at_cell(ix, std::min(iy + 1, phi.cells[1] - 1)))
            on_jump = true;
        return phi.value_at_cell(ix, iy);
    };
    for (std::size_t off = 0; off < pair_points.size(); off += stride) {
        std::span<const double> xi{pair_points.data() + off, static_cast<std::size_t>(phi.n)};
        std::span<const double> eta{pair_points.data() + off + phi.n, static_cast<std::size_t>(phi.n)};
        bool ja = false, jb = false;
        double va = phi_at(xi, ja), vb = phi_at(eta, jb);
        if (ja || jb) {
            ++rep.skipped;
            continue;
        }
        double num = std::abs(va - vb);
        double d = dist(xi, eta);
        if (d == 0.0) {
            ++rep.skipped;
            continue;
        }
        double ratio = 0.0;
        if (num > 0.0) {
            double msum = maximal_function(grad, xi, 1.0 - s, 4.0 * d) +
                          maximal_function(grad, eta, 1.0 - s, 4.0 * d);
            ratio = num / (std::pow(d, s) * msum);  // msum > 0 whenever num > 0 at usable scales
        }
        ratios.push_back(ratio);
        ++rep.evaluated;
    }
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        auto quant = [&](double q) {
            return ratios[std::min(ratios.size() - 1,
                                   static_cast<std::size_t>(q * static_cast<double>(ratios.size())))];
        };
        rep.max_ratio = ratios.back();
        rep.q50 = quant(0.5);
        rep.q90 = quant(0.9);
        rep.q99 = quant(0.99);
    }
    return rep;
}

/// P(u) = [u]_{theta,inf}^s * V_{phi,s,p}(u), the guaranteed-upper-bound
/// functional of the composition estimate.
inline double product_functional(const BVGridFunction& phi, const SampledField& u, double s,
                                 double p, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("product_functional: need 0 < theta < 1");
    double sem = gagliardo_seminorm(u, theta, kInf);
    if (sem == 0.0) return 0.0;
    return std::pow(sem, s) * v_functional(phi, u, s, p);
}

/// Adapter plugging P(u) into the projected-descent optimizer over the class
/// { u(0)=0, [u]_{theta,inf} < rho, V_{phi,s,1}(u) < M }.
inline CustomObjective make_product_objective(const BVGridFunction& phi, double s, double p,
                                              double theta, double cap_M) {
    CustomObjective obj;
    obj.value = [&phi, s, p, theta](const SampledField& u) {
        return product_functional(phi, u, s, p, theta);
    };
    obj.feasibility_stat = [&phi, s](const SampledField& u) { return v_functional(phi, u, s, 1.0); };
    obj.feasibility_cap = cap_M;
    return obj;
}

}  // namespace frz
