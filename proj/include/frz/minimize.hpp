#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "frz/analysis.hpp"
#include "frz/common.hpp"
#include "frz/measures.hpp"
#include "frz/witness.hpp"

namespace frz {

enum class ObjectiveKind { SelfInteraction, MutualInteraction, PPotential };

struct PotentialCap {
    double M = 0.0;
    std::vector<double> eval_points;  // flat, n doubles per point
};

/// One variational problem instance: objective kind, kernel order, Hoelder
/// ball (gamma, rho), grid, optional medium, potential cap and endpoint.
struct ProblemSpec {
    ObjectiveKind objective = ObjectiveKind::SelfInteraction;
    double alpha = 0.5;
    double gamma = 0.6;
    double rho = 1.0;
    int k = 1;
    int n = 2;
    int m = 257;
    DiscreteMeasure medium;  // used by MutualInteraction and PPotential
    double p_power = 1.0;    // used by PPotential
    std::optional<PotentialCap> potential_cap;
    std::optional<std::vector<double>> endpoint;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(alpha > 0.0 && alpha < static_cast<double>(n)))
            throw std::invalid_argument("ProblemSpec: need 0 < alpha < n");
        double hi = std::min(static_cast<double>(k) / (static_cast<double>(n) - alpha), 1.0);
        if (!(gamma > 0.0 && gamma < hi))
            throw std::invalid_argument("ProblemSpec: need 0 < gamma < min(k/(n-alpha), 1)");
        if (!(rho > 0.0)) throw std::invalid_argument("ProblemSpec: need rho > 0");
        if (k < 1 || n < 1 || m < 2) throw std::invalid_argument("ProblemSpec: bad grid parameters");
        if (endpoint && k != 1)
            throw std::invalid_argument("ProblemSpec: endpoint constraints only apply to curves (k=1)");
        if (endpoint && static_cast<int>(endpoint->size()) != n)
            throw std::invalid_argument("ProblemSpec: endpoint dimension mismatch");
        if (objective != ObjectiveKind::SelfInteraction) {
            if (medium.count() == 0)
                throw std::invalid_argument("ProblemSpec: interaction objectives need a medium");
            if (medium.n != n) throw std::invalid_argument("ProblemSpec: medium dimension mismatch");
        }
        if (objective == ObjectiveKind::PPotential && !(p_power >= 1.0))
            throw std::invalid_argument("ProblemSpec: p_power must be >= 1");
        if (potential_cap && potential_cap->eval_points.empty())
            throw std::invalid_argument("ProblemSpec: potential cap needs evaluation points");
    }
};

struct ConstraintReport {
    double holder_seminorm = 0.0;
    double potential_sup = std::numeric_limits<double>::quiet_NaN();  // NaN when no cap
    double endpoint_error = 0.0;
    double origin_error = 0.0;
};

struct TracePoint {
    int iteration = 0;
    double objective = 0.0;
    double max_violation = 0.0;
};

struct MinimizerResult {
    SampledField field;
    double objective_value = 0.0;
    ConstraintReport constraint_report;
    std::vector<TracePoint> trace;
    std::uint64_t seed = 0;
};

struct AnnealSchedule {
    int restarts = 0;
    double sigma0 = 0.05;  // perturbation amplitude in units of rho
    double decay = 0.6;
};

struct MinimizeOptions {
    int max_iters = 200;
    double step0 = 0.0;  // 0 = auto: 0.1 * rho * m^-gamma
    double backtrack_factor = 0.5;
    int max_backtracks = 25;
    int stall_limit = 3;
    AnnealSchedule anneal;
    std::uint64_t seed = 0;
    int workers = 1;
    int project_max_sweeps = 200;
};

// ---------------------------------------------------------------------------
// Hoelder-constraint pair sets
// ---------------------------------------------------------------------------

/// Constraint pairs: all pairs for k = 1; for k >= 2 all pairs within grid
/// Chebyshev distance 8 plus a seeded long-range sample.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> holder_pairs(int k, int m,
                                                                         std::uint64_t seed) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::size_t g = 1;
    for (int i = 0; i < k; ++i) g *= static_cast<std::size_t>(m);
    if (k == 1) {
        pairs.reserve(g * (g - 1) / 2);
        for (std::uint32_t a = 0; a < g; ++a)
            for (std::uint32_t b = a + 1; b < g; ++b) pairs.emplace_back(a, b);
        return pairs;
    }
    std::vector<int> idx(static_cast<std::size_t>(k)), jdx(static_cast<std::size_t>(k));
    auto unflatten = [&](std::size_t flat, std::vector<int>& out) {
        for (int d = k - 1; d >= 0; --d) {
            out[static_cast<std::size_t>(d)] = static_cast<int>(flat % static_cast<std::size_t>(m));
            flat /= static_cast<std::size_t>(m);
        }
    };
    for (std::size_t a = 0; a < g; ++a) {
        unflatten(a, idx);
        for (std::size_t b = a + 1; b < g; ++b) {
            unflatten(b, jdx);
            int cheb = 0;
            for (int d = 0; d < k; ++d)
                cheb = std::max(cheb, std::abs(idx[static_cast<std::size_t>(d)] - jdx[static_cast<std::size_t>(d)]));
            if (cheb <= 8) pairs.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
        }
    }
    RngStream rng(seed, 0x9a17);
    for (std::size_t c = 0; c < 4 * g; ++c) {
        std::uint32_t a = static_cast<std::uint32_t>(rng.below(g));
        std::uint32_t b = static_cast<std::uint32_t>(rng.below(g));
        if (a == b) continue;
        pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    return pairs;
}

/// Cyclic pairwise contraction onto the discrete Hoelder ball: every
/// violated pair moves toward its midpoint just enough to satisfy
/// |X(t)-X(s)| <= rho |t-s|^gamma; pinned nodes never move, their partners
/// absorb the full correction. Sweeps repeat until no violation remains.
inline SampledField project_holder_on(const SampledField& field, double gamma, double rho,
                                      std::span<const std::pair<std::uint32_t, std::uint32_t>> pairs,
                                      std::span<const std::size_t> pinned, int max_sweeps = 200) {
    field.validate();
    SampledField out = field;
    const int n = out.n;
    std::vector<bool> is_pinned(out.grid_size(), false);
    for (std::size_t p : pinned) is_pinned[p] = true;
    // per-pair caps rho * |t_a - t_b|^gamma
    std::vector<double> cap(pairs.size());
    std::vector<double> ta(static_cast<std::size_t>(out.k)), tb(static_cast<std::size_t>(out.k));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        out.parameter(pairs[p].first, ta);
        out.parameter(pairs[p].second, tb);
        cap[p] = rho * std::pow(dist(ta, tb), gamma);
    }
    const double slack = 1e-12;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto va = out.value(pairs[p].first);
            auto vb = out.value(pairs[p].second);
            double d = dist(va, vb);
            if (d <= cap[p] * (1.0 + slack)) continue;
            worst = std::max(worst, d / cap[p] - 1.0);
            double excess = d - cap[p];
            bool pa = is_pinned[pairs[p].first], pb = is_pinned[pairs[p].second];
            if (pa && pb) continue;  // both pinned: nothing movable (caps between pins must be feasible)
            double fa = pa ? 0.0 : (pb ? 1.0 : 0.5);
            double fb = pb ? 0.0 : (pa ? 1.0 : 0.5);
            for (int c = 0; c < n; ++c) {
                double u = (vb[static_cast<std::size_t>(c)] - va[static_cast<std::size_t>(c)]) / d;
                va[static_cast<std::size_t>(c)] += fa * excess * u;
                vb[static_cast<std::size_t>(c)] -= fb * excess * u;
            }
        }
        if (worst <= 1e-10) return out;
    }
    // measure the residual violation for the error message
    double residual = 0.0;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        double d = dist(out.value(pairs[p].first), out.value(pairs[p].second));
        residual = std::max(residual, d / cap[p] - 1.0);
    }
    throw feasibility_error("project_holder: no convergence after " + std::to_string(max_sweeps) +
                            " sweeps, max relative violation " + std::to_string(residual));
}

/// Projection with the pair set and pins implied by the field alone
/// (origin pinned; all pairs for k = 1).
inline SampledField project_holder(const SampledField& field, double gamma, double rho,
                                   int max_sweeps = 200) {
    auto pairs = holder_pairs(field.k, field.m, 0);
    std::vector<std::size_t> pinned{0};
    return project_holder_on(field, gamma, rho, pairs, pinned, max_sweeps);
}

// ---------------------------------------------------------------------------
// Objective and gradient
// ---------------------------------------------------------------------------

struct ObjectiveEval {
    double value = 0.0;
    std::vector<double> gradient;  // one entry per field value; zero at pinned nodes
    bool infinite = false;         // coincident-pair singularity hit
};

/// Objective value alone (no gradient); used by line searches.
inline double objective_value(const ProblemSpec& problem, const SampledField& field,
                              int workers = 1) {
    DiscreteMeasure occ = occupation_measure(field);
    switch (problem.objective) {
        case ObjectiveKind::SelfInteraction:
            return self_energy(occ, problem.alpha, DiagonalRule::Exclude, workers);
        case ObjectiveKind::MutualInteraction:
            return mutual_energy(occ, problem.medium, problem.alpha, workers);
        case ObjectiveKind::PPotential: {
            const std::size_t nb = problem.medium.count();
            std::vector<double> terms(nb);
            for (std::size_t b = 0; b < nb; ++b) {
                double U = riesz_potential(occ, problem.medium.atom(b), problem.alpha, workers);
                if (!std::isfinite(U)) return kInf;
                terms[b] = problem.medium.weights[b] * std::pow(U, problem.p_power);
            }
            return pairwise_sum(terms);
        }
    }
    return kInf;
}

/// Discrete energy and its exact gradient with respect to the free grid
/// values. An iterate with coincident sample pairs (or a sample on a medium
/// atom) evaluates to +inf with a zero gradient and the `infinite` flag set.
inline ObjectiveEval objective_and_gradient(const ProblemSpec& problem, const SampledField& field,
                                            int workers = 1) {
    problem.validate();
    field.validate();
    if (field.k != problem.k || field.n != problem.n || field.m != problem.m)
        throw std::invalid_argument("objective_and_gradient: field does not match problem dimensions");
    const std::size_t g = field.grid_size();
    const double w = 1.0 / static_cast<double>(g);
    const double expo = problem.alpha - static_cast<double>(problem.n);
    const int n = problem.n;
    ObjectiveEval out;
    out.gradient.assign(field.values.size(), 0.0);
    DiscreteMeasure occ = occupation_measure(field);

    auto add_grad = [&](std::size_t i, std::span<const double> from, double coeff) {
        // contribution coeff * grad_{X_i} k(X_i - from)
        auto xi = field.value(i);
        double d = dist(xi, from);
        double fac = coeff * expo * std::pow(d, expo - 2.0);
        for (int c = 0; c < n; ++c)
            out.gradient[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)] +=
                fac * (xi[static_cast<std::size_t>(c)] - from[static_cast<std::size_t>(c)]);
    };

    switch (problem.objective) {
        case ObjectiveKind::SelfInteraction: {
            out.value = self_energy(occ, problem.alpha, DiagonalRule::Exclude, workers);
            if (!std::isfinite(out.value)) break;
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j) {
                    if (i == j) continue;
                    add_grad(i, field.value(j), 2.0 * w * w);
                }
            break;
        }
        case ObjectiveKind::MutualInteraction: {
            out.value = mutual_energy(occ, problem.medium, problem.alpha, workers);
            if (!std::isfinite(out.value)) break;
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t b = 0; b < problem.medium.count(); ++b)
                    add_grad(i, problem.medium.atom(b), w * problem.medium.weights[b]);
            break;
        }
        case ObjectiveKind::PPotential: {
            const std::size_t nb = problem.medium.count();
            std::vector<double> U(nb, 0.0);
            bool hit = false;
            for (std::size_t b = 0; b < nb; ++b) {
                U[b] = riesz_potential(occ, problem.medium.atom(b), problem.alpha, workers);
                if (!std::isfinite(U[b])) hit = true;
            }
            if (hit) {
                out.value = kInf;
                break;
            }
            std::vector<double> terms(nb);
            for (std::size_t b = 0; b < nb; ++b)
                terms[b] = problem.medium.weights[b] * std::pow(U[b], problem.p_power);
            out.value = pairwise_sum(terms);
            for (std::size_t b = 0; b < nb; ++b) {
                double coeff = problem.medium.weights[b] * problem.p_power *
                               std::pow(U[b], problem.p_power - 1.0) * w;
                for (std::size_t i = 0; i < g; ++i) add_grad(i, problem.medium.atom(b), coeff);
            }
            break;
        }
    }
    if (!std::isfinite(out.value)) {
        out.value = kInf;
        out.infinite = true;
        std::fill(out.gradient.begin(), out.gradient.end(), 0.0);
        return out;
    }
    // pinned nodes are not free coordinates
    for (int c = 0; c < n; ++c) out.gradient[static_cast<std::size_t>(c)] = 0.0;
    if (problem.endpoint)
        for (int c = 0; c < n; ++c)
            out.gradient[(g - 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)] = 0.0;
    return out;
}

inline ConstraintReport check_constraints(const ProblemSpec& problem, const SampledField& field,
                                          int workers = 1) {
    problem.validate();
    field.validate();
    ConstraintReport rep;
    auto pairs = holder_pairs(problem.k, problem.m, problem.seed);
    double best = 0.0;
    std::vector<double> ta(static_cast<std::size_t>(field.k)), tb(static_cast<std::size_t>(field.k));
    for (const auto& pr : pairs) {
        field.parameter(pr.first, ta);
        field.parameter(pr.second, tb);
        double dt = dist(ta, tb);
        best = std::max(best, dist(field.value(pr.first), field.value(pr.second)) /
                                  std::pow(dt, problem.gamma));
    }
    rep.holder_seminorm = best;
    rep.origin_error = norm(field.value(0));
    if (problem.endpoint) {
        auto last = field.value(field.grid_size() - 1);
        double e = 0.0;
        for (int c = 0; c < problem.n; ++c)
            e += sqr(last[static_cast<std::size_t>(c)] - (*problem.endpoint)[static_cast<std::size_t>(c)]);
        rep.endpoint_error = std::sqrt(e);
    }
    if (problem.potential_cap) {
        DiscreteMeasure occ = occupation_measure(field);
        rep.potential_sup =
            sup_potential(occ, problem.potential_cap->eval_points, problem.alpha, workers);
    }
    return rep;
}

inline bool is_feasible(const ProblemSpec& problem, const ConstraintReport& rep) {
    if (rep.holder_seminorm > problem.rho * (1.0 + 1e-9)) return false;
    if (rep.origin_error != 0.0) return false;
    if (problem.endpoint && rep.endpoint_error != 0.0) return false;
    if (problem.potential_cap && !(rep.potential_sup < problem.potential_cap->M)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Projected gradient descent with annealed restarts
// ---------------------------------------------------------------------------

/// Minimize the problem objective over the discrete Hoelder ball by projected
/// gradient descent (Armijo backtracking) with optional annealed restarts.
/// The returned iterate is the best one satisfying all hard constraints; the
/// potential cap enters the search as a quadratic penalty ramp but eligibility
/// is exact feasibility. Throws feasibility_error when no feasible iterate is
/// found (reporting the least-violating potential seen).
inline MinimizerResult minimize(const ProblemSpec& problem, const SampledField& init,
                                const MinimizeOptions& options = {}) {
    problem.validate();
    init.validate();
    const std::size_t g = init.grid_size();
    const int n = problem.n;
    auto pairs = holder_pairs(problem.k, problem.m, problem.seed);
    std::vector<std::size_t> pinned{0};
    if (problem.endpoint) pinned.push_back(g - 1);

    auto constraints = [&](const SampledField& f) { return check_constraints(problem, f, options.workers); };

    ConstraintReport init_rep = constraints(init);
    if (!is_feasible(problem, init_rep))
        throw feasibility_error(
            "minimize: init violates the hard constraints (run it through feasible_init first)");

    double penalty_weight = 1.0;
    auto penalized = [&](const SampledField& f, double* raw) -> double {
        double value = objective_value(problem, f, options.workers);
        if (raw) *raw = value;
        double pen = 0.0;
        if (problem.potential_cap) {
            DiscreteMeasure occ = occupation_measure(f);
            double sup = sup_potential(occ, problem.potential_cap->eval_points, problem.alpha,
                                       options.workers);
            double over = sup - 0.95 * problem.potential_cap->M;
            if (over > 0.0 && std::isfinite(sup)) pen = penalty_weight * over * over;
            if (!std::isfinite(sup)) return kInf;
        }
        return value + pen;
    };

    MinimizerResult result;
    result.seed = options.seed;
    result.field = init;
    result.objective_value = kInf;
    double least_violation = kInf;

    result.objective_value = objective_value(problem, init, options.workers);
    result.constraint_report = init_rep;

    const double auto_step = 0.1 * problem.rho * std::pow(static_cast<double>(problem.m), -problem.gamma);
    const double step0 = options.step0 > 0.0 ? options.step0 : auto_step;

    RngStream perturb_rng(options.seed, 0xa11e);
    SampledField x = init;
    int trace_iter = 0;

    for (int restart = 0; restart <= options.anneal.restarts; ++restart) {
        if (restart > 0) {
            double sigma = options.anneal.sigma0 * std::pow(options.anneal.decay, restart - 1) *
                           problem.rho;
            x = result.field;  // perturb the best-so-far
            for (std::size_t i = 0; i < g; ++i) {
                bool pin = (i == 0) || (problem.endpoint && i == g - 1);
                if (pin) continue;
                auto v = x.value(i);
                for (int c = 0; c < n; ++c) v[static_cast<std::size_t>(c)] += sigma * perturb_rng.normal();
            }
            x = project_holder_on(x, problem.gamma, problem.rho, pairs, pinned,
                                  options.project_max_sweeps);
        }
        double fx = penalized(x, nullptr);
        if (!std::isfinite(fx)) continue;
        double step = step0;
        int stall = 0;
        for (int iter = 0; iter < options.max_iters; ++iter) {
            ObjectiveEval ev = objective_and_gradient(problem, x, options.workers);
            if (ev.infinite) break;
            // penalty gradient for the cap (numeric contribution folded into ev
            // would need d sup/d x; the penalty only steers through re-evaluation)
            double gnorm2 = 0.0;
            for (double v : ev.gradient) gnorm2 += v * v;
            if (gnorm2 == 0.0) break;
            bool accepted = false;
            double s = step;
            for (int bt = 0; bt < options.max_backtracks; ++bt) {
                SampledField cand = x;
                for (std::size_t i = 0; i < cand.values.size(); ++i)
                    cand.values[i] -= s * ev.gradient[i];
                cand = project_holder_on(cand, problem.gamma, problem.rho, pairs, pinned,
                                         options.project_max_sweeps);
                double raw = 0.0;
                double fc = penalized(cand, &raw);
                if (std::isfinite(fc) && fc < fx - 1e-4 * s * gnorm2) {
                    x = cand;
                    fx = fc;
                    accepted = true;
                    // best-iterate filter: exact feasibility only
                    ConstraintReport rep = constraints(cand);
                    double viol = std::max(0.0, rep.holder_seminorm / problem.rho - 1.0);
                    if (problem.potential_cap) {
                        if (std::isfinite(rep.potential_sup))
                            viol = std::max(viol, std::max(0.0, rep.potential_sup / problem.potential_cap->M - 1.0));
                        else
                            viol = kInf;
                        if (!(rep.potential_sup < problem.potential_cap->M)) {
                            penalty_weight = std::min(penalty_weight * 2.0, 1e8);
                            least_violation = std::min(least_violation, rep.potential_sup);
                        }
                    }
                    result.trace.push_back({trace_iter, raw, viol});
                    if (is_feasible(problem, rep) && raw < result.objective_value) {
                        result.field = cand;
                        result.objective_value = raw;
                        result.constraint_report = rep;
                    }
                    step = std::min(s * 1.6, 16.0 * step0);
                    break;
                }
                s *= options.backtrack_factor;
            }
            ++trace_iter;
            if (!accepted) {
                if (++stall >= options.stall_limit) break;
                step = std::max(step * options.backtrack_factor, 1e-14);
            } else {
                stall = 0;
            }
        }
    }
    if (!std::isfinite(result.objective_value))
        throw feasibility_error(
            "minimize: no feasible iterate found (cap too tight); least-violating potential sup = " +
            std::to_string(least_violation));
    return result;
}

/// feasible_init for a full ProblemSpec: the scaled fBm/bridge witness.
inline SampledField feasible_init(const ProblemSpec& problem, std::uint64_t seed) {
    problem.validate();
    const std::vector<double>* ep = problem.endpoint ? &*problem.endpoint : nullptr;
    return feasible_init(problem.alpha, problem.gamma, problem.rho, problem.k, problem.n, problem.m,
                         seed, ep);
}

// ---------------------------------------------------------------------------
// Generic objective hook (used by the composition product functional)
// ---------------------------------------------------------------------------

struct CustomObjective {
    std::function<double(const SampledField&)> value;
    /// optional feasibility statistic with a cap (stat < cap required of the
    /// returned iterate), e.g. a nonlinear energy
    std::function<double(const SampledField&)> feasibility_stat;
    double feasibility_cap = kInf;
    double fd_step = 1e-6;  // central-difference step for the gradient
};

/// Projected descent over the Hoelder ball for an arbitrary objective with a
/// finite-difference gradient. Same feasibility-filter contract as minimize().
inline MinimizerResult minimize_custom(const CustomObjective& objective, double gamma, double rho,
                                       const SampledField& init, const MinimizeOptions& options = {}) {
    init.validate();
    auto pairs = holder_pairs(init.k, init.m, options.seed);
    std::vector<std::size_t> pinned{0};

    auto feasible = [&](const SampledField& f, double* stat) {
        double sem = holder_seminorm(f, gamma, init.k == 1 ? PairPolicy::all()
                                                           : PairPolicy::sampled(1 << 16, options.seed));
        if (sem > rho * (1.0 + 1e-9)) return false;
        if (objective.feasibility_stat) {
            double s = objective.feasibility_stat(f);
            if (stat) *stat = s;
            if (!(s < objective.feasibility_cap)) return false;
        }
        return true;
    };

    MinimizerResult result;
    result.seed = options.seed;
    result.field = init;
    if (!feasible(init, nullptr))
        throw feasibility_error("minimize_custom: init violates the hard constraints");
    result.objective_value = objective.value(init);
    result.constraint_report.holder_seminorm = holder_seminorm(init, gamma);

    const double step0 =
        options.step0 > 0.0 ? options.step0 : 0.1 * rho * std::pow(static_cast<double>(init.m), -gamma);
    SampledField x = init;
    double fx = result.objective_value;
    double step = step0;
    int stall = 0;
    for (int iter = 0; iter < options.max_iters; ++iter) {
        // central differences on the free coordinates
        std::vector<double> grad(x.values.size(), 0.0);
        SampledField probe = x;
        for (std::size_t i = 0; i < x.values.size(); ++i) {
            if (i / static_cast<std::size_t>(x.n) == 0) continue;  // origin pinned
            double keep = probe.values[i];
            probe.values[i] = keep + objective.fd_step;
            double fp = objective.value(probe);
            probe.values[i] = keep - objective.fd_step;
            double fm = objective.value(probe);
            probe.values[i] = keep;
            grad[i] = (fp - fm) / (2.0 * objective.fd_step);
        }
        double gnorm2 = 0.0;
        for (double v : grad) gnorm2 += v * v;
        if (gnorm2 == 0.0) break;
        bool accepted = false;
        double s = step;
        for (int bt = 0; bt < options.max_backtracks; ++bt) {
            SampledField cand = x;
            for (std::size_t i = 0; i < cand.values.size(); ++i) cand.values[i] -= s * grad[i];
            cand = project_holder_on(cand, gamma, rho, pairs, pinned, options.project_max_sweeps);
            double fc = objective.value(cand);
            if (std::isfinite(fc) && fc < fx - 1e-4 * s * gnorm2) {
                x = cand;
                fx = fc;
                accepted = true;
                result.trace.push_back({iter, fc, 0.0});
                if (feasible(cand, nullptr) && fc < result.objective_value) {
                    result.field = cand;
                    result.objective_value = fc;
                    result.constraint_report.holder_seminorm = holder_seminorm(cand, gamma);
                }
                step = std::min(s * 1.6, 16.0 * step0);
                break;
            }
            s *= options.backtrack_factor;
        }
        if (!accepted && ++stall >= options.stall_limit) break;
        if (!accepted) step = std::max(step * options.backtrack_factor, 1e-14);
    }
    return result;
}

}  // namespace frz
