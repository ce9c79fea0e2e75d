#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "frz/common.hpp"
#include "frz/measures.hpp"

namespace frz {

/// Hurst index, parameter/target dimensions, grid resolution and seed.
struct FieldSpec {
    double H = 0.5;
    int k = 1;
    int n = 1;
    int m = 2;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(H > 0.0 && H < 1.0)) throw std::invalid_argument("FieldSpec: need 0 < H < 1");
        if (k < 1 || n < 1 || m < 2) throw std::invalid_argument("FieldSpec: need k,n >= 1, m >= 2");
    }
};

enum class CovKind { FBF, Bridge };

/// Covariance model of one scalar component. FBF: Cov(s,t) =
/// (|s|^2H + |t|^2H - |t-s|^2H)/2 on [0,1]^k. Bridge (k=1): the fractional
/// Brownian bridge covariance Cov(s,t) - psi(s) psi(t) with psi(t) =
/// (t^2H + 1 - (1-t)^2H)/2.
struct CovModel {
    CovKind kind = CovKind::FBF;
    double H = 0.5;
    int k = 1;

    double operator()(std::span<const double> s, std::span<const double> t) const {
        double ns = norm(s), nt = norm(t), nd = dist(s, t);
        double base = 0.5 * (std::pow(ns, 2 * H) + std::pow(nt, 2 * H) - std::pow(nd, 2 * H));
        if (kind == CovKind::FBF) return base;
        if (k != 1) throw std::invalid_argument("CovModel: bridge model requires k = 1");
        auto psi = [&](double u) {
            return 0.5 * (std::pow(u, 2 * H) + 1.0 - std::pow(1.0 - u, 2 * H));
        };
        return base - psi(s[0]) * psi(t[0]);
    }

    /// Variance of one scalar component of X(t)-X(s).
    double increment_variance(std::span<const double> s, std::span<const double> t) const {
        double ds = dist(s, t);
        if (kind == CovKind::FBF) return std::pow(ds, 2 * H);
        auto psi = [&](double u) {
            return 0.5 * (std::pow(u, 2 * H) + 1.0 - std::pow(1.0 - u, 2 * H));
        };
        return std::pow(ds, 2 * H) - sqr(psi(t[0]) - psi(s[0]));
    }
};

/// Variance of increments of the fractional Brownian bridge,
///   (t-s)^2H - ((t^2H - s^2H)/2 + ((1-s)^2H - (1-t)^2H)/2)^2,  0 <= s < t <= 1.
inline double bridge_increment_variance(double s, double t, double H) {
    if (!(s >= 0.0 && s < t && t <= 1.0))
        throw std::invalid_argument("bridge_increment_variance: need 0 <= s < t <= 1");
    if (!(H > 0.0 && H < 1.0)) throw std::invalid_argument("bridge_increment_variance: need 0 < H < 1");
    double psidiff = 0.5 * (std::pow(t, 2 * H) - std::pow(s, 2 * H)) +
                     0.5 * (std::pow(1.0 - s, 2 * H) - std::pow(1.0 - t, 2 * H));
    return std::pow(t - s, 2 * H) - sqr(psidiff);
}

namespace detail {

/// Autocovariance of unit-spacing fractional Gaussian noise.
inline double fgn_cov(std::int64_t lag, double H) {
    double a = static_cast<double>(std::abs(lag));
    return 0.5 * (std::pow(a + 1.0, 2 * H) - 2.0 * std::pow(a, 2 * H) +
                  std::pow(std::abs(a - 1.0), 2 * H));
}

inline bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

/// Eigenvalues of the circulant embedding of the fGn covariance; empty if the
/// embedding is not nonnegative-definite beyond round-off.
inline std::vector<double> circulant_eigs(int N, double H) {
    const int M = 2 * N;
    Eigen::VectorXcd c(M);
    for (int i = 0; i <= N; ++i) c[i] = fgn_cov(i, H);
    for (int i = N + 1; i < M; ++i) c[i] = c[M - i];
    Eigen::FFT<double> fft;
    Eigen::VectorXcd lam(M);
    fft.fwd(lam, c);
    std::vector<double> out(static_cast<std::size_t>(M));
    double maxlam = 0.0;
    for (int i = 0; i < M; ++i) maxlam = std::max(maxlam, lam[i].real());
    for (int i = 0; i < M; ++i) {
        double v = lam[i].real();
        if (v < -1e-9 * maxlam) return {};
        out[static_cast<std::size_t>(i)] = std::max(0.0, v);
    }
    return out;
}

/// One fBm path on m grid points from precomputed circulant eigenvalues.
inline std::vector<double> fbm_path_circulant(const std::vector<double>& lam, int m, double H,
                                              RngStream& rng) {
    const int N = m - 1, M = 2 * N;
    Eigen::VectorXcd y(M);
    for (int i = 0; i < M; ++i) {
        double zr = rng.normal(), zi = rng.normal();
        double amp = std::sqrt(lam[static_cast<std::size_t>(i)] / static_cast<double>(M));
        y[i] = std::complex<double>(amp * zr, amp * zi);
    }
    Eigen::FFT<double> fft;
    Eigen::VectorXcd w(M);
    fft.fwd(w, y);
    std::vector<double> path(static_cast<std::size_t>(m), 0.0);
    const double scale = std::pow(1.0 / static_cast<double>(N), H);
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
        acc += w[i].real();
        path[static_cast<std::size_t>(i + 1)] = acc * scale;
    }
    return path;
}

/// Square root factor of the grid covariance via symmetric eigendecomposition
/// (the covariance is only semidefinite because X(0)=0 is deterministic).
inline Eigen::MatrixXd covariance_sqrt(const CovModel& model, const std::vector<double>& params,
                                       int k, int npts) {
    Eigen::MatrixXd C(npts, npts);
    for (int i = 0; i < npts; ++i) {
        std::span<const double> ti{params.data() + static_cast<std::size_t>(i) * k,
                                   static_cast<std::size_t>(k)};
        for (int j = 0; j <= i; ++j) {
            std::span<const double> tj{params.data() + static_cast<std::size_t>(j) * k,
                                       static_cast<std::size_t>(k)};
            double v = model(ti, tj);
            C(i, j) = v;
            C(j, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("covariance factorization failed: eigensolver did not converge");
    Eigen::VectorXd ev = es.eigenvalues();
    double maxev = ev.cwiseAbs().maxCoeff();
    for (int i = 0; i < npts; ++i) {
        if (ev[i] < -1e-8 * maxev)
            throw std::runtime_error(
                "covariance factorization failed: matrix numerically indefinite (min eigenvalue " +
                std::to_string(ev[i]) + ", max " + std::to_string(maxev) + ")");
        ev[i] = std::sqrt(std::max(0.0, ev[i]));
    }
    return es.eigenvectors() * ev.asDiagonal();
}

}  // namespace detail

/// Which sampling backend produced a field.
enum class SamplerBackend { CirculantEmbedding, CovarianceSqrt };

/// One fractional Brownian motion path (k=1, n=1) with the exact Gaussian law
/// of the grid restriction. Circulant embedding of the increments is used when
/// the embedding is nonnegative-definite, dense covariance factorization
/// otherwise; `backend_out` reports which path was taken.
inline SampledField sample_fbm_1d(const FieldSpec& spec, SamplerBackend* backend_out = nullptr) {
    spec.validate();
    if (spec.k != 1 || spec.n != 1)
        throw std::invalid_argument("sample_fbm_1d: requires k = 1 and n = 1");
    if (!detail::is_pow2(spec.m - 1))
        throw std::invalid_argument("sample_fbm_1d: m must be a power of two plus 1");
    SampledField f;
    f.k = 1;
    f.n = 1;
    f.m = spec.m;
    RngStream rng(spec.seed, 0);
    std::vector<double> lam = detail::circulant_eigs(spec.m - 1, spec.H);
    if (!lam.empty()) {
        f.values = detail::fbm_path_circulant(lam, spec.m, spec.H, rng);
        if (backend_out) *backend_out = SamplerBackend::CirculantEmbedding;
        return f;
    }
    // fallback: dense square root of the path covariance
    std::vector<double> params(static_cast<std::size_t>(spec.m));
    for (int i = 0; i < spec.m; ++i)
        params[static_cast<std::size_t>(i)] = static_cast<double>(i) / (spec.m - 1);
    CovModel model{CovKind::FBF, spec.H, 1};
    Eigen::MatrixXd L = detail::covariance_sqrt(model, params, 1, spec.m);
    Eigen::VectorXd z(spec.m);
    for (int i = 0; i < spec.m; ++i) z[i] = rng.normal();
    Eigen::VectorXd path = L * z;
    f.values.assign(path.data(), path.data() + spec.m);
    f.values[0] = 0.0;
    if (backend_out) *backend_out = SamplerBackend::CovarianceSqrt;
    return f;
}

/// Fractional Brownian (k,n)-field: n independent copies of the scalar field
/// with covariance (|s|^2H + |t|^2H - |t-s|^2H)/2, zero at the origin. Exact
/// law via dense covariance factorization (grid capped at 4096 points); k=1
/// grids with m-1 a power of two use circulant embedding instead.
inline SampledField sample_fbf(const FieldSpec& spec, SamplerBackend* backend_out = nullptr) {
    spec.validate();
    SampledField f;
    f.k = spec.k;
    f.n = spec.n;
    f.m = spec.m;
    const std::size_t g = f.grid_size();
    if (spec.k == 1 && detail::is_pow2(spec.m - 1)) {
        std::vector<double> lam = detail::circulant_eigs(spec.m - 1, spec.H);
        if (!lam.empty()) {
            f.values.assign(g * static_cast<std::size_t>(spec.n), 0.0);
            for (int comp = 0; comp < spec.n; ++comp) {
                RngStream rng(spec.seed, static_cast<std::uint64_t>(comp));
                std::vector<double> path = detail::fbm_path_circulant(lam, spec.m, spec.H, rng);
                for (std::size_t i = 0; i < g; ++i)
                    f.values[i * static_cast<std::size_t>(spec.n) + static_cast<std::size_t>(comp)] =
                        path[i];
            }
            if (backend_out) *backend_out = SamplerBackend::CirculantEmbedding;
            return f;
        }
    }
    if (g > 4096)
        throw std::invalid_argument(
            "sample_fbf: dense factorization limited to grids of at most 4096 points");
    std::vector<double> params(g * static_cast<std::size_t>(spec.k));
    for (std::size_t flat = 0; flat < g; ++flat) {
        std::size_t rem = flat;
        for (int d = spec.k - 1; d >= 0; --d) {
            params[flat * static_cast<std::size_t>(spec.k) + static_cast<std::size_t>(d)] =
                static_cast<double>(rem % static_cast<std::size_t>(spec.m)) /
                static_cast<double>(spec.m - 1);
            rem /= static_cast<std::size_t>(spec.m);
        }
    }
    CovModel model{CovKind::FBF, spec.H, spec.k};
    Eigen::MatrixXd L =
        detail::covariance_sqrt(model, params, spec.k, static_cast<int>(g));
    f.values.assign(g * static_cast<std::size_t>(spec.n), 0.0);
    for (int comp = 0; comp < spec.n; ++comp) {
        RngStream rng(spec.seed, static_cast<std::uint64_t>(comp));
        Eigen::VectorXd z(static_cast<int>(g));
        for (std::size_t i = 0; i < g; ++i) z[static_cast<int>(i)] = rng.normal();
        Eigen::VectorXd comp_vals = L * z;
        for (std::size_t i = 0; i < g; ++i)
            f.values[i * static_cast<std::size_t>(spec.n) + static_cast<std::size_t>(comp)] =
                comp_vals[static_cast<int>(i)];
    }
    // X(0)=0 holds in law; enforce it exactly against round-off
    for (int d = 0; d < spec.n; ++d) f.values[static_cast<std::size_t>(d)] = 0.0;
    if (backend_out) *backend_out = SamplerBackend::CovarianceSqrt;
    return f;
}

/// Componentwise bridge transform b(t) - (t^2H + 1 - (1-t)^2H)/2 * b(1);
/// the output vanishes exactly at t=0 and t=1.
inline SampledField make_bridge(const SampledField& path, double H) {
    path.validate();
    if (path.k != 1) throw std::invalid_argument("make_bridge: requires k = 1");
    if (!(H > 0.0 && H < 1.0)) throw std::invalid_argument("make_bridge: need 0 < H < 1");
    SampledField out = path;
    const std::size_t m = static_cast<std::size_t>(path.m);
    std::span<const double> end = path.value(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(path.m - 1);
        double psi = 0.5 * (std::pow(t, 2 * H) + 1.0 - std::pow(1.0 - t, 2 * H));
        auto v = out.value(i);
        for (int d = 0; d < path.n; ++d) v[static_cast<std::size_t>(d)] -= psi * end[static_cast<std::size_t>(d)];
    }
    return out;
}

/// Var( sum_j <u_j, sigma_j^{-1} (X(t_j) - X(t_{j-1}))> ) assembled exactly
/// from the covariance model (components independent, so increments have
/// scalar covariances c_ij * I_n). t_0 = 0 is prepended.
inline double lnd_form_variance(const CovModel& cov, std::span<const double> t_points,
                                std::span<const std::vector<double>> u_vectors) {
    if (t_points.size() != u_vectors.size())
        throw std::invalid_argument("lnd_form_variance: need one u vector per t point");
    const std::size_t ell = t_points.size();
    if (ell == 0) return 0.0;
    double prev = 0.0;
    for (double t : t_points) {
        if (!(t > prev))
            throw std::invalid_argument(
                "lnd_form_variance: t points must be strictly increasing and positive (t_0 = 0 is prepended)");
        prev = t;
    }
    std::vector<double> grid(ell + 1, 0.0);
    for (std::size_t j = 0; j < ell; ++j) grid[j + 1] = t_points[j];
    auto scalar_cov = [&](double a, double b) {
        return cov(std::span<const double>(&a, 1), std::span<const double>(&b, 1));
    };
    // increment covariances c_ij = Cov(X(t_i)-X(t_{i-1}), X(t_j)-X(t_{j-1})) per component
    Eigen::MatrixXd c(static_cast<int>(ell), static_cast<int>(ell));
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double v = scalar_cov(grid[i + 1], grid[j + 1]) - scalar_cov(grid[i + 1], grid[j]) -
                       scalar_cov(grid[i], grid[j + 1]) + scalar_cov(grid[i], grid[j]);
            c(static_cast<int>(i), static_cast<int>(j)) = v;
            c(static_cast<int>(j), static_cast<int>(i)) = v;
        }
    for (std::size_t j = 0; j < ell; ++j)
        if (!(c(static_cast<int>(j), static_cast<int>(j)) > 0.0))
            throw std::invalid_argument("lnd_form_variance: singular increment covariance at index " +
                                        std::to_string(j));
    double var = 0.0;
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = 0; j < ell; ++j) {
            double dot = 0.0;
            for (std::size_t d = 0; d < u_vectors[i].size(); ++d) dot += u_vectors[i][d] * u_vectors[j][d];
            var += dot * c(static_cast<int>(i), static_cast<int>(j)) /
                   std::sqrt(c(static_cast<int>(i), static_cast<int>(i)) *
                             c(static_cast<int>(j), static_cast<int>(j)));
        }
    return var;
}

}  // namespace frz
