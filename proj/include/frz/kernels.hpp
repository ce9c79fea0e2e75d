#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "frz/common.hpp"
#include "frz/quadrature.hpp"

namespace frz {

enum class KernelFamily { Riesz, Bessel };

/// Kernel family, order alpha and ambient dimension n. Riesz requires
/// 0 < alpha < n, Bessel requires alpha > 0.
struct KernelSpec {
    KernelFamily family = KernelFamily::Riesz;
    double alpha = 1.0;
    int n = 1;

    KernelSpec(KernelFamily fam, double a, int dim) : family(fam), alpha(a), n(dim) {
        if (dim < 1) throw std::invalid_argument("KernelSpec: ambient dimension must be >= 1");
        if (fam == KernelFamily::Riesz && !(a > 0.0 && a < static_cast<double>(dim)))
            throw std::invalid_argument("KernelSpec: Riesz order must satisfy 0 < alpha < n");
        if (fam == KernelFamily::Bessel && !(a > 0.0))
            throw std::invalid_argument("KernelSpec: Bessel order must be positive");
    }
};

/// k_alpha(r) = r^(alpha-n) with no multiplicative normalization; +inf at r=0.
inline double riesz_kernel_radial(double alpha, int n, double r) {
    if (r == 0.0) return kInf;
    return std::pow(r, alpha - static_cast<double>(n));
}

inline double riesz_kernel(const KernelSpec& spec, std::span<const double> x) {
    if (spec.family != KernelFamily::Riesz)
        throw std::invalid_argument("riesz_kernel: spec is not a Riesz kernel");
    if (static_cast<int>(x.size()) != spec.n)
        throw std::invalid_argument("riesz_kernel: point dimension mismatch");
    return riesz_kernel_radial(spec.alpha, spec.n, norm(x));
}

/// Bessel kernel g_alpha with Fourier transform (1+|xi|^2)^(-alpha/2),
/// evaluated through the subordination integral
///   g_alpha(x) = (4*pi)^(-n/2)/Gamma(alpha/2) *
///                 int_0^inf s^((alpha-n)/2 - 1) exp(-s - |x|^2/(4s)) ds.
/// Closed forms in 1D/3D at alpha=2 are e^{-r}/2 and e^{-r}/(4*pi*r).
inline double bessel_kernel_radial(double alpha, int n, double r) {
    const double nu = 0.5 * (alpha - static_cast<double>(n));
    const double q = 0.25 * r * r;
    const double front = std::exp(-0.5 * n * std::log(4.0 * M_PI) - std::lgamma(0.5 * alpha));
    if (r == 0.0) {
        if (alpha <= static_cast<double>(n)) return kInf;
        return front * std::tgamma(nu);
    }
    // substitute s = e^u; integrand decays double-exponentially in u
    auto f = [&](double u) { return std::exp(nu * u - std::exp(u) - q * std::exp(-u)); };
    double lo = -40.0, hi = 9.0 + 4.0 * std::abs(nu);
    if (q > 0.0) lo = std::min(lo, 0.5 * std::log(q) - 45.0);
    QuadResult res = integrate(f, lo, hi, 1e-12);
    return front * res.value;
}

inline double bessel_kernel(const KernelSpec& spec, std::span<const double> x) {
    if (spec.family != KernelFamily::Bessel)
        throw std::invalid_argument("bessel_kernel: spec is not a Bessel kernel");
    if (static_cast<int>(x.size()) != spec.n)
        throw std::invalid_argument("bessel_kernel: point dimension mismatch");
    return bessel_kernel_radial(spec.alpha, spec.n, norm(x));
}

/// Empirical comparison constant: max over the grid radii of k_alpha/g_alpha.
/// The bound k_alpha <= c_R * g_alpha then holds at every grid radius by
/// construction; this is a grid estimate, not a proven constant.
inline double kernel_comparison_constant(double alpha, int n, double R,
                                         std::span<const double> radii) {
    if (!(alpha > 0.0 && alpha < static_cast<double>(n)))
        throw std::invalid_argument("kernel_comparison_constant: need 0 < alpha < n");
    if (!(R > 0.0)) throw std::invalid_argument("kernel_comparison_constant: need R > 0");
    if (radii.empty()) throw std::invalid_argument("kernel_comparison_constant: empty radius grid");
    double best = 0.0;
    for (double r : radii) {
        if (!(r > 0.0 && r < R))
            throw std::invalid_argument("kernel_comparison_constant: radius outside (0,R)");
        best = std::max(best, riesz_kernel_radial(alpha, n, r) / bessel_kernel_radial(alpha, n, r));
    }
    return best;
}

}  // namespace frz
