#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace frz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when a hard constraint or feasibility condition fails (CLI exit code 2).
class feasibility_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline double sqr(double x) { return x * x; }

inline double dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += sqr(a[i] - b[i]);
    return std::sqrt(s);
}

inline double norm(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

/// Pairwise (cascade) summation over a fixed tree; the result depends only on
/// the element order, never on chunking or thread count.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t h = v.size() / 2;
    return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

/// Sum term(i) for i in [0,count) split into a fixed number of blocks, each
/// block pairwise-summed and blocks combined in index order. Threads only pick
/// up whole blocks, so the value is identical for every worker count.
template <class Term>
double block_sum(std::size_t count, Term term, int workers = 1) {
    if (count == 0) return 0.0;
    const std::size_t nblocks = std::min<std::size_t>(256, count);
    std::vector<double> partial(nblocks, 0.0);
    auto run_block = [&](std::size_t b) {
        std::size_t lo = count * b / nblocks, hi = count * (b + 1) / nblocks;
        std::vector<double> terms;
        terms.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) terms.push_back(term(i));
        partial[b] = pairwise_sum(terms);
    };
    workers = std::max(1, workers);
    if (workers == 1 || nblocks == 1) {
        for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        std::size_t stride = static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t b = static_cast<std::size_t>(w); b < nblocks; b += stride) run_block(b);
            });
        }
        for (auto& t : pool) t.join();
    }
    return pairwise_sum(partial);
}

// ---------------------------------------------------------------------------
// Deterministic RNG: independent streams derived from (seed, stream_index)
// via SplitMix64, normals via Box-Muller. Fully specified, so identical
// output on every platform and across worker counts.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index = 0) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        s = seed ^ (0x9e3779b97f4a7c15ULL + stream_index * 0xda942042e4dd58b5ULL);
        std::uint64_t b = splitmix64(s);
        state_ = a ^ (b + 0x632be59bd9b4e019ULL);
        if (state_ == 0) state_ = 0x4d595df4d0f33173ULL;
        // warm up
        for (int i = 0; i < 4; ++i) splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform on (0,1] (never exactly 0, safe for log()).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  private:
    std::uint64_t state_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace frz
