#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "frz/analysis.hpp"
#include "frz/fields.hpp"
#include "frz/witness.hpp"

using namespace frz;

namespace {

SampledField curve_1d(int m, double (*fx)(double)) {
    SampledField f;
    f.k = 1;
    f.n = 1;
    f.m = m;
    f.values.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) f.values[static_cast<std::size_t>(i)] = fx(static_cast<double>(i) / (m - 1));
    f.origin_pinned = f.values[0] == 0.0;
    return f;
}

}  // namespace

TEST_CASE("holder seminorm: lines, zero, fractional powers") {
    SampledField lin = curve_1d(257, [](double t) { return 3.0 * t; });
    CHECK(holder_seminorm(lin, 1.0) == Catch::Approx(3.0).epsilon(1e-12));

    SampledField zero = curve_1d(64, [](double) { return 0.0; });
    CHECK(holder_seminorm(zero, 0.5) == 0.0);

    // X(t) = t^0.6 at gamma = 0.6: sup ratio is 1, attained at s=0
    SampledField frac = curve_1d(1025, [](double t) { return std::pow(t, 0.6); });
    CHECK(holder_seminorm(frac, 0.6) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("holder seminorm: homogeneity and sampled-policy underestimate") {
    SampledField f = sample_fbf({0.6, 1, 2, 129, 5});
    double base = holder_seminorm(f, 0.5);
    SampledField scaled = f;
    for (double& v : scaled.values) v *= 4.0;
    CHECK(holder_seminorm(scaled, 0.5) == Catch::Approx(4.0 * base).epsilon(1e-13));

    double sampled = holder_seminorm(f, 0.5, PairPolicy::sampled(1 << 12, 3));
    CHECK(sampled <= base * (1.0 + 1e-13));
}

TEST_CASE("box dimension: segment, filled square, degenerate cloud") {
    // 4096 uniform points on a segment, dyadic scales
    std::vector<double> seg;
    for (int i = 0; i < 4096; ++i) {
        seg.push_back(static_cast<double>(i) / 4096);
        seg.push_back(0.25);
    }
    std::vector<double> scales;
    for (int j = 3; j <= 9; ++j) scales.push_back(std::pow(2.0, -j));
    BoxDimensionResult r1 = box_dimension(seg, 2, scales);
    CHECK(r1.estimate == Catch::Approx(1.0).margin(0.05));

    // 64 x 64 grid filling the unit square
    std::vector<double> sq;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            sq.push_back(i / 64.0);
            sq.push_back(j / 64.0);
        }
    std::vector<double> sq_scales;
    for (int j = 2; j <= 5; ++j) sq_scales.push_back(std::pow(2.0, -j));
    BoxDimensionResult r2 = box_dimension(sq, 2, sq_scales);
    CHECK(r2.estimate == Catch::Approx(2.0).margin(0.05));
    CHECK(r2.estimate <= 2.05);
    CHECK(r2.estimate >= 0.0);

    // degenerate cloud
    std::vector<double> pt{0.3, 0.3, 0.3, 0.3};
    BoxDimensionResult r3 = box_dimension(pt, 2, scales);
    CHECK(r3.degenerate);
    CHECK(r3.estimate == 0.0);

    CHECK_THROWS_AS(box_dimension(seg, 2, std::vector<double>{0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("oscillation moduli: line and zero field") {
    SampledField lin = curve_1d(1025, [](double t) { return t; });
    std::vector<double> hs{0.25, 0.125, 0.0625, 0.03125};
    ModuliReport rep = oscillation_moduli(lin, hs, 0.8, 1.2);
    double prev_upper = kInf;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& row = rep.rows[i];
        REQUIRE_FALSE(row.skipped);
        // X(t)=t: upper statistic equals h exactly (grid-aligned h)
        CHECK(row.upper == Catch::Approx(row.h).epsilon(1e-12));
        CHECK(row.upper_ratio == Catch::Approx(std::pow(row.h, 1.0 - 0.8)).epsilon(1e-10));
        // monotone nondecreasing in h (rows are descending in h here)
        CHECK(row.upper <= prev_upper + 1e-15);
        prev_upper = row.upper;
    }

    SampledField zero = curve_1d(129, [](double) { return 0.0; });
    ModuliReport zr = oscillation_moduli(zero, hs, 0.5, 0.5);
    for (const auto& row : zr.rows) CHECK(row.lower == 0.0);

    // h below grid resolution is skipped with a note
    SampledField coarse = curve_1d(9, [](double t) { return t; });
    ModuliReport cr = oscillation_moduli(coarse, std::vector<double>{0.01}, 0.5, 0.5);
    CHECK(cr.rows.at(0).skipped);
}

TEST_CASE("bounded-potential diagnostic: line is consistent, plateau is flagged") {
    // X(t) = (t, 0) in R^2, alpha = 1.5: potential sup finite, lower statistic ~ h
    SampledField line;
    line.k = 1;
    line.n = 2;
    line.m = 257;
    line.values.assign(514, 0.0);
    for (int i = 0; i < 257; ++i) line.values[2 * static_cast<std::size_t>(i)] = i / 256.0;
    BdpotReport rep = bdpot_diagnostic(line, 1.5, 2.5);
    CHECK(std::isfinite(rep.potential_sup));
    CHECK_FALSE(rep.flagged);
    for (const auto& row : rep.rows) CHECK(row.lower_stat > 0.0);

    // long constant plateau: lower statistic 0 at plateau scale -> flagged
    SampledField plat = line;
    for (int i = 64; i < 192; ++i) {
        plat.values[2 * static_cast<std::size_t>(i)] = 0.25;
        plat.values[2 * static_cast<std::size_t>(i) + 1] = 0.0;
    }
    BdpotReport prep = bdpot_diagnostic(plat, 1.5, 2.5);
    CHECK(prep.flagged);

    // hypothesis guard: kappa_minus must exceed 1/(n-alpha)
    CHECK_THROWS_AS(bdpot_diagnostic(line, 1.5, 1.5), std::invalid_argument);
}

TEST_CASE("densify_curve interpolates without changing endpoints") {
    SampledField f = sample_fbf({0.6, 1, 2, 65, 11});
    std::vector<double> dense = densify_curve(f, 8);
    CHECK(dense.size() == (static_cast<std::size_t>(64) * 8 + 1) * 2);
    CHECK(dense[0] == f.values[0]);
    CHECK(dense[dense.size() - 2] == f.values[f.values.size() - 2]);
    CHECK(dense.back() == f.values.back());
}

TEST_CASE("koch oscillation moduli: both ratio sequences within a factor 50") {
    const double gamma = std::log(3.0) / std::log(4.0);
    SampledField f = koch_curve({gamma, 6, 2});
    std::vector<double> hs;
    for (double h = 0.25; h >= 4.0 / (f.m - 1); h *= 0.5) hs.push_back(h);
    ModuliReport rep = oscillation_moduli(f, hs, gamma, gamma);
    double up_lo = kInf, up_hi = 0.0, lo_lo = kInf, lo_hi = 0.0;
    for (const auto& row : rep.rows) {
        if (row.skipped) continue;
        up_lo = std::min(up_lo, row.upper_ratio);
        up_hi = std::max(up_hi, row.upper_ratio);
        lo_lo = std::min(lo_lo, row.lower_ratio);
        lo_hi = std::max(lo_hi, row.lower_ratio);
    }
    CHECK(up_hi / up_lo < 50.0);
    CHECK(lo_hi / lo_lo < 50.0);
    CHECK(lo_lo > 0.0);
}

TEST_CASE("bounded-potential diagnostic raises no flag on the koch curve") {
    // gamma ~ 0.79 > 1/(n-alpha) = 2/3 at alpha = 0.5: both statistics scale
    // as powers, the contradiction pattern is absent
    SampledField f = koch_curve({std::log(3.0) / std::log(4.0), 5, 2});
    BdpotReport rep = bdpot_diagnostic(f, 0.5, 0.8);
    CHECK(std::isfinite(rep.potential_sup));
    CHECK_FALSE(rep.flagged);
    for (const auto& row : rep.rows) CHECK(row.lower_stat > 0.0);
}

TEST_CASE("box dimension of random finite clouds stays within [0, n+0.05]") {
    RngStream rng(2718, 0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> cloud;
        const int npts = 1500;
        const bool clustered = trial % 2 == 0;
        for (int i = 0; i < npts; ++i) {
            double x = rng.uniform(), y = rng.uniform();
            if (clustered) {  // anisotropic cluster mix
                x = 0.5 * x * x;
                y = (i % 3 == 0) ? y : 0.2 * y;
            }
            cloud.push_back(x);
            cloud.push_back(y);
        }
        std::vector<double> scales;
        for (int j = 2; j <= 7; ++j) scales.push_back(std::pow(2.0, -j));
        BoxDimensionResult r = box_dimension(cloud, 2, scales);
        CHECK(r.estimate >= 0.0);
        CHECK(r.estimate <= 2.05);
    }
}
