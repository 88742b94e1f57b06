#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pdc/bounds.h"
#include "pdc/dists.h"
#include "pdc/qexact.h"
#include "pdc/wiretap.h"
#include "test_util.h"

namespace pdc::bounds {
namespace {

using dists::depolarizing;
using dists::PauliDist;
using testing::as_vector;
using testing::renyi_oracle;

const TGrid kGrid = TGrid::standard();

/// Dense-grid minimum of f on [1e-3, 1], the span of the standard grid.
double dense_min(const std::function<double(double)> &f, int points = 20000) {
    double best = INFINITY;
    for (int i = 0; i <= points; ++i) best = std::min(best, f(1e-3 + (1 - 1e-3) * i / points));
    return best;
}

TEST(TGrid, Construction) {
    EXPECT_THROW(TGrid({}), std::invalid_argument);
    EXPECT_THROW(TGrid({0.0, 0.5}), std::invalid_argument);
    EXPECT_THROW(TGrid({1.5}), std::invalid_argument);
    EXPECT_THROW(TGrid::log_spaced(1), std::invalid_argument);
    const auto g = TGrid::standard();
    EXPECT_EQ(g.points().size(), 200u);
    EXPECT_NEAR(g.points().front(), 1e-3, 1e-15);
    EXPECT_EQ(g.points().back(), 1.0);
}

TEST(MinimizeOverT, RefinesInteriorMinimum) {
    const auto r = minimize_over_t([](double t) { return (t - 0.3337) * (t - 0.3337); }, kGrid);
    EXPECT_NEAR(r.t, 0.3337, 1e-6);
    EXPECT_LT(r.value, 1e-12);
}

TEST(AsymptoticRates, Examples) {
    const auto d = PauliDist::point(2, 0, 0);
    const auto noiseless = asymptotic_rates(d, d);
    EXPECT_NEAR(noiseless.R1_star, 2.0, 1e-15);
    EXPECT_NEAR(noiseless.R2_star, 0.0, 1e-15);
    EXPECT_NEAR(noiseless.R_star, 2.0, 1e-15);
    const auto u = asymptotic_rates(PauliDist::uniform(2), PauliDist::uniform(2));
    EXPECT_NEAR(u.R2_star, 2.0, 1e-12);
    EXPECT_LE(u.R_star, 0.0);
    const auto dep = depolarizing(0.05, 2);
    const auto r = asymptotic_rates(dep, dep);
    const double expected = 2 - renyi_oracle(as_vector(dep.probs()), 1.0) -
                            renyi_oracle(testing::convolve_oracle(dep, dep), 1.0);
    EXPECT_NEAR(r.R_star, expected, 1e-12);
    EXPECT_NEAR(r.R_star, 1.216, 5e-4);
    EXPECT_NEAR(r.R_star, r.R1_star - r.R2_star, 1e-12);
    EXPECT_THROW(asymptotic_rates(dep, depolarizing(0.05, 3)), std::invalid_argument);
}

TEST(GeneralRate, AgreesWithClassicalForms) {
    const auto pure = qexact::DensityMatrix(qexact::purify(PauliDist::point(2, 0, 0)));
    EXPECT_NEAR(general_rate(pure), 2.0, 1e-9);
    const PauliDist p(2, {0.7, 0.1, 0.1, 0.1});
    const auto tau = qexact::DensityMatrix(qexact::purify(p));
    EXPECT_NEAR(general_rate(tau), 2 * qexact::cond_entropy(qexact::partial_trace(tau, {0, 2})), 1e-9);
    EXPECT_NEAR(general_rate(tau), -2 * qexact::cond_entropy(qexact::partial_trace(tau, {0, 1})), 1e-9);
    const auto dep = depolarizing(0.05, 2);
    const auto tdep = qexact::DensityMatrix(qexact::purify(dep));
    EXPECT_NEAR(general_rate(tdep, dep), asymptotic_rates(dep, dep).R_star, 1e-8);
    std::mt19937_64 gen(1);
    for (int i = 0; i < 3; ++i) {
        const auto a = testing::random_dist(2, gen), b = testing::random_dist(2, gen);
        EXPECT_NEAR(general_rate(qexact::DensityMatrix(qexact::purify(a)), b), asymptotic_rates(a, b).R_star, 1e-8);
    }
    EXPECT_THROW(general_rate(qexact::bell_diagonal(dep)), std::invalid_argument);
}

TEST(EpsB, Examples) {
    EXPECT_EQ(eps_B_bound(0, 2), 1.0);
    EXPECT_EQ(eps_B_bound(30, 2), std::ldexp(1.0, -30));
    EXPECT_NEAR(eps_B_bound(2, 3), 1.0 / 9.0, 1e-16);
}

TEST(EpsE, MatchesDenseOracle) {
    std::mt19937_64 gen(2);
    for (std::uint32_t p : {2u, 3u}) {
        const auto dist = testing::random_dist(p, gen);
        const auto probs = as_vector(dist.probs());
        for (std::size_t n : {5u, 50u})
            for (std::size_t s : {0u, 10u, 80u}) {
                auto f = [&](double t) {
                    return (1 - t) / (1 + t) + t / (1 + t) * (n * renyi_oracle(probs, 1 / (1 + t)) - s * std::log2(p));
                };
                const double lib = log2_eps_E_bound(n, s, dist, kGrid);
                EXPECT_NEAR(lib, dense_min(f), 1e-4);
                EXPECT_NEAR(eps_E_bound(n, s, dist, kGrid), std::min(1.0, std::exp2(lib)), 1e-15);
            }
    }
}

TEST(EpsE, Examples) {
    const auto delta = PauliDist::point(2, 0, 0);
    EXPECT_NEAR(eps_E_bound(10, 1, delta, kGrid), std::pow(2.0, -0.5), 1e-9);
    double prev = 2.0;
    const auto dep = depolarizing(0.2, 2);
    for (std::size_t s = 0; s < 200; s += 10) {
        const double v = eps_E_bound(100, s, dep, kGrid);
        EXPECT_LE(v, prev + 1e-15);
        prev = v;
    }
    EXPECT_EQ(eps_E_bound(10, 19, PauliDist::uniform(2), kGrid), 1.0);
    EXPECT_THROW(eps_E_bound(0, 1, dep, kGrid), std::invalid_argument);
}

TEST(EpsC, MatchesDenseOracleAndExamples) {
    const auto dep = depolarizing(0.05, 2);
    const auto eff = dists::convolve(dep, dep);
    const auto probs = testing::convolve_oracle(dep, dep);
    for (std::size_t n : {100u, 1000u})
        for (std::size_t n1 : {n, n + n / 2}) {
            auto f = [&](double t) { return t * (n1 - n * (2 - renyi_oracle(probs, 1 - t))); };
            EXPECT_NEAR(log2_eps_C_bound(n, n1, eff, kGrid), 2 + dense_min(f), 1e-3);
        }
    const auto delta = PauliDist::point(2, 0, 0);
    EXPECT_EQ(eps_C_bound(50, 100, delta, kGrid), 1.0);
    EXPECT_LT(eps_C_bound(500, 900, delta, kGrid), eps_C_bound(50, 90, delta, kGrid));
    EXPECT_LT(eps_C_bound(10000, 13000, eff, kGrid), 0.2);
    EXPECT_THROW(eps_C_bound(10, 21, eff, kGrid), std::invalid_argument);
}

TEST(Bounds, CriticalRatesApproachAsymptoticValues) {
    const auto dep = depolarizing(0.05, 2);
    const auto eff = dists::convolve(dep, dep);
    const auto rates = asymptotic_rates(dep, dep);
    auto n1_at = [](std::size_t n, double rate) { return std::size_t(std::floor(n * rate)); };
    EXPECT_LT(eps_C_bound(20000, n1_at(20000, rates.R1_star - 0.05), eff, kGrid),
              eps_C_bound(2000, n1_at(2000, rates.R1_star - 0.05), eff, kGrid));
    EXPECT_LT(eps_C_bound(20000, n1_at(20000, rates.R1_star - 0.05), eff, kGrid), 1e-4);
    EXPECT_EQ(eps_C_bound(20000, n1_at(20000, rates.R1_star + 0.05), eff, kGrid), 1.0);
    EXPECT_LT(eps_E_bound(20000, n1_at(20000, rates.R2_star + 0.05), dep, kGrid), 1e-6);
    EXPECT_EQ(eps_E_bound(20000, n1_at(20000, rates.R2_star - 0.05), dep, kGrid), 1.0);
}

TEST(MHat, BisectionIsTight) {
    const auto dep = depolarizing(0.05, 2);
    const SecurityTargets targets{0.2, 1e-9, 1e-9};
    for (std::size_t n : {1000u, 10000u}) {
        const auto m = m_hat_lengths(targets, n, dep, dep, kGrid);
        ASSERT_TRUE(m);
        EXPECT_EQ(m->m3, 30u);
        EXPECT_LE(eps_E_bound(n, m->m2, dep, kGrid), 1e-9);
        EXPECT_GT(eps_E_bound(n, m->m2 - 1, dep, kGrid), 1e-9);
        const auto eff = dists::convolve(dep, dep);
        EXPECT_LE(eps_C_bound(n, m->m1, eff, kGrid), 0.2);
        EXPECT_GT(eps_C_bound(n, m->m1 + 1, eff, kGrid), 0.2);
    }
    EXPECT_EQ(m_hat_lengths({0.5, 0.5, std::ldexp(1.0, -30)}, 10, dep, dep, kGrid)->m3, 30u);
    const auto delta = PauliDist::point(2, 0, 0);
    const auto small = m_hat_lengths(targets, 100, delta, delta, kGrid);
    const auto large = m_hat_lengths(targets, 10000, delta, delta, kGrid);
    EXPECT_EQ(small->m2, large->m2);
    EXPECT_LE(small->m2, 62u);
    EXPECT_THROW(m_hat_lengths({0.0, 0.1, 0.1}, 10, dep, dep, kGrid), std::invalid_argument);
    EXPECT_FALSE(m_hat_lengths({1e-300, 0.5, 0.5}, 10, dep, dep, kGrid).has_value());
}

TEST(FiniteLength, ApproachesAsymptoticRate) {
    const auto dep = depolarizing(0.05, 2);
    const SecurityTargets targets{0.2, 1e-9, 1e-9};
    double prev = -INFINITY;
    for (std::size_t n : {1000u, 10000u, 100000u, 1000000u}) {
        const auto r = finite_length_report(targets, n, dep, dep, kGrid);
        ASSERT_TRUE(r.feasible);
        EXPECT_NEAR(r.R, r.R1 - r.R2 - r.R3, 1e-12);
        EXPECT_LE(r.eps_C, 0.2);
        EXPECT_LE(r.eps_E, 1e-9);
        EXPECT_LE(r.eps_B, 1e-9);
        EXPECT_GE(r.R, prev);
        prev = r.R;
    }
    EXPECT_NEAR(prev, asymptotic_rates(dep, dep).R_star, 0.05);
}

TEST(LeakageExponent, Examples) {
    const auto dep = depolarizing(0.05, 2);
    EXPECT_EQ(leakage_exponent_lower(0.2, dep, kGrid), 0.0);
    EXPECT_NEAR(leakage_exponent_lower(1.0, PauliDist::point(2, 0, 0), kGrid), 0.5, 1e-12);
    const double e = leakage_exponent_lower(1.0, dep, kGrid);
    EXPECT_GT(e, 0.0);
    auto f = [&](double t) { return -(t / (1 + t)) * (1.0 - renyi_oracle(as_vector(dep.probs()), 1 / (1 + t))); };
    EXPECT_NEAR(e, -dense_min(f), 1e-6);
    EXPECT_THROW(leakage_exponent_lower(-0.1, dep, kGrid), std::invalid_argument);
}

/// Eve's noisy copy of a p = 2 pair: row x gives noise(e - x).
std::vector<std::vector<double>> noisy_rows(const PauliDist &noise) {
    std::vector<std::vector<double>> rows(4, std::vector<double>(4));
    for (std::uint32_t x = 0; x < 4; ++x)
        for (std::uint32_t e = 0; e < 4; ++e) rows[x][e] = noise((e / 2 + x / 2) % 2, (e % 2 + x % 2) % 2);
    return rows;
}

TEST(RenyiInformation, UniformInputIsOptimal) {
    std::mt19937_64 gen(3);
    std::gamma_distribution<double> g(0.5);
    for (int trial = 0; trial < 3; ++trial) {
        const auto rows = noisy_rows(testing::random_dist(2, gen));
        for (double t : {0.2, 0.8}) {
            const double uniform = wiretap::sibson_info({0.25, 0.25, 0.25, 0.25}, rows, 1 + t);
            for (int k = 0; k < 500; ++k) {
                std::vector<double> q(4);
                double s = 0;
                for (auto &v : q) s += v = g(gen);
                for (auto &v : q) v /= s;
                EXPECT_LE(wiretap::sibson_info(q, rows, 1 + t), uniform + 1e-9);
            }
        }
    }
}

TEST(RenyiInformation, TwoFoldIsAdditive) {
    std::mt19937_64 gen(4);
    std::gamma_distribution<double> g(0.5);
    const auto rows = noisy_rows(depolarizing(0.3, 2));
    std::vector<std::vector<double>> twofold(16, std::vector<double>(16));
    for (int a = 0; a < 16; ++a)
        for (int e = 0; e < 16; ++e) twofold[a][e] = rows[a / 4][e / 4] * rows[a % 4][e % 4];
    for (double t : {0.3, 0.9}) {
        const double single = wiretap::sibson_info(std::vector<double>(4, 0.25), rows, 1 + t);
        double best = wiretap::sibson_info(std::vector<double>(16, 1.0 / 16), twofold, 1 + t);
        EXPECT_NEAR(best, 2 * single, 1e-9);
        for (int k = 0; k < 500; ++k) {
            std::vector<double> q(16);
            double s = 0;
            if (k % 2 == 0) {
                std::vector<double> a(4), b(4);
                double sa = 0, sb = 0;
                for (auto &v : a) sa += v = g(gen);
                for (auto &v : b) sb += v = g(gen);
                for (int i = 0; i < 16; ++i) s += q[i] = a[i / 4] / sa * b[i % 4] / sb;
            } else {
                for (auto &v : q) s += v = g(gen);
            }
            for (auto &v : q) v /= s;
            best = std::max(best, wiretap::sibson_info(q, twofold, 1 + t));
        }
        EXPECT_NEAR(best, 2 * single, 1e-6);
    }
}

}  // namespace
}  // namespace pdc::bounds
