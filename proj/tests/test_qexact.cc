#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "pdc/errors.h"
#include "pdc/matrix_functions.h"
#include "pdc/qexact.h"
#include "test_util.h"

namespace pdc::qexact {
namespace {

using testing::random_density;
using testing::random_dist;
using testing::weyl_oracle;

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

Matrix id(std::size_t d) { return Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)); }

/// |Phi><Phi| from its amplitudes 1/sqrt(p) on |jj>.
Matrix phi_oracle(std::uint32_t p) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(p * p);
    for (std::uint32_t j = 0; j < p; ++j) v(j * p + j) = 1.0 / std::sqrt(double(p));
    return v * v.adjoint();
}

/// sum P(x, z) (W (x) I) |Phi><Phi| (W (x) I)^dagger from oracle matrices.
Matrix bell_diagonal_oracle(const dists::PauliDist &d) {
    const std::uint32_t p = d.p();
    Matrix out = Matrix::Zero(p * p, p * p);
    for (std::uint32_t x = 0; x < p; ++x)
        for (std::uint32_t z = 0; z < p; ++z) {
            const Matrix w = Eigen::kroneckerProduct(weyl_oracle(x, z, p), id(p));
            out += d(x, z) * w * phi_oracle(p) * w.adjoint();
        }
    return out;
}

std::vector<double> sorted_spectrum(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.rbegin(), v.rend());
    return v;
}

/// Classical Renyi divergence (1/(a-1)) log2 sum p^a q^{1-a}.
double classical_divergence(const std::vector<double> &p, const std::vector<double> &q, double alpha) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0) s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
    return std::log2(s) / (alpha - 1.0);
}

Matrix diag(const std::vector<double> &v) {
    Eigen::VectorXcd d(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) d(i) = v[i];
    return d.asDiagonal();
}

TEST(Weyl, MatchesOracleAndCommutation) {
    EXPECT_LT(max_abs(weyl(0, 0, 3).matrix() - id(3)), 1e-15);
    Matrix flip(2, 2);
    flip << 0, 1, 1, 0;
    EXPECT_LT(max_abs(weyl(1, 0, 2).matrix() - flip), 1e-15);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const std::complex<double> omega = std::polar(1.0, 2 * std::numbers::pi / p);
        for (std::uint32_t x = 0; x < p; ++x)
            for (std::uint32_t z = 0; z < p; ++z) {
                EXPECT_LT(max_abs(weyl(x, z, p).matrix() - weyl_oracle(x, z, p)), 1e-14);
                for (std::uint32_t x2 = 0; x2 < p; ++x2)
                    for (std::uint32_t z2 = 0; z2 < p; ++z2) {
                        const Matrix a = weyl(x, z, p).matrix(), b = weyl(x2, z2, p).matrix();
                        const int e = int((x2 * z + p * p - x * z2) % p);
                        EXPECT_LT(max_abs(a * b - std::pow(omega, e) * b * a), 1e-12);
                    }
            }
    }
}

TEST(BellDiagonal, ExamplesAndOracle) {
    EXPECT_LT(max_abs(bell_diagonal(dists::PauliDist::point(3, 0, 0)).matrix() - phi_oracle(3)), 1e-14);
    EXPECT_LT(max_abs(bell_diagonal(dists::PauliDist::uniform(2)).matrix() - id(4) / 4.0), 1e-14);
    const auto spec = sorted_spectrum(bell_diagonal(dists::PauliDist(2, {0.7, 0.1, 0.1, 0.1})).matrix());
    EXPECT_NEAR(spec[0], 0.7, 1e-12);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(spec[i], 0.1, 1e-12);
    std::mt19937_64 gen(1);
    for (std::uint32_t p : {2u, 3u}) {
        const auto d = random_dist(p, gen);
        EXPECT_LT(max_abs(bell_diagonal(d).matrix() - bell_diagonal_oracle(d)), 1e-13);
    }
}

TEST(Purify, MarginalsAndSpectrum) {
    const DensityMatrix pure(purify(dists::PauliDist::point(2, 0, 0)));
    Eigen::VectorXcd e00 = Eigen::VectorXcd::Zero(4);
    e00(0) = 1.0;
    EXPECT_LT(max_abs(pure.matrix() - Eigen::kroneckerProduct(phi_oracle(2), Matrix(e00 * e00.adjoint())).eval()), 1e-14);
    std::mt19937_64 gen(2);
    for (std::uint32_t p : {2u, 3u}) {
        const auto d = random_dist(p, gen);
        const DensityMatrix psi(purify(d));
        EXPECT_LT(max_abs(partial_trace(psi, {0, 1}).matrix() - bell_diagonal_oracle(d)), 1e-13);
        const auto spec = sorted_spectrum(partial_trace(psi, {2}).matrix());
        auto probs = testing::as_vector(d.probs());
        std::sort(probs.rbegin(), probs.rend());
        for (std::size_t i = 0; i < probs.size(); ++i) EXPECT_NEAR(spec[i], probs[i], 1e-12);
    }
}

TEST(PauliChannel, CompositionAndBellFrame) {
    std::mt19937_64 gen(3);
    for (std::uint32_t p : {2u, 3u}) {
        const auto a = random_dist(p, gen);
        const auto b = random_dist(p, gen);
        const DensityMatrix phi({p, p}, phi_oracle(p));
        EXPECT_LT(max_abs(pauli_channel(phi, dists::PauliDist::point(p, 0, 0), 0).matrix() - phi.matrix()), 1e-14);
        EXPECT_LT(max_abs(pauli_channel(phi, a, 0).matrix() - bell_diagonal_oracle(a)), 1e-13);
        // Lambda[b] o Lambda[a] = Lambda[b * a].
        const DensityMatrix rho({p, p}, random_density(p * p, gen));
        const auto twice = pauli_channel(pauli_channel(rho, a, 0), b, 0);
        const auto once = pauli_channel(rho, dists::PauliDist(p, testing::convolve_oracle(b, a)), 0);
        EXPECT_LT(max_abs(twice.matrix() - once.matrix()), 1e-13);
        // Moving a channel from A to B negates x.
        const auto on_a = pauli_channel(pauli_channel(phi, a, 0), b, 0);
        const auto on_b = pauli_channel(pauli_channel(phi, a, 0), dists::negate_x(b), 1);
        EXPECT_LT(max_abs(on_a.matrix() - on_b.matrix()), 1e-13);
        // Encoding W(x, z) between the two channels shifts the Bell distribution.
        for (std::uint32_t x = 0; x < p; ++x)
            for (std::uint32_t z = 0; z < p; ++z) {
                const auto sent = pauli_channel(apply_unitary(pauli_channel(phi, a, 0), weyl_oracle(x, z, p), 0), b, 0);
                const auto expected = bell_diagonal_oracle(dists::shift(dists::convolve(b, a), x, z));
                EXPECT_LT(max_abs(sent.matrix() - expected), 1e-13);
            }
    }
}

TEST(PartialTrace, Examples) {
    std::mt19937_64 gen(4);
    const Matrix ra = random_density(2, gen), rb = random_density(3, gen);
    const DensityMatrix prod({2, 3}, Eigen::kroneckerProduct(ra, rb).eval());
    EXPECT_LT(max_abs(partial_trace(prod, {0}).matrix() - ra), 1e-14);
    EXPECT_LT(max_abs(partial_trace(prod, {1}).matrix() - rb), 1e-14);
    EXPECT_LT(max_abs(partial_trace(DensityMatrix({3, 3}, phi_oracle(3)), {1}).matrix() - id(3) / 3.0), 1e-14);
    const DensityMatrix tri({2, 3, 2}, random_density(12, gen));
    for (std::vector<std::size_t> keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}}) {
        const Matrix m = partial_trace(tri, keep).matrix();
        EXPECT_NEAR(m.trace().real(), 1.0, 1e-13);
        EXPECT_GT(sorted_spectrum(m).back(), -1e-13);
    }
}

TEST(DensityMatrix, Validation) {
    EXPECT_THROW(DensityMatrix({2}, Matrix::Identity(2, 2)), std::invalid_argument);
    EXPECT_THROW(DensityMatrix({16, 17}, Matrix::Identity(272, 272) / 272.0), SizeCapExceeded);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix({2}, neg), std::invalid_argument);
}

TEST(Divergences, ExamplesAndOrdering) {
    std::mt19937_64 gen(5);
    const Matrix rho = random_density(4, gen);
    for (double alpha : {0.5, 1.1, 1.5, 2.0}) {
        EXPECT_NEAR(petz_divergence(rho, rho, alpha), 0.0, 1e-10);
        EXPECT_NEAR(sandwiched_divergence(rho, rho, alpha), 0.0, 1e-10);
    }
    const std::vector<double> p{0.5, 0.3, 0.2}, q{0.2, 0.2, 0.6};
    for (double alpha : {0.5, 1.5, 2.0}) {
        EXPECT_NEAR(petz_divergence(diag(p), diag(q), alpha), classical_divergence(p, q, alpha), 1e-12);
        EXPECT_NEAR(sandwiched_divergence(diag(p), diag(q), alpha), classical_divergence(p, q, alpha), 1e-12);
    }
    for (int i = 0; i < 20; ++i) {
        const Matrix r = random_density(4, gen), s = random_density(4, gen);
        EXPECT_LE(sandwiched_divergence(r, s, 1.5), petz_divergence(r, s, 1.5) + 1e-12);
    }
}

TEST(CondEntropy, Examples) {
    std::mt19937_64 gen(6);
    const DensityMatrix mixed_a({3, 2}, Eigen::kroneckerProduct(Matrix(id(3) / 3.0), random_density(2, gen)).eval());
    const DensityMatrix phi({2, 2}, phi_oracle(2));
    for (double t : {0.1, 0.5, 0.9}) {
        EXPECT_NEAR(cond_entropy_down(mixed_a, 1.0 + t), std::log2(3.0), 1e-9);
        EXPECT_NEAR(cond_entropy_up_sandwiched(mixed_a, 1.0 + t), std::log2(3.0), 1e-8);
        EXPECT_NEAR(cond_entropy_down(phi, 1.0 - t), -1.0, 1e-9);
        EXPECT_NEAR(cond_entropy_up_sandwiched(phi, 1.0 + t), -1.0, 1e-8);
    }
    EXPECT_NEAR(cond_entropy(phi), -1.0, 1e-10);
}

TEST(SandwichedInfimum, ClassicalClosedForm) {
    // For classical P_AB: min_sigma D~_a(P_AB || I (x) sigma) =
    // (a / (a - 1)) log2 sum_b (sum_a P(a, b)^a)^{1/a}.
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 5; ++trial) {
        const auto d = random_dist(3, gen);
        const DensityMatrix rho({3, 3}, diag(testing::as_vector(d.probs())));
        for (double alpha : {0.6, 1.2, 1.5, 2.0}) {
            double acc = 0.0;
            for (std::uint32_t b = 0; b < 3; ++b) {
                double inner = 0.0;
                for (std::uint32_t a = 0; a < 3; ++a) inner += std::pow(d(a, b), alpha);
                acc += std::pow(inner, 1.0 / alpha);
            }
            const double expected = alpha / (alpha - 1.0) * std::log2(acc);
            const auto r = sandwiched_infimum(rho, id(3), alpha);
            EXPECT_NEAR(r.value, expected, 1e-8) << alpha;
        }
    }
}

TEST(SandwichedInfimum, PerturbationsNeverBeatSolver) {
    std::mt19937_64 gen(8);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho({2, 2}, random_density(4, gen));
        for (double alpha : {1.3, 1.9}) {
            const auto r = sandwiched_infimum(rho, id(2), alpha);
            EXPECT_TRUE(r.converged);
            for (int k = 0; k < 50; ++k) {
                Matrix h(2, 2);
                h << n(gen), std::complex<double>(n(gen), n(gen)), 0.0, n(gen);
                h(1, 0) = std::conj(h(0, 1));
                const Matrix sigma = r.sigma + 0.05 * h;
                const auto spec = sorted_spectrum(sigma);
                if (spec.back() <= 1e-6) continue;
                const Matrix s = sigma / sigma.trace().real();
                EXPECT_GE(sandwiched_divergence(rho.matrix(), Eigen::kroneckerProduct(id(2), s).eval(), alpha),
                          r.value - 1e-9);
            }
        }
    }
}

TEST(ClosedFormEntropies, ClosedFormsOnSmallInstances) {
    std::mt19937_64 gen(9);
    for (std::uint32_t p : {2u, 3u}) {
        const double lp = std::log2(double(p));
        for (int i = 0; i < 2; ++i) {
            const auto P = random_dist(p, gen), Pt = random_dist(p, gen);
            const auto conv = testing::convolve_oracle(Pt, P);
            const auto omega = pauli_channel(DensityMatrix(purify(P)), dists::negate_x(Pt), 1);
            const auto oab = partial_trace(omega, {0, 1}), oae = partial_trace(omega, {0, 2});
            EXPECT_NEAR(cond_entropy(oab), testing::renyi_oracle(conv, 1.0) - lp, 1e-9);
            EXPECT_NEAR(cond_entropy(oae), lp - testing::renyi_oracle(testing::as_vector(P.probs()), 1.0), 1e-9);
            for (double t : {0.2, 0.7}) {
                EXPECT_NEAR(cond_entropy_down(oab, 1 - t), testing::renyi_oracle(conv, 1 - t) - lp, 1e-9);
                EXPECT_GE(cond_entropy_up_sandwiched(oae, 1 + t),
                          lp - testing::renyi_oracle(testing::as_vector(P.probs()), 1 / (1 + t)) - 1e-8);
            }
        }
    }
}

TEST(Twirl, ProjectsOntoBellDiagonal) {
    std::mt19937_64 gen(10);
    for (std::uint32_t p : {2u, 3u}) {
        const auto d = random_dist(p, gen);
        EXPECT_LT(max_abs(twirl(bell_diagonal(d)).matrix() - bell_diagonal(d).matrix()), 1e-13);
        const DensityMatrix rho({p, p}, random_density(p * p, gen));
        const Matrix tw = twirl(rho).matrix();
        EXPECT_NEAR(tw.trace().real(), 1.0, 1e-13);
        for (std::uint32_t x = 0; x < p; ++x)
            for (std::uint32_t z = 0; z < p; ++z)
                for (std::uint32_t x2 = 0; x2 < p; ++x2)
                    for (std::uint32_t z2 = 0; z2 < p; ++z2) {
                        if (x == x2 && z == z2) continue;
                        const auto u = bell_basis_vector(x, z, p), v = bell_basis_vector(x2, z2, p);
                        EXPECT_LT(std::abs((u.adjoint() * tw * v)(0, 0)), 1e-10);
                    }
    }
}

TEST(Leakage, Examples) {
    std::mt19937_64 gen(11);
    const Matrix sigma = random_density(3, gen);
    CqState product{{0.3, 0.7}, {sigma, sigma}};
    EXPECT_NEAR(leakage_d(product).against_marginal, 0.0, 1e-12);
    EXPECT_NEAR(leakage_d(product).minimized, 0.0, 1e-9);
    CqState correlated{{0.5, 0.5}, {diag({1, 0}), diag({0, 1})}};
    EXPECT_NEAR(leakage_d(correlated).against_marginal, 1.0, 1e-12);
    EXPECT_NEAR(trace_distance(diag({1, 0}), diag({0, 1})), 1.0, 1e-14);
}

TEST(Leakage, ClassicalMinimumMatchesGridSearch) {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = testing::as_vector(random_dist(2, gen).probs());
        const auto b = testing::as_vector(random_dist(2, gen).probs());
        const std::vector<double> w{0.4, 0.6};
        // Each row is a distribution over 3 outcomes (drop the 4th weight).
        std::vector<double> ra{a[0], a[1], a[2] + a[3]}, rb{b[0], b[1], b[2] + b[3]};
        CqState cq{w, {diag(ra), diag(rb)}};
        double best = 1e9;
        const int steps = 200;
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; i + j <= steps; ++j) {
                const double s0 = double(i) / steps, s1 = double(j) / steps, s2 = 1 - s0 - s1;
                double v = 0;
                v += std::abs(w[0] * ra[0] - w[0] * s0) + std::abs(w[0] * ra[1] - w[0] * s1) + std::abs(w[0] * ra[2] - w[0] * s2);
                v += std::abs(w[1] * rb[0] - w[1] * s0) + std::abs(w[1] * rb[1] - w[1] * s1) + std::abs(w[1] * rb[2] - w[1] * s2);
                best = std::min(best, v);
            }
        const auto r = leakage_d(cq);
        EXPECT_LE(r.minimized, best + 1e-12);
        EXPECT_GE(r.minimized, best - 0.02);
        EXPECT_LE(r.minimized, r.against_marginal + 1e-12);
    }
}

TEST(Leakage, QuantumMinimumBelowMarginal) {
    std::mt19937_64 gen(13);
    CqState cq{{0.5, 0.5}, {random_density(2, gen), random_density(2, gen)}};
    const auto r = leakage_d(cq);
    EXPECT_LE(r.minimized, r.against_marginal + 1e-12);
    EXPECT_GE(r.minimized, 0.0);
}

TEST(DegradingMap, PhaseNoiseMatchesIndependentPurification) {
    std::mt19937_64 gen(14);
    for (std::uint32_t p : {2u, 3u}) {
        std::vector<double> probs(p * p, 0.0);
        std::gamma_distribution<double> g(1.0);
        double s = 0;
        for (std::uint32_t z = 0; z < p; ++z) s += probs[z] = g(gen);
        for (auto &v : probs) v /= s;
        const dists::PauliDist d(p, probs);
        const auto tau_ab = bell_diagonal(d);
        const auto map = degrading_map(tau_ab, id(p), id(p));
        const auto out = map.apply(tau_ab);
        const auto reference = partial_trace(DensityMatrix(purify(d)), {0, 2});
        // tau_AE is fixed up to an isometry on E: compare spectra and marginals.
        const auto s1 = sorted_spectrum(out.matrix()), s2 = sorted_spectrum(reference.matrix());
        for (std::size_t i = 0; i < std::max(s1.size(), s2.size()); ++i)
            EXPECT_NEAR(i < s1.size() ? s1[i] : 0.0, i < s2.size() ? s2[i] : 0.0, 1e-10);
        EXPECT_LT(max_abs(partial_trace(out, {0}).matrix() - partial_trace(reference, {0}).matrix()), 1e-12);
        EXPECT_NEAR(cond_entropy(out), cond_entropy(reference), 1e-10);
        EXPECT_LT(max_abs(out.matrix() - map.tau_ae.matrix()), 1e-10);
        Matrix completeness = Matrix::Zero(p, p);
        for (const auto &k : map.kraus) completeness += k.adjoint() * k;
        EXPECT_LT(max_abs(completeness - id(p)), 1e-12);
        const DensityMatrix random_in({p, p}, random_density(p * p, gen));
        EXPECT_NEAR(map.apply(random_in).matrix().trace().real(), 1.0, 1e-12);
    }
}

TEST(DegradingMap, PureStateGivesTrivialEve) {
    const auto map = degrading_map(DensityMatrix({2, 2}, phi_oracle(2)), id(2), id(2));
    const auto out = map.apply(DensityMatrix({2, 2}, phi_oracle(2)));
    EXPECT_NEAR(von_neumann_entropy(partial_trace(out, {1}).matrix()), 0.0, 1e-10);
}

TEST(DegradingMap, RejectsUncorrelatedState) {
    EXPECT_THROW(degrading_map(bell_diagonal(dists::PauliDist::uniform(2)), id(2), id(2)), std::invalid_argument);
}

}  // namespace
}  // namespace pdc::qexact
