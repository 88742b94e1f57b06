// Copyright 2026 The pdc-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdc/bounds.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "pdc/gf.h"

namespace pdc::bounds {
namespace {

/// H_{1-t} on [0, 1]; order 0 is the log of the support size.
double renyi_low(const dists::PauliDist &dist, double t) {
    const double alpha = 1.0 - t;
    return alpha <= 0.0 ? dists::max_entropy(dist.probs()) : dists::renyi_entropy(dist, alpha);
}

std::size_t require_positive(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("block length n must be positive");
    }
    return n;
}

}  // namespace

void validate(const SecurityTargets &targets) {
    for (double eps : {targets.eps_C, targets.eps_E, targets.eps_B}) {
        if (!(eps > 0.0 && eps <= 1.0)) {
            throw std::invalid_argument("security targets must lie in (0, 1]");
        }
    }
}

TGrid::TGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw std::invalid_argument("t grid must be nonempty");
    }
    std::sort(points_.begin(), points_.end());
    if (!(points_.front() > 0.0) || points_.back() > 1.0) {
        throw std::invalid_argument("t grid points must lie in (0, 1]");
    }
}

TGrid TGrid::log_spaced(std::size_t points) {
    if (points < 2) {
        throw std::invalid_argument("log-spaced t grid needs at least two points");
    }
    std::vector<double> pts(points);
    for (std::size_t k = 0; k < points; ++k) {
        pts[k] = std::pow(10.0, -3.0 + 3.0 * static_cast<double>(k) / static_cast<double>(points - 1));
    }
    pts.back() = 1.0;
    return TGrid(std::move(pts));
}

TOptimum minimize_over_t(const std::function<double(double)> &f, const TGrid &grid) {
    const auto &pts = grid.points();
    std::size_t best = 0;
    std::vector<double> values(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        values[k] = f(pts[k]);
        if (values[k] < values[best]) {
            best = k;
        }
    }
    TOptimum out{pts[best], values[best]};
    if (pts.size() < 2) {
        return out;
    }
    double lo = pts[best == 0 ? 0 : best - 1];
    double hi = pts[std::min(best + 1, pts.size() - 1)];
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - ratio * (hi - lo);
    double b = lo + ratio * (hi - lo);
    double fa = f(a);
    double fb = f(b);
    for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = f(b);
        }
    }
    for (auto [t, v] : {std::pair{a, fa}, std::pair{b, fb}}) {
        if (v < out.value) {
            out = {t, v};
        }
    }
    return out;
}

RateTriple asymptotic_rates(const dists::PauliDist &p_xz, const dists::PauliDist &p_tilde) {
    if (p_xz.p() != p_tilde.p()) {
        throw std::invalid_argument("asymptotic_rates: modulus mismatch");
    }
    const double log_d = std::log2(static_cast<double>(p_xz.p()));
    const double r1 = 2.0 * log_d - dists::shannon_entropy(dists::convolve(p_tilde, p_xz));
    const double r2 = dists::shannon_entropy(p_xz);
    return {r1, r2, r1 - r2};
}

namespace {

double general_rate_impl(const qexact::DensityMatrix &tau_ab, const qexact::DensityMatrix &tau_ae) {
    using qexact::entropy;
    using qexact::weyl_twirl_first;
    return entropy(weyl_twirl_first(tau_ab)) - entropy(tau_ab) - entropy(weyl_twirl_first(tau_ae)) + entropy(tau_ae);
}

void require_tripartite(const qexact::DensityMatrix &tau_abe) {
    if (tau_abe.dims().size() != 3) {
        throw std::invalid_argument("general_rate needs a state on A, B and E");
    }
}

}  // namespace

double general_rate(const qexact::DensityMatrix &tau_abe) {
    require_tripartite(tau_abe);
    return general_rate_impl(qexact::partial_trace(tau_abe, {0, 1}), qexact::partial_trace(tau_abe, {0, 2}));
}

double general_rate(const qexact::DensityMatrix &tau_abe, const dists::PauliDist &channel) {
    require_tripartite(tau_abe);
    const auto tau_ab = qexact::pauli_channel(qexact::partial_trace(tau_abe, {0, 1}), channel, 0);
    return general_rate_impl(tau_ab, qexact::partial_trace(tau_abe, {0, 2}));
}

double eps_B_bound(std::size_t n3, std::uint32_t p) {
    gf::require_prime(p);
    return std::exp2(-static_cast<double>(n3) * std::log2(static_cast<double>(p)));
}

double log2_eps_E_bound(std::size_t n, std::size_t sacrifice, const dists::PauliDist &p_xz, const TGrid &grid) {
    require_positive(n);
    const double log_p = std::log2(static_cast<double>(p_xz.p()));
    const double dn = static_cast<double>(n);
    const double ds = static_cast<double>(sacrifice);
    auto f = [&](double t) {
        const double h = dists::renyi_entropy(p_xz, 1.0 / (1.0 + t));
        return (1.0 - t) / (1.0 + t) + (t / (1.0 + t)) * (dn * h - ds * log_p);
    };
    return minimize_over_t(f, grid).value;
}

double eps_E_bound(std::size_t n, std::size_t sacrifice, const dists::PauliDist &p_xz, const TGrid &grid) {
    return std::min(1.0, std::exp2(log2_eps_E_bound(n, sacrifice, p_xz, grid)));
}

double log2_eps_C_bound(std::size_t n, std::size_t n1, const dists::PauliDist &p_eff, const TGrid &grid) {
    require_positive(n);
    if (n1 > 2 * n) {
        throw std::invalid_argument("eps_C_bound: n1 exceeds 2n");
    }
    const double log_p = std::log2(static_cast<double>(p_eff.p()));
    const double dn = static_cast<double>(n);
    const double dn1 = static_cast<double>(n1);
    auto f = [&](double t) { return t * (dn1 * log_p - dn * (2.0 * log_p - renyi_low(p_eff, t))); };
    return 2.0 + minimize_over_t(f, grid).value;
}

double eps_C_bound(std::size_t n, std::size_t n1, const dists::PauliDist &p_eff, const TGrid &grid) {
    return std::min(1.0, std::exp2(log2_eps_C_bound(n, n1, p_eff, grid)));
}

std::optional<MHat> m_hat_lengths(const SecurityTargets &targets, std::size_t n, const dists::PauliDist &p_xz,
                                  const dists::PauliDist &p_tilde, const TGrid &grid) {
    validate(targets);
    require_positive(n);
    if (p_xz.p() != p_tilde.p()) {
        throw std::invalid_argument("m_hat_lengths: modulus mismatch");
    }
    const double log_p = std::log2(static_cast<double>(p_xz.p()));
    MHat out{};
    out.m3 = static_cast<std::size_t>(std::max(0.0, std::ceil(-std::log2(targets.eps_B) / log_p - 1e-12)));

    // Smallest sacrifice meeting eps_E; at t = 1 the bound is met once
    // s log2 p >= n H_{1/2}(P) - 2 log2 eps_E.
    const double log_eps_e = std::log2(targets.eps_E);
    std::size_t lo = 0;
    std::size_t hi = static_cast<std::size_t>(
        std::ceil((static_cast<double>(n) * dists::renyi_entropy(p_xz, 0.5) - 2.0 * log_eps_e) / log_p) + 1.0);
    auto secret = [&](std::size_t s) { return log2_eps_E_bound(n, s, p_xz, grid) <= log_eps_e; };
    while (!secret(hi)) {
        hi *= 2;
    }
    if (secret(lo)) {
        hi = lo;
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        (secret(mid) ? hi : lo) = mid;
    }
    out.m2 = hi;

    // Largest code length meeting eps_C.
    const dists::PauliDist p_eff = dists::convolve(p_tilde, p_xz);
    const double log_eps_c = std::log2(targets.eps_C);
    auto complete = [&](std::size_t n1) { return log2_eps_C_bound(n, n1, p_eff, grid) <= log_eps_c; };
    if (!complete(0)) {
        return std::nullopt;
    }
    std::size_t good = 0;
    std::size_t bad = 2 * n + 1;
    if (complete(2 * n)) {
        good = 2 * n;
        bad = good;
    }
    while (bad - good > 1) {
        const std::size_t mid = good + (bad - good) / 2;
        (complete(mid) ? good : bad) = mid;
    }
    out.m1 = good;
    return out;
}

double leakage_exponent_lower(double r2, const dists::PauliDist &p_xz, const TGrid &grid) {
    if (!(r2 >= 0.0)) {
        throw std::invalid_argument("leakage exponent needs R2 >= 0");
    }
    auto f = [&](double t) { return -(t / (1.0 + t)) * (r2 - dists::renyi_entropy(p_xz, 1.0 / (1.0 + t))); };
    return std::max(0.0, -minimize_over_t(f, grid).value);
}

FiniteLengthReport finite_length_report(const SecurityTargets &targets, std::size_t n, const dists::PauliDist &p_xz,
                                        const dists::PauliDist &p_tilde, const TGrid &grid) {
    FiniteLengthReport report{};
    report.n = n;
    const auto lengths = m_hat_lengths(targets, n, p_xz, p_tilde, grid);
    if (!lengths) {
        report.feasible = false;
        return report;
    }
    const double log_p = std::log2(static_cast<double>(p_xz.p()));
    const double dn = static_cast<double>(n);
    report.feasible = true;
    report.n1 = lengths->m1;
    report.sacrifice = lengths->m2;
    report.n3 = lengths->m3;
    report.R1 = static_cast<double>(lengths->m1) * log_p / dn;
    report.R2 = static_cast<double>(lengths->m2) * log_p / dn;
    report.R3 = static_cast<double>(lengths->m3) * log_p / dn;
    report.R = report.R1 - report.R2 - report.R3;
    report.eps_C = eps_C_bound(n, lengths->m1, dists::convolve(p_tilde, p_xz), grid);
    report.eps_E = eps_E_bound(n, lengths->m2, p_xz, grid);
    report.eps_B = eps_B_bound(lengths->m3, p_xz.p());
    return report;
}

}  // namespace pdc::bounds
