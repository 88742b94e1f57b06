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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pdc/bounds.h"
#include "pdc/dists.h"
#include "pdc/estimation.h"
#include "pdc/hashing.h"
#include "pdc/identities.h"
#include "pdc/protocol.h"
#include "pdc/qexact.h"
#include "pdc/serialization.h"
#include "pdc/wiretap.h"
#include "test_util.h"

namespace {

using namespace pdc;
using dists::PauliDist;
using gf::FieldVec;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

Outcome rate_curve() {
    double crossing = -1.0;
    double prev_mix = 0.0, prev_r = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double mix = 0.25 * i / 99.0;
        const auto d = dists::depolarizing(mix, 2);
        const double r = bounds::asymptotic_rates(d, d).R_star;
        // Cross-check against 2 - H(P) - H(P * P) from the direct convolution.
        const double direct = 2.0 - dists::shannon_entropy(d) -
                              testing::renyi_oracle(testing::convolve_oracle(d, d), 1.0);
        if (std::abs(r - direct) > 1e-12) return {false, fmt("rate mismatch at mix %.4f", mix)};
        if (i > 0 && prev_r > 0.0 && r <= 0.0) crossing = prev_mix + (mix - prev_mix) * prev_r / (prev_r - r);
        prev_mix = mix;
        prev_r = r;
    }
    return {crossing >= 0.17 && crossing <= 0.19, fmt("zero crossing at mix %.4f", crossing)};
}

Outcome finite_rates() {
    const bounds::SecurityTargets targets{0.2, 1e-9, 1e-9};
    const auto d = dists::depolarizing(0.05, 2);
    const double r_star = bounds::asymptotic_rates(d, d).R_star;
    const auto grid = bounds::TGrid::standard();
    double prev = -1e300, last = 0.0;
    bool monotone = true;
    std::string rates;
    for (std::size_t n : {1000u, 10000u, 100000u, 1000000u}) {
        const auto rep = bounds::finite_length_report(targets, n, d, d, grid);
        if (!rep.feasible) return {false, fmt("infeasible at n = %zu", n)};
        if (rep.eps_C > 0.2 || rep.eps_E > 1e-9 || rep.eps_B > 1e-9) return {false, fmt("targets missed at n = %zu", n)};
        monotone = monotone && rep.R >= prev;
        prev = last = rep.R;
        rates += fmt(" %.4f", rep.R);
    }
    const bool close = std::abs(last - r_star) <= 0.05;
    return {monotone && close, fmt("R over n-grid:%s, R* = %.4f", rates.c_str(), r_star)};
}

Outcome identity_suite() {
    std::mt19937_64 gen(20);
    double worst = 0.0, slack = 1e300;
    bool ok = true;
    for (std::uint32_t p : {2u, 3u}) {
        for (int i = 0; i < 20; ++i) {
            const auto P = testing::random_dist(p, gen);
            const auto Pt = testing::random_dist(p, gen);
            for (int k = 1; k <= 9; ++k) {
                const auto r = qexact::identity_residuals(P, Pt, 0.1 * k);
                ok = ok && r.ok(1e-8);
                worst = std::max(worst, r.worst_equality());
                slack = std::min(slack, r.h_up_ae_slack);
            }
        }
    }
    return {ok && worst < 1e-8 && slack >= -1e-8,
            fmt("720 instances, worst residual %.2e, min slack %.2e", worst, slack)};
}

Outcome leakage_bound_domination() {
    struct Instance {
        std::string name;
        std::unique_ptr<wiretap::LinearCode> code;
        hashing::HashParams params;
        wiretap::EveChannel eve;
    };
    std::vector<Instance> instances;
    const auto noise2 = dists::depolarizing(0.1, 2);
    auto identity2 = [] { return std::make_unique<wiretap::IdentityCode>(2, 2); };
    for (double mix : {0.1, 0.3, 0.6, 1.0})
        instances.push_back({fmt("identity/noisy%.1f", mix), identity2(), {2, 4, 1, 1}, wiretap::eve_noisy_copy(dists::depolarizing(mix, 2))});
    instances.push_back({"identity/noiseless", identity2(), {2, 4, 1, 1}, wiretap::eve_noiseless(2)});
    instances.push_back({"identity/constant", identity2(), {2, 4, 1, 1}, wiretap::eve_constant(2)});
    for (double mix : {0.3, 0.7})
        instances.push_back({fmt("repetition2/noisy%.1f", mix), std::make_unique<wiretap::RepetitionCode>(4, 2, noise2),
                             {2, 4, 1, 1}, wiretap::eve_noisy_copy(dists::depolarizing(mix, 2))});
    Rng rng(41);
    for (double mix : {0.4, 0.8}) {
        auto code = wiretap::make_code("random", 2, dists::depolarizing(0.1, 3), rng, 3);
        instances.push_back({fmt("random3/noisy%.1f", mix), std::move(code), {3, 3, 1, 1},
                             wiretap::eve_noisy_copy(dists::depolarizing(mix, 3))});
    }
    for (double mix : {0.25, 0.5})
        instances.push_back({fmt("identity/purification%.2f", mix), identity2(), {2, 4, 1, 1},
                             wiretap::eve_from_purification(dists::depolarizing(mix, 2))});

    const auto classical_grid = bounds::TGrid::standard();
    const auto quantum_grid = bounds::TGrid::log_spaced(30);
    bool dominated = true;
    int strict = 0;
    double tightest = 1e300;
    for (const auto &in : instances) {
        const double exact = wiretap::exact_leakage(*in.code, in.params, in.eve);
        const auto bound = wiretap::theorem1_bound(*in.code, in.params, in.eve,
                                                   in.eve.is_quantum() ? quantum_grid : classical_grid);
        dominated = dominated && exact <= bound.value + 1e-12;
        strict += exact < bound.value - 1e-9;
        tightest = std::min(tightest, bound.value - exact);
    }
    return {dominated && strict >= 1 && instances.size() >= 10,
            fmt("%zu instances, %d strict, smallest gap %.3e", instances.size(), strict, tightest)};
}

Outcome verification_exactness() {
    bool exact = true;
    for (std::size_t n2 = 1; n2 <= 2; ++n2)
        for (std::size_t n3 = 1; n3 <= 2; ++n3) {
            const std::uint64_t M = ipow(2, n2), Y = ipow(2, n3), seeds = ipow(2, n2 + n3 - 1);
            hashing::Rational worst{0, 1};
            for (std::uint64_t m = 0; m < M; ++m)
                for (std::uint64_t mh = 0; mh < M; ++mh) {
                    if (m == mh) continue;
                    for (std::uint64_t y = 0; y < Y; ++y)
                        for (std::uint64_t yh = 0; yh < Y; ++yh) {
                            const auto mv = FieldVec::from_index(m, n2, 2), mhv = FieldVec::from_index(mh, n2, 2);
                            const auto yv = FieldVec::from_index(y, n3, 2), yhv = FieldVec::from_index(yh, n3, 2);
                            std::uint64_t hits = 0;
                            for (std::uint64_t s = 0; s < seeds; ++s) {
                                const hashing::SeedSPrime seed(FieldVec::from_index(s, n2 + n3 - 1, 2), n2, n3);
                                hits += protocol::verify(seed, mhv, yhv, hashing::g_Sprime(seed, mv, yv)) ==
                                        protocol::Verdict::accepted;
                            }
                            const hashing::Rational r{hits, seeds};
                            if (r.value() > worst.value()) worst = r;
                        }
                }
            exact = exact && worst == (hashing::Rational{1, Y});
        }
    Rng rng(5);
    const std::size_t trials = 100000;
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto seed = hashing::SeedSPrime::random(2, 2, 10, rng);
        const auto m = FieldVec::from_index(rng.uniform_below(4), 2, 2);
        const auto m_hat = FieldVec::from_index((m.to_index() + 1 + rng.uniform_below(3)) % 4, 2, 2);
        const auto y = FieldVec::from_index(rng.uniform_below(1024), 10, 2);
        const auto y_hat = FieldVec::from_index(rng.uniform_below(1024), 10, 2);
        accepted += protocol::verify(seed, m_hat, y_hat, hashing::g_Sprime(seed, m, y)) == protocol::Verdict::accepted;
    }
    const double q = std::ldexp(1.0, -10), sigma = std::sqrt(q * (1 - q) / trials);
    const double rate = double(accepted) / trials;
    return {exact && std::abs(rate - q) <= 3 * sigma,
            fmt("exhaustive sup = 2^-n3 %s; MC rate %.3e vs %.3e (3 sigma %.1e)", exact ? "exact" : "WRONG", rate, q,
                3 * sigma)};
}

std::vector<double> marginal_oracle(const PauliDist &d, std::uint32_t l, std::uint32_t k) {
    const std::uint32_t p = d.p();
    std::vector<double> out(p, 0.0);
    for (std::uint32_t x = 0; x < p; ++x)
        for (std::uint32_t z = 0; z < p; ++z) out[(l * x + p * p - k * z) % p] += d(x, z);
    return out;
}

double max_error(std::span<const double> a, std::span<const double> b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

Outcome estimation_round_trip() {
    std::mt19937_64 gen(60);
    double worst = 0.0;
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int i = 0; i < 100; ++i) {
            const auto d = testing::random_dist(p, gen);
            std::vector<dists::MarginalDist> marginals;
            for (const auto &s : estimation::settings(p)) marginals.emplace_back(p, marginal_oracle(d, s.l(p), s.k(p)));
            worst = std::max(worst, max_error(estimation::reconstruct(estimation::char_table(marginals)), d.probs()));
        }

    const auto truth = dists::depolarizing(0.05, 2);
    std::vector<double> xs, ys;
    for (std::size_t shots : {1000u, 4000u, 16000u, 64000u}) {
        std::vector<double> tv;
        for (int i = 0; i < 60; ++i) {
            Rng rng(7000 * shots + i);
            tv.push_back(*estimation::estimate(truth, shots, rng).tv_to_truth);
        }
        std::nth_element(tv.begin(), tv.begin() + tv.size() / 2, tv.end());
        xs.push_back(std::log(double(shots)));
        ys.push_back(std::log(tv[tv.size() / 2]));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;

    double twirl = 0.0;
    for (int i = 0; i < 10; ++i) {
        const std::uint32_t p = i % 2 == 0 ? 2 : 3;
        const qexact::DensityMatrix rho({p, p}, testing::random_density(p * p, gen));
        for (const auto &s : estimation::settings(p)) {
            const auto [direct, twirled] = estimation::twirled_statistics_check(rho, s);
            twirl = std::max(twirl, max_error(direct.probs(), twirled.probs()));
        }
    }
    return {worst < 1e-12 && std::abs(slope + 0.5) <= 0.1 && twirl < 1e-10,
            fmt("round trip %.2e, TV slope %.3f, twirl %.2e", worst, slope, twirl)};
}

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome protocol_coupling() {
    const auto config = io::parse_config(slurp(PDC_CONFIG_DIR "/verification.conf"));
    const auto code = protocol::build_code(config);
    Rng rng(70);
    std::size_t agree = 0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::uint32_t> v(config.n2);
        for (auto &x : v) x = std::uint32_t(rng.uniform_below(config.p));
        const FieldVec m(v, config.p);
        const Rng shared(std::uint64_t(i) + 1);
        const auto t1 = protocol::run_protocol1(config, *code, m, protocol::AdversaryMode::none(), shared);
        const auto t3 = protocol::run_protocol3(config, *code, m, shared);
        agree += t1.verdict == t3.verdict && *t1.m_hat == *t3.m_hat;
    }
    const auto stats = protocol::monte_carlo(config, 10000, protocol::AdversaryMode::none());
    const auto &ecc = stats.ecc_block_error_rate;
    const double abort = stats.abort_rate.rate;
    return {agree == 1000 && abort >= ecc.lo && abort <= ecc.hi,
            fmt("%zu/1000 coupled verdicts agree; abort %.4f, ECC %.4f [%.4f, %.4f]", agree, abort, ecc.rate, ecc.lo,
                ecc.hi)};
}

Outcome uhf_exactness() {
    bool exact = true, balanced = true;
    for (std::size_t n1 = 3; n1 <= 4; ++n1)
        for (std::size_t n2 = 1; n2 + 1 < n1; ++n2)
            for (std::size_t n3 = 1; n2 + n3 < n1; ++n3) {
                const hashing::HashParams hp{2, n1, n2, n3};
                const std::uint64_t seeds = ipow(2, n1 - 1), inputs = ipow(2, n1);
                std::vector<std::vector<std::uint64_t>> images(seeds, std::vector<std::uint64_t>(inputs));
                for (std::uint64_t s = 0; s < seeds; ++s) {
                    const hashing::SeedS seed(FieldVec::from_index(s, n1 - 1, 2), hp);
                    std::map<std::uint64_t, std::uint64_t> counts;
                    for (std::uint64_t l = 0; l < inputs; ++l) {
                        images[s][l] = hashing::f_S(seed, FieldVec::from_index(l, n1, 2)).to_index();
                        ++counts[images[s][l]];
                    }
                    balanced = balanced && counts.size() == ipow(2, n2 + n3);
                    for (auto [k, c] : counts) balanced = balanced && c == ipow(2, n1 - n2 - n3);
                }
                const std::size_t tail = n1 - n2 - n3;
                for (std::uint64_t a = 0; a < inputs; ++a)
                    for (std::uint64_t b = 0; b < inputs; ++b) {
                        if (a == b) continue;
                        std::uint64_t hits = 0;
                        for (std::uint64_t s = 0; s < seeds; ++s) hits += images[s][a] == images[s][b];
                        const auto la = FieldVec::from_index(a, n1, 2), lb = FieldVec::from_index(b, n1, 2);
                        const bool same_tail = la.slice(n2 + n3, tail) == lb.slice(n2 + n3, tail);
                        const hashing::Rational brute{hits, seeds};
                        const hashing::Rational closed = same_tail ? hashing::Rational{0, 1}
                                                                   : hashing::Rational{1, ipow(2, n2 + n3)};
                        exact = exact && brute == closed && hashing::collision_probability(la, lb, hp) == closed;
                    }
            }
    return {exact && balanced, fmt("collisions %s, preimages %s", exact ? "exact" : "WRONG",
                                   balanced ? "balanced" : "UNBALANCED")};
}

}  // namespace

int main() {
    struct Criterion {
        const char *id;
        const char *name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"AC1", "asymptotic rate curve", 1, rate_curve},
        {"AC2", "finite-length rates", 30, finite_rates},
        {"AC3", "entropy identity suite", 60, identity_suite},
        {"AC4", "leakage bound domination", 120, leakage_bound_domination},
        {"AC5", "error verification exactness", 30, verification_exactness},
        {"AC6", "estimation round trip", 60, estimation_round_trip},
        {"AC7", "protocol coupling and completeness", 60, protocol_coupling},
        {"AC8", "universal hash exactness", 10, uhf_exactness},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception &e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = out.pass && secs < c.limit_s;
        failures += !pass;
        std::printf("%s %s: %s [%.2f s / %.0f s] %s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs, c.limit_s,
                    out.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
