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

#include "pdc/protocol.h"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "pdc/errors.h"
#include "pdc/qexact.h"

namespace pdc::protocol {
namespace {

gf::FieldVec uniform_vec(std::uint32_t p, std::size_t length, Rng &rng) {
    std::vector<std::uint32_t> values(length);
    for (auto &v : values) {
        v = static_cast<std::uint32_t>(rng.uniform_below(p));
    }
    return gf::FieldVec(std::move(values), p);
}

void require_message(const ProtocolConfig &config, const gf::FieldVec &m) {
    if (m.size() != config.n2 || m.modulus() != config.p) {
        throw std::invalid_argument("message must lie in F_p^{n2}");
    }
}

void require_code(const ProtocolConfig &config, const wiretap::LinearCode &code) {
    if (code.p() != config.p || code.n() != config.n || code.n1() != config.n1) {
        throw std::invalid_argument("code does not match the protocol configuration");
    }
}

/// Alice's encoding step shared by both protocols.
struct Encoded {
    hashing::SeedS s;
    hashing::SeedSPrime s_prime;
    gf::FieldVec y;
    gf::FieldVec l;
    gf::FieldVec x;
};

Encoded encode(const ProtocolConfig &config, const wiretap::LinearCode &code, const gf::FieldVec &m, const Rng &rng) {
    const hashing::HashParams hp = hash_params(config);
    Rng seeds = rng.split("seeds");
    Rng payload = rng.split("payload");
    hashing::SeedS s = hashing::SeedS::random(hp, seeds);
    hashing::SeedSPrime s_prime = hashing::SeedSPrime::random(config.p, config.n2, config.n3, seeds);
    gf::FieldVec y = uniform_vec(config.p, config.n3, payload);
    const gf::FieldVec l2 = uniform_vec(config.p, hp.randomness(), payload);
    gf::FieldVec l = hashing::psi_S(s, m, y, l2);
    gf::FieldVec x = code.encode(l);
    return {std::move(s), std::move(s_prime), std::move(y), std::move(l), std::move(x)};
}

gf::FieldVec add_noise(const ProtocolConfig &config, const gf::FieldVec &word, const Rng &rng) {
    Rng noise = rng.split("noise");
    return wiretap::channel_sample(word, wiretap::ClassicalChannelWc{effective_noise(config)}, noise);
}

/// Public communication, decoding and verification on the outcome string
/// Bob decodes.
void finish(Transcript &t, const wiretap::LinearCode &code, const Encoded &enc, const gf::FieldVec &m,
            const gf::FieldVec &to_decode) {
    t.acknowledge_reception();
    const gf::FieldVec c = hashing::g_Sprime(enc.s_prime, m, enc.y);
    t.publish(enc.s, enc.s_prime, c);
    const gf::FieldVec l_hat = code.decode(to_decode);
    t.ecc_error = !(l_hat == enc.l);
    const auto [y_hat, m_hat] = hashing::split_mprime(hashing::f_S(enc.s, l_hat), enc.s.params().n3);
    t.m_hat = m_hat;
    t.y_hat = y_hat;
    t.log("decode");
    t.verdict = verify(enc.s_prime, m_hat, y_hat, c);
    t.log(t.verdict == Verdict::accepted ? "accept" : "abort");
}

double classical_min_leakage(const std::vector<double> &probs, const std::vector<std::vector<double>> &rows) {
    const std::size_t dim = rows.front().size();
    if (dim > qexact::kMaxDimension) {
        throw SizeCapExceeded("lnm_check: joint output alphabet exceeds " + std::to_string(qexact::kMaxDimension));
    }
    qexact::CqState cq;
    cq.probs = probs;
    for (const auto &row : rows) {
        Eigen::VectorXcd diag(static_cast<Eigen::Index>(dim));
        for (std::size_t e = 0; e < dim; ++e) {
            diag(static_cast<Eigen::Index>(e)) = row[e];
        }
        cq.states.push_back(diag.asDiagonal());
    }
    return qexact::leakage_d(cq).minimized;
}

}  // namespace

void validate(const ProtocolConfig &config) {
    gf::require_prime(config.p);
    if (config.p_xz.p() != config.p || config.p_tilde.p() != config.p) {
        throw std::invalid_argument("noise distributions must be over F_p^2");
    }
    if (config.n == 0 || config.n1 > 2 * config.n) {
        throw std::invalid_argument("need n >= 1 and n1 <= 2n");
    }
    hashing::validate(hash_params(config));
}

hashing::HashParams hash_params(const ProtocolConfig &config) {
    return {config.p, config.n1, config.n2, config.n3};
}

dists::PauliDist effective_noise(const ProtocolConfig &config) {
    return dists::convolve(config.p_tilde, config.p_xz);
}

std::unique_ptr<wiretap::LinearCode> build_code(const ProtocolConfig &config) {
    validate(config);
    Rng rng = Rng(config.seed).split("code");
    auto code = wiretap::make_code(config.code, config.n, effective_noise(config), rng, config.n1);
    require_code(config, *code);
    return code;
}

AdversaryMode AdversaryMode::tampering(TamperFn fn) {
    if (!fn) {
        fn = [](const gf::FieldVec &x_hat, Rng &rng) { return uniform_vec(x_hat.modulus(), x_hat.size(), rng); };
    }
    return {AdversaryKind::tamper, std::move(fn)};
}

std::string to_string(AdversaryKind kind) {
    switch (kind) {
        case AdversaryKind::none:
            return "none";
        case AdversaryKind::intercept:
            return "intercept";
        case AdversaryKind::tamper:
            return "tamper";
    }
    return "unknown";
}

std::string to_string(Verdict verdict) { return verdict == Verdict::accepted ? "accepted" : "aborted"; }

void Transcript::acknowledge_reception() {
    acknowledged_ = true;
    log("ack");
}

void Transcript::publish(const hashing::SeedS &seed_s, const hashing::SeedSPrime &seed_s_prime,
                         const gf::FieldVec &tag) {
    if (!acknowledged_) {
        throw std::logic_error("public values sent before reception was acknowledged");
    }
    s = seed_s.toeplitz().entries();
    s_prime = seed_s_prime.toeplitz().entries();
    c = tag;
    log("public");
}

gf::FieldVec Transcript::transmitted() const {
    if (!x) {
        throw std::logic_error("nothing was transmitted");
    }
    return x_bar ? *x + *x_bar : *x;
}

Verdict verify(const hashing::SeedSPrime &seed, const gf::FieldVec &m_hat, const gf::FieldVec &y_hat,
               const gf::FieldVec &c) {
    return hashing::g_Sprime(seed, m_hat, y_hat) == c ? Verdict::accepted : Verdict::aborted;
}

hashing::Rational acceptance_probability(std::uint32_t p, const gf::FieldVec &m, const gf::FieldVec &y,
                                         const gf::FieldVec &m_hat, const gf::FieldVec &y_hat) {
    gf::require_prime(p);
    const std::size_t n2 = m.size();
    const std::size_t n3 = y.size();
    const std::size_t seed_len = n2 + n3 - 1;
    std::uint64_t seeds = 1;
    for (std::size_t i = 0; i < seed_len; ++i) {
        seeds *= p;
        if (seeds > wiretap::kEnumerationCap) {
            throw SizeCapExceeded("too many verification seeds to enumerate");
        }
    }
    std::uint64_t accepted = 0;
    for (std::uint64_t i = 0; i < seeds; ++i) {
        const hashing::SeedSPrime seed(gf::FieldVec::from_index(i, seed_len, p), n2, n3);
        if (verify(seed, m_hat, y_hat, hashing::g_Sprime(seed, m, y)) == Verdict::accepted) {
            ++accepted;
        }
    }
    return {accepted, seeds};
}

Transcript run_protocol1(const ProtocolConfig &config, const wiretap::LinearCode &code, const gf::FieldVec &m,
                         const AdversaryMode &adversary, const Rng &rng) {
    validate(config);
    require_code(config, code);
    require_message(config, m);
    Transcript t;
    const Encoded enc = encode(config, code, m, rng);
    t.l = enc.l;
    t.x = enc.x;
    t.log("encode");
    if (adversary.kind == AdversaryKind::intercept) {
        t.log("intercepted");
        t.log("abort");
        t.verdict = Verdict::aborted;
        return t;
    }
    gf::FieldVec x_hat = add_noise(config, enc.x, rng);
    if (adversary.kind == AdversaryKind::tamper) {
        Rng adv = rng.split("adversary");
        x_hat = adversary.tamper(x_hat, adv);
        if (x_hat.size() != enc.x.size() || x_hat.modulus() != config.p) {
            throw std::invalid_argument("tampered outcome has the wrong shape");
        }
        t.log("tampered");
    }
    t.x_hat = x_hat;
    t.log("receive");
    finish(t, code, enc, m, x_hat);
    return t;
}

Transcript run_protocol1(const ProtocolConfig &config, const gf::FieldVec &m, const AdversaryMode &adversary,
                         const Rng &rng) {
    return run_protocol1(config, *build_code(config), m, adversary, rng);
}

Transcript run_protocol3(const ProtocolConfig &config, const wiretap::LinearCode &code, const gf::FieldVec &m,
                         const Rng &rng, const std::optional<gf::FieldVec> &mask) {
    validate(config);
    require_code(config, code);
    require_message(config, m);
    Transcript t;
    const Encoded enc = encode(config, code, m, rng);
    gf::FieldVec x_bar = [&] {
        if (mask) {
            if (mask->size() != enc.x.size() || mask->modulus() != config.p) {
                throw std::invalid_argument("mask must lie in F_p^{2n}");
            }
            return *mask;
        }
        Rng mask_rng = rng.split("mask");
        return uniform_vec(config.p, enc.x.size(), mask_rng);
    }();
    t.l = enc.l;
    t.x = enc.x;
    t.x_bar = x_bar;
    t.log("encode");
    const gf::FieldVec x_under = add_noise(config, enc.x + x_bar, rng);
    t.x_hat = x_under;
    t.log("receive");
    finish(t, code, enc, m, x_under - x_bar);
    return t;
}

Transcript run_protocol3(const ProtocolConfig &config, const gf::FieldVec &m, const Rng &rng,
                         const std::optional<gf::FieldVec> &mask) {
    return run_protocol3(config, *build_code(config), m, rng, mask);
}

RateEstimate wilson(std::size_t count, std::size_t trials) {
    if (trials == 0 || count > trials) {
        throw std::invalid_argument("wilson: need 0 <= count <= trials and trials >= 1");
    }
    constexpr double z = 1.96;
    const double nn = static_cast<double>(trials);
    const double phat = static_cast<double>(count) / nn;
    const double denom = 1.0 + z * z / nn;
    const double centre = (phat + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z * z / (4.0 * nn * nn)) / denom;
    return {count, trials, phat, std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

AnalyticBounds analytic_bounds(const ProtocolConfig &config, const bounds::TGrid &grid) {
    validate(config);
    return {bounds::eps_C_bound(config.n, config.n1, effective_noise(config), grid),
            bounds::eps_E_bound(config.n, config.n1 - config.n2 - config.n3, config.p_xz, grid),
            bounds::eps_B_bound(config.n3, config.p)};
}

MonteCarloStats monte_carlo(const ProtocolConfig &config, std::size_t trials, const AdversaryMode &adversary) {
    if (trials == 0) {
        throw std::invalid_argument("monte_carlo needs at least one trial");
    }
    const auto code = build_code(config);
    const Rng master(config.seed);
    std::size_t aborts = 0;
    std::size_t undetected = 0;
    std::size_t correct = 0;
    std::size_t ecc = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        const Rng trial = master.split(static_cast<std::uint64_t>(k));
        Rng message_rng = trial.split("message");
        const gf::FieldVec m = uniform_vec(config.p, config.n2, message_rng);
        const Transcript t = run_protocol1(config, *code, m, adversary, trial);
        if (t.verdict == Verdict::aborted) {
            ++aborts;
        } else if (*t.m_hat == m) {
            ++correct;
        } else {
            ++undetected;
        }
        if (t.ecc_error) {
            ++ecc;
        }
    }
    return {wilson(aborts, trials), wilson(undetected, trials), wilson(correct, trials), wilson(ecc, trials)};
}

LnmResult lnm_check(std::uint32_t p, std::size_t n2, std::size_t n3, const std::vector<std::vector<double>> &e_rows) {
    gf::require_prime(p);
    if (n2 < 1 || n3 < 1) {
        throw std::invalid_argument("n2 and n3 must be at least 1");
    }
    std::uint64_t messages = 1;
    std::uint64_t checks = 1;
    for (std::size_t i = 0; i < n2; ++i) {
        messages *= p;
    }
    for (std::size_t i = 0; i < n3; ++i) {
        checks *= p;
    }
    const std::uint64_t seeds = messages * checks / p;
    if (e_rows.size() != messages * checks || e_rows.empty()) {
        throw std::invalid_argument("lnm_check: one row of E' per value of M'");
    }
    const std::size_t e_dim = e_rows.front().size();
    for (const auto &row : e_rows) {
        if (row.size() != e_dim) {
            throw std::invalid_argument("lnm_check: rows of E' must have equal length");
        }
    }
    if (e_dim * seeds * checks > qexact::kMaxDimension) {
        throw SizeCapExceeded("lnm_check: joint output alphabet exceeds " + std::to_string(qexact::kMaxDimension));
    }

    const std::vector<double> uniform_mprime(e_rows.size(), 1.0 / static_cast<double>(e_rows.size()));
    const double right = classical_min_leakage(uniform_mprime, e_rows);

    // Joint distribution of (E', S', C) given M, with Y and S' uniform.
    std::vector<std::vector<double>> joint(messages, std::vector<double>(e_dim * seeds * checks, 0.0));
    const double weight = 1.0 / static_cast<double>(checks * seeds);
    for (std::uint64_t mi = 0; mi < messages; ++mi) {
        const gf::FieldVec m = gf::FieldVec::from_index(mi, n2, p);
        for (std::uint64_t yi = 0; yi < checks; ++yi) {
            const gf::FieldVec y = gf::FieldVec::from_index(yi, n3, p);
            const auto &row = e_rows[hashing::join_mprime(y, m).to_index()];
            for (std::uint64_t si = 0; si < seeds; ++si) {
                const hashing::SeedSPrime seed(gf::FieldVec::from_index(si, n2 + n3 - 1, p), n2, n3);
                const std::uint64_t ci = hashing::g_Sprime(seed, m, y).to_index();
                for (std::size_t e = 0; e < e_dim; ++e) {
                    joint[mi][(e * seeds + si) * checks + ci] += weight * row[e];
                }
            }
        }
    }
    const std::vector<double> uniform_m(messages, 1.0 / static_cast<double>(messages));
    return {classical_min_leakage(uniform_m, joint), right};
}

}  // namespace pdc::protocol
