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

#include "pdc/wiretap.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "pdc/errors.h"

namespace pdc::wiretap {
namespace {

std::uint64_t ipow(std::uint64_t base, std::size_t exponent) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        out *= base;
    }
    return out;
}

void require_length(const gf::FieldVec &v, std::size_t length, std::uint32_t p, const char *what) {
    if (v.size() != length || v.modulus() != p) {
        throw std::invalid_argument(std::string(what) + ": length or modulus mismatch");
    }
}

double log_prob(double v) { return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity(); }

/// Log-likelihood of the pair noise turning (cx, cz) into (rx, rz).
double pair_log_likelihood(const dists::PauliDist &noise, std::uint32_t rx, std::uint32_t rz, std::uint32_t cx,
                           std::uint32_t cz) {
    const std::uint32_t p = noise.p();
    return log_prob(noise(gf::sub_mod(rx, cx, p), gf::sub_mod(rz, cz, p)));
}

std::size_t find_root(std::vector<std::size_t> &parent, std::size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

}  // namespace

IdentityCode::IdentityCode(std::uint32_t p, std::size_t n) : p_(p), n_(n) {
    gf::require_prime(p);
    if (n == 0) {
        throw std::invalid_argument("code needs at least one channel use");
    }
}

gf::FieldVec IdentityCode::encode(const gf::FieldVec &l) const {
    require_length(l, n1(), p_, "IdentityCode::encode");
    return l;
}

gf::FieldVec IdentityCode::decode(const gf::FieldVec &received) const {
    require_length(received, length(), p_, "IdentityCode::decode");
    return received;
}

RepetitionCode::RepetitionCode(std::size_t n, std::size_t r, dists::PauliDist noise)
    : n_(n), r_(r), noise_(std::move(noise)) {
    if (n == 0 || r == 0 || (2 * n) % r != 0) {
        throw std::invalid_argument("repetition factor must divide 2n");
    }
    const std::size_t k = n1();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t use = 0; use < n; ++use) {
        const std::size_t a = find_root(parent, (2 * use) / r);
        const std::size_t b = find_root(parent, (2 * use + 1) / r);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<std::vector<std::size_t>> groups(k);
    for (std::size_t i = 0; i < k; ++i) {
        groups[find_root(parent, i)].push_back(i);
    }
    for (auto &g : groups) {
        if (g.empty()) {
            continue;
        }
        if (ipow(p(), g.size()) > kEnumerationCap) {
            throw SizeCapExceeded("repetition decoder component too large to enumerate");
        }
        components_.push_back(std::move(g));
    }
}

gf::FieldVec RepetitionCode::encode(const gf::FieldVec &l) const {
    require_length(l, n1(), p(), "RepetitionCode::encode");
    std::vector<std::uint32_t> out(length());
    for (std::size_t pos = 0; pos < out.size(); ++pos) {
        out[pos] = l[pos / r_];
    }
    return gf::FieldVec(std::move(out), p());
}

gf::FieldVec RepetitionCode::decode(const gf::FieldVec &received) const {
    require_length(received, length(), p(), "RepetitionCode::decode");
    const std::uint32_t q = p();
    std::vector<std::uint32_t> decided(n1(), 0);
    std::vector<std::uint32_t> guess(n1(), 0);
    for (const auto &comp : components_) {
        std::vector<std::size_t> uses;
        for (std::size_t sym : comp) {
            for (std::size_t pos = sym * r_; pos < (sym + 1) * r_; ++pos) {
                uses.push_back(pos / 2);
            }
        }
        std::sort(uses.begin(), uses.end());
        uses.erase(std::unique(uses.begin(), uses.end()), uses.end());
        const std::uint64_t count = ipow(q, comp.size());
        double best = -std::numeric_limits<double>::infinity();
        std::uint64_t best_index = 0;
        for (std::uint64_t index = 0; index < count; ++index) {
            std::uint64_t rest = index;
            for (std::size_t sym : comp) {
                guess[sym] = static_cast<std::uint32_t>(rest % q);
                rest /= q;
            }
            double ll = 0.0;
            for (std::size_t use : uses) {
                ll += pair_log_likelihood(noise_, received[2 * use], received[2 * use + 1], guess[(2 * use) / r_],
                                          guess[(2 * use + 1) / r_]);
            }
            if (ll > best) {
                best = ll;
                best_index = index;
            }
        }
        for (std::size_t sym : comp) {
            decided[sym] = static_cast<std::uint32_t>(best_index % q);
            best_index /= q;
        }
    }
    return gf::FieldVec(std::move(decided), q);
}

namespace {

std::size_t rank_mod_p(std::vector<std::uint32_t> m, std::size_t rows, std::size_t cols, std::uint32_t p) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot * cols + col] == 0) {
            ++pivot;
        }
        if (pivot == rows) {
            continue;
        }
        for (std::size_t c = 0; c < cols; ++c) {
            std::swap(m[pivot * cols + c], m[rank * cols + c]);
        }
        const std::uint32_t inv = gf::inv_mod(m[rank * cols + col], p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r * cols + col] == 0) {
                continue;
            }
            const std::uint32_t factor = gf::mul_mod(m[r * cols + col], inv, p);
            for (std::size_t c = 0; c < cols; ++c) {
                m[r * cols + c] = gf::sub_mod(m[r * cols + c], gf::mul_mod(factor, m[rank * cols + c], p), p);
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

RandomLinearCode::RandomLinearCode(std::size_t n, std::size_t n1, dists::PauliDist noise, Rng &rng)
    : n_(n), n1_(n1), noise_(std::move(noise)) {
    if (n == 0 || 2 * n > 8 || noise_.p() > 3) {
        throw SizeCapExceeded("random linear codes are limited to 2n <= 8 and p <= 3");
    }
    if (n1 == 0 || n1 > 2 * n) {
        throw std::invalid_argument("random linear code needs 1 <= n1 <= 2n");
    }
    const std::uint32_t p = noise_.p();
    generator_.resize(2 * n * n1);
    do {
        for (auto &g : generator_) {
            g = static_cast<std::uint32_t>(rng.uniform_below(p));
        }
    } while (rank_mod_p(generator_, 2 * n, n1, p) < n1);
}

gf::FieldVec RandomLinearCode::encode(const gf::FieldVec &l) const {
    require_length(l, n1_, p(), "RandomLinearCode::encode");
    const std::uint32_t q = p();
    std::vector<std::uint32_t> out(length(), 0);
    for (std::size_t row = 0; row < out.size(); ++row) {
        std::uint32_t acc = 0;
        for (std::size_t col = 0; col < n1_; ++col) {
            acc = gf::add_mod(acc, gf::mul_mod(generator_[row * n1_ + col], l[col], q), q);
        }
        out[row] = acc;
    }
    return gf::FieldVec(std::move(out), q);
}

gf::FieldVec RandomLinearCode::decode(const gf::FieldVec &received) const {
    require_length(received, length(), p(), "RandomLinearCode::decode");
    const std::uint32_t q = p();
    const std::uint64_t count = ipow(q, n1_);
    double best = -std::numeric_limits<double>::infinity();
    std::uint64_t best_index = 0;
    for (std::uint64_t index = 0; index < count; ++index) {
        const gf::FieldVec c = encode(gf::FieldVec::from_index(index, n1_, q));
        double ll = 0.0;
        for (std::size_t use = 0; use < n_; ++use) {
            ll += pair_log_likelihood(noise_, received[2 * use], received[2 * use + 1], c[2 * use], c[2 * use + 1]);
        }
        if (ll > best) {
            best = ll;
            best_index = index;
        }
    }
    return gf::FieldVec::from_index(best_index, n1_, q);
}

std::unique_ptr<LinearCode> make_code(const std::string &name, std::size_t n, const dists::PauliDist &noise,
                                      Rng &rng, std::size_t random_n1) {
    if (name == "identity") {
        return std::make_unique<IdentityCode>(noise.p(), n);
    }
    if (name.rfind("repetition", 0) == 0) {
        const std::string digits = name.substr(10);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            throw std::invalid_argument("repetition code name must be repetition<r>");
        }
        return std::make_unique<RepetitionCode>(n, std::stoul(digits), noise);
    }
    if (name == "random") {
        return std::make_unique<RandomLinearCode>(n, random_n1, noise, rng);
    }
    throw std::invalid_argument("unknown code '" + name + "'");
}

std::size_t generator_rank(const LinearCode &code) {
    const std::size_t rows = code.length();
    const std::size_t cols = code.n1();
    std::vector<std::uint32_t> m(rows * cols);
    for (std::size_t col = 0; col < cols; ++col) {
        std::vector<std::uint32_t> unit(cols, 0);
        unit[col] = 1;
        const gf::FieldVec c = code.encode(gf::FieldVec(std::move(unit), code.p()));
        for (std::size_t row = 0; row < rows; ++row) {
            m[row * cols + col] = c[row];
        }
    }
    return rank_mod_p(std::move(m), rows, cols, code.p());
}

ConformanceReport check_conformance(const LinearCode &code, Rng &rng, std::size_t trials) {
    const std::uint32_t p = code.p();
    const std::size_t k = code.n1();
    auto random_word = [&]() {
        std::vector<std::uint32_t> v(k);
        for (auto &x : v) {
            x = static_cast<std::uint32_t>(rng.uniform_below(p));
        }
        return gf::FieldVec(std::move(v), p);
    };
    ConformanceReport report{true, generator_rank(code) == k, true};
    const std::uint64_t space = ipow(p, k);
    const bool exhaustive = space <= trials;
    const std::uint64_t count = exhaustive ? space : trials;
    for (std::uint64_t i = 0; i < count; ++i) {
        const gf::FieldVec x = exhaustive ? gf::FieldVec::from_index(i, k, p) : random_word();
        const gf::FieldVec y = random_word();
        const auto a = static_cast<std::uint32_t>(rng.uniform_below(p));
        const auto b = static_cast<std::uint32_t>(rng.uniform_below(p));
        const gf::FieldVec lhs = code.encode(x.scaled(a) + y.scaled(b));
        const gf::FieldVec rhs = code.encode(x).scaled(a) + code.encode(y).scaled(b);
        report.linear = report.linear && lhs == rhs;
        report.round_trip = report.round_trip && code.decode(code.encode(x)) == x;
    }
    return report;
}

gf::FieldVec channel_sample(const gf::FieldVec &codeword, const ClassicalChannelWc &channel, Rng &rng) {
    const std::uint32_t p = channel.noise.p();
    if (codeword.size() % 2 != 0 || codeword.modulus() != p) {
        throw std::invalid_argument("channel_sample needs an even-length word over F_p");
    }
    std::vector<std::uint32_t> out(codeword.values().begin(), codeword.values().end());
    for (std::size_t i = 0; i + 1 < out.size(); i += 2) {
        const std::size_t idx = rng.sample(channel.noise.probs());
        out[i] = gf::add_mod(out[i], static_cast<std::uint32_t>(idx / p), p);
        out[i + 1] = gf::add_mod(out[i + 1], static_cast<std::uint32_t>(idx % p), p);
    }
    return gf::FieldVec(std::move(out), p);
}

namespace {

void require_compatible(const LinearCode &code, const hashing::HashParams &params) {
    hashing::validate(params);
    if (code.p() != params.p || code.n1() != params.n1) {
        throw std::invalid_argument("code and hash parameters disagree on p or n1");
    }
}

}  // namespace

gf::FieldVec wiretap_encode(const LinearCode &code, const hashing::SeedS &seed, const gf::FieldVec &m,
                            const gf::FieldVec &y, const gf::FieldVec &l2) {
    require_compatible(code, seed.params());
    return code.encode(hashing::psi_S(seed, m, y, l2));
}

gf::FieldVec wiretap_encode(const LinearCode &code, const hashing::SeedS &seed, const gf::FieldVec &m,
                            const gf::FieldVec &y, Rng &rng) {
    const auto &hp = seed.params();
    std::vector<std::uint32_t> l2(hp.randomness());
    for (auto &v : l2) {
        v = static_cast<std::uint32_t>(rng.uniform_below(hp.p));
    }
    return wiretap_encode(code, seed, m, y, gf::FieldVec(std::move(l2), hp.p));
}

gf::FieldVec wiretap_decode(const LinearCode &code, const hashing::SeedS &seed, const gf::FieldVec &received) {
    require_compatible(code, seed.params());
    return hashing::f_S(seed, code.decode(received));
}

EveChannel eve_constant(std::uint32_t p) {
    gf::require_prime(p);
    return {p, std::vector<std::vector<double>>(static_cast<std::size_t>(p) * p, {1.0}), {}};
}

EveChannel eve_noiseless(std::uint32_t p) {
    gf::require_prime(p);
    const std::size_t k = static_cast<std::size_t>(p) * p;
    EveChannel eve{p, std::vector<std::vector<double>>(k, std::vector<double>(k, 0.0)), {}};
    for (std::size_t i = 0; i < k; ++i) {
        eve.classical[i][i] = 1.0;
    }
    return eve;
}

EveChannel eve_noisy_copy(const dists::PauliDist &noise) {
    const std::uint32_t p = noise.p();
    const std::size_t k = static_cast<std::size_t>(p) * p;
    EveChannel eve{p, std::vector<std::vector<double>>(k, std::vector<double>(k, 0.0)), {}};
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            for (std::uint32_t a = 0; a < p; ++a) {
                for (std::uint32_t b = 0; b < p; ++b) {
                    eve.classical[noise.index(x, z)][noise.index(gf::add_mod(x, a, p), gf::add_mod(z, b, p))] +=
                        noise(a, b);
                }
            }
        }
    }
    return eve;
}

EveChannel eve_from_purification(const dists::PauliDist &p_xz) {
    const std::uint32_t p = p_xz.p();
    const auto tau_ae = qexact::partial_trace(qexact::DensityMatrix(qexact::purify(p_xz)), {0, 2});
    EveChannel eve{p, {}, {}};
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            eve.quantum.push_back(qexact::apply_unitary(tau_ae, qexact::weyl(x, z, p).matrix(), 0).matrix());
        }
    }
    return eve;
}

namespace {

/// Eve's output for every information word l, as a density matrix (quantum)
/// or as a diagonal of output probabilities (classical).
struct EveOutputs {
    bool quantum;
    std::vector<qexact::Matrix> states;
    std::vector<Eigen::VectorXd> dists;
};

EveOutputs eve_outputs(const LinearCode &code, const EveChannel &eve) {
    if (eve.p != code.p()) {
        throw std::invalid_argument("Eve channel and code disagree on p");
    }
    const std::uint32_t p = code.p();
    const std::uint64_t words = ipow(p, code.n1());
    if (words > kEnumerationCap) {
        throw SizeCapExceeded("too many information words to enumerate");
    }
    EveOutputs out{eve.is_quantum(), {}, {}};
    if (out.quantum) {
        if (p != 2 || code.n() > 2) {
            throw SizeCapExceeded("quantum Eve channels are limited to p = 2 and n <= 2");
        }
        std::vector<std::size_t> dims(code.n(), static_cast<std::size_t>(eve.quantum.front().rows()));
        qexact::checked_dimension(dims);
    } else {
        const std::uint64_t outputs = ipow(eve.classical.front().size(), code.n());
        if (outputs > kEnumerationCap) {
            throw SizeCapExceeded("too many Eve outputs to enumerate");
        }
    }
    for (std::uint64_t index = 0; index < words; ++index) {
        const gf::FieldVec c = code.encode(gf::FieldVec::from_index(index, code.n1(), p));
        if (out.quantum) {
            qexact::Matrix rho = qexact::Matrix::Ones(1, 1);
            for (std::size_t use = 0; use < code.n(); ++use) {
                rho = qexact::kron(rho, eve.quantum[static_cast<std::size_t>(c[2 * use]) * p + c[2 * use + 1]]);
            }
            out.states.push_back(std::move(rho));
        } else {
            Eigen::VectorXd dist = Eigen::VectorXd::Ones(1);
            for (std::size_t use = 0; use < code.n(); ++use) {
                const auto &row = eve.classical[static_cast<std::size_t>(c[2 * use]) * p + c[2 * use + 1]];
                Eigen::VectorXd next(dist.size() * static_cast<Eigen::Index>(row.size()));
                for (Eigen::Index i = 0; i < dist.size(); ++i) {
                    for (std::size_t e = 0; e < row.size(); ++e) {
                        next(i * static_cast<Eigen::Index>(row.size()) + static_cast<Eigen::Index>(e)) =
                            dist(i) * row[e];
                    }
                }
                dist = std::move(next);
            }
            out.dists.push_back(std::move(dist));
        }
    }
    return out;
}

/// ||tau_{E|m'} - tau_E||_1 for every m' at one seed, averaging each
/// conditional state over the randomness L2 through the encoder.
std::vector<double> seed_leakage(const hashing::SeedS &seed, const EveOutputs &outputs) {
    const auto &hp = seed.params();
    const std::uint32_t p = hp.p;
    const std::uint64_t messages = ipow(p, hp.hashed());
    const std::uint64_t randomness = ipow(p, hp.randomness());
    std::vector<qexact::Matrix> q_cond;
    std::vector<Eigen::VectorXd> c_cond;
    for (std::uint64_t mi = 0; mi < messages; ++mi) {
        const auto [y, m] = hashing::split_mprime(gf::FieldVec::from_index(mi, hp.hashed(), p), hp.n3);
        qexact::Matrix q_acc;
        Eigen::VectorXd c_acc;
        for (std::uint64_t li = 0; li < randomness; ++li) {
            const gf::FieldVec l = hashing::psi_S(seed, m, y, gf::FieldVec::from_index(li, hp.randomness(), p));
            const std::size_t word = static_cast<std::size_t>(l.to_index());
            if (outputs.quantum) {
                q_acc = li == 0 ? outputs.states[word] : qexact::Matrix(q_acc + outputs.states[word]);
            } else {
                c_acc = li == 0 ? outputs.dists[word] : Eigen::VectorXd(c_acc + outputs.dists[word]);
            }
        }
        if (outputs.quantum) {
            q_cond.push_back(q_acc / static_cast<double>(randomness));
        } else {
            c_cond.push_back(c_acc / static_cast<double>(randomness));
        }
    }
    std::vector<double> out;
    if (outputs.quantum) {
        qexact::Matrix avg = qexact::Matrix::Zero(q_cond.front().rows(), q_cond.front().cols());
        for (const auto &r : q_cond) {
            avg += r / static_cast<double>(messages);
        }
        for (const auto &r : q_cond) {
            const qexact::Matrix diff = r - avg;
            out.push_back(qexact::trace_norm((diff + diff.adjoint()) * 0.5));
        }
    } else {
        Eigen::VectorXd avg = Eigen::VectorXd::Zero(c_cond.front().size());
        for (const auto &r : c_cond) {
            avg += r / static_cast<double>(messages);
        }
        for (const auto &r : c_cond) {
            out.push_back((r - avg).cwiseAbs().sum());
        }
    }
    return out;
}

}  // namespace

double exact_leakage(const LinearCode &code, const hashing::HashParams &params, const EveChannel &eve) {
    require_compatible(code, params);
    const std::uint64_t seeds = ipow(params.p, params.n1 - 1);
    const std::uint64_t words = ipow(params.p, params.n1);
    if (seeds > kEnumerationCap || words > kEnumerationCap || seeds * words > kEnumerationCap) {
        throw SizeCapExceeded("exact leakage enumeration exceeds " + std::to_string(kEnumerationCap) + " states");
    }
    const EveOutputs outputs = eve_outputs(code, eve);
    double total = 0.0;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        const hashing::SeedS seed(gf::FieldVec::from_index(s, params.n1 - 1, params.p), params);
        const std::vector<double> per = seed_leakage(seed, outputs);
        total += std::accumulate(per.begin(), per.end(), 0.0) / static_cast<double>(per.size());
    }
    return total / static_cast<double>(seeds);
}

std::vector<double> per_message_leakage(const LinearCode &code, const hashing::SeedS &seed, const EveChannel &eve) {
    require_compatible(code, seed.params());
    return seed_leakage(seed, eve_outputs(code, eve));
}

double sibson_info(const std::vector<double> &probs, const std::vector<std::vector<double>> &rows, double alpha) {
    if (probs.size() != rows.size() || rows.empty()) {
        throw std::invalid_argument("sibson_info: one row per input symbol");
    }
    if (!(alpha > 0.0) || alpha == 1.0) {
        throw std::invalid_argument("sibson_info: order must be positive and not 1");
    }
    const std::size_t outputs = rows.front().size();
    double acc = 0.0;
    for (std::size_t e = 0; e < outputs; ++e) {
        double inner = 0.0;
        for (std::size_t x = 0; x < probs.size(); ++x) {
            if (probs[x] > 0.0 && rows[x][e] > 0.0) {
                inner += probs[x] * std::pow(rows[x][e], alpha);
            }
        }
        acc += std::pow(inner, 1.0 / alpha);
    }
    return alpha / (alpha - 1.0) * std::log2(acc);
}

double code_sandwiched_info(const LinearCode &code, const EveChannel &eve, double t) {
    const EveOutputs outputs = eve_outputs(code, eve);
    const double alpha = 1.0 + t;
    if (outputs.quantum) {
        qexact::CqState cq;
        cq.states = outputs.states;
        cq.probs.assign(cq.states.size(), 1.0 / static_cast<double>(cq.states.size()));
        return qexact::sandwiched_mutual_info_down(cq, alpha).value;
    }
    std::vector<std::vector<double>> rows;
    for (const auto &d : outputs.dists) {
        rows.emplace_back(d.data(), d.data() + d.size());
    }
    return sibson_info(std::vector<double>(rows.size(), 1.0 / static_cast<double>(rows.size())), rows, alpha);
}

bounds::TOptimum theorem1_bound(double log2_l2, const std::function<double(double)> &info,
                                const bounds::TGrid &grid) {
    auto f = [&](double t) { return (1.0 - t) / (1.0 + t) + (t / (1.0 + t)) * (-log2_l2 + info(t)); };
    bounds::TOptimum opt = bounds::minimize_over_t(f, grid);
    opt.value = std::min(2.0, std::exp2(opt.value));
    return opt;
}

bounds::TOptimum theorem1_bound(const LinearCode &code, const hashing::HashParams &params, const EveChannel &eve,
                                const bounds::TGrid &grid) {
    require_compatible(code, params);
    const double log2_l2 = static_cast<double>(params.randomness()) * std::log2(static_cast<double>(params.p));
    return theorem1_bound(log2_l2, [&](double t) { return code_sandwiched_info(code, eve, t); }, grid);
}

}  // namespace pdc::wiretap
