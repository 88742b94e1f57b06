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

#ifndef PDC_PROTOCOL_H
#define PDC_PROTOCOL_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdc/bounds.h"
#include "pdc/dists.h"
#include "pdc/gf.h"
#include "pdc/hashing.h"
#include "pdc/rng.h"
#include "pdc/wiretap.h"

namespace pdc::protocol {

struct ProtocolConfig {
    std::uint32_t p;
    std::size_t n;
    std::size_t n1;
    std::size_t n2;
    std::size_t n3;
    dists::PauliDist p_xz;     // Bob -> Alice
    dists::PauliDist p_tilde;  // Alice -> Bob
    std::string code;
    std::uint64_t seed;
};

/// Throws std::invalid_argument on inconsistent sizes or moduli.
void validate(const ProtocolConfig &config);

hashing::HashParams hash_params(const ProtocolConfig &config);

/// Noise on Bob's measurement outcome, P~ * P.
dists::PauliDist effective_noise(const ProtocolConfig &config);

/// Instantiates the configured code; random codes draw their generator from
/// a stream derived from the master seed.
std::unique_ptr<wiretap::LinearCode> build_code(const ProtocolConfig &config);

enum class AdversaryKind { none, intercept, tamper };

/// Replaces Bob's outcome string before decoding.
using TamperFn = std::function<gf::FieldVec(const gf::FieldVec &x_hat, Rng &rng)>;

struct AdversaryMode {
    AdversaryKind kind = AdversaryKind::none;
    TamperFn tamper;

    static AdversaryMode none() { return {}; }
    static AdversaryMode intercept() { return {AdversaryKind::intercept, {}}; }
    /// Uniformly random substitution when `fn` is empty.
    static AdversaryMode tampering(TamperFn fn = {});
};

enum class Verdict { accepted, aborted };

std::string to_string(AdversaryKind kind);
std::string to_string(Verdict verdict);

/// Record of one protocol run. Public values can only be published after
/// Bob has acknowledged reception.
class Transcript {
   public:
    void log(std::string event) { events_.push_back(std::move(event)); }
    void acknowledge_reception();
    /// Throws std::logic_error if reception was not acknowledged.
    void publish(const hashing::SeedS &s, const hashing::SeedSPrime &s_prime, const gf::FieldVec &c);

    bool acknowledged() const { return acknowledged_; }
    const std::vector<std::string> &events() const { return events_; }

    std::optional<gf::FieldVec> s;
    std::optional<gf::FieldVec> s_prime;
    std::optional<gf::FieldVec> c;
    std::optional<gf::FieldVec> x_bar;
    std::optional<gf::FieldVec> l;
    std::optional<gf::FieldVec> x;
    std::optional<gf::FieldVec> x_hat;
    std::optional<gf::FieldVec> m_hat;
    std::optional<gf::FieldVec> y_hat;
    Verdict verdict = Verdict::aborted;
    /// phi_d(x_hat) differs from the encoded word.
    bool ecc_error = false;

    /// Symbols on the channel from Alice to Bob: x, plus x_bar when masked.
    gf::FieldVec transmitted() const;

   private:
    bool acknowledged_ = false;
    std::vector<std::string> events_;
};

/// Accept iff g_{S'}(m_hat, y_hat) = c.
Verdict verify(const hashing::SeedSPrime &seed, const gf::FieldVec &m_hat, const gf::FieldVec &y_hat,
               const gf::FieldVec &c);

/// Probability over a uniform seed S' that verify accepts, by enumeration.
hashing::Rational acceptance_probability(std::uint32_t p, const gf::FieldVec &m, const gf::FieldVec &y,
                                         const gf::FieldVec &m_hat, const gf::FieldVec &y_hat);

/// Bob's outcomes are x + N with N ~ P~ * P per channel use. All randomness
/// comes from named substreams of `rng` (seeds, payload, noise, adversary).
Transcript run_protocol1(const ProtocolConfig &config, const wiretap::LinearCode &code, const gf::FieldVec &m,
                         const AdversaryMode &adversary, const Rng &rng);
Transcript run_protocol1(const ProtocolConfig &config, const gf::FieldVec &m, const AdversaryMode &adversary,
                         const Rng &rng);

/// Masked variant: Alice adds a uniform x_bar (from the "mask" substream
/// unless given), publishes it, and Bob decodes x_hat - x_bar.
Transcript run_protocol3(const ProtocolConfig &config, const wiretap::LinearCode &code, const gf::FieldVec &m,
                         const Rng &rng, const std::optional<gf::FieldVec> &mask = std::nullopt);
Transcript run_protocol3(const ProtocolConfig &config, const gf::FieldVec &m, const Rng &rng,
                         const std::optional<gf::FieldVec> &mask = std::nullopt);

struct RateEstimate {
    std::size_t count;
    std::size_t trials;
    double rate;
    double lo;
    double hi;
};

/// Wilson score interval at z = 1.96.
RateEstimate wilson(std::size_t count, std::size_t trials);

struct AnalyticBounds {
    double eps_C;
    double eps_E;
    double eps_B;
};

AnalyticBounds analytic_bounds(const ProtocolConfig &config, const bounds::TGrid &grid = bounds::TGrid::standard());

struct MonteCarloStats {
    RateEstimate abort_rate;
    RateEstimate undetected_error_rate;
    RateEstimate accepted_and_correct_rate;
    RateEstimate ecc_block_error_rate;
};

/// Trial k uses the stream Rng(config.seed).split(k) and a uniform message
/// drawn from it.
MonteCarloStats monte_carlo(const ProtocolConfig &config, std::size_t trials, const AdversaryMode &adversary);

struct LnmResult {
    double left;   // d(M; E'S'C)
    double right;  // d(M'; E')
};

/// Both sides of d(M; E'S'C) <= d(M'; E') for uniform M' = (Y, M) and a
/// classical E' given by one row per M' index (FieldVec::to_index of (Y, M)).
LnmResult lnm_check(std::uint32_t p, std::size_t n2, std::size_t n3, const std::vector<std::vector<double>> &e_rows);

}  // namespace pdc::protocol

#endif  // PDC_PROTOCOL_H
