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

#ifndef PDC_WIRETAP_H
#define PDC_WIRETAP_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pdc/bounds.h"
#include "pdc/dists.h"
#include "pdc/gf.h"
#include "pdc/hashing.h"
#include "pdc/qexact.h"
#include "pdc/rng.h"

namespace pdc::wiretap {

/// Linear code phi = (phi_e, phi_d) from F_p^{n1} into F_p^{2n}; symbols
/// 2i and 2i+1 of a codeword form the pair (x, z) sent in channel use i.
class LinearCode {
   public:
    virtual ~LinearCode() = default;

    virtual std::uint32_t p() const = 0;
    virtual std::size_t n() const = 0;
    virtual std::size_t n1() const = 0;
    virtual std::string name() const = 0;
    virtual gf::FieldVec encode(const gf::FieldVec &l) const = 0;
    virtual gf::FieldVec decode(const gf::FieldVec &received) const = 0;

    std::size_t length() const { return 2 * n(); }
};

/// n1 = 2n, encode and decode are the identity.
class IdentityCode : public LinearCode {
   public:
    IdentityCode(std::uint32_t p, std::size_t n);

    std::uint32_t p() const override { return p_; }
    std::size_t n() const override { return n_; }
    std::size_t n1() const override { return 2 * n_; }
    std::string name() const override { return "identity"; }
    gf::FieldVec encode(const gf::FieldVec &l) const override;
    gf::FieldVec decode(const gf::FieldVec &received) const override;

   private:
    std::uint32_t p_;
    std::size_t n_;
};

/// Each information symbol i occupies the r consecutive codeword positions
/// [i r, (i + 1) r). Decoding is maximum likelihood under the pair noise,
/// done jointly over groups of symbols that share a channel use.
class RepetitionCode : public LinearCode {
   public:
    RepetitionCode(std::size_t n, std::size_t r, dists::PauliDist noise);

    std::uint32_t p() const override { return noise_.p(); }
    std::size_t n() const override { return n_; }
    std::size_t n1() const override { return 2 * n_ / r_; }
    std::string name() const override { return "repetition" + std::to_string(r_); }
    gf::FieldVec encode(const gf::FieldVec &l) const override;
    gf::FieldVec decode(const gf::FieldVec &received) const override;

   private:
    std::size_t n_;
    std::size_t r_;
    dists::PauliDist noise_;
    std::vector<std::vector<std::size_t>> components_;
};

/// Random full-rank generator matrix with exhaustive maximum-likelihood
/// decoding; restricted to 2n <= 8 and p <= 3.
class RandomLinearCode : public LinearCode {
   public:
    RandomLinearCode(std::size_t n, std::size_t n1, dists::PauliDist noise, Rng &rng);

    std::uint32_t p() const override { return noise_.p(); }
    std::size_t n() const override { return n_; }
    std::size_t n1() const override { return n1_; }
    std::string name() const override { return "random"; }
    gf::FieldVec encode(const gf::FieldVec &l) const override;
    gf::FieldVec decode(const gf::FieldVec &received) const override;

    /// Row-major 2n x n1 generator.
    const std::vector<std::uint32_t> &generator() const { return generator_; }

   private:
    std::size_t n_;
    std::size_t n1_;
    dists::PauliDist noise_;
    std::vector<std::uint32_t> generator_;
};

/// Builds "identity", "repetitionR" or "random" codes by name.
std::unique_ptr<LinearCode> make_code(const std::string &name, std::size_t n, const dists::PauliDist &noise,
                                      Rng &rng, std::size_t random_n1 = 0);

/// Rank over F_p of the matrix whose columns are the encodings of unit vectors.
std::size_t generator_rank(const LinearCode &code);

struct ConformanceReport {
    bool linear;
    bool injective;
    bool round_trip;

    bool ok() const { return linear && injective && round_trip; }
};

/// Checks a code plug-in: linearity and noiseless round trip on `trials`
/// random inputs (exhaustively when p^{n1} <= trials), injectivity by rank.
ConformanceReport check_conformance(const LinearCode &code, Rng &rng, std::size_t trials = 200);

/// Additive noise W^c(x, z | x', z') = noise(x - x', z - z').
struct ClassicalChannelWc {
    dists::PauliDist noise;
};

/// received_i = codeword_i + N_i per channel-use pair, N_i i.i.d. from the noise.
gf::FieldVec channel_sample(const gf::FieldVec &codeword, const ClassicalChannelWc &channel, Rng &rng);

/// phi_e(psi_S(M, Y, L2)) with explicit randomness L2.
gf::FieldVec wiretap_encode(const LinearCode &code, const hashing::SeedS &seed, const gf::FieldVec &m,
                            const gf::FieldVec &y, const gf::FieldVec &l2);
/// Same with L2 drawn uniformly from `rng`.
gf::FieldVec wiretap_encode(const LinearCode &code, const hashing::SeedS &seed, const gf::FieldVec &m,
                            const gf::FieldVec &y, Rng &rng);

/// f_S(phi_d(received)), i.e. M' = (Y, M).
gf::FieldVec wiretap_decode(const LinearCode &code, const hashing::SeedS &seed, const gf::FieldVec &received);

/// Eve's single-use channel indexed by the input pair x * p + z: either a
/// stochastic matrix (classical) or one density matrix per input (quantum).
struct EveChannel {
    std::uint32_t p;
    std::vector<std::vector<double>> classical;
    std::vector<qexact::Matrix> quantum;

    bool is_quantum() const { return !quantum.empty(); }
    std::size_t inputs() const { return static_cast<std::size_t>(p) * p; }
};

EveChannel eve_constant(std::uint32_t p);
EveChannel eve_noiseless(std::uint32_t p);
/// Eve sees the input pair shifted by noise drawn from `noise`.
EveChannel eve_noisy_copy(const dists::PauliDist &noise);
/// W_E(x, z) = W_A(x, z) tau_AE W_A(x, z)^dagger with tau_AE from purify(P).
EveChannel eve_from_purification(const dists::PauliDist &p_xz);

/// Cap on seeds * p^{n1} in exact enumerations.
inline constexpr std::size_t kEnumerationCap = 1000000;

/// E_S || tau_{M'E|S} - P_{M'} (x) tau_{E|S} ||_1 over uniform M', L2 and S,
/// by full enumeration.
double exact_leakage(const LinearCode &code, const hashing::HashParams &params, const EveChannel &eve);

/// || tau_{E|m'} - tau_E ||_1 for every m' (index order of FieldVec::to_index) at a fixed seed.
std::vector<double> per_message_leakage(const LinearCode &code, const hashing::SeedS &seed, const EveChannel &eve);

/// Sibson form (a/(a-1)) log2 sum_e (sum_x P(x) W(e|x)^a)^{1/a}.
double sibson_info(const std::vector<double> &probs, const std::vector<std::vector<double>> &rows, double alpha);

/// I~_{1+t}(X; E^n) for the code's uniform input through n uses of Eve's channel.
double code_sandwiched_info(const LinearCode &code, const EveChannel &eve, double t);

/// min_t 2^{(1-t)/(1+t)} 2^{(t/(1+t))(-log2 L2 + I(t))}, capped at 2.
bounds::TOptimum theorem1_bound(double log2_l2, const std::function<double(double)> &info, const bounds::TGrid &grid);
bounds::TOptimum theorem1_bound(const LinearCode &code, const hashing::HashParams &params, const EveChannel &eve,
                                const bounds::TGrid &grid);

}  // namespace pdc::wiretap

#endif  // PDC_WIRETAP_H
