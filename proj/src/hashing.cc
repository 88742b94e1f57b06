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

#include "pdc/hashing.h"

#include <stdexcept>
#include <string>
#include <vector>

namespace pdc::hashing {
namespace {

gf::FieldVec random_vec(std::uint32_t p, std::size_t length, Rng &rng) {
    std::vector<std::uint32_t> values(length);
    for (auto &v : values) {
        v = static_cast<std::uint32_t>(rng.uniform_below(p));
    }
    return gf::FieldVec(std::move(values), p);
}

void require_length(const gf::FieldVec &v, std::size_t length, std::uint32_t p, const char *what) {
    if (v.size() != length) {
        throw std::invalid_argument(std::string(what) + ": length mismatch");
    }
    if (v.modulus() != p) {
        throw std::invalid_argument(std::string(what) + ": modulus mismatch");
    }
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exponent) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (out > UINT64_MAX / base) {
            throw std::overflow_error("collision probability denominator overflows 64 bits");
        }
        out *= base;
    }
    return out;
}

}  // namespace

void validate(const HashParams &params) {
    gf::require_prime(params.p);
    if (params.n2 < 1 || params.n3 < 1) {
        throw std::invalid_argument("n2 and n3 must be at least 1");
    }
    if (params.n1 <= params.n2 + params.n3) {
        throw std::invalid_argument("n1 must exceed n2 + n3");
    }
}

SeedS::SeedS(gf::FieldVec entries, const HashParams &params)
    : params_(params), toeplitz_((validate(params), std::move(entries)), params.hashed(), params.randomness()) {
    if (toeplitz_.modulus() != params.p) {
        throw std::invalid_argument("seed S modulus mismatch");
    }
}

SeedS SeedS::random(const HashParams &params, Rng &rng) {
    validate(params);
    return SeedS(random_vec(params.p, params.n1 - 1, rng), params);
}

SeedSPrime::SeedSPrime(gf::FieldVec entries, std::size_t n2, std::size_t n3) : toeplitz_(std::move(entries), n3, n2) {
    if (n2 < 1 || n3 < 1) {
        throw std::invalid_argument("n2 and n3 must be at least 1");
    }
}

SeedSPrime SeedSPrime::random(std::uint32_t p, std::size_t n2, std::size_t n3, Rng &rng) {
    gf::require_prime(p);
    if (n2 < 1 || n3 < 1) {
        throw std::invalid_argument("n2 and n3 must be at least 1");
    }
    return SeedSPrime(random_vec(p, n2 + n3 - 1, rng), n2, n3);
}

gf::FieldVec f_S(const SeedS &seed, const gf::FieldVec &l) {
    const HashParams &hp = seed.params();
    require_length(l, hp.n1, hp.p, "f_S");
    return l.slice(0, hp.hashed()) + gf::toeplitz_apply(seed.toeplitz(), l.slice(hp.hashed(), hp.randomness()));
}

std::pair<gf::FieldVec, gf::FieldVec> split_mprime(const gf::FieldVec &mprime, std::size_t n3) {
    if (n3 == 0 || n3 >= mprime.size()) {
        throw std::invalid_argument("split_mprime: n3 out of range");
    }
    return {mprime.slice(0, n3), mprime.slice(n3, mprime.size() - n3)};
}

gf::FieldVec join_mprime(const gf::FieldVec &y, const gf::FieldVec &m) { return y.concat(m); }

gf::FieldVec g_Sprime(const SeedSPrime &seed, const gf::FieldVec &m, const gf::FieldVec &y) {
    const std::uint32_t p = seed.toeplitz().modulus();
    require_length(m, seed.n2(), p, "g_Sprime message");
    require_length(y, seed.n3(), p, "g_Sprime check");
    return y + gf::toeplitz_apply(seed.toeplitz(), m);
}

gf::FieldVec y_of(const gf::FieldVec &m, const SeedSPrime &seed, const gf::FieldVec &c) {
    const std::uint32_t p = seed.toeplitz().modulus();
    require_length(m, seed.n2(), p, "y_of message");
    require_length(c, seed.n3(), p, "y_of tag");
    return c - gf::toeplitz_apply(seed.toeplitz(), m);
}

gf::FieldVec psi_S(const SeedS &seed, const gf::FieldVec &m, const gf::FieldVec &y, const gf::FieldVec &l2) {
    const HashParams &hp = seed.params();
    require_length(m, hp.n2, hp.p, "psi_S message");
    require_length(y, hp.n3, hp.p, "psi_S check");
    require_length(l2, hp.randomness(), hp.p, "psi_S randomness");
    const gf::FieldVec l1 = join_mprime(y, m) - gf::toeplitz_apply(seed.toeplitz(), l2);
    return l1.concat(l2);
}

Rational collision_probability(const gf::FieldVec &l, const gf::FieldVec &lp, const HashParams &params) {
    validate(params);
    require_length(l, params.n1, params.p, "collision_probability");
    require_length(lp, params.n1, params.p, "collision_probability");
    if (l == lp) {
        throw std::invalid_argument("collision_probability needs distinct inputs");
    }
    // f_S(l) - f_S(l') = (l1 - l1') + T(S)(l2 - l2'). With equal L2 parts the
    // difference is the nonzero l1 - l1'. Otherwise T(S) dl2 is uniform over
    // F_p^{n2+n3} as S varies, because some column block of the map S -> T(S) dl2
    // is a triangular matrix with the last nonzero entry of dl2 on its diagonal.
    const gf::FieldVec dl2 = l.slice(params.hashed(), params.randomness()) -
                             lp.slice(params.hashed(), params.randomness());
    if (dl2.is_zero()) {
        return {0, 1};
    }
    return {1, checked_pow(params.p, params.hashed())};
}

}  // namespace pdc::hashing
