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

#ifndef PDC_HASHING_H
#define PDC_HASHING_H

#include <cstddef>
#include <cstdint>
#include <utility>

#include "pdc/gf.h"
#include "pdc/rng.h"

namespace pdc::hashing {

/// Message layout (n1, n2, n3) over F_p: n1 code symbols, n2 message
/// symbols, n3 verification symbols.
struct HashParams {
    std::uint32_t p;
    std::size_t n1;
    std::size_t n2;
    std::size_t n3;

    std::size_t hashed() const { return n2 + n3; }
    std::size_t randomness() const { return n1 - n2 - n3; }
};

/// Throws std::invalid_argument unless n1 > n2 + n3, n2 >= 1 and n3 >= 1.
void validate(const HashParams &params);

/// Seed of f_S: generating vector of T_{n2+n3, n1-(n2+n3)}, length n1 - 1.
class SeedS {
   public:
    SeedS(gf::FieldVec entries, const HashParams &params);
    static SeedS random(const HashParams &params, Rng &rng);

    const HashParams &params() const { return params_; }
    const gf::ToeplitzSeed &toeplitz() const { return toeplitz_; }

   private:
    HashParams params_;
    gf::ToeplitzSeed toeplitz_;
};

/// Seed of g_{S'}: generating vector of T_{n3, n2}, length n2 + n3 - 1.
class SeedSPrime {
   public:
    SeedSPrime(gf::FieldVec entries, std::size_t n2, std::size_t n3);
    static SeedSPrime random(std::uint32_t p, std::size_t n2, std::size_t n3, Rng &rng);

    std::size_t n2() const { return toeplitz_.cols(); }
    std::size_t n3() const { return toeplitz_.rows(); }
    const gf::ToeplitzSeed &toeplitz() const { return toeplitz_; }

   private:
    gf::ToeplitzSeed toeplitz_;
};

/// M' = L1 + T(S) L2 where L = (L1, L2) with |L1| = n2 + n3. The first n3
/// symbols of M' are Y and the last n2 are M.
gf::FieldVec f_S(const SeedS &seed, const gf::FieldVec &l);

/// Splits M' into (Y, M).
std::pair<gf::FieldVec, gf::FieldVec> split_mprime(const gf::FieldVec &mprime, std::size_t n3);
gf::FieldVec join_mprime(const gf::FieldVec &y, const gf::FieldVec &m);

/// C = Y + T(S') M.
gf::FieldVec g_Sprime(const SeedSPrime &seed, const gf::FieldVec &m, const gf::FieldVec &y);

/// The unique Y with g_{S'}(M, Y) = C.
gf::FieldVec y_of(const gf::FieldVec &m, const SeedSPrime &seed, const gf::FieldVec &c);

/// (M' - T(S) L2, L2); f_S inverts it on the M' part.
gf::FieldVec psi_S(const SeedS &seed, const gf::FieldVec &m, const gf::FieldVec &y, const gf::FieldVec &l2);

struct Rational {
    std::uint64_t num;
    std::uint64_t den;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational &other) const { return num * other.den == other.num * den; }
};

/// Pr_S[f_S(l) = f_S(l')] over a uniform seed, l != l'.
Rational collision_probability(const gf::FieldVec &l, const gf::FieldVec &lp, const HashParams &params);

}  // namespace pdc::hashing

#endif  // PDC_HASHING_H
