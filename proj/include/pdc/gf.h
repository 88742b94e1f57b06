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

#ifndef PDC_GF_H
#define PDC_GF_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pdc::gf {

bool is_prime(std::uint64_t n);

/// Throws std::invalid_argument unless `p` is prime and below 2^16.
void require_prime(std::uint32_t p);

/// Element of the prime field F_p.
class FieldElem {
   public:
    FieldElem(std::uint64_t value, std::uint32_t modulus);

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return modulus_; }

    FieldElem operator+(const FieldElem &other) const;
    FieldElem operator-(const FieldElem &other) const;
    FieldElem operator*(const FieldElem &other) const;
    FieldElem operator-() const;
    /// Multiplicative inverse; throws std::domain_error for zero.
    FieldElem inverse() const;

    bool operator==(const FieldElem &other) const = default;

   private:
    FieldElem(std::uint32_t value, std::uint32_t modulus, bool /*trusted*/) : value_(value), modulus_(modulus) {}
    void require_same_field(const FieldElem &other) const;

    std::uint32_t value_;
    std::uint32_t modulus_;
};

/// Raw residue helpers for hot loops; operands must already be reduced.
inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return a >= b ? a - b : a + p - b; }
inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

/// Nonempty vector over F_p with a single shared modulus.
class FieldVec {
   public:
    FieldVec(std::vector<std::uint32_t> values, std::uint32_t modulus);

    static FieldVec zeros(std::size_t length, std::uint32_t modulus);
    /// Mixed-radix decoding of `index` (first symbol least significant).
    static FieldVec from_index(std::uint64_t index, std::size_t length, std::uint32_t modulus);

    std::size_t size() const { return values_.size(); }
    std::uint32_t modulus() const { return modulus_; }
    std::uint32_t operator[](std::size_t i) const { return values_[i]; }
    FieldElem at(std::size_t i) const { return FieldElem(values_.at(i), modulus_); }
    std::span<const std::uint32_t> values() const { return values_; }

    /// Inverse of from_index.
    std::uint64_t to_index() const;
    bool is_zero() const;

    FieldVec slice(std::size_t begin, std::size_t length) const;
    FieldVec concat(const FieldVec &tail) const;

    FieldVec operator+(const FieldVec &other) const;
    FieldVec operator-(const FieldVec &other) const;
    FieldVec scaled(std::uint32_t factor) const;

    bool operator==(const FieldVec &other) const = default;

   private:
    void require_compatible(const FieldVec &other) const;

    std::vector<std::uint32_t> values_;
    std::uint32_t modulus_;
};

/// Generating vector V of the d1 x d2 Toeplitz matrix T(V)_{i,j} = V_{i-j+d2}
/// (1-based), i.e. entry (i, j) is entries()[i - j + d2 - 1] with 0-based i, j.
class ToeplitzSeed {
   public:
    ToeplitzSeed(FieldVec entries, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return entries_.modulus(); }
    const FieldVec &entries() const { return entries_; }

    /// 0-based matrix entry.
    std::uint32_t entry(std::size_t i, std::size_t j) const { return entries_[i + cols_ - 1 - j]; }

   private:
    FieldVec entries_;
    std::size_t rows_;
    std::size_t cols_;
};

/// y = T(V) x over F_p, naive O(d1 d2).
FieldVec toeplitz_apply(const ToeplitzSeed &seed, const FieldVec &x);

}  // namespace pdc::gf

#endif  // PDC_GF_H
