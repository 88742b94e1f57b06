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

#include "pdc/gf.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace pdc::gf {

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

void require_prime(std::uint32_t p) {
    if (p >= (1u << 16) || !is_prime(p)) {
        throw std::invalid_argument("modulus must be a prime below 65536, got " + std::to_string(p));
    }
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) {
        throw std::domain_error("inverse of zero in F_" + std::to_string(p));
    }
    // Fermat: a^(p-2).
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    std::uint32_t e = p - 2;
    while (e > 0) {
        if (e & 1) {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

FieldElem::FieldElem(std::uint64_t value, std::uint32_t modulus) : value_(0), modulus_(modulus) {
    require_prime(modulus);
    value_ = static_cast<std::uint32_t>(value % modulus);
}

void FieldElem::require_same_field(const FieldElem &other) const {
    if (modulus_ != other.modulus_) {
        throw std::invalid_argument("field elements have different moduli");
    }
}

FieldElem FieldElem::operator+(const FieldElem &other) const {
    require_same_field(other);
    return FieldElem(add_mod(value_, other.value_, modulus_), modulus_, true);
}

FieldElem FieldElem::operator-(const FieldElem &other) const {
    require_same_field(other);
    return FieldElem(sub_mod(value_, other.value_, modulus_), modulus_, true);
}

FieldElem FieldElem::operator*(const FieldElem &other) const {
    require_same_field(other);
    return FieldElem(mul_mod(value_, other.value_, modulus_), modulus_, true);
}

FieldElem FieldElem::operator-() const { return FieldElem(sub_mod(0, value_, modulus_), modulus_, true); }

FieldElem FieldElem::inverse() const { return FieldElem(inv_mod(value_, modulus_), modulus_, true); }

FieldVec::FieldVec(std::vector<std::uint32_t> values, std::uint32_t modulus)
    : values_(std::move(values)), modulus_(modulus) {
    require_prime(modulus);
    if (values_.empty()) {
        throw std::invalid_argument("FieldVec must be nonempty");
    }
    for (auto &v : values_) {
        v %= modulus;
    }
}

FieldVec FieldVec::zeros(std::size_t length, std::uint32_t modulus) {
    return FieldVec(std::vector<std::uint32_t>(length, 0), modulus);
}

FieldVec FieldVec::from_index(std::uint64_t index, std::size_t length, std::uint32_t modulus) {
    std::vector<std::uint32_t> values(length);
    for (auto &v : values) {
        v = static_cast<std::uint32_t>(index % modulus);
        index /= modulus;
    }
    return FieldVec(std::move(values), modulus);
}

std::uint64_t FieldVec::to_index() const {
    std::uint64_t index = 0;
    for (std::size_t i = values_.size(); i-- > 0;) {
        index = index * modulus_ + values_[i];
    }
    return index;
}

bool FieldVec::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](std::uint32_t v) { return v == 0; });
}

FieldVec FieldVec::slice(std::size_t begin, std::size_t length) const {
    if (begin + length > values_.size()) {
        throw std::out_of_range("FieldVec slice out of range");
    }
    return FieldVec(std::vector<std::uint32_t>(values_.begin() + begin, values_.begin() + begin + length), modulus_);
}

FieldVec FieldVec::concat(const FieldVec &tail) const {
    require_compatible(tail);
    std::vector<std::uint32_t> out(values_);
    out.insert(out.end(), tail.values_.begin(), tail.values_.end());
    return FieldVec(std::move(out), modulus_);
}

void FieldVec::require_compatible(const FieldVec &other) const {
    if (modulus_ != other.modulus_) {
        throw std::invalid_argument("field vectors have different moduli");
    }
}

FieldVec FieldVec::operator+(const FieldVec &other) const {
    require_compatible(other);
    if (size() != other.size()) {
        throw std::invalid_argument("field vector length mismatch");
    }
    std::vector<std::uint32_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] = add_mod(values_[i], other.values_[i], modulus_);
    }
    return FieldVec(std::move(out), modulus_);
}

FieldVec FieldVec::operator-(const FieldVec &other) const {
    require_compatible(other);
    if (size() != other.size()) {
        throw std::invalid_argument("field vector length mismatch");
    }
    std::vector<std::uint32_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] = sub_mod(values_[i], other.values_[i], modulus_);
    }
    return FieldVec(std::move(out), modulus_);
}

FieldVec FieldVec::scaled(std::uint32_t factor) const {
    std::vector<std::uint32_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] = mul_mod(values_[i], factor % modulus_, modulus_);
    }
    return FieldVec(std::move(out), modulus_);
}

ToeplitzSeed::ToeplitzSeed(FieldVec entries, std::size_t rows, std::size_t cols)
    : entries_(std::move(entries)), rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0 || entries_.size() != rows + cols - 1) {
        throw std::invalid_argument("Toeplitz seed length must be rows + cols - 1");
    }
}

FieldVec toeplitz_apply(const ToeplitzSeed &seed, const FieldVec &x) {
    if (x.size() != seed.cols()) {
        throw std::invalid_argument("Toeplitz input length mismatch");
    }
    const std::uint32_t p = seed.modulus();
    if (x.modulus() != p) {
        throw std::invalid_argument("Toeplitz modulus mismatch");
    }
    std::vector<std::uint32_t> y(seed.rows(), 0);
    for (std::size_t i = 0; i < seed.rows(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < seed.cols(); ++j) {
            acc += static_cast<std::uint64_t>(seed.entry(i, j)) * x[j];
            if (acc >= (1ull << 62)) {
                acc %= p;
            }
        }
        y[i] = static_cast<std::uint32_t>(acc % p);
    }
    return FieldVec(std::move(y), p);
}

}  // namespace pdc::gf
