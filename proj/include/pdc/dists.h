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

#ifndef PDC_DISTS_H
#define PDC_DISTS_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pdc::dists {

/// Tolerance on the total mass accepted by the constructors; anything
/// within it is renormalized, anything outside is rejected.
inline constexpr double kNormalizationSlack = 1e-9;
/// Probabilities below this are treated as exact zeros inside entropies.
inline constexpr double kProbabilityFloor = 1e-15;

/// Distribution P_XZ over F_p^2, stored row-major: index x * p + z.
class PauliDist {
   public:
    PauliDist(std::uint32_t p, std::vector<double> probs);

    static PauliDist point(std::uint32_t p, std::uint32_t x, std::uint32_t z);
    static PauliDist uniform(std::uint32_t p);

    std::uint32_t p() const { return p_; }
    std::size_t size() const { return probs_.size(); }
    std::span<const double> probs() const { return probs_; }
    double operator()(std::uint32_t x, std::uint32_t z) const { return probs_[index(x, z)]; }
    std::size_t index(std::uint32_t x, std::uint32_t z) const { return static_cast<std::size_t>(x % p_) * p_ + z % p_; }

   private:
    std::uint32_t p_;
    std::vector<double> probs_;
};

/// Distribution over F_p.
class MarginalDist {
   public:
    MarginalDist(std::uint32_t p, std::vector<double> probs);

    std::uint32_t p() const { return p_; }
    std::span<const double> probs() const { return probs_; }
    double operator[](std::uint32_t s) const { return probs_[s]; }

   private:
    std::uint32_t p_;
    std::vector<double> probs_;
};

/// (Q * P)(x, z) = sum Q(x', z') P(x - x', z - z').
PauliDist convolve(const PauliDist &a, const PauliDist &b);

/// F_{x,z}[P](x', z') = P(x' - x, z' - z).
PauliDist shift(const PauliDist &dist, std::uint32_t x, std::uint32_t z);

/// P(x, z) -> P(-x, z); the distribution a channel acquires when moved
/// from A to B across a maximally entangled pair.
PauliDist negate_x(const PauliDist &dist);

/// Renyi entropy of order alpha in bits; alpha == 1 gives Shannon.
/// Throws std::invalid_argument for alpha <= 0.
double renyi_entropy(std::span<const double> probs, double alpha);
double shannon_entropy(std::span<const double> probs);
/// Order-0 entropy, log2 of the support size.
double max_entropy(std::span<const double> probs);

inline double renyi_entropy(const PauliDist &d, double alpha) { return renyi_entropy(d.probs(), alpha); }
inline double shannon_entropy(const PauliDist &d) { return shannon_entropy(d.probs()); }

/// Distribution of l X - k Z; (l, k) must be nonzero.
MarginalDist marginal(const PauliDist &dist, std::uint32_t l, std::uint32_t k);

/// E[omega^{l X - k Z}] with omega = exp(2 pi i / p).
std::complex<double> char_value(const PauliDist &dist, std::uint32_t l, std::uint32_t k);

/// Weyl expansion of rho -> (1 - mix) rho + mix I / p.
PauliDist depolarizing(double mix, std::uint32_t p);

/// Total variation distance, (1/2) sum |a - b|.
double total_variation(std::span<const double> a, std::span<const double> b);

}  // namespace pdc::dists

#endif  // PDC_DISTS_H
