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

#include "pdc/dists.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "pdc/gf.h"

namespace pdc::dists {
namespace {

std::vector<double> validated(std::vector<double> probs, const char *what) {
    double total = 0.0;
    for (double &v : probs) {
        if (!std::isfinite(v) || v < -kProbabilityFloor) {
            throw std::invalid_argument(std::string(what) + ": negative or non-finite probability");
        }
        if (v < 0.0) {
            v = 0.0;
        }
        total += v;
    }
    if (std::abs(total - 1.0) > kNormalizationSlack) {
        throw std::invalid_argument(std::string(what) + ": probabilities sum to " + std::to_string(total));
    }
    for (double &v : probs) {
        v /= total;
    }
    return probs;
}

}  // namespace

PauliDist::PauliDist(std::uint32_t p, std::vector<double> probs) : p_(p) {
    gf::require_prime(p);
    if (probs.size() != static_cast<std::size_t>(p) * p) {
        throw std::invalid_argument("PauliDist needs p^2 entries");
    }
    probs_ = validated(std::move(probs), "PauliDist");
}

PauliDist PauliDist::point(std::uint32_t p, std::uint32_t x, std::uint32_t z) {
    std::vector<double> probs(static_cast<std::size_t>(p) * p, 0.0);
    probs[static_cast<std::size_t>(x % p) * p + z % p] = 1.0;
    return PauliDist(p, std::move(probs));
}

PauliDist PauliDist::uniform(std::uint32_t p) {
    const std::size_t n = static_cast<std::size_t>(p) * p;
    return PauliDist(p, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

MarginalDist::MarginalDist(std::uint32_t p, std::vector<double> probs) : p_(p) {
    gf::require_prime(p);
    if (probs.size() != p) {
        throw std::invalid_argument("MarginalDist needs p entries");
    }
    probs_ = validated(std::move(probs), "MarginalDist");
}

PauliDist convolve(const PauliDist &a, const PauliDist &b) {
    if (a.p() != b.p()) {
        throw std::invalid_argument("convolve: modulus mismatch");
    }
    const std::uint32_t p = a.p();
    std::vector<double> out(a.size(), 0.0);
    for (std::uint32_t x1 = 0; x1 < p; ++x1) {
        for (std::uint32_t z1 = 0; z1 < p; ++z1) {
            const double w = a(x1, z1);
            if (w == 0.0) {
                continue;
            }
            for (std::uint32_t x2 = 0; x2 < p; ++x2) {
                for (std::uint32_t z2 = 0; z2 < p; ++z2) {
                    out[a.index(gf::add_mod(x1, x2, p), gf::add_mod(z1, z2, p))] += w * b(x2, z2);
                }
            }
        }
    }
    return PauliDist(p, std::move(out));
}

PauliDist shift(const PauliDist &dist, std::uint32_t x, std::uint32_t z) {
    const std::uint32_t p = dist.p();
    std::vector<double> out(dist.size());
    for (std::uint32_t a = 0; a < p; ++a) {
        for (std::uint32_t c = 0; c < p; ++c) {
            out[dist.index(gf::add_mod(a, x % p, p), gf::add_mod(c, z % p, p))] = dist(a, c);
        }
    }
    return PauliDist(p, std::move(out));
}

PauliDist negate_x(const PauliDist &dist) {
    const std::uint32_t p = dist.p();
    std::vector<double> out(dist.size());
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            out[dist.index(gf::sub_mod(0, x, p), z)] = dist(x, z);
        }
    }
    return PauliDist(p, std::move(out));
}

double shannon_entropy(std::span<const double> probs) {
    double h = 0.0;
    for (double v : probs) {
        if (v > kProbabilityFloor) {
            h -= v * std::log2(v);
        }
    }
    return h;
}

double max_entropy(std::span<const double> probs) {
    std::size_t support = 0;
    for (double v : probs) {
        if (v > kProbabilityFloor) {
            ++support;
        }
    }
    return support == 0 ? 0.0 : std::log2(static_cast<double>(support));
}

double renyi_entropy(std::span<const double> probs, double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("renyi_entropy: order must be positive");
    }
    if (alpha == 1.0) {
        return shannon_entropy(probs);
    }
    // log-sum-exp in base 2 for stability at large |1 - alpha|.
    double max_log = -INFINITY;
    for (double v : probs) {
        if (v > kProbabilityFloor) {
            max_log = std::max(max_log, alpha * std::log2(v));
        }
    }
    double sum = 0.0;
    for (double v : probs) {
        if (v > kProbabilityFloor) {
            sum += std::exp2(alpha * std::log2(v) - max_log);
        }
    }
    return (max_log + std::log2(sum)) / (1.0 - alpha);
}

MarginalDist marginal(const PauliDist &dist, std::uint32_t l, std::uint32_t k) {
    const std::uint32_t p = dist.p();
    l %= p;
    k %= p;
    if (l == 0 && k == 0) {
        throw std::invalid_argument("marginal: (l, k) must be nonzero");
    }
    std::vector<double> out(p, 0.0);
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            const std::uint32_t s = gf::sub_mod(gf::mul_mod(l, x, p), gf::mul_mod(k, z, p), p);
            out[s] += dist(x, z);
        }
    }
    return MarginalDist(p, std::move(out));
}

std::complex<double> char_value(const PauliDist &dist, std::uint32_t l, std::uint32_t k) {
    const std::uint32_t p = dist.p();
    std::complex<double> acc = 0.0;
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            const std::uint32_t s = gf::sub_mod(gf::mul_mod(l % p, x, p), gf::mul_mod(k % p, z, p), p);
            acc += dist(x, z) * std::polar(1.0, 2.0 * std::numbers::pi * s / p);
        }
    }
    return acc;
}

PauliDist depolarizing(double mix, std::uint32_t p) {
    if (!(mix >= 0.0 && mix <= 1.0)) {
        throw std::invalid_argument("depolarizing: mix must lie in [0, 1]");
    }
    gf::require_prime(p);
    const std::size_t n = static_cast<std::size_t>(p) * p;
    std::vector<double> probs(n, mix / static_cast<double>(n));
    probs[0] += 1.0 - mix;
    return PauliDist(p, std::move(probs));
}

double total_variation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("total_variation: size mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::abs(a[i] - b[i]);
    }
    return 0.5 * acc;
}

}  // namespace pdc::dists
