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

#include "pdc/estimation.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pdc/gf.h"
#include "pdc/matrix_functions.h"

namespace pdc::estimation {
namespace {

std::complex<double> root_of_unity(std::uint64_t s, std::uint32_t p) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(s % p) / p);
}

}  // namespace

std::vector<MeasurementSetting> settings(std::uint32_t p) {
    gf::require_prime(p);
    std::vector<MeasurementSetting> out;
    for (std::uint32_t b = 0; b < p; ++b) {
        out.push_back({1, b});
    }
    out.push_back({0, 1});
    return out;
}

std::pair<std::size_t, std::uint32_t> setting_class(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    a %= p;
    b %= p;
    if (a == 0 && b == 0) {
        throw std::invalid_argument("setting_class: pair must be nonzero");
    }
    if (a == 0) {
        return {p, b};
    }
    return {gf::mul_mod(b, gf::inv_mod(a, p), p), a};
}

dists::MarginalDist simulate_setting(const dists::PauliDist &p_true, const MeasurementSetting &setting,
                                     std::size_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("simulate_setting needs at least one shot");
    }
    const std::uint32_t p = p_true.p();
    const dists::MarginalDist exact = dists::marginal(p_true, setting.l(p), setting.k(p));
    std::vector<double> counts(p, 0.0);
    for (std::size_t i = 0; i < shots; ++i) {
        counts[rng.sample(exact.probs())] += 1.0;
    }
    for (auto &c : counts) {
        c /= static_cast<double>(shots);
    }
    return dists::MarginalDist(p, std::move(counts));
}

CharTable char_table(const std::vector<dists::MarginalDist> &marginals) {
    if (marginals.empty()) {
        throw std::invalid_argument("char_table needs one marginal per setting");
    }
    const std::uint32_t p = marginals.front().p();
    if (marginals.size() != static_cast<std::size_t>(p) + 1) {
        throw std::invalid_argument("char_table needs exactly p + 1 marginals");
    }
    CharTable table{p, std::vector<std::optional<std::complex<double>>>(static_cast<std::size_t>(p) * p)};
    table.values[0] = 1.0;
    for (std::uint32_t l = 0; l < p; ++l) {
        for (std::uint32_t k = 0; k < p; ++k) {
            if (l == 0 && k == 0) {
                continue;
            }
            // l X - k Z = c (representative observable).
            const auto [cls, c] = setting_class(l, (p - k) % p, p);
            std::complex<double> acc = 0.0;
            for (std::uint32_t s = 0; s < p; ++s) {
                acc += marginals[cls][s] * root_of_unity(static_cast<std::uint64_t>(c) * s, p);
            }
            table.values[static_cast<std::size_t>(l) * p + k] = acc;
        }
    }
    return table;
}

std::vector<double> reconstruct(const CharTable &table) {
    const std::uint32_t p = table.p;
    gf::require_prime(p);
    if (table.values.size() != static_cast<std::size_t>(p) * p) {
        throw std::invalid_argument("reconstruct: table needs p^2 entries");
    }
    for (const auto &v : table.values) {
        if (!v) {
            throw std::invalid_argument("reconstruct: characteristic value missing for some class");
        }
    }
    std::vector<double> out(static_cast<std::size_t>(p) * p);
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            std::complex<double> acc = 0.0;
            for (std::uint32_t l = 0; l < p; ++l) {
                for (std::uint32_t k = 0; k < p; ++k) {
                    const std::uint32_t phase = gf::sub_mod(gf::mul_mod(l, x, p), gf::mul_mod(k, z, p), p);
                    acc += *table.values[static_cast<std::size_t>(l) * p + k] * root_of_unity(p - phase, p);
                }
            }
            out[static_cast<std::size_t>(x) * p + z] = acc.real() / (static_cast<double>(p) * p);
        }
    }
    return out;
}

dists::PauliDist project_to_simplex(std::uint32_t p, const std::vector<double> &raw) {
    std::vector<double> clipped(raw.size());
    std::transform(raw.begin(), raw.end(), clipped.begin(), [](double v) { return std::max(0.0, v); });
    double total = 0.0;
    for (double v : clipped) {
        total += v;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("project_to_simplex: no positive mass");
    }
    for (auto &v : clipped) {
        v /= total;
    }
    return dists::PauliDist(p, std::move(clipped));
}

EstimationReport estimate(const dists::PauliDist &p_true, std::size_t shots_per_setting, Rng &rng) {
    const std::uint32_t p = p_true.p();
    std::vector<MeasurementSetting> list = settings(p);
    std::vector<dists::MarginalDist> marginals;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto &setting = list[i];
        if (shots_per_setting == 0) {
            marginals.push_back(dists::marginal(p_true, setting.l(p), setting.k(p)));
        } else {
            Rng stream = rng.split(static_cast<std::uint64_t>(i));
            marginals.push_back(simulate_setting(p_true, setting, shots_per_setting, stream));
        }
    }
    std::vector<double> raw = reconstruct(char_table(marginals));
    double negative = 0.0;
    for (double v : raw) {
        negative += std::min(0.0, v);
    }
    dists::PauliDist p_hat = project_to_simplex(p, raw);
    const double tv = dists::total_variation(p_hat.probs(), p_true.probs());
    return {std::move(list), shots_per_setting, std::move(marginals), std::move(raw), std::move(p_hat),
            negative < 0.0, negative < 0.0 ? -negative : 0.0, tv};
}

std::pair<dists::MarginalDist, dists::MarginalDist> twirled_statistics_check(const qexact::DensityMatrix &tau_ab,
                                                                             const MeasurementSetting &setting) {
    const auto &dims = tau_ab.dims();
    if (dims.size() != 2 || dims[0] != dims[1]) {
        throw std::invalid_argument("twirled_statistics_check needs a state on A (x) B with equal dimensions");
    }
    const auto p = static_cast<std::uint32_t>(dims[0]);
    gf::require_prime(p);
    const qexact::Matrix a = qexact::weyl(setting.k(p), setting.l(p), p).matrix();
    // The outcome difference is the eigenphase index of A (x) conj(A).
    const qexact::Matrix u = qexact::kron(a, a.conjugate());
    const qexact::DensityMatrix twirled = qexact::twirl(tau_ab);
    std::vector<qexact::Matrix> powers{qexact::Matrix::Identity(u.rows(), u.cols())};
    for (std::uint32_t m = 1; m < p; ++m) {
        powers.push_back(powers.back() * u);
    }
    std::vector<double> direct(p);
    std::vector<double> after(p);
    for (std::uint32_t s = 0; s < p; ++s) {
        qexact::Matrix proj = qexact::Matrix::Zero(u.rows(), u.cols());
        for (std::uint32_t m = 0; m < p; ++m) {
            proj += root_of_unity(static_cast<std::uint64_t>(p - s) * m, p) * powers[m];
        }
        proj /= static_cast<double>(p);
        direct[s] = std::max(0.0, (proj * tau_ab.matrix()).trace().real());
        after[s] = std::max(0.0, (proj * twirled.matrix()).trace().real());
    }
    return {dists::MarginalDist(p, std::move(direct)), dists::MarginalDist(p, std::move(after))};
}

}  // namespace pdc::estimation
