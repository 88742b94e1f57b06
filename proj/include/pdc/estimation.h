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

#ifndef PDC_ESTIMATION_H
#define PDC_ESTIMATION_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pdc/dists.h"
#include "pdc/qexact.h"
#include "pdc/rng.h"

namespace pdc::estimation {

/// Local measurement of the observable a X + b Z: Alice measures W(k, l) and
/// Bob its transpose, with (l, k) = (a, -b). The outcome difference is
/// distributed as dists::marginal(P, l, k).
struct MeasurementSetting {
    std::uint32_t a;
    std::uint32_t b;

    std::uint32_t l(std::uint32_t) const { return a; }
    std::uint32_t k(std::uint32_t p) const { return (p - b % p) % p; }
    bool operator==(const MeasurementSetting &) const = default;
};

/// Representatives (1, 0), (1, 1), ..., (1, p - 1), (0, 1) of the nonzero
/// pairs modulo scalars.
std::vector<MeasurementSetting> settings(std::uint32_t p);

/// Index into settings(p) of the class of the nonzero pair (a, b), with the
/// scalar c such that (a, b) = c * representative.
std::pair<std::size_t, std::uint32_t> setting_class(std::uint32_t a, std::uint32_t b, std::uint32_t p);

/// Empirical distribution of `shots` outcomes of the setting on rho[P].
dists::MarginalDist simulate_setting(const dists::PauliDist &p_true, const MeasurementSetting &setting,
                                     std::size_t shots, Rng &rng);

/// E[omega^{l X - k Z}] indexed by l * p + k; entries may be missing.
struct CharTable {
    std::uint32_t p;
    std::vector<std::optional<std::complex<double>>> values;
};

/// Fills every nonzero (l, k) from the p + 1 marginals (one per setting, in
/// settings(p) order) by index scaling within each class.
CharTable char_table(const std::vector<dists::MarginalDist> &marginals);

/// Inverse Fourier transform P(x, z) = p^{-2} sum_{l,k} E[omega^{l X - k Z}]
/// omega^{-(l x - k z)}. The result is real but may have small negative
/// entries. Throws std::invalid_argument if a class is missing.
std::vector<double> reconstruct(const CharTable &table);

/// Clips negatives to zero and rescales to unit mass.
dists::PauliDist project_to_simplex(std::uint32_t p, const std::vector<double> &raw);

struct EstimationReport {
    std::vector<MeasurementSetting> settings;
    std::size_t shots_per_setting;  // 0 means exact marginals
    std::vector<dists::MarginalDist> marginals;
    std::vector<double> raw;
    dists::PauliDist p_hat;
    bool projected;  // some raw entry was negative
    double negative_mass;
    std::optional<double> tv_to_truth;
};

/// Simulate every setting, invert, project. shots_per_setting == 0 uses the
/// exact marginals.
EstimationReport estimate(const dists::PauliDist &p_true, std::size_t shots_per_setting, Rng &rng);

/// Exact outcome distributions of the setting on tau_AB and on twirl(tau_AB).
std::pair<dists::MarginalDist, dists::MarginalDist> twirled_statistics_check(const qexact::DensityMatrix &tau_ab,
                                                                             const MeasurementSetting &setting);

}  // namespace pdc::estimation

#endif  // PDC_ESTIMATION_H
