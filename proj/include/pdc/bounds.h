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

#ifndef PDC_BOUNDS_H
#define PDC_BOUNDS_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pdc/dists.h"
#include "pdc/qexact.h"

namespace pdc::bounds {

/// Asymptotic rates in bits per channel use.
struct RateTriple {
    double R1_star;
    double R2_star;
    double R_star;
};

struct SecurityTargets {
    double eps_C;
    double eps_E;
    double eps_B;
};

/// Throws std::invalid_argument unless every target lies in (0, 1].
void validate(const SecurityTargets &targets);

/// Points in (0, 1] over which the Renyi parameter t is optimized.
class TGrid {
   public:
    explicit TGrid(std::vector<double> points);
    /// `points` log-spaced points from 0.001 to 1.
    static TGrid log_spaced(std::size_t points);
    /// log_spaced(200).
    static TGrid standard() { return log_spaced(200); }

    const std::vector<double> &points() const { return points_; }

   private:
    std::vector<double> points_;
};

struct TOptimum {
    double t;
    double value;
};

/// Minimum of f over the grid, refined by golden-section search between the
/// neighbours of the best grid point.
TOptimum minimize_over_t(const std::function<double(double)> &f, const TGrid &grid);

RateTriple asymptotic_rates(const dists::PauliDist &p_xz, const dists::PauliDist &p_tilde);

/// H(G(L(tau_AB))) - H(L(tau_AB)) - H(G(tau_AE)) + H(tau_AE) with G the Weyl
/// twirl on A and L a Pauli channel on A (identity when omitted). `tau_abe`
/// has subsystems (A, B, E).
double general_rate(const qexact::DensityMatrix &tau_abe);
double general_rate(const qexact::DensityMatrix &tau_abe, const dists::PauliDist &channel);

/// p^{-n3}.
double eps_B_bound(std::size_t n3, std::uint32_t p);

/// log2 of the secrecy bound before capping.
double log2_eps_E_bound(std::size_t n, std::size_t sacrifice, const dists::PauliDist &p_xz, const TGrid &grid);
/// min_t 2^{(1-t)/(1+t)} 2^{(t/(1+t))(n H_{1/(1+t)}(P) - s log2 p)}, capped at 1.
double eps_E_bound(std::size_t n, std::size_t sacrifice, const dists::PauliDist &p_xz, const TGrid &grid);

/// log2 of the completeness bound before capping.
double log2_eps_C_bound(std::size_t n, std::size_t n1, const dists::PauliDist &p_eff, const TGrid &grid);
/// 4 min_t 2^{t[n1 log2 p - n(2 log2 p - H_{1-t}(P_eff))]}, capped at 1.
double eps_C_bound(std::size_t n, std::size_t n1, const dists::PauliDist &p_eff, const TGrid &grid);

struct MHat {
    std::size_t m1;
    std::size_t m2;
    std::size_t m3;
};

/// Code length m1, randomness length m2 and verification length m3 meeting
/// the targets; std::nullopt when no code length meets eps_C.
std::optional<MHat> m_hat_lengths(const SecurityTargets &targets, std::size_t n, const dists::PauliDist &p_xz,
                                  const dists::PauliDist &p_tilde, const TGrid &grid);

/// max_t (t/(1+t))(R2 - H_{1/(1+t)}(P)), never below 0.
double leakage_exponent_lower(double r2, const dists::PauliDist &p_xz, const TGrid &grid);

struct FiniteLengthReport {
    std::size_t n;
    bool feasible;
    std::size_t n1;
    std::size_t sacrifice;
    std::size_t n3;
    double R1;
    double R2;
    double R3;
    double R;
    double eps_C;
    double eps_E;
    double eps_B;
};

FiniteLengthReport finite_length_report(const SecurityTargets &targets, std::size_t n, const dists::PauliDist &p_xz,
                                        const dists::PauliDist &p_tilde, const TGrid &grid);

}  // namespace pdc::bounds

#endif  // PDC_BOUNDS_H
