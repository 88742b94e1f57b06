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

#include "pdc/identities.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdc/qexact.h"

namespace pdc::qexact {
namespace {

/// Uniform input x in F_p^2 sent as W(x)_A rho W(x)_A^dagger.
CqState weyl_cq(const DensityMatrix &rho, std::uint32_t p) {
    CqState cq;
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            cq.probs.push_back(1.0 / (static_cast<double>(p) * p));
            cq.states.push_back(apply_unitary(rho, weyl(x, z, p).matrix(), 0).matrix());
        }
    }
    return cq;
}

}  // namespace

double IdentityResiduals::worst_equality() const {
    return std::max({h_ab, h_ae, h_down_ab, petz_info_b, sandwiched_info_e});
}

bool IdentityResiduals::ok(double tolerance) const {
    return worst_equality() < tolerance && h_up_ae_slack >= -tolerance;
}

IdentityResiduals identity_residuals(const dists::PauliDist &p_xz, const dists::PauliDist &p_tilde, double t) {
    if (p_xz.p() != p_tilde.p()) {
        throw std::invalid_argument("identity_residuals: modulus mismatch");
    }
    if (!(t > 0.0 && t < 1.0)) {
        throw std::invalid_argument("identity_residuals: t must lie in (0, 1)");
    }
    const std::uint32_t p = p_xz.p();
    const double log_p = std::log2(static_cast<double>(p));
    const DensityMatrix omega = pauli_channel(DensityMatrix(purify(p_xz)), dists::negate_x(p_tilde), 1);
    const DensityMatrix omega_ab = partial_trace(omega, {0, 1});
    const DensityMatrix omega_ae = partial_trace(omega, {0, 2});
    const dists::PauliDist conv = dists::convolve(p_tilde, p_xz);

    IdentityResiduals r{};
    r.h_ab = std::abs(cond_entropy(omega_ab) - (dists::shannon_entropy(conv) - log_p));
    r.h_ae = std::abs(cond_entropy(omega_ae) - (log_p - dists::shannon_entropy(p_xz)));
    const double h_down = cond_entropy_down(omega_ab, 1.0 - t);
    r.h_down_ab = std::abs(h_down - (dists::renyi_entropy(conv, 1.0 - t) - log_p));
    const double h_up = cond_entropy_up_sandwiched(omega_ae, 1.0 + t);
    r.h_up_ae_slack = h_up - (log_p - dists::renyi_entropy(p_xz, 1.0 / (1.0 + t)));
    r.petz_info_b = std::abs(petz_mutual_info_up(weyl_cq(omega_ab, p), 1.0 - t) - (log_p - h_down));
    r.sandwiched_info_e = std::abs(sandwiched_mutual_info_down(weyl_cq(omega_ae, p), 1.0 + t).value - (log_p - h_up));
    return r;
}

}  // namespace pdc::qexact
