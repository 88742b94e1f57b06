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

#ifndef PDC_IDENTITIES_H
#define PDC_IDENTITIES_H

#include "pdc/dists.h"

namespace pdc::qexact {

/// Residuals of the Bell-diagonal entropy identities on
/// omega = Lambda_B[P~(-x, z)](purify(P)), all in bits. Equalities are
/// absolute differences; `h_up_ae_slack` is
/// H~^up_{1+t}(A|E) - (log p - H_{1/(1+t)}(P)) and should be >= 0.
struct IdentityResiduals {
    double h_ab;
    double h_ae;
    double h_down_ab;
    double h_up_ae_slack;
    double petz_info_b;       // I^up_{1-t}(X;B) vs log p - H^down_{1-t}(A|B)
    double sandwiched_info_e; // I~^down_{1+t}(X;AE) vs log p - H~^up_{1+t}(A|E)

    double worst_equality() const;
    bool ok(double tolerance) const;
};

IdentityResiduals identity_residuals(const dists::PauliDist &p_xz, const dists::PauliDist &p_tilde, double t);

}  // namespace pdc::qexact

#endif  // PDC_IDENTITIES_H
