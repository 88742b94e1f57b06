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

#ifndef PDC_QEXACT_H
#define PDC_QEXACT_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pdc/dists.h"
#include "pdc/matrix_functions.h"

namespace pdc::qexact {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest total Hilbert-space dimension any state may have.
inline constexpr std::size_t kMaxDimension = 256;
inline constexpr double kStateTolerance = 1e-10;

/// Throws SizeCapExceeded if the product of `dims` is above kMaxDimension.
std::size_t checked_dimension(const std::vector<std::size_t> &dims);

class UnitaryMatrix {
   public:
    explicit UnitaryMatrix(Matrix m);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Matrix &matrix() const { return matrix_; }

   private:
    Matrix matrix_;
};

class PureState {
   public:
    PureState(std::vector<std::size_t> dims, Vector amplitudes);

    const std::vector<std::size_t> &dims() const { return dims_; }
    const Vector &amplitudes() const { return amplitudes_; }

   private:
    std::vector<std::size_t> dims_;
    Vector amplitudes_;
};

/// Hermitian, PSD, unit-trace matrix on a tensor product of subsystems.
/// Subsystem 0 is the most significant factor of the Kronecker ordering.
class DensityMatrix {
   public:
    DensityMatrix(std::vector<std::size_t> dims, Matrix m);
    explicit DensityMatrix(const PureState &psi);

    const std::vector<std::size_t> &dims() const { return dims_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Matrix &matrix() const { return matrix_; }

   private:
    std::vector<std::size_t> dims_;
    Matrix matrix_;
};

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);
DensityMatrix maximally_mixed(std::size_t dim);

/// W(x, z) = X^x Z^z with X|j> = |j+1>, Z|j> = omega^j |j>.
UnitaryMatrix weyl(std::uint32_t x, std::uint32_t z, std::uint32_t p);

/// |Phi> = p^{-1/2} sum_j |j, j>.
Vector bell_vector(std::uint32_t p);
/// W(x, z)_A |Phi>.
Vector bell_basis_vector(std::uint32_t x, std::uint32_t z, std::uint32_t p);

/// sum P(x, z) W(x, z)|Phi><Phi|W(x, z)^dagger on A (x) B.
DensityMatrix bell_diagonal(const dists::PauliDist &dist);

/// sum sqrt(P(x, z)) W_A(x, z)|Phi>_{AB}|x, z>_E with E of dimension p^2.
PureState purify(const dists::PauliDist &dist);

/// U acting on one subsystem, identity elsewhere.
DensityMatrix apply_unitary(const DensityMatrix &rho, const Matrix &u, std::size_t subsystem);

/// sum P(x, z) W(x, z)_sys rho W(x, z)_sys^dagger.
DensityMatrix pauli_channel(const DensityMatrix &rho, const dists::PauliDist &dist, std::size_t subsystem);

/// Keeps the listed subsystems (in increasing order) and traces out the rest.
DensityMatrix partial_trace(const DensityMatrix &rho, std::vector<std::size_t> keep);

/// Weyl twirl on A alone: p^{-2} sum W_A rho W_A^dagger. Subsystem 0 must be A.
DensityMatrix weyl_twirl_first(const DensityMatrix &rho);

/// Bipartite twirl p^{-2} sum (W (x) conj(W)) rho (W (x) conj(W))^dagger.
DensityMatrix twirl(const DensityMatrix &rho_ab);

double entropy(const DensityMatrix &rho);
/// H(AB) - H(B) for a bipartite state.
double cond_entropy(const DensityMatrix &rho_ab);
double relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Petz divergence (1/(a-1)) log2 Tr rho^a sigma^{1-a}; a == 1 gives the
/// relative entropy. `sigma` may be any PSD operator (e.g. I_A (x) rho_B).
double petz_divergence(const Matrix &rho, const Matrix &sigma, double alpha);
/// Sandwiched divergence (1/(a-1)) log2 Tr(sigma^g rho sigma^g)^a, g = (1-a)/(2a).
double sandwiched_divergence(const Matrix &rho, const Matrix &sigma, double alpha);
inline double petz_divergence(const DensityMatrix &rho, const DensityMatrix &sigma, double alpha) {
    return petz_divergence(rho.matrix(), sigma.matrix(), alpha);
}
inline double sandwiched_divergence(const DensityMatrix &rho, const DensityMatrix &sigma, double alpha) {
    return sandwiched_divergence(rho.matrix(), sigma.matrix(), alpha);
}

struct InfimumResult {
    double value;  // min over sigma of the sandwiched divergence, bits
    Matrix sigma;
    int iterations;
    bool converged;
    bool used_fallback;
};

struct SolverOptions {
    double tolerance = 1e-9;
    int max_iterations = 500;
};

/// min_sigma D~_alpha(rho_AB || tau_A (x) sigma_B) for alpha in [1/2, inf).
InfimumResult sandwiched_infimum(const DensityMatrix &rho_ab, const Matrix &tau_a, double alpha,
                                 const SolverOptions &options = {});

/// -D_alpha(rho_AB || I_A (x) rho_B).
double cond_entropy_down(const DensityMatrix &rho_ab, double alpha);
/// -min_sigma D~_alpha(rho_AB || I_A (x) sigma_B).
double cond_entropy_up_sandwiched(const DensityMatrix &rho_ab, double alpha, const SolverOptions &options = {});

/// Classical-quantum state sum_x P(x)|x><x| (x) W(x).
struct CqState {
    std::vector<double> probs;
    std::vector<Matrix> states;
};

DensityMatrix cq_density(const CqState &cq);

/// D_alpha(rho_XB || rho_X (x) rho_B) (Petz, marginal on B fixed).
double petz_mutual_info_up(const CqState &cq, double alpha);
/// min_sigma D~_alpha(rho_XB || rho_X (x) sigma_B), alpha in [1/2, inf).
InfimumResult sandwiched_mutual_info_down(const CqState &cq, double alpha, const SolverOptions &options = {});

/// (1/2) ||rho - sigma||_1.
double trace_distance(const Matrix &rho, const Matrix &sigma);
inline double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    return trace_distance(rho.matrix(), sigma.matrix());
}

struct LeakageResult {
    double against_marginal;  // ||tau_ME - P_M (x) tau_E||_1
    double minimized;         // min_sigma ||tau_ME - P_M (x) sigma||_1
};

/// Leakage of a cq state with M classical. The minimization is exact when all
/// conditional states are diagonal and a projected subgradient method otherwise.
LeakageResult leakage_d(const CqState &tau_me);
/// Same, from a density matrix whose subsystem 0 is M; throws if M is not classical.
LeakageResult leakage_d(const DensityMatrix &rho_me);

/// The post-processing channel Gamma(rho) = sum_j <v_j^B|rho|v_j^B> |u_j^E><u_j^E|
/// mapping a maximally correlated tau_AB onto tau_AE of its purification.
struct DegradingMap {
    std::vector<Matrix> kraus;  // |u_j^E><v_j^B|, each d_E x d_B
    PureState purification;     // on A (x) B (x) E
    DensityMatrix tau_ae;

    /// Applies Gamma to subsystem 1 of a bipartite state.
    DensityMatrix apply(const DensityMatrix &rho_ab) const;
};

/// `basis_a`/`basis_b` hold the basis vectors as columns. Throws
/// std::invalid_argument if tau_AB is not maximally correlated in that basis.
DegradingMap degrading_map(const DensityMatrix &tau_ab, const Matrix &basis_a, const Matrix &basis_b);

}  // namespace pdc::qexact

#endif  // PDC_QEXACT_H
