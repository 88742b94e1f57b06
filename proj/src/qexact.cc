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

#include "pdc/qexact.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "pdc/errors.h"
#include "pdc/gf.h"

namespace pdc::qexact {
namespace {

bool is_hermitian(const Matrix &m, double tol) { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol; }

Matrix hermitize(const Matrix &m) { return (m + m.adjoint()) * 0.5; }

Matrix identity(std::size_t d) { return Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)); }

std::size_t product(const std::vector<std::size_t> &dims, std::size_t begin, std::size_t end) {
    std::size_t out = 1;
    for (std::size_t i = begin; i < end; ++i) {
        out *= dims[i];
    }
    return out;
}

void require_support(const Matrix &rho, const Matrix &sigma, const char *what) {
    const Matrix proj = support_projector(sigma);
    const double outside = (rho - proj * rho * proj).cwiseAbs().maxCoeff();
    if (outside > 1e-9) {
        throw std::invalid_argument(std::string(what) + ": support of rho not contained in support of sigma");
    }
}

/// Euclidean projection of `v` onto {w >= floor, sum w = 1}.
std::vector<double> project_to_simplex(std::vector<double> v, double floor) {
    const std::size_t n = v.size();
    std::vector<double> sorted(v);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cumulative += sorted[k];
        const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0) {
            theta = candidate;
        }
    }
    double total = 0.0;
    for (double &x : v) {
        x = std::max(x - theta, floor);
        total += x;
    }
    for (double &x : v) {
        x /= total;
    }
    return v;
}

Matrix project_to_states(const Matrix &m, double floor) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
    std::vector<double> values(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    values = project_to_simplex(std::move(values), floor);
    Eigen::VectorXd mapped = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    return es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
}

/// Tr_A of an operator on A (x) B with A the leading factor.
Matrix trace_out_first(const Matrix &m, Eigen::Index da, Eigen::Index db) {
    Matrix out = Matrix::Zero(db, db);
    for (Eigen::Index a = 0; a < da; ++a) {
        out += m.block(a * db, a * db, db, db);
    }
    return out;
}

/// Basis of the support of a PSD matrix, as columns.
Matrix support_basis(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) > kEigenClip) {
            kept.push_back(i);
        }
    }
    Matrix basis(m.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t k = 0; k < kept.size(); ++k) {
        basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(kept[k]);
    }
    return basis;
}

struct Evaluation {
    double q;  // Tr X^alpha
    Matrix t;  // its partial trace onto the optimized factor
};

/// Receives sigma^{-gamma/2} with gamma = (alpha - 1)/alpha.
using Evaluator = std::function<Evaluation(const Matrix &)>;

class InfimumSolver {
   public:
    InfimumSolver(double alpha, Evaluator eval, SolverOptions options)
        : alpha_(alpha), gamma_((alpha - 1.0) / alpha), eval_(std::move(eval)), options_(options) {}

    InfimumResult run(Matrix sigma) {
        InfimumResult result{0.0, sigma, 0, false, false};
        Point current = evaluate(sigma);
        Point best = current;
        for (int it = 1; it <= options_.max_iterations; ++it) {
            const Matrix half = hermitian_power(current.sigma, gamma_ / 2.0);
            Matrix next = hermitian_power(hermitize(half * current.t * half), 1.0 / (1.0 + gamma_));
            next /= next.trace().real();
            const double delta = (next - current.sigma).cwiseAbs().maxCoeff();
            current = evaluate(next);
            if (current.value < best.value) {
                best = current;
            }
            result.iterations = it;
            if (delta < options_.tolerance) {
                result.converged = true;
                break;
            }
        }
        if (!result.converged) {
            result.used_fallback = true;
            best = projected_gradient(best, result);
        }
        result.value = best.value;
        result.sigma = best.sigma;
        return result;
    }

   private:
    struct Point {
        Matrix sigma;
        double value;
        double q;
        Matrix t;
    };

    Point evaluate(const Matrix &sigma) const {
        const Evaluation e = eval_(hermitian_power(sigma, -gamma_ / 2.0));
        return {sigma, std::log2(e.q) / (alpha_ - 1.0), e.q, e.t};
    }

    Matrix gradient(const Point &pt) const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(pt.sigma);
        const auto &lambda = es.eigenvalues();
        const Matrix &u = es.eigenvectors();
        const Matrix half = hermitian_power(pt.sigma, gamma_ / 2.0);
        const Matrix h = u.adjoint() * (alpha_ * half * pt.t * half) * u;
        const Eigen::Index r = lambda.size();
        Matrix g(r, r);
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < r; ++j) {
                const double li = std::max(lambda(i), kEigenClip);
                const double lj = std::max(lambda(j), kEigenClip);
                const double dd = std::abs(li - lj) < 1e-14 * std::max(li, lj)
                                      ? -gamma_ * std::pow(li, -gamma_ - 1.0)
                                      : (std::pow(li, -gamma_) - std::pow(lj, -gamma_)) / (li - lj);
                g(i, j) = dd * h(i, j);
            }
        }
        g = u * g * u.adjoint() / (pt.q * (alpha_ - 1.0) * std::numbers::ln2);
        g -= identity(static_cast<std::size_t>(r)) * (g.trace() / static_cast<double>(r));
        return hermitize(g);
    }

    Point projected_gradient(Point best, InfimumResult &result) const {
        double step = 1.0;
        for (int it = 0; it < options_.max_iterations; ++it) {
            const Matrix g = gradient(best);
            const double g2 = g.squaredNorm();
            if (g2 < options_.tolerance * options_.tolerance) {
                result.converged = true;
                break;
            }
            bool accepted = false;
            while (step > 1e-16) {
                Point trial = evaluate(project_to_states(best.sigma - step * g, kEigenClip));
                if (trial.value <= best.value - 1e-4 * step * g2) {
                    const double gain = best.value - trial.value;
                    best = std::move(trial);
                    accepted = true;
                    step *= 2.0;
                    if (gain < options_.tolerance) {
                        result.converged = true;
                    }
                    break;
                }
                step /= 2.0;
            }
            ++result.iterations;
            if (!accepted || result.converged) {
                result.converged = result.converged || !accepted;
                break;
            }
        }
        return best;
    }

    double alpha_;
    double gamma_;
    Evaluator eval_;
    SolverOptions options_;
};

void require_order(double alpha) {
    if (!(alpha >= 0.5) || !std::isfinite(alpha)) {
        throw std::invalid_argument("sandwiched infimum needs order >= 1/2");
    }
}

}  // namespace

std::size_t checked_dimension(const std::vector<std::size_t> &dims) {
    if (dims.empty()) {
        throw std::invalid_argument("state needs at least one subsystem");
    }
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) {
            throw std::invalid_argument("subsystem dimension must be positive");
        }
        total *= d;
        if (total > kMaxDimension) {
            throw SizeCapExceeded("total Hilbert dimension exceeds " + std::to_string(kMaxDimension));
        }
    }
    return total;
}

UnitaryMatrix::UnitaryMatrix(Matrix m) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("unitary must be square");
    }
    checked_dimension({static_cast<std::size_t>(matrix_.rows())});
    if ((matrix_ * matrix_.adjoint() - identity(dim())).cwiseAbs().maxCoeff() > kStateTolerance) {
        throw std::invalid_argument("matrix is not unitary");
    }
}

PureState::PureState(std::vector<std::size_t> dims, Vector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    if (checked_dimension(dims_) != static_cast<std::size_t>(amplitudes_.size())) {
        throw std::invalid_argument("amplitude count does not match dims");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > kStateTolerance) {
        throw std::invalid_argument("pure state must have unit norm");
    }
}

DensityMatrix::DensityMatrix(std::vector<std::size_t> dims, Matrix m) : dims_(std::move(dims)), matrix_(std::move(m)) {
    const std::size_t d = checked_dimension(dims_);
    if (static_cast<std::size_t>(matrix_.rows()) != d || static_cast<std::size_t>(matrix_.cols()) != d) {
        throw std::invalid_argument("matrix size does not match dims");
    }
    if (!is_hermitian(matrix_, kStateTolerance)) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    matrix_ = hermitize(matrix_);
    if (std::abs(matrix_.trace().real() - 1.0) > kStateTolerance) {
        throw std::invalid_argument("density matrix trace must be 1");
    }
    if (hermitian_eigenvalues(matrix_).minCoeff() < -kStateTolerance) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

DensityMatrix::DensityMatrix(const PureState &psi)
    : DensityMatrix(psi.dims(), psi.amplitudes() * psi.amplitudes().adjoint()) {}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    std::vector<std::size_t> dims(a.dims());
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    checked_dimension(dims);
    return DensityMatrix(std::move(dims), kron(a.matrix(), b.matrix()));
}

DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix({dim}, identity(dim) / static_cast<double>(dim));
}

UnitaryMatrix weyl(std::uint32_t x, std::uint32_t z, std::uint32_t p) {
    gf::require_prime(p);
    checked_dimension({p});
    Matrix w = Matrix::Zero(p, p);
    for (std::uint32_t j = 0; j < p; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((static_cast<std::uint64_t>(z % p) * j) % p) / p;
        w((j + x) % p, j) = std::polar(1.0, angle);
    }
    return UnitaryMatrix(std::move(w));
}

Vector bell_vector(std::uint32_t p) {
    Vector phi = Vector::Zero(static_cast<Eigen::Index>(p) * p);
    for (std::uint32_t j = 0; j < p; ++j) {
        phi(static_cast<Eigen::Index>(j) * p + j) = 1.0 / std::sqrt(static_cast<double>(p));
    }
    return phi;
}

Vector bell_basis_vector(std::uint32_t x, std::uint32_t z, std::uint32_t p) {
    return kron(weyl(x, z, p).matrix(), identity(p)) * bell_vector(p);
}

DensityMatrix bell_diagonal(const dists::PauliDist &dist) {
    const std::uint32_t p = dist.p();
    checked_dimension({p, p});
    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(p) * p, static_cast<Eigen::Index>(p) * p);
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            if (dist(x, z) == 0.0) {
                continue;
            }
            const Vector v = bell_basis_vector(x, z, p);
            rho += dist(x, z) * v * v.adjoint();
        }
    }
    return DensityMatrix({p, p}, std::move(rho));
}

PureState purify(const dists::PauliDist &dist) {
    const std::uint32_t p = dist.p();
    const std::size_t pe = static_cast<std::size_t>(p) * p;
    checked_dimension({p, p, pe});
    const Eigen::Index de = static_cast<Eigen::Index>(pe);
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(p) * p * de);
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            const double w = dist(x, z);
            if (w == 0.0) {
                continue;
            }
            Vector e = Vector::Zero(de);
            e(static_cast<Eigen::Index>(dist.index(x, z))) = 1.0;
            psi += std::sqrt(w) * kron(bell_basis_vector(x, z, p), e);
        }
    }
    psi /= psi.norm();
    return PureState({p, p, pe}, std::move(psi));
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const Matrix &u, std::size_t subsystem) {
    const auto &dims = rho.dims();
    if (subsystem >= dims.size() || static_cast<std::size_t>(u.rows()) != dims[subsystem]) {
        throw std::invalid_argument("operator does not match the target subsystem");
    }
    const Matrix full = kron(kron(identity(product(dims, 0, subsystem)), u),
                             identity(product(dims, subsystem + 1, dims.size())));
    return DensityMatrix(dims, full * rho.matrix() * full.adjoint());
}

DensityMatrix pauli_channel(const DensityMatrix &rho, const dists::PauliDist &dist, std::size_t subsystem) {
    const auto &dims = rho.dims();
    const std::uint32_t p = dist.p();
    if (subsystem >= dims.size() || dims[subsystem] != p) {
        throw std::invalid_argument("pauli_channel: subsystem dimension must equal p");
    }
    const Matrix left = identity(product(dims, 0, subsystem));
    const Matrix right = identity(product(dims, subsystem + 1, dims.size()));
    Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            if (dist(x, z) == 0.0) {
                continue;
            }
            const Matrix full = kron(kron(left, weyl(x, z, p).matrix()), right);
            out += dist(x, z) * full * rho.matrix() * full.adjoint();
        }
    }
    return DensityMatrix(dims, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::vector<std::size_t> keep) {
    const auto &dims = rho.dims();
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty() || keep.back() >= dims.size()) {
        throw std::invalid_argument("partial_trace: invalid subsystem set");
    }
    std::vector<bool> kept(dims.size(), false);
    std::vector<std::size_t> kept_dims;
    for (std::size_t k : keep) {
        kept[k] = true;
        kept_dims.push_back(dims[k]);
    }
    const std::size_t total = rho.dim();
    std::vector<std::size_t> kidx(total), tidx(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i, kval = 0, tval = 0, kscale = 1, tscale = 1;
        for (std::size_t s = dims.size(); s-- > 0;) {
            const std::size_t digit = rest % dims[s];
            rest /= dims[s];
            if (kept[s]) {
                kval += digit * kscale;
                kscale *= dims[s];
            } else {
                tval += digit * tscale;
                tscale *= dims[s];
            }
        }
        kidx[i] = kval;
        tidx[i] = tval;
    }
    const std::size_t dk = product(kept_dims, 0, kept_dims.size());
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    const Matrix &m = rho.matrix();
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < total; ++j) {
            if (tidx[i] == tidx[j]) {
                out(static_cast<Eigen::Index>(kidx[i]), static_cast<Eigen::Index>(kidx[j])) +=
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return DensityMatrix(std::move(kept_dims), std::move(out));
}

DensityMatrix weyl_twirl_first(const DensityMatrix &rho) {
    const std::size_t p = rho.dims().front();
    gf::require_prime(static_cast<std::uint32_t>(p));
    const Matrix right = identity(product(rho.dims(), 1, rho.dims().size()));
    Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            const Matrix full = kron(weyl(x, z, static_cast<std::uint32_t>(p)).matrix(), right);
            out += full * rho.matrix() * full.adjoint();
        }
    }
    return DensityMatrix(rho.dims(), out / static_cast<double>(p * p));
}

DensityMatrix twirl(const DensityMatrix &rho_ab) {
    const auto &dims = rho_ab.dims();
    if (dims.size() != 2 || dims[0] != dims[1]) {
        throw std::invalid_argument("twirl needs A and B of equal prime dimension");
    }
    const auto p = static_cast<std::uint32_t>(dims[0]);
    gf::require_prime(p);
    Matrix out = Matrix::Zero(rho_ab.matrix().rows(), rho_ab.matrix().cols());
    for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t z = 0; z < p; ++z) {
            const Matrix w = weyl(x, z, p).matrix();
            const Matrix full = kron(w, w.conjugate());
            out += full * rho_ab.matrix() * full.adjoint();
        }
    }
    return DensityMatrix(dims, out / static_cast<double>(p) / static_cast<double>(p));
}

double entropy(const DensityMatrix &rho) { return von_neumann_entropy(rho.matrix()); }

double cond_entropy(const DensityMatrix &rho_ab) {
    if (rho_ab.dims().size() != 2) {
        throw std::invalid_argument("conditional entropy needs a bipartite state");
    }
    return entropy(rho_ab) - entropy(partial_trace(rho_ab, {1}));
}

double relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma) {
    return petz_divergence(rho.matrix(), sigma.matrix(), 1.0);
}

double petz_divergence(const Matrix &rho, const Matrix &sigma, double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("Petz divergence needs a positive order");
    }
    if (alpha >= 1.0) {
        require_support(rho, sigma, "petz_divergence");
    }
    if (alpha == 1.0) {
        const auto log_of = [](double v) { return v == 0.0 ? 0.0 : std::log2(v); };
        const Matrix lr = hermitian_function(rho, log_of);
        const Matrix ls = hermitian_function(sigma, log_of);
        return (rho * (lr - ls)).trace().real();
    }
    const double q = (hermitian_power(rho, alpha) * hermitian_power(sigma, 1.0 - alpha)).trace().real();
    return std::log2(q) / (alpha - 1.0);
}

double sandwiched_divergence(const Matrix &rho, const Matrix &sigma, double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("sandwiched divergence needs a positive order");
    }
    if (alpha == 1.0) {
        return petz_divergence(rho, sigma, 1.0);
    }
    if (alpha > 1.0) {
        require_support(rho, sigma, "sandwiched_divergence");
    }
    const Matrix s = hermitian_power(sigma, (1.0 - alpha) / (2.0 * alpha));
    const double q = hermitian_power(hermitize(s * rho * s), alpha).trace().real();
    return std::log2(q) / (alpha - 1.0);
}

InfimumResult sandwiched_infimum(const DensityMatrix &rho_ab, const Matrix &tau_a, double alpha,
                                 const SolverOptions &options) {
    require_order(alpha);
    if (rho_ab.dims().size() != 2) {
        throw std::invalid_argument("sandwiched_infimum needs a bipartite state");
    }
    const auto da = static_cast<Eigen::Index>(rho_ab.dims()[0]);
    if (tau_a.rows() != da || tau_a.cols() != da) {
        throw std::invalid_argument("tau_A has the wrong dimension");
    }
    // Restrict B to the support of rho_B, where every minimizer lives.
    const Matrix basis = support_basis(partial_trace(rho_ab, {1}).matrix());
    const Eigen::Index r = basis.cols();
    const Matrix lift = kron(identity(static_cast<std::size_t>(da)), basis);
    const Matrix reduced = hermitize(lift.adjoint() * rho_ab.matrix() * lift);
    const double gamma = (alpha - 1.0) / alpha;
    const Matrix tau_pow = hermitian_power(tau_a, -gamma / 2.0);
    Evaluator eval = [&, da, r](const Matrix &s) {
        const Matrix k = kron(tau_pow, s);
        const Matrix xa = hermitian_power(hermitize(k * reduced * k), alpha);
        return Evaluation{xa.trace().real(), hermitize(trace_out_first(xa, da, r))};
    };
    InfimumSolver solver(alpha, std::move(eval), options);
    InfimumResult result = solver.run(trace_out_first(reduced, da, r));
    result.sigma = basis * result.sigma * basis.adjoint();
    return result;
}

double cond_entropy_down(const DensityMatrix &rho_ab, double alpha) {
    if (rho_ab.dims().size() != 2) {
        throw std::invalid_argument("conditional entropy needs a bipartite state");
    }
    const Matrix sigma = kron(identity(rho_ab.dims()[0]), partial_trace(rho_ab, {1}).matrix());
    return -petz_divergence(rho_ab.matrix(), sigma, alpha);
}

double cond_entropy_up_sandwiched(const DensityMatrix &rho_ab, double alpha, const SolverOptions &options) {
    if (alpha == 1.0) {
        return cond_entropy(rho_ab);
    }
    return -sandwiched_infimum(rho_ab, identity(rho_ab.dims()[0]), alpha, options).value;
}

DensityMatrix cq_density(const CqState &cq) {
    if (cq.probs.size() != cq.states.size() || cq.states.empty()) {
        throw std::invalid_argument("cq state needs one state per symbol");
    }
    const auto d = static_cast<std::size_t>(cq.states.front().rows());
    const std::size_t nx = cq.probs.size();
    checked_dimension({nx, d});
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(nx * d), static_cast<Eigen::Index>(nx * d));
    for (std::size_t x = 0; x < nx; ++x) {
        m.block(static_cast<Eigen::Index>(x * d), static_cast<Eigen::Index>(x * d), static_cast<Eigen::Index>(d),
                static_cast<Eigen::Index>(d)) = cq.probs[x] * cq.states[x];
    }
    return DensityMatrix({nx, d}, std::move(m));
}

namespace {

Matrix cq_average(const CqState &cq) {
    if (cq.probs.size() != cq.states.size() || cq.states.empty()) {
        throw std::invalid_argument("cq state needs one state per symbol");
    }
    Matrix avg = Matrix::Zero(cq.states.front().rows(), cq.states.front().cols());
    for (std::size_t x = 0; x < cq.probs.size(); ++x) {
        if (cq.states[x].rows() != avg.rows() || cq.states[x].cols() != avg.cols()) {
            throw std::invalid_argument("cq conditional states differ in dimension");
        }
        avg += cq.probs[x] * cq.states[x];
    }
    return hermitize(avg);
}

}  // namespace

double petz_mutual_info_up(const CqState &cq, double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("Petz mutual information needs a positive order");
    }
    const Matrix avg = cq_average(cq);
    if (alpha == 1.0) {
        double acc = 0.0;
        for (std::size_t x = 0; x < cq.probs.size(); ++x) {
            if (cq.probs[x] > 0.0) {
                acc += cq.probs[x] * petz_divergence(cq.states[x], avg, 1.0);
            }
        }
        return acc;
    }
    const Matrix avg_pow = hermitian_power(avg, 1.0 - alpha);
    double q = 0.0;
    for (std::size_t x = 0; x < cq.probs.size(); ++x) {
        if (cq.probs[x] > 0.0) {
            q += cq.probs[x] * (hermitian_power(cq.states[x], alpha) * avg_pow).trace().real();
        }
    }
    return std::log2(q) / (alpha - 1.0);
}

InfimumResult sandwiched_mutual_info_down(const CqState &cq, double alpha, const SolverOptions &options) {
    require_order(alpha);
    const Matrix basis = support_basis(cq_average(cq));
    std::vector<Matrix> reduced;
    std::vector<double> weights;
    for (std::size_t x = 0; x < cq.probs.size(); ++x) {
        if (cq.probs[x] > 0.0) {
            reduced.push_back(hermitize(basis.adjoint() * cq.states[x] * basis));
            weights.push_back(cq.probs[x]);
        }
    }
    Evaluator eval = [&](const Matrix &s) {
        Evaluation e{0.0, Matrix::Zero(basis.cols(), basis.cols())};
        for (std::size_t x = 0; x < reduced.size(); ++x) {
            const Matrix xa = hermitian_power(hermitize(s * reduced[x] * s), alpha);
            e.q += weights[x] * xa.trace().real();
            e.t += weights[x] * xa;
        }
        e.t = hermitize(e.t);
        return e;
    };
    Matrix start = Matrix::Zero(basis.cols(), basis.cols());
    for (std::size_t x = 0; x < reduced.size(); ++x) {
        start += weights[x] * reduced[x];
    }
    InfimumSolver solver(alpha, std::move(eval), options);
    InfimumResult result = solver.run(start / start.trace().real());
    result.sigma = basis * result.sigma * basis.adjoint();
    return result;
}

double trace_distance(const Matrix &rho, const Matrix &sigma) { return 0.5 * trace_norm(hermitize(rho - sigma)); }

namespace {

double leakage_objective(const CqState &cq, const Matrix &sigma) {
    double acc = 0.0;
    for (std::size_t m = 0; m < cq.probs.size(); ++m) {
        acc += cq.probs[m] * trace_norm(hermitize(cq.states[m] - sigma));
    }
    return acc;
}

/// Exact minimum of sum_m P(m) sum_e |r_m(e) - s(e)| over the probability
/// simplex: each coordinate cost is convex piecewise linear, so filling unit
/// mass along segments in increasing slope order is optimal.
double classical_leakage_min(const std::vector<double> &probs, const std::vector<Eigen::VectorXd> &diag) {
    struct Segment {
        double slope;
        double length;
    };
    std::vector<Segment> segments;
    double base = 0.0;
    const Eigen::Index de = diag.front().size();
    for (Eigen::Index e = 0; e < de; ++e) {
        std::vector<std::pair<double, double>> points;
        for (std::size_t m = 0; m < probs.size(); ++m) {
            points.emplace_back(std::max(diag[m](e), 0.0), probs[m]);
            base += probs[m] * std::max(diag[m](e), 0.0);
        }
        std::sort(points.begin(), points.end());
        double below = 0.0;
        double above = 0.0;
        for (const auto &pt : points) {
            above += pt.second;
        }
        double position = 0.0;
        for (const auto &pt : points) {
            if (pt.first > position) {
                segments.push_back({below - above, pt.first - position});
                position = pt.first;
            }
            below += pt.second;
            above -= pt.second;
        }
        segments.push_back({below - above, 1.0});
    }
    std::stable_sort(segments.begin(), segments.end(),
                     [](const Segment &a, const Segment &b) { return a.slope < b.slope; });
    double remaining = 1.0;
    double value = base;
    for (const auto &seg : segments) {
        if (remaining <= 0.0) {
            break;
        }
        const double take = std::min(seg.length, remaining);
        value += take * seg.slope;
        remaining -= take;
    }
    return value;
}

}  // namespace

LeakageResult leakage_d(const CqState &tau_me) {
    const Matrix tau_e = cq_average(tau_me);
    LeakageResult result{leakage_objective(tau_me, tau_e), 0.0};
    bool diagonal = true;
    for (const auto &s : tau_me.states) {
        Matrix off = s;
        off.diagonal().setZero();
        if (off.cwiseAbs().maxCoeff() > 1e-13) {
            diagonal = false;
            break;
        }
    }
    if (diagonal) {
        std::vector<Eigen::VectorXd> diag;
        for (const auto &s : tau_me.states) {
            diag.push_back(s.diagonal().real());
        }
        result.minimized = std::min(result.against_marginal, classical_leakage_min(tau_me.probs, diag));
        return result;
    }
    Matrix sigma = tau_e;
    double best = result.against_marginal;
    for (int k = 0; k < 2000; ++k) {
        Matrix g = Matrix::Zero(sigma.rows(), sigma.cols());
        for (std::size_t m = 0; m < tau_me.probs.size(); ++m) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(tau_me.states[m] - sigma));
            Eigen::VectorXd signs = es.eigenvalues().unaryExpr([](double v) {
                return v > 1e-14 ? 1.0 : (v < -1e-14 ? -1.0 : 0.0);
            });
            g -= tau_me.probs[m] * es.eigenvectors() * signs.asDiagonal() * es.eigenvectors().adjoint();
        }
        sigma = project_to_states(sigma - (0.2 / std::sqrt(k + 1.0)) * g, 0.0);
        best = std::min(best, leakage_objective(tau_me, sigma));
    }
    result.minimized = best;
    return result;
}

LeakageResult leakage_d(const DensityMatrix &rho_me) {
    const auto &dims = rho_me.dims();
    if (dims.size() < 2) {
        throw std::invalid_argument("leakage_d needs an M register and an E register");
    }
    const std::size_t nm = dims[0];
    const std::size_t de = product(dims, 1, dims.size());
    const Matrix &m = rho_me.matrix();
    CqState cq;
    for (std::size_t a = 0; a < nm; ++a) {
        for (std::size_t b = 0; b < nm; ++b) {
            const Matrix block = m.block(static_cast<Eigen::Index>(a * de), static_cast<Eigen::Index>(b * de),
                                         static_cast<Eigen::Index>(de), static_cast<Eigen::Index>(de));
            if (a != b && block.cwiseAbs().maxCoeff() > kStateTolerance) {
                throw std::invalid_argument("leakage_d: M register is not classical");
            }
        }
        const Matrix block = m.block(static_cast<Eigen::Index>(a * de), static_cast<Eigen::Index>(a * de),
                                     static_cast<Eigen::Index>(de), static_cast<Eigen::Index>(de));
        const double w = block.trace().real();
        cq.probs.push_back(w);
        cq.states.push_back(w > 0.0 ? Matrix(block / w) : identity(de) / static_cast<double>(de));
    }
    return leakage_d(cq);
}

DensityMatrix DegradingMap::apply(const DensityMatrix &rho_ab) const {
    if (rho_ab.dims().size() != 2 || static_cast<Eigen::Index>(rho_ab.dims()[1]) != kraus.front().cols()) {
        throw std::invalid_argument("degrading map input has the wrong shape");
    }
    const std::size_t da = rho_ab.dims()[0];
    const auto de = static_cast<std::size_t>(kraus.front().rows());
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(da * de), static_cast<Eigen::Index>(da * de));
    for (const auto &k : kraus) {
        const Matrix full = kron(identity(da), k);
        out += full * rho_ab.matrix() * full.adjoint();
    }
    return DensityMatrix({da, de}, std::move(out));
}

DegradingMap degrading_map(const DensityMatrix &tau_ab, const Matrix &basis_a, const Matrix &basis_b) {
    if (tau_ab.dims().size() != 2) {
        throw std::invalid_argument("degrading_map needs a bipartite state");
    }
    const std::size_t da = tau_ab.dims()[0];
    const std::size_t db = tau_ab.dims()[1];
    const Eigen::Index d = basis_a.cols();
    if (basis_a.rows() != static_cast<Eigen::Index>(da) || basis_b.rows() != static_cast<Eigen::Index>(db) ||
        basis_b.cols() != d) {
        throw std::invalid_argument("degrading_map: basis shapes do not match the state");
    }
    std::vector<Vector> w;
    for (Eigen::Index j = 0; j < d; ++j) {
        w.push_back(kron(basis_a.col(j), basis_b.col(j)));
    }
    Matrix a(d, d);
    Matrix rebuilt = Matrix::Zero(tau_ab.matrix().rows(), tau_ab.matrix().cols());
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
            a(j, k) = (w[static_cast<std::size_t>(j)].adjoint() * tau_ab.matrix() * w[static_cast<std::size_t>(k)])(0, 0);
            rebuilt += a(j, k) * w[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(k)].adjoint();
        }
    }
    if ((rebuilt - tau_ab.matrix()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("degrading_map: state is not maximally correlated in the given basis");
    }
    // a = sum_k s_k |b_k><b_k|; |u_k> = sum_j b_{k,j} |v_j^A, v_j^B>.
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a));
    const auto de = static_cast<std::size_t>(d);
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(da * db * de));
    std::vector<double> s(de);
    for (Eigen::Index k = 0; k < d; ++k) {
        s[static_cast<std::size_t>(k)] = std::max(es.eigenvalues()(k), 0.0);
        Vector u = Vector::Zero(static_cast<Eigen::Index>(da * db));
        for (Eigen::Index j = 0; j < d; ++j) {
            u += es.eigenvectors()(j, k) * w[static_cast<std::size_t>(j)];
        }
        Vector e = Vector::Zero(d);
        e(k) = 1.0;
        psi += std::sqrt(s[static_cast<std::size_t>(k)]) * kron(u, e);
    }
    psi /= psi.norm();
    DegradingMap map{{}, PureState({da, db, de}, psi), DensityMatrix({1}, Matrix::Ones(1, 1))};
    for (Eigen::Index j = 0; j < d; ++j) {
        // t_j = sum_k s_k |b_{k,j}|^2, and c_{k|j} = sqrt(s_k) b_{k,j} / sqrt(t_j).
        double t = 0.0;
        for (Eigen::Index k = 0; k < d; ++k) {
            t += s[static_cast<std::size_t>(k)] * std::norm(es.eigenvectors()(j, k));
        }
        Vector ue = Vector::Zero(d);
        if (t > kEigenClip) {
            for (Eigen::Index k = 0; k < d; ++k) {
                ue(k) = std::sqrt(s[static_cast<std::size_t>(k)]) * es.eigenvectors()(j, k) / std::sqrt(t);
            }
            ue /= ue.norm();
        } else {
            ue(j) = 1.0;
        }
        map.kraus.push_back(ue * basis_b.col(j).adjoint());
    }
    map.tau_ae = partial_trace(DensityMatrix(map.purification), {0, 2});
    return map;
}

}  // namespace pdc::qexact
