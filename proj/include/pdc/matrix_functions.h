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

#ifndef PDC_MATRIX_FUNCTIONS_H
#define PDC_MATRIX_FUNCTIONS_H

// Spectral functions of Hermitian matrices. Every operand in this library is
// Hermitian PSD, so everything goes through SelfAdjointEigenSolver and
// eigenvalues at or below kEigenClip are treated as exact zeros.

#include <cmath>

#include <Eigen/Dense>

namespace pdc::qexact {

inline constexpr double kEigenClip = 1e-12;

template <typename Derived>
using PlainOf = typename Derived::PlainObject;

/// f applied to the spectrum; `f` sees clipped eigenvalues (<= kEigenClip
/// becomes 0) and must handle 0 itself.
template <typename Derived, typename F>
PlainOf<Derived> hermitian_function(const Eigen::MatrixBase<Derived> &m, F &&f) {
    using Real = typename Derived::RealScalar;
    Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> es(m.derived());
    auto values = es.eigenvalues();
    Eigen::Matrix<Real, Eigen::Dynamic, 1> mapped(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const Real v = values(i) <= Real(kEigenClip) ? Real(0) : values(i);
        mapped(i) = f(v);
    }
    const auto &vecs = es.eigenvectors();
    return vecs * mapped.asDiagonal() * vecs.adjoint();
}

/// m^exponent on the support of m. Negative exponents act as a
/// pseudo-inverse power; zero eigenvalues stay zero.
template <typename Derived>
PlainOf<Derived> hermitian_power(const Eigen::MatrixBase<Derived> &m, typename Derived::RealScalar exponent) {
    using Real = typename Derived::RealScalar;
    return hermitian_function(m, [exponent](Real v) { return v == Real(0) ? Real(0) : std::pow(v, exponent); });
}

/// Projector onto the support (eigenvalues above kEigenClip).
template <typename Derived>
PlainOf<Derived> support_projector(const Eigen::MatrixBase<Derived> &m) {
    using Real = typename Derived::RealScalar;
    return hermitian_function(m, [](Real v) { return v == Real(0) ? Real(0) : Real(1); });
}

template <typename Derived>
Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, 1> hermitian_eigenvalues(
    const Eigen::MatrixBase<Derived> &m) {
    Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> es(m.derived(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// -Tr rho log2 rho.
template <typename Derived>
typename Derived::RealScalar von_neumann_entropy(const Eigen::MatrixBase<Derived> &m) {
    using Real = typename Derived::RealScalar;
    Real h = 0;
    for (Real v : hermitian_eigenvalues(m)) {
        if (v > Real(kEigenClip)) {
            h -= v * std::log2(v);
        }
    }
    return h;
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
template <typename Derived>
typename Derived::RealScalar trace_norm(const Eigen::MatrixBase<Derived> &m) {
    using Real = typename Derived::RealScalar;
    Real acc = 0;
    for (Real v : hermitian_eigenvalues(m)) {
        acc += std::abs(v);
    }
    return acc;
}

/// Kronecker product of two dense matrices.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(const Eigen::MatrixBase<DerivedA> &a,
                                                                              const Eigen::MatrixBase<DerivedB> &b) {
    Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                                 a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace pdc::qexact

#endif  // PDC_MATRIX_FUNCTIONS_H
