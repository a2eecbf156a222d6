// Copyright 2026 The geophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>

#include "geophase/types.hpp"

namespace geophase {

/// Kronecker product of two dense matrices.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
auto dagger(const Eigen::MatrixBase<Derived>& m) {
  return m.adjoint();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::PlainObject commutator(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b) {
  return a * b - b * a;
}

/// D[c]rho = c rho c^dag - (c^dag c rho + rho c^dag c) / 2
template <typename DerivedC, typename DerivedR>
typename DerivedR::PlainObject dissipator(const Eigen::MatrixBase<DerivedC>& c,
                                          const Eigen::MatrixBase<DerivedR>& rho) {
  const typename DerivedC::PlainObject cdc = c.adjoint() * c;
  return c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc);
}

/// Column-stacking vectorisation: vec(A X B) = (B^T kron A) vec(X).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> vec(const Eigen::MatrixBase<Derived>& m) {
  const typename Derived::PlainObject plain = m;
  return Eigen::Map<const Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>>(
      plain.data(), plain.size());
}

inline Mat4 unvec4(const Vec16& v) { return Eigen::Map<const Mat4>(v.data()); }

template <typename Derived>
double hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace pauli {

inline Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }
inline Eigen::Matrix2cd x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
inline Eigen::Matrix2cd y() {
  Eigen::Matrix2cd m;
  m << 0, -kI, kI, 0;
  return m;
}
inline Eigen::Matrix2cd z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

/// Single-qubit Pauli by index 0..3 = I, X, Y, Z.
inline Eigen::Matrix2cd by_index(int k) {
  switch (k) {
    case 1:
      return x();
    case 2:
      return y();
    case 3:
      return z();
    default:
      return identity();
  }
}

}  // namespace pauli

/// Two-qubit operator A (qubit 1) kron B (qubit 2).
inline Mat4 two_qubit(const Eigen::Matrix2cd& first, const Eigen::Matrix2cd& second) {
  return kron(first, second);
}

inline Mat4 z1() { return two_qubit(pauli::z(), pauli::identity()); }
inline Mat4 z2() { return two_qubit(pauli::identity(), pauli::z()); }
inline Mat4 zz() { return two_qubit(pauli::z(), pauli::z()); }

/// Eigenvalues (sign of the sigma_z product terms) per computational basis state.
inline constexpr std::array<int, 4> kZ1Sign{1, 1, -1, -1};
inline constexpr std::array<int, 4> kZ2Sign{1, -1, 1, -1};

}  // namespace geophase
