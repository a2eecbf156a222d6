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

#include <complex>

#include <Eigen/Dense>

namespace geophase {

using cplx = std::complex<double>;

template <typename Scalar>
using Matrix4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
template <typename Scalar>
using Matrix16 = Eigen::Matrix<std::complex<Scalar>, 16, 16>;
template <typename Scalar>
using Vector16 = Eigen::Matrix<std::complex<Scalar>, 16, 1>;

// Two-qubit operators in the computational basis |00>, |01>, |10>, |11>.
using Mat4 = Matrix4<double>;
// Superoperators on two qubits (column-stacking vec convention).
using Mat16 = Matrix16<double>;
using Vec16 = Vector16<double>;

using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

}  // namespace geophase
