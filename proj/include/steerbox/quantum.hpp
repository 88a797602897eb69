// Copyright 2026 The steerbox Authors
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

#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "steerbox/box.hpp"
#include "steerbox/rational.hpp"

namespace steerbox {

struct ComplexRational {
    Rational re;
    Rational im;

    friend ComplexRational operator+(const ComplexRational &l, const ComplexRational &r) {
        return {l.re + r.re, l.im + r.im};
    }
    friend ComplexRational operator-(const ComplexRational &l, const ComplexRational &r) {
        return {l.re - r.re, l.im - r.im};
    }
    friend ComplexRational operator*(const ComplexRational &l, const ComplexRational &r) {
        return {l.re * r.re - l.im * r.im, l.re * r.im + l.im * r.re};
    }
    ComplexRational conj() const { return {re, -im}; }
    friend bool operator==(const ComplexRational &, const ComplexRational &) = default;
};

/// Dense square matrix over the Gaussian rationals. Only the handful of
/// operations needed for exact Born-rule evaluation.
class ExactMatrix {
   public:
    explicit ExactMatrix(int n = 0) : n_(n), m_(static_cast<std::size_t>(n * n)) {}

    static ExactMatrix identity(int n);

    int size() const noexcept { return n_; }
    ComplexRational &operator()(int r, int c) { return m_[static_cast<std::size_t>(r * n_ + c)]; }
    const ComplexRational &operator()(int r, int c) const { return m_[static_cast<std::size_t>(r * n_ + c)]; }

    ExactMatrix operator*(const ExactMatrix &rhs) const;
    ExactMatrix operator+(const ExactMatrix &rhs) const;
    ExactMatrix scaled(const Rational &s) const;
    ExactMatrix adjoint() const;
    ComplexRational trace() const;
    ExactMatrix kron(const ExactMatrix &rhs) const;
    Eigen::MatrixXcd to_complex() const;

    friend bool operator==(const ExactMatrix &, const ExactMatrix &) = default;

   private:
    int n_;
    std::vector<ComplexRational> m_;
};

/// Hermitian, unit-trace, positive semidefinite operator on one qubit (2x2)
/// or two qubits (4x4, basis |00>,|01>,|10>,|11> with Alice first).
class DensityMatrix {
   public:
    static DensityMatrix from_matrix(const Eigen::MatrixXcd &m);
    static DensityMatrix from_exact(const ExactMatrix &m);

    int dimension() const noexcept { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd &matrix() const noexcept { return m_; }
    const std::optional<ExactMatrix> &exact() const noexcept { return exact_; }

   private:
    DensityMatrix() = default;

    Eigen::MatrixXcd m_;
    std::optional<ExactMatrix> exact_;
};

/// Binary projective qubit measurement along a unit Bloch vector n:
/// outcome 0 <-> (I + n.sigma)/2, outcome 1 <-> (I - n.sigma)/2.
class Measurement {
   public:
    static Measurement from_bloch(double nx, double ny, double nz);
    static Measurement from_exact_bloch(const Rational &nx, const Rational &ny, const Rational &nz);
    static Measurement sigma_x() { return from_exact_bloch(1, 0, 0); }
    static Measurement sigma_y() { return from_exact_bloch(0, 1, 0); }
    static Measurement sigma_z() { return from_exact_bloch(0, 0, 1); }
    /// Polar angle theta from +z, azimuth phi from +x.
    static Measurement from_angles(double theta, double phi);

    const std::array<double, 3> &bloch() const noexcept { return n_; }
    Eigen::Matrix2cd projector(int outcome) const;
    std::optional<ExactMatrix> exact_projector(int outcome) const;
    bool is_exact() const noexcept { return exact_n_.has_value(); }

   private:
    Measurement() = default;

    std::array<double, 3> n_{};
    std::optional<std::array<Rational, 3>> exact_n_;
};

/// Unnormalized conditional states sigma_{a|x} on the trusted qubit,
/// indexed [x * 2 + a].
class Assemblage {
   public:
    static Assemblage from_operators(const std::array<Eigen::Matrix2cd, 4> &sigma);

    const Eigen::Matrix2cd &sigma(int x, int a) const { return sigma_[static_cast<std::size_t>(x * 2 + a)]; }
    const std::optional<std::array<ExactMatrix, 4>> &exact() const noexcept { return exact_; }
    /// sum_a sigma_{a|0}
    Eigen::Matrix2cd reduced_state() const { return sigma_[0] + sigma_[1]; }

   private:
    friend Assemblage assemblage(const DensityMatrix &, std::span<const Measurement, 2>);
    Assemblage() = default;

    std::array<Eigen::Matrix2cd, 4> sigma_;
    std::optional<std::array<ExactMatrix, 4>> exact_;
};

struct Eigensystem {
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXcd vectors;  // columns, orthonormal
    int sweeps = 0;
};

/// Cyclic complex Jacobi rotations until the off-diagonal Frobenius norm is
/// below 1e-13. Throws InvalidArgument for non-Hermitian input.
Eigensystem eigensystem(const Eigen::MatrixXcd &hermitian);
Eigensystem eigensystem(const DensityMatrix &m);

Eigen::Matrix2cd pauli(int k);  // 0 = I, 1 = X, 2 = Y, 3 = Z

/// (|00><00| + |+1><+1|) / 2, exact. Quantum-classical: Bob is classical in
/// the z basis while Alice holds |0> or |+>.
DensityMatrix one_way_discord_state();
DensityMatrix maximally_mixed_state(int dimension);
DensityMatrix product_state(const DensityMatrix &alice, const DensityMatrix &bob);
/// Reduced state of `kept` (partial trace over the other party).
DensityMatrix reduced_state(const DensityMatrix &two_qubit, Party kept);

/// p(ab|xy) = Tr[(Pi_{a|x} x Pi_{b|y}) rho]. Rational when the state and all
/// four measurements are exact.
Box born_box(const DensityMatrix &state, std::span<const Measurement, 2> alice, std::span<const Measurement, 2> bob);
/// sigma_{a|x} = Tr_A[(Pi_{a|x} x I) rho]
Assemblage assemblage(const DensityMatrix &state, std::span<const Measurement, 2> alice);
Box box_from_assemblage(const Assemblage &asm_, std::span<const Measurement, 2> bob);

/// (2 + (-1)^{a xor b xor xy} sqrt(2) V) / 8 for V in [0,1].
Box noisy_chsh_box(double visibility);
/// (1 + (-1)^{a xor b xor xy} delta_{xy} V) / 4 for V in [0,1]. Rational when V
/// is a short dyadic.
Box bb84_box(double visibility);
Box bb84_box(const Rational &visibility);

/// The printed correlation table produced by one_way_discord_state() with
/// Alice and Bob both measuring (sigma_z, sigma_x).
Box one_way_discord_box();

}  // namespace steerbox
