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

#include "steerbox/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "steerbox/error.hpp"

namespace steerbox {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kTraceTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;
constexpr double kBlochTolerance = 1e-12;
constexpr double kOffDiagonalTarget = 1e-13;
constexpr int kMaxSweeps = 100;

const ComplexRational kZero{0, 0};

double off_diagonal_norm(const Eigen::MatrixXcd &a) {
    double s = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

void require_hermitian(const Eigen::MatrixXcd &m, ErrorCode code) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(code, "matrix is not square");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
        throw Error(code, "matrix is not Hermitian");
    }
}

double clamp_probability(double v) { return (v < 0 && v > -1e-12) ? 0.0 : v; }

}  // namespace

// ---------------------------------------------------------------------------
// ExactMatrix

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = {1, 0};
    }
    return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix &rhs) const {
    ExactMatrix out(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            ComplexRational s = kZero;
            for (int k = 0; k < n_; ++k) {
                s = s + (*this)(i, k) * rhs(k, j);
            }
            out(i, j) = s;
        }
    }
    return out;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix &rhs) const {
    ExactMatrix out(n_);
    for (std::size_t i = 0; i < m_.size(); ++i) {
        out.m_[i] = m_[i] + rhs.m_[i];
    }
    return out;
}

ExactMatrix ExactMatrix::scaled(const Rational &s) const {
    ExactMatrix out(n_);
    for (std::size_t i = 0; i < m_.size(); ++i) {
        out.m_[i] = {m_[i].re * s, m_[i].im * s};
    }
    return out;
}

ExactMatrix ExactMatrix::adjoint() const {
    ExactMatrix out(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            out(i, j) = (*this)(j, i).conj();
        }
    }
    return out;
}

ComplexRational ExactMatrix::trace() const {
    ComplexRational s = kZero;
    for (int i = 0; i < n_; ++i) {
        s = s + (*this)(i, i);
    }
    return s;
}

ExactMatrix ExactMatrix::kron(const ExactMatrix &rhs) const {
    int n = n_ * rhs.n_;
    ExactMatrix out(n);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < rhs.n_; ++k)
                for (int l = 0; l < rhs.n_; ++l) out(i * rhs.n_ + k, j * rhs.n_ + l) = (*this)(i, j) * rhs(k, l);
    return out;
}

Eigen::MatrixXcd ExactMatrix::to_complex() const {
    Eigen::MatrixXcd m(n_, n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            m(i, j) = {to_double((*this)(i, j).re), to_double((*this)(i, j).im)};
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Eigensystem

Eigensystem eigensystem(const Eigen::MatrixXcd &hermitian) {
    require_hermitian(hermitian, ErrorCode::InvalidArgument);
    const Eigen::Index n = hermitian.rows();
    Eigen::MatrixXcd a = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);

    int sweeps = 0;
    while (off_diagonal_norm(a) >= kOffDiagonalTarget && sweeps < kMaxSweeps) {
        ++sweeps;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                double r = std::abs(a(p, q));
                if (r == 0) {
                    continue;
                }
                // Phase q so that the (p,q) element becomes real, then a real rotation.
                std::complex<double> phase = a(p, q) / r;
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                double theta = 0.5 * std::atan2(2 * r, aqq - app);
                double c = std::cos(theta);
                double s = std::sin(theta);
                Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(n, n);
                std::complex<double> dq = std::conj(phase);
                g(p, p) = c;
                g(p, q) = s;
                g(q, p) = -s * dq;
                g(q, q) = c * dq;
                a = g.adjoint() * a * g;
                v = v * g;
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });
    Eigensystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
        out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    out.sweeps = sweeps;
    return out;
}

Eigensystem eigensystem(const DensityMatrix &m) { return eigensystem(m.matrix()); }

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::from_matrix(const Eigen::MatrixXcd &m) {
    if (m.rows() != m.cols() || (m.rows() != 2 && m.rows() != 4)) {
        throw Error(ErrorCode::InvalidState, "density matrix must be 2x2 or 4x4");
    }
    if (!m.allFinite()) {
        throw Error(ErrorCode::InvalidState, "density matrix has non-finite entries");
    }
    require_hermitian(m, ErrorCode::InvalidState);
    if (std::abs(m.trace() - std::complex<double>(1, 0)) > kTraceTolerance) {
        throw Error(ErrorCode::InvalidState, "density matrix trace differs from 1");
    }
    auto eig = eigensystem(m);
    if (eig.values.minCoeff() < -kPsdTolerance) {
        throw Error(ErrorCode::InvalidState, "density matrix is not positive semidefinite");
    }
    DensityMatrix d;
    d.m_ = m;
    return d;
}

DensityMatrix DensityMatrix::from_exact(const ExactMatrix &m) {
    if (m.size() != 2 && m.size() != 4) {
        throw Error(ErrorCode::InvalidState, "density matrix must be 2x2 or 4x4");
    }
    if (!(m == m.adjoint())) {
        throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
    }
    if (!(m.trace() == ComplexRational{1, 0})) {
        throw Error(ErrorCode::InvalidState, "density matrix trace differs from 1");
    }
    DensityMatrix d = from_matrix(m.to_complex());
    d.exact_ = m;
    return d;
}

// ---------------------------------------------------------------------------
// Measurement

Eigen::Matrix2cd pauli(int k) {
    using C = std::complex<double>;
    Eigen::Matrix2cd m;
    switch (k) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        case 3:
            m << 1, 0, 0, -1;
            break;
        default:
            throw Error(ErrorCode::InvalidArgument, "Pauli index must be 0..3");
    }
    return m;
}

Measurement Measurement::from_bloch(double nx, double ny, double nz) {
    double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (!std::isfinite(norm) || std::fabs(norm - 1) > kBlochTolerance) {
        throw Error(ErrorCode::InvalidArgument, "Bloch vector must have unit norm");
    }
    Measurement m;
    m.n_ = {nx, ny, nz};
    return m;
}

Measurement Measurement::from_exact_bloch(const Rational &nx, const Rational &ny, const Rational &nz) {
    if (nx * nx + ny * ny + nz * nz != 1) {
        throw Error(ErrorCode::InvalidArgument, "Bloch vector must have unit norm");
    }
    Measurement m;
    m.n_ = {to_double(nx), to_double(ny), to_double(nz)};
    m.exact_n_ = std::array<Rational, 3>{nx, ny, nz};
    return m;
}

Measurement Measurement::from_angles(double theta, double phi) {
    Measurement m;
    m.n_ = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    return m;
}

Eigen::Matrix2cd Measurement::projector(int outcome) const {
    double sign = outcome == 0 ? 1.0 : -1.0;
    Eigen::Matrix2cd ns = n_[0] * pauli(1) + n_[1] * pauli(2) + n_[2] * pauli(3);
    return 0.5 * (pauli(0) + sign * ns);
}

std::optional<ExactMatrix> Measurement::exact_projector(int outcome) const {
    if (!exact_n_) {
        return std::nullopt;
    }
    const auto &[nx, ny, nz] = *exact_n_;
    Rational sign = outcome == 0 ? 1 : -1;
    Rational h(1, 2);
    ExactMatrix m(2);
    m(0, 0) = {h * (1 + sign * nz), 0};
    m(0, 1) = {h * sign * nx, -h * sign * ny};
    m(1, 0) = {h * sign * nx, h * sign * ny};
    m(1, 1) = {h * (1 - sign * nz), 0};
    return m;
}

// ---------------------------------------------------------------------------
// States

DensityMatrix one_way_discord_state() {
    // |00> and |+1> = (|01> + |11>)/sqrt 2; the mixture has rational entries.
    ExactMatrix rho(4);
    Rational h(1, 2), q(1, 4);
    rho(0, 0) = {h, 0};
    rho(1, 1) = {q, 0};
    rho(1, 3) = {q, 0};
    rho(3, 1) = {q, 0};
    rho(3, 3) = {q, 0};
    return DensityMatrix::from_exact(rho);
}

DensityMatrix maximally_mixed_state(int dimension) {
    if (dimension != 2 && dimension != 4) {
        throw Error(ErrorCode::InvalidArgument, "dimension must be 2 or 4");
    }
    return DensityMatrix::from_exact(ExactMatrix::identity(dimension).scaled(Rational(1, dimension)));
}

DensityMatrix product_state(const DensityMatrix &alice, const DensityMatrix &bob) {
    if (alice.dimension() != 2 || bob.dimension() != 2) {
        throw Error(ErrorCode::InvalidState, "product_state expects two single-qubit states");
    }
    if (alice.exact() && bob.exact()) {
        return DensityMatrix::from_exact(alice.exact()->kron(*bob.exact()));
    }
    Eigen::MatrixXcd m(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(i * 2 + k, j * 2 + l) = alice.matrix()(i, j) * bob.matrix()(k, l);
    return DensityMatrix::from_matrix(m);
}

namespace {

template <class M, class Get>
void partial_trace_into(M &out, Party kept, Get get) {
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                if (kept == Party::Bob) {
                    out(i, j) = out(i, j) + get(k * 2 + i, k * 2 + j);
                } else {
                    out(i, j) = out(i, j) + get(i * 2 + k, j * 2 + k);
                }
            }
        }
    }
}

}  // namespace

DensityMatrix reduced_state(const DensityMatrix &two_qubit, Party kept) {
    if (two_qubit.dimension() != 4) {
        throw Error(ErrorCode::InvalidState, "reduced_state expects a two-qubit state");
    }
    if (two_qubit.exact()) {
        ExactMatrix out(2);
        const ExactMatrix &rho = *two_qubit.exact();
        partial_trace_into(out, kept, [&](int r, int c) { return rho(r, c); });
        return DensityMatrix::from_exact(out);
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
    const Eigen::MatrixXcd &rho = two_qubit.matrix();
    partial_trace_into(out, kept, [&](int r, int c) { return rho(r, c); });
    return DensityMatrix::from_matrix(out);
}

// ---------------------------------------------------------------------------
// Boxes from states

namespace {

void require_two_qubit(const DensityMatrix &state) {
    if (state.dimension() != 4) {
        throw Error(ErrorCode::InvalidState, "a two-qubit state is required");
    }
}

bool all_exact(std::span<const Measurement, 2> ms) { return ms[0].is_exact() && ms[1].is_exact(); }

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(i * 2 + k, j * 2 + l) = a(i, j) * b(k, l);
    return out;
}

}  // namespace

Box born_box(const DensityMatrix &state, std::span<const Measurement, 2> alice, std::span<const Measurement, 2> bob) {
    require_two_qubit(state);
    if (state.exact() && all_exact(alice) && all_exact(bob)) {
        std::array<Rational, 16> p{};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        ExactMatrix op = alice[x].exact_projector(a)->kron(*bob[y].exact_projector(b));
                        p[box_index(x, y, a, b)] = (op * *state.exact()).trace().re;
                    }
        return Box::from_rational(p);
    }
    std::array<double, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    Eigen::Matrix4cd op = kron2(alice[x].projector(a), bob[y].projector(b));
                    p[box_index(x, y, a, b)] = clamp_probability((op * state.matrix()).trace().real());
                }
    return Box::from_double(p);
}

Assemblage Assemblage::from_operators(const std::array<Eigen::Matrix2cd, 4> &sigma) {
    for (const auto &s : sigma) {
        if (!s.allFinite() || (s - s.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
            throw Error(ErrorCode::InvalidAssemblage, "assemblage element is not Hermitian");
        }
        if (eigensystem(Eigen::MatrixXcd(s)).values.minCoeff() < -kPsdTolerance) {
            throw Error(ErrorCode::InvalidAssemblage, "assemblage element is not positive semidefinite");
        }
    }
    Eigen::Matrix2cd r0 = sigma[0] + sigma[1];
    Eigen::Matrix2cd r1 = sigma[2] + sigma[3];
    if ((r0 - r1).cwiseAbs().maxCoeff() > kHermitianTolerance) {
        throw Error(ErrorCode::InvalidAssemblage, "sum_a sigma_{a|x} depends on x");
    }
    if (std::abs(r0.trace() - std::complex<double>(1, 0)) > kTraceTolerance) {
        throw Error(ErrorCode::InvalidAssemblage, "assemblage does not have unit total trace");
    }
    Assemblage out;
    out.sigma_ = sigma;
    return out;
}

Assemblage assemblage(const DensityMatrix &state, std::span<const Measurement, 2> alice) {
    require_two_qubit(state);
    std::array<Eigen::Matrix2cd, 4> sigma;
    for (int x = 0; x < 2; ++x) {
        for (int a = 0; a < 2; ++a) {
            Eigen::MatrixXcd op = kron2(alice[x].projector(a), Eigen::Matrix2cd::Identity()) * state.matrix();
            Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
            partial_trace_into(s, Party::Bob, [&](int r, int c) { return op(r, c); });
            // Hermitian part; the product above is only Hermitian up to rounding.
            sigma[static_cast<std::size_t>(x * 2 + a)] = 0.5 * (s + s.adjoint());
        }
    }
    Assemblage out = Assemblage::from_operators(sigma);
    if (state.exact() && all_exact(alice)) {
        std::array<ExactMatrix, 4> ex;
        for (int x = 0; x < 2; ++x) {
            for (int a = 0; a < 2; ++a) {
                ExactMatrix op = alice[x].exact_projector(a)->kron(ExactMatrix::identity(2)) * *state.exact();
                ExactMatrix s(2);
                partial_trace_into(s, Party::Bob, [&](int r, int c) { return op(r, c); });
                ex[static_cast<std::size_t>(x * 2 + a)] = s;
            }
        }
        out.exact_ = std::move(ex);
    }
    return out;
}

Box box_from_assemblage(const Assemblage &asm_, std::span<const Measurement, 2> bob) {
    if (asm_.exact() && all_exact(bob)) {
        std::array<Rational, 16> p{};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        p[box_index(x, y, a, b)] =
                            (*bob[y].exact_projector(b) * (*asm_.exact())[static_cast<std::size_t>(x * 2 + a)])
                                .trace()
                                .re;
        return Box::from_rational(p);
    }
    std::array<double, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    p[box_index(x, y, a, b)] =
                        clamp_probability((bob[y].projector(b) * asm_.sigma(x, a)).trace().real());
    return Box::from_double(p);
}

// ---------------------------------------------------------------------------
// Families

namespace {

void require_visibility(double v) {
    if (!(v >= 0 && v <= 1)) {
        throw Error(ErrorCode::Range, "visibility must lie in [0, 1]");
    }
}

int parity_sign(int x, int y, int a, int b) { return ((a ^ b ^ (x & y)) & 1) ? -1 : 1; }

}  // namespace

Box noisy_chsh_box(double visibility) {
    require_visibility(visibility);
    if (visibility == 0) {
        return uniform_box();
    }
    std::array<double, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    p[box_index(x, y, a, b)] = (2 + parity_sign(x, y, a, b) * std::sqrt(2.0) * visibility) / 8;
    return Box::from_double(p);
}

Box bb84_box(const Rational &visibility) {
    if (visibility < 0 || visibility > 1) {
        throw Error(ErrorCode::Range, "visibility must lie in [0, 1]");
    }
    std::array<Rational, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    Rational term = x == y ? Rational(parity_sign(x, y, a, b)) * visibility : Rational(0);
                    p[box_index(x, y, a, b)] = (1 + term) / 4;
                }
    return Box::from_rational(p);
}

Box bb84_box(double visibility) {
    require_visibility(visibility);
    if (auto exact = dyadic_from_double(visibility)) {
        return bb84_box(*exact);
    }
    std::array<double, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    p[box_index(x, y, a, b)] = (1 + (x == y ? parity_sign(x, y, a, b) * visibility : 0.0)) / 4;
    return Box::from_double(p);
}

Box one_way_discord_box() {
    // Rows (x,y) = 00, 01, 10, 11; columns (a,b) = 00, 01, 10, 11.
    const int eighths[4][4] = {{4, 2, 0, 2}, {3, 3, 1, 1}, {2, 4, 2, 0}, {3, 3, 1, 1}};
    std::array<Rational, 16> p{};
    for (int xy = 0; xy < 4; ++xy) {
        for (int ab = 0; ab < 4; ++ab) {
            p[box_index(xy >> 1, xy & 1, ab >> 1, ab & 1)] = Rational(eighths[xy][ab], 8);
        }
    }
    return Box::from_rational(p);
}

}  // namespace steerbox
