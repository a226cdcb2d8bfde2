// Copyright 2026 The mdst Authors
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

#ifndef MDST_QMATH_H
#define MDST_QMATH_H

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdst {

using Complex = std::complex<double>;

/// Raised when an operation's input contract is violated (bad dimension, index, or parameter).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when an internal numerical self-consistency check fails.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix. Sized for the small operators used here (at most ~40x40).
class CMatrix {
   public:
    CMatrix() = default;
    CMatrix(size_t rows, size_t cols);
    CMatrix(size_t rows, size_t cols, std::vector<Complex> entries);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(size_t n);
    static CMatrix zeros(size_t rows, size_t cols);
    static CMatrix diagonal(std::span<const double> values);
    /// |v><v| for a column vector given as a flat list.
    static CMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return data_; }
    std::span<Complex> entries() { return data_; }

    std::vector<Complex> column(size_t c) const;

    CMatrix adjoint() const;

    CMatrix &operator+=(const CMatrix &other);
    CMatrix &operator-=(const CMatrix &other);
    CMatrix &operator*=(Complex scale);

    bool operator==(const CMatrix &other) const = default;

    /// Largest absolute entry.
    double max_abs() const;
    double frobenius_norm() const;
    /// max |M - M^dagger| entrywise.
    double hermiticity_defect() const;
    bool all_finite() const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix &b);
CMatrix operator-(CMatrix a, const CMatrix &b);
CMatrix operator*(const CMatrix &a, const CMatrix &b);
CMatrix operator*(Complex s, CMatrix m);
CMatrix operator*(CMatrix m, Complex s);

/// max |a - b| entrywise; dimensions must agree.
double max_abs_diff(const CMatrix &a, const CMatrix &b);

namespace pauli {
CMatrix I();
CMatrix X();
CMatrix Y();
CMatrix Z();
}  // namespace pauli

/// Axis-angle parametrization of an SU(2) element exp(-i angle n.J).
struct AxisAngle {
    std::array<double, 3> axis{0, 0, 1};
    double angle = 0;
};

/// Seeded random stream. Streams are derived deterministically from (seed, a, b) so
/// that independent tasks can each own one without sharing state.
class Rng {
   public:
    explicit Rng(uint64_t seed);

    /// Stream keyed by a master seed and two counters (e.g. cell id and trial index).
    static Rng stream(uint64_t seed, uint64_t a, uint64_t b = 0);

    double uniform();
    double normal();
    /// Standard complex Gaussian with independent N(0,1) real and imaginary parts.
    Complex complex_normal();
    uint64_t binomial(uint64_t n, double p);
    /// Index drawn from a discrete distribution (weights need not be normalized).
    size_t categorical(std::span<const double> weights);
    /// Outcome counts of `n` independent draws from `probs` (must sum to 1 within roundoff).
    std::vector<uint64_t> multinomial(uint64_t n, std::span<const double> probs);

    std::mt19937_64 &engine() { return engine_; }

   private:
    std::mt19937_64 engine_;
};

/// Mixes a 64-bit value (splitmix64 finalizer).
uint64_t mix64(uint64_t x);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns are eigenvectors
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix. Throws PreconditionError if
/// the input deviates from Hermitian by more than 1e-10.
EigenDecomposition hermitian_eig(const CMatrix &h);

/// Singular values in descending order (square roots of the eigenvalues of M^dagger M).
std::vector<double> singular_values(const CMatrix &m);

/// exp(-i theta H) for Hermitian H, via the spectral decomposition.
CMatrix herm_unitary_exp(const CMatrix &h, double theta);

CMatrix kron(const CMatrix &a, const CMatrix &b);
Complex trace(const CMatrix &m);
/// Traces out the system factor of a (d*2)x(d*2) operator ordered as system (x) pointer.
CMatrix partial_trace_system(const CMatrix &m, size_t d);

/// Haar-distributed SU(2) element as a rotation axis and angle in [0, 2pi).
AxisAngle haar_su2_sample(Rng &rng);

/// Haar-random d x d unitary (QR of a complex Ginibre matrix with the phase fix).
CMatrix haar_unitary(size_t d, Rng &rng);

/// Spin-j angular momentum matrices in the |j, m> basis ordered m = j, j-1, ..., -j.
struct SpinOperators {
    CMatrix jx, jy, jz;
};
SpinOperators spin_operators(size_t d);

}  // namespace mdst

#endif
