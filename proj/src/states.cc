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

#include "mdst/states.h"

#include <cmath>
#include <numbers>

namespace mdst {

DensityMatrix::DensityMatrix(CMatrix mat) : mat_(std::move(mat)) {
    if (!mat_.is_square() || mat_.rows() == 0) {
        throw PreconditionError("DensityMatrix: matrix must be square and non-empty");
    }
    if (!mat_.all_finite()) {
        throw PreconditionError("DensityMatrix: non-finite entries");
    }
    if (mat_.hermiticity_defect() > 1e-10) {
        throw PreconditionError("DensityMatrix: not Hermitian");
    }
    if (std::abs(trace(mat_) - 1.0) > 1e-10) {
        throw PreconditionError("DensityMatrix: trace is not 1");
    }
    if (hermitian_eig(mat_).values.front() < -1e-10) {
        throw PreconditionError("DensityMatrix: not positive semidefinite");
    }
}

double DensityMatrix::purity() const { return trace(mat_ * mat_).real(); }

DensityMatrix DensityMatrix::pure(std::span<const Complex> ket) {
    return DensityMatrix(CMatrix::outer(ket, ket));
}

DensityMatrix DensityMatrix::maximally_mixed(size_t d) {
    return DensityMatrix(Complex(1.0 / static_cast<double>(d)) * CMatrix::identity(d));
}

MubPair fourier_mub(size_t d) {
    if (d < 2) {
        throw PreconditionError("fourier_mub: dimension must be at least 2");
    }
    MubPair mub;
    mub.dim = d;
    mub.a_basis = CMatrix::identity(d);
    mub.psi_basis = CMatrix(d, d);
    const double norm = 1 / std::sqrt(static_cast<double>(d));
    for (size_t i = 0; i < d; i++) {
        for (size_t f = 0; f < d; f++) {
            // <a_i|psi_f> = exp(2 pi i i f / d) / sqrt(d)
            double phase = 2 * std::numbers::pi * static_cast<double>((i * f) % d) / static_cast<double>(d);
            mub.psi_basis(i, f) = std::polar(norm, phase);
        }
    }
    return mub;
}

Ensemble parse_ensemble(const std::string &name) {
    if (name == "hs") {
        return Ensemble::HilbertSchmidt;
    }
    if (name == "pure") {
        return Ensemble::Pure;
    }
    throw PreconditionError("unknown ensemble '" + name + "' (expected hs or pure)");
}

std::string to_string(Ensemble e) { return e == Ensemble::Pure ? "pure" : "hs"; }

static CMatrix hermitian_part(const CMatrix &m) { return Complex(0.5) * (m + m.adjoint()); }

DensityMatrix random_density_hs(size_t d, Rng &rng) {
    if (d < 2) {
        throw PreconditionError("random_density_hs: dimension must be at least 2");
    }
    CMatrix g(d, d);
    for (auto &z : g.entries()) {
        z = rng.complex_normal();
    }
    CMatrix rho = g * g.adjoint();
    rho *= 1 / trace(rho).real();
    return DensityMatrix(hermitian_part(rho));
}

DensityMatrix random_pure(size_t d, Rng &rng) {
    std::vector<Complex> ket(d);
    double norm2 = 0;
    for (auto &z : ket) {
        z = rng.complex_normal();
        norm2 += std::norm(z);
    }
    for (auto &z : ket) {
        z /= std::sqrt(norm2);
    }
    return DensityMatrix::pure(ket);
}

DensityMatrix random_state(Ensemble ensemble, size_t d, Rng &rng) {
    return ensemble == Ensemble::Pure ? random_pure(d, rng) : random_density_hs(d, rng);
}

double trace_distance(const CMatrix &a, const CMatrix &b, bool hermitize) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw PreconditionError("trace_distance: dimension mismatch");
    }
    CMatrix diff = a - b;
    if (hermitize) {
        diff = hermitian_part(diff);
    }
    double total = 0;
    for (double s : singular_values(diff)) {
        total += s;
    }
    return total / 2;
}

}  // namespace mdst
