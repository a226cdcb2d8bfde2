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

#include "mdst/measurement.h"

#include <cmath>
#include <numbers>

namespace mdst {

std::string to_string(PointerLabel label) {
    switch (label) {
        case PointerLabel::Q:
            return "q";
        case PointerLabel::P:
            return "p";
        case PointerLabel::QDeformed:
            return "q_cd";
        case PointerLabel::PDeformed:
            return "p_cd";
        case PointerLabel::Custom:
            break;
    }
    return "custom";
}

PointerObservable PointerObservable::from_matrix(CMatrix mat, PointerLabel label) {
    if (mat.rows() != 2 || mat.cols() != 2) {
        throw PreconditionError("PointerObservable: pointer operators are 2x2");
    }
    auto eig = hermitian_eig(mat);
    PointerObservable out;
    out.mat = std::move(mat);
    out.eigvals = {eig.values[0], eig.values[1]};
    out.eigvecs = std::move(eig.vectors);
    out.label = label;
    return out;
}

CMatrix coupling_unitary(size_t i, double g, size_t d) {
    if (i >= d) {
        throw PreconditionError("coupling_unitary: index " + std::to_string(i) + " out of range for d=" +
                                std::to_string(d));
    }
    CMatrix u = CMatrix::identity(2 * d);
    const double c = std::cos(g);
    const Complex mis = Complex(0, -std::sin(g));
    u(2 * i, 2 * i) = c;
    u(2 * i + 1, 2 * i + 1) = c;
    u(2 * i, 2 * i + 1) = mis;
    u(2 * i + 1, 2 * i) = mis;
    return u;
}

std::pair<PointerObservable, PointerObservable> cd_observables(double g) {
    if (!(g > 0 && g < std::numbers::pi) || std::abs(std::sin(g)) < kMinSinCoupling) {
        throw PreconditionError("cd_observables: coupling strength g=" + std::to_string(g) +
                                " must lie in (0, pi) with |sin g| >= 1e-6 (q(g) and p(g) divide by sin g)");
    }
    const double inv_sin = 1 / std::sin(g);
    const double tan_half = std::tan(g / 2);
    CMatrix q = pauli::Y() - Complex(tan_half) * (pauli::I() - pauli::Z());
    q *= inv_sin;
    CMatrix p = Complex(inv_sin) * pauli::X();
    return {PointerObservable::from_matrix(std::move(q), PointerLabel::QDeformed),
            PointerObservable::from_matrix(std::move(p), PointerLabel::PDeformed)};
}

std::pair<PointerObservable, PointerObservable> standard_observables() {
    return {PointerObservable::from_matrix(pauli::Y(), PointerLabel::Q),
            PointerObservable::from_matrix(pauli::X(), PointerLabel::P)};
}

JointState evolve(const DensityMatrix &rho, size_t i, double g) {
    const size_t d = rho.dim();
    CMatrix u = coupling_unitary(i, g, d);
    CMatrix pointer0{{1, 0}, {0, 0}};
    CMatrix joint = u * kron(rho.mat(), pointer0) * u.adjoint();
    return JointState{d, std::move(joint)};
}

static void require_compatible(const JointState &js, const MubPair &mub) {
    if (js.mat.rows() != 2 * js.dim || mub.dim != js.dim) {
        throw PreconditionError("joint state and MUB dimensions disagree");
    }
}

/// <v| M |v> for the product vector v = |psi_f> (x) |w>.
static Complex product_expectation(const CMatrix &m, const MubPair &mub, size_t f, std::span<const Complex> w) {
    const size_t d = mub.dim;
    std::vector<Complex> v(2 * d);
    for (size_t s = 0; s < d; s++) {
        v[2 * s] = mub.psi_basis(s, f) * w[0];
        v[2 * s + 1] = mub.psi_basis(s, f) * w[1];
    }
    Complex total = 0;
    for (size_t r = 0; r < 2 * d; r++) {
        if (v[r] == Complex{}) {
            continue;
        }
        Complex row = 0;
        for (size_t c = 0; c < 2 * d; c++) {
            row += m(r, c) * v[c];
        }
        total += std::conj(v[r]) * row;
    }
    return total;
}

double exact_expectation(const JointState &js, size_t f, const PointerObservable &s, const MubPair &mub) {
    require_compatible(js, mub);
    if (f >= js.dim) {
        throw PreconditionError("exact_expectation: postselection index out of range");
    }
    Complex total = 0;
    for (size_t k = 0; k < 2; k++) {
        auto w = s.eigvecs.column(k);
        total += s.eigvals[k] * product_expectation(js.mat, mub, f, w);
    }
    if (std::abs(total.imag()) >= 1e-9) {
        throw NumericalError("exact_expectation: expectation of a Hermitian observable has imaginary part " +
                             std::to_string(total.imag()));
    }
    return total.real();
}

std::vector<double> outcome_probabilities(const JointState &js, const PointerObservable &s, const MubPair &mub) {
    require_compatible(js, mub);
    const size_t d = js.dim;
    std::array<std::vector<Complex>, 2> w{s.eigvecs.column(0), s.eigvecs.column(1)};
    std::vector<double> probs(2 * d);
    double total = 0;
    for (size_t f = 0; f < d; f++) {
        for (size_t k = 0; k < 2; k++) {
            double p = product_expectation(js.mat, mub, f, w[k]).real();
            if (p < -1e-9) {
                throw NumericalError("outcome_probabilities: negative Born weight " + std::to_string(p));
            }
            probs[2 * f + k] = std::max(p, 0.0);
            total += probs[2 * f + k];
        }
    }
    for (auto &p : probs) {
        p /= total;
    }
    return probs;
}

Outcome sample_outcome(const JointState &js, const PointerObservable &s, const MubPair &mub, Rng &rng) {
    auto probs = outcome_probabilities(js, s, mub);
    size_t idx = rng.categorical(probs);
    return Outcome{idx / 2, idx % 2};
}

std::vector<uint64_t> sample_outcome_counts(const JointState &js, const PointerObservable &s, const MubPair &mub,
                                            uint64_t shots, Rng &rng) {
    auto probs = outcome_probabilities(js, s, mub);
    return rng.multinomial(shots, probs);
}

}  // namespace mdst
