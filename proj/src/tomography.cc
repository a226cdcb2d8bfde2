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

#include "mdst/tomography.h"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mdst {

std::string TomographyScheme::name() const {
    switch (kind) {
        case SchemeKind::Mdst:
            return "MDST";
        case SchemeKind::Dst:
            return "DST";
        case SchemeKind::Pauli:
            return "Pauli";
        case SchemeKind::Su2Kernel:
            return "SU2Kernel";
        case SchemeKind::RandomBasisLsq:
            return "SU2Lsq";
    }
    return "?";
}

static double parse_double(const std::string &text, const std::string &context) {
    size_t used = 0;
    double value = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw PreconditionError("could not parse number '" + text + "' in " + context);
    }
    return value;
}

TomographyScheme TomographyScheme::parse(const std::string &text) {
    std::string head = text;
    std::string arg;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        head = text.substr(0, colon);
        arg = text.substr(colon + 1);
    }
    for (auto &ch : head) {
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    if (head == "mdst" || head == "dst") {
        if (arg.empty()) {
            throw PreconditionError("scheme '" + text + "' needs a coupling strength, e.g. " + head + ":1.3");
        }
        double g = parse_double(arg, "scheme '" + text + "'");
        return head == "mdst" ? mdst(g) : dst(g);
    }
    if (!arg.empty() && head != "lsq" && head != "su2lsq") {
        throw PreconditionError("scheme '" + head + "' takes no parameter");
    }
    if (head == "pauli") {
        return pauli();
    }
    if (head == "su2" || head == "su2kernel") {
        return su2_kernel();
    }
    if (head == "lsq" || head == "su2lsq") {
        size_t bases = 0;
        if (!arg.empty()) {
            double b = parse_double(arg, "scheme '" + text + "'");
            if (b < 1 || b != std::floor(b)) {
                throw PreconditionError("lsq basis count must be a positive integer");
            }
            bases = static_cast<size_t>(b);
        }
        return random_basis_lsq(bases);
    }
    throw PreconditionError("unknown scheme '" + text + "' (expected mdst:<g>, dst:<g>, pauli, su2, lsq[:<bases>])");
}

std::string TomographyScheme::spec_string() const {
    std::ostringstream out;
    switch (kind) {
        case SchemeKind::Mdst:
            out << "mdst:" << g;
            break;
        case SchemeKind::Dst:
            out << "dst:" << g;
            break;
        case SchemeKind::Pauli:
            out << "pauli";
            break;
        case SchemeKind::Su2Kernel:
            out << "su2";
            break;
        case SchemeKind::RandomBasisLsq:
            out << "lsq";
            if (bases) {
                out << ":" << bases;
            }
            break;
    }
    return out.str();
}

ReconstructedMatrix reconstruct_from_table(const WeakValueTable &table, const MubPair &mub) {
    const size_t d = table.dim;
    if (mub.dim != d || table.pw.rows() != d || table.pw.cols() != d) {
        throw PreconditionError("reconstruct_from_table: table and MUB dimensions disagree");
    }
    ReconstructedMatrix out;
    out.mat = CMatrix(d, d);
    for (size_t i = 0; i < d; i++) {
        for (size_t f = 0; f < d; f++) {
            Complex element = table.pw(i, f) / mub.overlap(f, i);
            // element |a_i><psi_f|, with |a_i> the computational basis vector.
            for (size_t c = 0; c < d; c++) {
                out.mat(i, c) += element * std::conj(mub.psi_basis(c, f));
            }
        }
    }
    for (auto c : table.counts) {
        out.samples += c;
    }
    return out;
}

std::vector<uint64_t> BornSampler::pointer_counts(size_t i, double g, const PointerObservable &s, uint64_t shots,
                                                  Rng &rng) const {
    return sample_outcome_counts(evolve(rho_, i, g), s, mub_, shots, rng);
}

std::vector<double> BornSampler::basis_probabilities(const CMatrix &basis) const {
    const size_t d = dim();
    if (basis.rows() != d || basis.cols() != d) {
        throw PreconditionError("basis measurement: basis dimension differs from state");
    }
    CMatrix rotated = basis.adjoint() * rho_.mat() * basis;
    std::vector<double> probs(d);
    double total = 0;
    for (size_t k = 0; k < d; k++) {
        double p = rotated(k, k).real();
        if (p < -1e-9) {
            throw NumericalError("basis measurement: negative Born weight " + std::to_string(p));
        }
        probs[k] = std::max(p, 0.0);
        total += probs[k];
    }
    for (auto &p : probs) {
        p /= total;
    }
    return probs;
}

std::vector<uint64_t> BornSampler::basis_counts(const CMatrix &basis, uint64_t shots, Rng &rng) const {
    return rng.multinomial(shots, basis_probabilities(basis));
}

size_t BornSampler::basis_shot(const CMatrix &basis, Rng &rng) const {
    return rng.categorical(basis_probabilities(basis));
}

std::vector<uint64_t> equal_allocation(uint64_t total, size_t settings) {
    std::vector<uint64_t> out(settings, total / settings);
    for (size_t k = 0; k < total % settings; k++) {
        out[k]++;
    }
    return out;
}

namespace {

struct DirectPipeline {
    double g;
    PointerObservable q;
    PointerObservable p;
    /// pw = scale * (-E_q + i E_p)
    double scale;
};

DirectPipeline direct_pipeline(const TomographyScheme &scheme) {
    if (scheme.kind == SchemeKind::Mdst) {
        auto [q, p] = cd_observables(scheme.g);
        return {scheme.g, std::move(q), std::move(p), 0.5};
    }
    if (scheme.kind == SchemeKind::Dst) {
        if (!(scheme.g > 0) || !std::isfinite(scheme.g)) {
            throw PreconditionError("DST requires a coupling strength g > 0");
        }
        auto [q, p] = standard_observables();
        return {scheme.g, std::move(q), std::move(p), 1 / (2 * scheme.g)};
    }
    throw PreconditionError("direct pipeline requires an MDST or DST scheme");
}

/// Mean of eigval_k * 1[outcome f] for every f, from flattened (f, k) counts.
std::vector<double> readout_means(const std::vector<uint64_t> &counts, const PointerObservable &s, uint64_t shots) {
    const size_t d = counts.size() / 2;
    std::vector<double> out(d);
    for (size_t f = 0; f < d; f++) {
        out[f] = (s.eigvals[0] * static_cast<double>(counts[2 * f]) +
                  s.eigvals[1] * static_cast<double>(counts[2 * f + 1])) /
                 static_cast<double>(shots);
    }
    return out;
}

ReconstructedMatrix run_direct(const TomographyScheme &scheme, const BornSampler &sampler, uint64_t n, Rng &rng) {
    const size_t d = sampler.dim();
    if (n < 2 * d) {
        throw PreconditionError(scheme.name() + " needs N >= 2d = " + std::to_string(2 * d) + " samples, got " +
                                std::to_string(n));
    }
    auto pipeline = direct_pipeline(scheme);
    WeakValueTable table{d, CMatrix(d, d), equal_allocation(n, 2 * d)};
    for (size_t i = 0; i < d; i++) {
        uint64_t shots_q = table.counts[2 * i];
        uint64_t shots_p = table.counts[2 * i + 1];
        auto eq = readout_means(sampler.pointer_counts(i, pipeline.g, pipeline.q, shots_q, rng), pipeline.q, shots_q);
        auto ep = readout_means(sampler.pointer_counts(i, pipeline.g, pipeline.p, shots_p, rng), pipeline.p, shots_p);
        for (size_t f = 0; f < d; f++) {
            table.pw(i, f) = pipeline.scale * Complex(-eq[f], ep[f]);
        }
    }
    auto out = reconstruct_from_table(table, sampler.mub());
    out.scheme = scheme.name();
    return out;
}

}  // namespace

ReconstructedMatrix run_mdst(const DensityMatrix &rho, double g, uint64_t n, const MubPair &mub, Rng &rng) {
    return run_direct(TomographyScheme::mdst(g), BornSampler(rho, mub), n, rng);
}

ReconstructedMatrix run_dst(const DensityMatrix &rho, double g, uint64_t n, const MubPair &mub, Rng &rng) {
    return run_direct(TomographyScheme::dst(g), BornSampler(rho, mub), n, rng);
}

static const std::array<CMatrix, 3> &pauli_axes() {
    static const std::array<CMatrix, 3> axes{pauli::X(), pauli::Y(), pauli::Z()};
    return axes;
}

ReconstructedMatrix analytic_reconstruction(const DensityMatrix &rho, const TomographyScheme &scheme,
                                            const MubPair &mub) {
    if (scheme.kind == SchemeKind::Pauli) {
        if (rho.dim() != 2) {
            throw PreconditionError("Pauli tomography is defined for qubits only");
        }
        CMatrix out = Complex(0.5) * pauli::I();
        for (const auto &sigma : pauli_axes()) {
            out += Complex(0.5 * trace(rho.mat() * sigma).real()) * sigma;
        }
        return {out, "Pauli", 0};
    }
    auto pipeline = direct_pipeline(scheme);
    const size_t d = rho.dim();
    WeakValueTable table{d, CMatrix(d, d), std::vector<uint64_t>(2 * d, 0)};
    for (size_t i = 0; i < d; i++) {
        auto js = evolve(rho, i, pipeline.g);
        for (size_t f = 0; f < d; f++) {
            double eq = exact_expectation(js, f, pipeline.q, mub);
            double ep = exact_expectation(js, f, pipeline.p, mub);
            table.pw(i, f) = pipeline.scale * Complex(-eq, ep);
        }
    }
    auto out = reconstruct_from_table(table, mub);
    out.scheme = scheme.name();
    return out;
}

ReconstructedMatrix run_pauli(const DensityMatrix &rho, uint64_t n, Rng &rng) {
    if (rho.dim() != 2) {
        throw PreconditionError("Pauli tomography is defined for qubits only (d=" + std::to_string(rho.dim()) + ")");
    }
    if (n < 3) {
        throw PreconditionError("Pauli tomography needs N >= 3");
    }
    static const MubPair unused_mub = fourier_mub(2);
    BornSampler sampler(rho, unused_mub);
    auto shots = equal_allocation(n, 3);
    CMatrix out = Complex(0.5) * pauli::I();
    for (size_t axis = 0; axis < 3; axis++) {
        const auto &sigma = pauli_axes()[axis];
        auto eig = hermitian_eig(sigma);  // eigenvalues (-1, +1)
        auto counts = sampler.basis_counts(eig.vectors, shots[axis], rng);
        double mean = (static_cast<double>(counts[1]) - static_cast<double>(counts[0])) /
                      static_cast<double>(shots[axis]);
        out += Complex(0.5 * mean) * sigma;
    }
    return {out, "Pauli", n};
}

namespace {

/// Spin-j frame used to diagonalize n.J without a per-shot eigensolve:
/// n.J = V J_z V^dagger with V = exp(-i alpha J_z) exp(-i beta J_y).
struct SpinFrame {
    size_t d;
    std::vector<double> m;  // J_z eigenvalues, j down to -j
    std::vector<double> jy_values;
    CMatrix jy_vectors;

    explicit SpinFrame(size_t dim) : d(dim), m(dim) {
        auto ops = spin_operators(d);
        for (size_t k = 0; k < d; k++) {
            m[k] = ops.jz(k, k).real();
        }
        auto eig = hermitian_eig(ops.jy);
        jy_values = std::move(eig.values);
        jy_vectors = std::move(eig.vectors);
    }

    /// Columns are the eigenvectors of n.J for eigenvalues m[k].
    CMatrix eigenframe(const std::array<double, 3> &axis) const {
        double beta = std::acos(std::clamp(axis[2], -1.0, 1.0));
        double alpha = std::atan2(axis[1], axis[0]);
        CMatrix phased = jy_vectors;
        for (size_t c = 0; c < d; c++) {
            Complex ph = std::polar(1.0, -beta * jy_values[c]);
            for (size_t r = 0; r < d; r++) {
                phased(r, c) *= ph;
            }
        }
        CMatrix v = phased * jy_vectors.adjoint();
        for (size_t r = 0; r < d; r++) {
            Complex ph = std::polar(1.0, -alpha * m[r]);
            for (size_t c = 0; c < d; c++) {
                v(r, c) *= ph;
            }
        }
        return v;
    }

    /// exp(-i psi n.J) = V diag(e^{-i psi m}) V^dagger.
    CMatrix group_element(const CMatrix &frame, double psi) const {
        CMatrix phased = frame;
        for (size_t c = 0; c < d; c++) {
            Complex ph = std::polar(1.0, -psi * m[c]);
            for (size_t r = 0; r < d; r++) {
                phased(r, c) *= ph;
            }
        }
        return phased * frame.adjoint();
    }
};

}  // namespace

ReconstructedMatrix run_su2_kernel(const DensityMatrix &rho, uint64_t n, Rng &rng) {
    const size_t d = rho.dim();
    if (d < 2) {
        throw PreconditionError("SU(2) tomography needs d >= 2");
    }
    if (n < 1) {
        throw PreconditionError("SU(2) tomography needs N >= 1");
    }
    MubPair mub = fourier_mub(d);
    BornSampler sampler(rho, mub);
    SpinFrame frame(d);
    CMatrix sum(d, d);
    const double dd = static_cast<double>(d);
    for (uint64_t shot = 0; shot < n; shot++) {
        AxisAngle element = haar_su2_sample(rng);
        CMatrix v = frame.eigenframe(element.axis);
        size_t k = sampler.basis_shot(v, rng);
        CMatrix x = frame.group_element(v, element.angle);
        x *= dd * std::polar(1.0, element.angle * frame.m[k]);
        sum += x;
    }
    sum *= 1 / static_cast<double>(n);
    return {sum, "SU2Kernel", n};
}

CMatrix su2_kernel_conditional_mean(const DensityMatrix &rho, const AxisAngle &element) {
    const size_t d = rho.dim();
    SpinFrame frame(d);
    CMatrix v = frame.eigenframe(element.axis);
    CMatrix r = frame.group_element(v, element.angle);
    Complex weight = 0;
    CMatrix rotated = v.adjoint() * rho.mat() * v;
    for (size_t k = 0; k < d; k++) {
        weight += rotated(k, k).real() * std::polar(1.0, element.angle * frame.m[k]);
    }
    return (static_cast<double>(d) * weight) * r;
}

std::vector<CMatrix> traceless_hermitian_basis(size_t d) {
    std::vector<CMatrix> out;
    const double inv_sqrt2 = 1 / std::sqrt(2.0);
    for (size_t j = 0; j < d; j++) {
        for (size_t k = j + 1; k < d; k++) {
            CMatrix sym(d, d);
            sym(j, k) = inv_sqrt2;
            sym(k, j) = inv_sqrt2;
            out.push_back(std::move(sym));
            CMatrix anti(d, d);
            anti(j, k) = Complex(0, -inv_sqrt2);
            anti(k, j) = Complex(0, inv_sqrt2);
            out.push_back(std::move(anti));
        }
    }
    for (size_t l = 1; l < d; l++) {
        CMatrix diag(d, d);
        double norm = 1 / std::sqrt(static_cast<double>(l * (l + 1)));
        for (size_t m = 0; m < l; m++) {
            diag(m, m) = norm;
        }
        diag(l, l) = -static_cast<double>(l) * norm;
        out.push_back(std::move(diag));
    }
    return out;
}

namespace {

/// <v| E |v> for every element E of traceless_hermitian_basis(d), in the same order.
std::vector<double> basis_coordinates(std::span<const Complex> v) {
    const size_t d = v.size();
    std::vector<double> out;
    out.reserve(d * d - 1);
    const double sqrt2 = std::sqrt(2.0);
    for (size_t j = 0; j < d; j++) {
        for (size_t k = j + 1; k < d; k++) {
            Complex z = std::conj(v[j]) * v[k];
            out.push_back(sqrt2 * z.real());
            out.push_back(sqrt2 * z.imag());
        }
    }
    double prefix = 0;
    for (size_t l = 1; l < d; l++) {
        prefix += std::norm(v[l - 1]);
        double norm = 1 / std::sqrt(static_cast<double>(l * (l + 1)));
        out.push_back(norm * (prefix - static_cast<double>(l) * std::norm(v[l])));
    }
    return out;
}

/// Solves the symmetric positive definite system a x = b in place (Cholesky).
std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b, size_t n) {
    double max_diag = 0;
    for (size_t k = 0; k < n; k++) {
        max_diag = std::max(max_diag, a[k * n + k]);
    }
    for (size_t c = 0; c < n; c++) {
        double diag = a[c * n + c];
        for (size_t k = 0; k < c; k++) {
            diag -= a[c * n + k] * a[c * n + k];
        }
        if (!(diag > 1e-12 * max_diag)) {
            throw PreconditionError(
                "least-squares normal matrix is singular; the bases are not informationally complete "
                "(use more bases, B >= d)");
        }
        diag = std::sqrt(diag);
        a[c * n + c] = diag;
        for (size_t r = c + 1; r < n; r++) {
            double v = a[r * n + c];
            for (size_t k = 0; k < c; k++) {
                v -= a[r * n + k] * a[c * n + k];
            }
            a[r * n + c] = v / diag;
        }
    }
    for (size_t r = 0; r < n; r++) {
        for (size_t k = 0; k < r; k++) {
            b[r] -= a[r * n + k] * b[k];
        }
        b[r] /= a[r * n + r];
    }
    for (size_t r = n; r-- > 0;) {
        for (size_t k = r + 1; k < n; k++) {
            b[r] -= a[k * n + r] * b[k];
        }
        b[r] /= a[r * n + r];
    }
    return b;
}

}  // namespace

CMatrix lsq_fit(std::span<const CMatrix> bases, std::span<const std::vector<double>> freqs) {
    if (bases.empty() || bases.size() != freqs.size()) {
        throw PreconditionError("lsq_fit: need one frequency list per basis");
    }
    const size_t d = bases.front().rows();
    const size_t n = d * d - 1;
    std::vector<double> normal(n * n, 0.0);
    std::vector<double> rhs(n, 0.0);
    const double offset = 1 / static_cast<double>(d);
    for (size_t b = 0; b < bases.size(); b++) {
        if (bases[b].rows() != d || bases[b].cols() != d || freqs[b].size() != d) {
            throw PreconditionError("lsq_fit: inconsistent basis dimensions");
        }
        for (size_t k = 0; k < d; k++) {
            auto row = basis_coordinates(bases[b].column(k));
            double y = freqs[b][k] - offset;
            for (size_t r = 0; r < n; r++) {
                rhs[r] += row[r] * y;
                for (size_t c = 0; c <= r; c++) {
                    normal[r * n + c] += row[r] * row[c];
                }
            }
        }
    }
    for (size_t r = 0; r < n; r++) {
        for (size_t c = r + 1; c < n; c++) {
            normal[r * n + c] = normal[c * n + r];
        }
    }
    auto x = solve_spd(std::move(normal), std::move(rhs), n);
    auto basis = traceless_hermitian_basis(d);
    CMatrix out = Complex(offset) * CMatrix::identity(d);
    for (size_t l = 0; l < n; l++) {
        out += Complex(x[l]) * basis[l];
    }
    return out;
}

ReconstructedMatrix run_random_basis_lsq(const DensityMatrix &rho, uint64_t n, size_t bases, Rng &rng) {
    const size_t d = rho.dim();
    if (bases == 0) {
        bases = 2 * d;
    }
    if (bases < d) {
        throw PreconditionError("random-basis tomography needs B >= d bases (B=" + std::to_string(bases) + ")");
    }
    if (n < bases * d) {
        throw PreconditionError("random-basis tomography needs N >= B*d = " + std::to_string(bases * d));
    }
    MubPair mub = fourier_mub(d);
    BornSampler sampler(rho, mub);
    auto shots = equal_allocation(n, bases);
    std::vector<CMatrix> unitaries;
    std::vector<std::vector<double>> freqs;
    unitaries.reserve(bases);
    freqs.reserve(bases);
    for (size_t b = 0; b < bases; b++) {
        unitaries.push_back(haar_unitary(d, rng));
        auto counts = sampler.basis_counts(unitaries.back(), shots[b], rng);
        std::vector<double> f(d);
        for (size_t k = 0; k < d; k++) {
            f[k] = static_cast<double>(counts[k]) / static_cast<double>(shots[b]);
        }
        freqs.push_back(std::move(f));
    }
    return {lsq_fit(unitaries, freqs), "SU2Lsq", n};
}

ReconstructedMatrix run_scheme(const TomographyScheme &scheme, const DensityMatrix &rho, uint64_t n,
                               const MubPair &mub, Rng &rng) {
    switch (scheme.kind) {
        case SchemeKind::Mdst:
        case SchemeKind::Dst:
            return run_direct(scheme, BornSampler(rho, mub), n, rng);
        case SchemeKind::Pauli:
            return run_pauli(rho, n, rng);
        case SchemeKind::Su2Kernel:
            return run_su2_kernel(rho, n, rng);
        case SchemeKind::RandomBasisLsq:
            return run_random_basis_lsq(rho, n, scheme.bases, rng);
    }
    throw PreconditionError("unknown scheme");
}

uint64_t minimum_samples(const TomographyScheme &scheme, size_t d) {
    switch (scheme.kind) {
        case SchemeKind::Mdst:
        case SchemeKind::Dst:
            return 2 * d;
        case SchemeKind::Pauli:
            return 3;
        case SchemeKind::Su2Kernel:
            return 1;
        case SchemeKind::RandomBasisLsq:
            return (scheme.bases ? scheme.bases : 2 * d) * d;
    }
    return 1;
}

}  // namespace mdst
