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

#include "mdst/qmath.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace mdst {

CMatrix::CMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(size_t rows, size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw PreconditionError("CMatrix: entry count does not match rows*cols");
    }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw PreconditionError("CMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

CMatrix CMatrix::identity(size_t n) {
    CMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m(k, k) = 1;
    }
    return m;
}

CMatrix CMatrix::zeros(size_t rows, size_t cols) { return CMatrix(rows, cols); }

CMatrix CMatrix::diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (size_t k = 0; k < values.size(); k++) {
        m(k, k) = values[k];
    }
    return m;
}

CMatrix CMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    CMatrix m(ket.size(), bra.size());
    for (size_t r = 0; r < ket.size(); r++) {
        for (size_t c = 0; c < bra.size(); c++) {
            m(r, c) = ket[r] * std::conj(bra[c]);
        }
    }
    return m;
}

std::vector<Complex> CMatrix::column(size_t c) const {
    std::vector<Complex> out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        out[r] = (*this)(r, c);
    }
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

static void require_same_shape(const CMatrix &a, const CMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw PreconditionError(std::string(what) + ": dimension mismatch");
    }
}

CMatrix &CMatrix::operator+=(const CMatrix &other) {
    require_same_shape(*this, other, "operator+");
    for (size_t k = 0; k < data_.size(); k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

CMatrix &CMatrix::operator-=(const CMatrix &other) {
    require_same_shape(*this, other, "operator-");
    for (size_t k = 0; k < data_.size(); k++) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

CMatrix &CMatrix::operator*=(Complex scale) {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

double CMatrix::max_abs() const {
    double m = 0;
    for (const auto &z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double CMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto &z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double CMatrix::hermiticity_defect() const {
    if (!is_square()) {
        return INFINITY;
    }
    double m = 0;
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = r; c < cols_; c++) {
            m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return m;
}

bool CMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex &z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

CMatrix operator+(CMatrix a, const CMatrix &b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix &b) { return a -= b; }

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.rows()) {
        throw PreconditionError("operator*: inner dimensions differ");
    }
    CMatrix out(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t k = 0; k < a.cols(); k++) {
            Complex ark = a(r, k);
            if (ark == Complex{}) {
                continue;
            }
            for (size_t c = 0; c < b.cols(); c++) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

CMatrix operator*(Complex s, CMatrix m) { return m *= s; }
CMatrix operator*(CMatrix m, Complex s) { return m *= s; }

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0;
    for (size_t k = 0; k < a.entries().size(); k++) {
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return m;
}

namespace pauli {
CMatrix I() { return CMatrix::identity(2); }
CMatrix X() { return CMatrix{{0, 1}, {1, 0}}; }
CMatrix Y() { return CMatrix{{0, Complex(0, -1)}, {Complex(0, 1), 0}}; }
CMatrix Z() { return CMatrix{{1, 0}, {0, -1}}; }
}  // namespace pauli

uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed) : engine_(mix64(seed)) {}

Rng Rng::stream(uint64_t seed, uint64_t a, uint64_t b) {
    return Rng(mix64(mix64(mix64(seed) ^ a) ^ (b * 0xD1B54A32D192ED03ULL)));
}

double Rng::uniform() { return boost::random::uniform_01<double>()(engine_); }

double Rng::normal() { return boost::random::normal_distribution<double>()(engine_); }

Complex Rng::complex_normal() {
    double re = normal();
    double im = normal();
    return {re, im};
}

uint64_t Rng::binomial(uint64_t n, double p) {
    if (n == 0 || p <= 0) {
        return 0;
    }
    if (p >= 1) {
        return n;
    }
    boost::random::binomial_distribution<int64_t, double> dist(static_cast<int64_t>(n), p);
    return static_cast<uint64_t>(dist(engine_));
}

size_t Rng::categorical(std::span<const double> weights) {
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double u = uniform() * total;
    for (size_t k = 0; k < weights.size(); k++) {
        u -= weights[k];
        if (u < 0) {
            return k;
        }
    }
    // Roundoff landed past the end; return the last outcome with nonzero weight.
    for (size_t k = weights.size(); k-- > 0;) {
        if (weights[k] > 0) {
            return k;
        }
    }
    return weights.size() - 1;
}

std::vector<uint64_t> Rng::multinomial(uint64_t n, std::span<const double> probs) {
    std::vector<uint64_t> counts(probs.size(), 0);
    double remaining_mass = std::accumulate(probs.begin(), probs.end(), 0.0);
    uint64_t remaining = n;
    for (size_t k = 0; k + 1 < probs.size() && remaining > 0; k++) {
        double p = remaining_mass > 0 ? probs[k] / remaining_mass : 0.0;
        counts[k] = binomial(remaining, std::clamp(p, 0.0, 1.0));
        remaining -= counts[k];
        remaining_mass -= probs[k];
    }
    if (!probs.empty()) {
        counts.back() += remaining;
    }
    return counts;
}

EigenDecomposition hermitian_eig(const CMatrix &h) {
    if (!h.is_square()) {
        throw PreconditionError("hermitian_eig: matrix is not square");
    }
    double defect = h.hermiticity_defect();
    if (!(defect <= 1e-10)) {
        throw PreconditionError("hermitian_eig: matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
    }
    const size_t n = h.rows();
    CMatrix a = h;
    for (size_t k = 0; k < n; k++) {
        a(k, k) = a(k, k).real();
    }
    CMatrix v = CMatrix::identity(n);

    auto off_norm = [&]() {
        double s = 0;
        for (size_t r = 0; r < n; r++) {
            for (size_t c = r + 1; c < n; c++) {
                s += std::norm(a(r, c));
            }
        }
        return std::sqrt(s);
    };
    const double scale = std::max(a.frobenius_norm(), 1e-300);

    for (int sweep = 0; sweep < 100; sweep++) {
        if (off_norm() <= 1e-17 * scale) {
            break;
        }
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double mag = std::abs(a(p, q));
                if (mag <= 1e-300) {
                    continue;
                }
                // Phase-rotate so the (p, q) entry is real, then apply a real Jacobi rotation.
                Complex w = std::conj(a(p, q)) / mag;
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                double tau = (aqq - app) / (2 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + t * t);
                double s = t * c;
                Complex gqp = -s * w;
                Complex gqq = c * w;
                for (size_t k = 0; k < n; k++) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = akp * c + akq * gqp;
                    a(k, q) = akp * s + akq * gqq;
                }
                for (size_t k = 0; k < n; k++) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(gqp) * aqk;
                    a(q, k) = s * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (size_t k = 0; k < n; k++) {
                    Complex vkp = v(k, p);
                    Complex vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * gqp;
                    v(k, q) = vkp * s + vkq * gqq;
                }
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return a(x, x).real() < a(y, y).real(); });
    EigenDecomposition out{std::vector<double>(n), CMatrix(n, n)};
    for (size_t k = 0; k < n; k++) {
        out.values[k] = a(order[k], order[k]).real();
        for (size_t r = 0; r < n; r++) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

std::vector<double> singular_values(const CMatrix &m) {
    auto eig = hermitian_eig(m.adjoint() * m);
    std::vector<double> out;
    out.reserve(eig.values.size());
    for (auto it = eig.values.rbegin(); it != eig.values.rend(); ++it) {
        out.push_back(std::sqrt(std::max(*it, 0.0)));
    }
    return out;
}

CMatrix herm_unitary_exp(const CMatrix &h, double theta) {
    auto eig = hermitian_eig(h);
    const size_t n = h.rows();
    CMatrix phased = eig.vectors;
    for (size_t c = 0; c < n; c++) {
        Complex phase = std::polar(1.0, -theta * eig.values[c]);
        for (size_t r = 0; r < n; r++) {
            phased(r, c) *= phase;
        }
    }
    return phased * eig.vectors.adjoint();
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ar = 0; ar < a.rows(); ar++) {
        for (size_t ac = 0; ac < a.cols(); ac++) {
            Complex x = a(ar, ac);
            for (size_t br = 0; br < b.rows(); br++) {
                for (size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
                }
            }
        }
    }
    return out;
}

Complex trace(const CMatrix &m) {
    if (!m.is_square()) {
        throw PreconditionError("trace: matrix is not square");
    }
    Complex t = 0;
    for (size_t k = 0; k < m.rows(); k++) {
        t += m(k, k);
    }
    return t;
}

CMatrix partial_trace_system(const CMatrix &m, size_t d) {
    if (!m.is_square() || m.rows() != 2 * d) {
        throw PreconditionError("partial_trace_system: expected a (2d)x(2d) operator");
    }
    CMatrix out(2, 2);
    for (size_t s = 0; s < d; s++) {
        for (size_t r = 0; r < 2; r++) {
            for (size_t c = 0; c < 2; c++) {
                out(r, c) += m(2 * s + r, 2 * s + c);
            }
        }
    }
    return out;
}

AxisAngle haar_su2_sample(Rng &rng) {
    double q[4];
    double norm2 = 0;
    do {
        norm2 = 0;
        for (double &x : q) {
            x = rng.normal();
            norm2 += x * x;
        }
    } while (norm2 < 1e-300);
    double inv = 1 / std::sqrt(norm2);
    for (double &x : q) {
        x *= inv;
    }
    AxisAngle out;
    out.angle = 2 * std::acos(std::clamp(q[0], -1.0, 1.0));
    if (out.angle >= 2 * std::numbers::pi) {
        out.angle = 0;
    }
    double vnorm = std::sqrt(q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    if (vnorm < 1e-12) {
        out.axis = {0, 0, 1};
    } else {
        out.axis = {q[1] / vnorm, q[2] / vnorm, q[3] / vnorm};
    }
    return out;
}

CMatrix haar_unitary(size_t d, Rng &rng) {
    CMatrix q(d, d);
    for (auto &z : q.entries()) {
        z = rng.complex_normal();
    }
    // Modified Gram-Schmidt; R then has a positive real diagonal, which is the phase fix.
    for (size_t c = 0; c < d; c++) {
        for (size_t prev = 0; prev < c; prev++) {
            Complex overlap = 0;
            for (size_t r = 0; r < d; r++) {
                overlap += std::conj(q(r, prev)) * q(r, c);
            }
            for (size_t r = 0; r < d; r++) {
                q(r, c) -= overlap * q(r, prev);
            }
        }
        double norm = 0;
        for (size_t r = 0; r < d; r++) {
            norm += std::norm(q(r, c));
        }
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
            throw NumericalError("haar_unitary: degenerate Ginibre sample");
        }
        for (size_t r = 0; r < d; r++) {
            q(r, c) /= norm;
        }
    }
    return q;
}

SpinOperators spin_operators(size_t d) {
    if (d < 1) {
        throw PreconditionError("spin_operators: dimension must be positive");
    }
    const double j = (static_cast<double>(d) - 1) / 2;
    CMatrix jp(d, d);
    CMatrix jz(d, d);
    for (size_t k = 0; k < d; k++) {
        double m = j - static_cast<double>(k);
        jz(k, k) = m;
        if (k > 0) {
            // <m+1| J+ |m> = sqrt(j(j+1) - m(m+1))
            jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
        }
    }
    CMatrix jm = jp.adjoint();
    SpinOperators out;
    out.jx = Complex(0.5) * (jp + jm);
    out.jy = Complex(0, -0.5) * (jp - jm);
    out.jz = jz;
    return out;
}

}  // namespace mdst
