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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace mdst;

namespace {

double log_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double mx = 0, my = 0;
    for (size_t k = 0; k < x.size(); k++) {
        mx += std::log(x[k]);
        my += std::log(y[k]);
    }
    mx /= x.size();
    my /= y.size();
    double num = 0, den = 0;
    for (size_t k = 0; k < x.size(); k++) {
        num += (std::log(x[k]) - mx) * (std::log(y[k]) - my);
        den += (std::log(x[k]) - mx) * (std::log(x[k]) - mx);
    }
    return num / den;
}

}  // namespace

TEST(reconstruct_from_table, exact_table_recovers_state) {
    Rng rng(40);
    for (size_t d : {2, 4, 7}) {
        auto mub = fourier_mub(d);
        auto rho = random_density_hs(d, rng);
        WeakValueTable table{d, CMatrix(d, d), std::vector<uint64_t>(2 * d, 1)};
        for (size_t i = 0; i < d; i++) {
            for (size_t f = 0; f < d; f++) {
                Complex a_rho_psi = 0;
                for (size_t c = 0; c < d; c++) {
                    a_rho_psi += rho.mat()(i, c) * mub.psi_basis(c, f);
                }
                table.pw(i, f) = mub.overlap(f, i) * a_rho_psi;
            }
        }
        EXPECT_LT(max_abs_diff(reconstruct_from_table(table, mub).mat, rho.mat()), 1e-12);
    }
}

TEST(reconstruct_from_table, maximally_mixed_qubit) {
    auto mub = fourier_mub(2);
    // pw = 1/4 everywhere corresponds to I/2.
    WeakValueTable table{2, CMatrix{{0.25, 0.25}, {0.25, 0.25}}, {1, 1, 1, 1}};
    EXPECT_LT(max_abs_diff(reconstruct_from_table(table, mub).mat, Complex(0.5) * pauli::I()), 1e-14);
}

TEST(analytic_reconstruction, mdst_is_exact_for_every_strength) {
    Rng rng(41);
    for (size_t d : {2, 3, 5, 8}) {
        auto mub = fourier_mub(d);
        for (double g : {0.05, 0.4, 1.3, 2.2, 3.0}) {
            auto rho = random_density_hs(d, rng);
            auto r = analytic_reconstruction(rho, TomographyScheme::mdst(g), mub);
            EXPECT_LT(max_abs_diff(r.mat, rho.mat()), 1e-10) << "d=" << d << " g=" << g;
        }
    }
}

TEST(analytic_reconstruction, dst_bias_frozen_value) {
    // Independent numpy/scipy evaluation (expm coupling, explicit traces) for diag(0.7, 0.3), g = 0.1.
    auto mub = fourier_mub(2);
    DensityMatrix rho(CMatrix{{0.7, 0}, {0, 0.3}});
    auto r = analytic_reconstruction(rho, TomographyScheme::dst(0.1), mub);
    EXPECT_NEAR(trace_distance(r.mat, rho.mat()), 0.0033266730123470978, 1e-9);
}

TEST(analytic_reconstruction, dst_bias_shrinks_quadratically) {
    auto mub = fourier_mub(2);
    DensityMatrix rho(CMatrix{{0.7, 0}, {0, 0.3}});
    std::vector<double> gs{0.4, 0.2, 0.1, 0.05};
    std::vector<double> bias;
    for (double g : gs) {
        bias.push_back(trace_distance(analytic_reconstruction(rho, TomographyScheme::dst(g), mub).mat, rho.mat()));
    }
    for (size_t k = 1; k < bias.size(); k++) {
        EXPECT_LT(bias[k], bias[k - 1]);
    }
    double order = log_slope(gs, bias);
    RecordProperty("dst_bias_order", std::to_string(order));
    EXPECT_NEAR(order, 2.0, 0.1);
    auto tiny = analytic_reconstruction(rho, TomographyScheme::dst(1e-5), mub);
    EXPECT_LT(trace_distance(tiny.mat, rho.mat()), 1e-4);
}

TEST(analytic_reconstruction, pauli_is_exact) {
    Rng rng(42);
    auto mub = fourier_mub(2);
    auto rho = random_density_hs(2, rng);
    EXPECT_LT(max_abs_diff(analytic_reconstruction(rho, TomographyScheme::pauli(), mub).mat, rho.mat()), 1e-12);
}

TEST(run_mdst, unbiased_entrywise) {
    const size_t d = 2;
    const uint64_t n = 400;
    const int trials = 10000;
    auto mub = fourier_mub(d);
    DensityMatrix rho(CMatrix{{0.6, Complex(0.2, -0.1)}, {Complex(0.2, 0.1), 0.4}});
    CMatrix sum(d, d);
    std::vector<double> sum_sq_re(d * d, 0), sum_sq_im(d * d, 0);
    Rng rng(43);
    for (int t = 0; t < trials; t++) {
        auto r = run_mdst(rho, 1.3, n, mub, rng);
        EXPECT_EQ(r.samples, n);
        sum += r.mat;
        for (size_t k = 0; k < d * d; k++) {
            sum_sq_re[k] += r.mat.entries()[k].real() * r.mat.entries()[k].real();
            sum_sq_im[k] += r.mat.entries()[k].imag() * r.mat.entries()[k].imag();
        }
    }
    for (size_t k = 0; k < d * d; k++) {
        Complex mean = sum.entries()[k] / static_cast<double>(trials);
        double se_re = std::sqrt((sum_sq_re[k] / trials - mean.real() * mean.real()) / trials);
        double se_im = std::sqrt((sum_sq_im[k] / trials - mean.imag() * mean.imag()) / trials);
        EXPECT_LT(std::abs(mean.real() - rho.mat().entries()[k].real()), 4 * se_re + 1e-12) << "entry " << k;
        EXPECT_LT(std::abs(mean.imag() - rho.mat().entries()[k].imag()), 4 * se_im + 1e-12) << "entry " << k;
    }
}

TEST(run_dst, sampled_mean_approaches_its_biased_limit) {
    const size_t d = 2;
    auto mub = fourier_mub(d);
    DensityMatrix rho(CMatrix{{0.7, 0}, {0, 0.3}});
    const double g = 0.3;
    auto limit = analytic_reconstruction(rho, TomographyScheme::dst(g), mub).mat;
    Rng rng(44);
    CMatrix sum(d, d);
    const int trials = 4000;
    for (int t = 0; t < trials; t++) {
        sum += run_dst(rho, g, 2000, mub, rng).mat;
    }
    sum *= 1.0 / trials;
    EXPECT_LT(max_abs_diff(sum, limit), 0.01);
    EXPECT_GT(trace_distance(limit, rho.mat()), 0.02);
}

TEST(run_mdst, trace_distance_scales_as_inverse_sqrt_n) {
    const size_t d = 2;
    auto mub = fourier_mub(d);
    std::vector<double> ns{250, 1000, 4000, 16000};
    std::vector<double> means;
    for (double n : ns) {
        Rng rng = Rng::stream(45, static_cast<uint64_t>(n), 0);
        double sum = 0;
        const int trials = 1000;
        for (int t = 0; t < trials; t++) {
            auto rho = random_density_hs(d, rng);
            sum += trace_distance(run_mdst(rho, 1.3, static_cast<uint64_t>(n), mub, rng).mat, rho.mat());
        }
        means.push_back(sum / trials);
    }
    EXPECT_NEAR(log_slope(ns, means), -0.5, 0.05);
}

TEST(run_direct, rejects_too_few_samples) {
    Rng rng(46);
    auto mub = fourier_mub(3);
    auto rho = random_density_hs(3, rng);
    EXPECT_THROW(run_mdst(rho, 1.0, 5, mub, rng), PreconditionError);
    EXPECT_NO_THROW(run_mdst(rho, 1.0, 6, mub, rng));
    EXPECT_THROW(run_mdst(rho, 0.0, 100, mub, rng), PreconditionError);
}

TEST(equal_allocation, remainder_goes_to_leading_settings) {
    auto a = equal_allocation(10, 4);
    EXPECT_EQ(a, (std::vector<uint64_t>{3, 3, 2, 2}));
    auto b = equal_allocation(8, 4);
    EXPECT_EQ(b, (std::vector<uint64_t>{2, 2, 2, 2}));
}

TEST(run_pauli, qubit_only_and_unit_trace) {
    Rng rng(47);
    auto rho = random_density_hs(2, rng);
    auto r = run_pauli(rho, 300, rng);
    EXPECT_NEAR(trace(r.mat).real(), 1, 1e-12);
    EXPECT_LT(r.mat.hermiticity_defect(), 1e-12);
    EXPECT_THROW(run_pauli(random_density_hs(3, rng), 300, rng), PreconditionError);
    EXPECT_THROW(run_pauli(rho, 2, rng), PreconditionError);
}

TEST(su2_kernel, conditional_mean_averages_to_state) {
    // Schur orthogonality oracle: E_g[d tr(rho R(g)^dagger) R(g)] = rho.
    for (size_t d : {2, 3, 4}) {
        Rng rng(48 + d);
        auto rho = random_density_hs(d, rng);
        CMatrix sum(d, d);
        const int n = 1000000 / static_cast<int>(d * d);
        for (int k = 0; k < n; k++) {
            sum += su2_kernel_conditional_mean(rho, haar_su2_sample(rng));
        }
        sum *= 1.0 / n;
        EXPECT_LT(max_abs_diff(sum, rho.mat()), 0.01) << "d=" << d;
    }
}

TEST(su2_kernel, sampled_estimator_unbiased) {
    const size_t d = 2;
    Rng rng(52);
    DensityMatrix rho(CMatrix{{0.8, Complex(0.1, 0.3)}, {Complex(0.1, -0.3), 0.2}});
    CMatrix sum(d, d);
    const int trials = 2000;
    for (int t = 0; t < trials; t++) {
        sum += run_su2_kernel(rho, 500, rng).mat;
    }
    sum *= 1.0 / trials;
    EXPECT_LT(max_abs_diff(sum, rho.mat()), 0.01);
}

TEST(lsq_fit, exact_probabilities_recover_state) {
    Rng rng(53);
    for (size_t d : {2, 3, 5}) {
        auto rho = random_density_hs(d, rng);
        std::vector<CMatrix> bases;
        std::vector<std::vector<double>> freqs;
        for (size_t b = 0; b < 2 * d; b++) {
            bases.push_back(haar_unitary(d, rng));
            std::vector<double> p(d);
            for (size_t k = 0; k < d; k++) {
                auto v = bases.back().column(k);
                Complex e = 0;
                for (size_t r = 0; r < d; r++) {
                    for (size_t c = 0; c < d; c++) {
                        e += std::conj(v[r]) * rho.mat()(r, c) * v[c];
                    }
                }
                p[k] = e.real();
            }
            freqs.push_back(p);
        }
        EXPECT_LT(max_abs_diff(lsq_fit(bases, freqs), rho.mat()), 1e-8) << "d=" << d;
    }
}

TEST(lsq_fit, singular_design_is_rejected) {
    // A single computational-basis measurement says nothing about coherences.
    std::vector<CMatrix> bases{CMatrix::identity(2)};
    std::vector<std::vector<double>> freqs{{0.5, 0.5}};
    EXPECT_THROW(lsq_fit(bases, freqs), PreconditionError);
}

TEST(run_random_basis_lsq, hermitian_unit_trace_output) {
    Rng rng(54);
    for (size_t d : {2, 4}) {
        auto rho = random_density_hs(d, rng);
        auto r = run_random_basis_lsq(rho, 2000, 0, rng);
        EXPECT_NEAR(trace(r.mat).real(), 1, 1e-10);
        EXPECT_LT(r.mat.hermiticity_defect(), 1e-10);
        EXPECT_EQ(r.samples, 2000u);
    }
    auto rho = random_density_hs(3, rng);
    EXPECT_THROW(run_random_basis_lsq(rho, 10, 0, rng), PreconditionError);
    EXPECT_THROW(run_random_basis_lsq(rho, 1000, 2, rng), PreconditionError);
}

TEST(traceless_hermitian_basis, orthonormal) {
    for (size_t d : {2, 3, 6}) {
        auto basis = traceless_hermitian_basis(d);
        ASSERT_EQ(basis.size(), d * d - 1);
        for (size_t a = 0; a < basis.size(); a++) {
            EXPECT_NEAR(std::abs(trace(basis[a])), 0, 1e-14);
            EXPECT_LT(basis[a].hermiticity_defect(), 1e-14);
            for (size_t b = 0; b < basis.size(); b++) {
                EXPECT_NEAR(trace(basis[a] * basis[b]).real(), a == b ? 1 : 0, 1e-12);
            }
        }
    }
}

TEST(tomography_scheme, parse_round_trip) {
    for (std::string s : {"mdst:1.3", "dst:0.1", "pauli", "su2", "lsq", "lsq:12"}) {
        auto scheme = TomographyScheme::parse(s);
        EXPECT_EQ(TomographyScheme::parse(scheme.spec_string()).spec_string(), scheme.spec_string()) << s;
    }
    EXPECT_EQ(TomographyScheme::parse("mdst:1.3").name(), "MDST");
    EXPECT_EQ(TomographyScheme::parse("su2kernel").name(), "SU2Kernel");
    EXPECT_EQ(TomographyScheme::parse("lsq:4").bases, 4u);
    EXPECT_THROW(TomographyScheme::parse("mdst"), PreconditionError);
    EXPECT_THROW(TomographyScheme::parse("bogus"), PreconditionError);
}

TEST(run_scheme, dispatches_every_kind) {
    Rng rng(55);
    auto mub = fourier_mub(2);
    auto rho = random_density_hs(2, rng);
    for (std::string s : {"mdst:1.3", "dst:0.1", "pauli", "su2", "lsq"}) {
        auto scheme = TomographyScheme::parse(s);
        auto r = run_scheme(scheme, rho, 1000, mub, rng);
        EXPECT_EQ(r.scheme, scheme.name());
        EXPECT_EQ(r.mat.rows(), 2u);
        EXPECT_LE(minimum_samples(scheme, 2), 1000u);
    }
}
