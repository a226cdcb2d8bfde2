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

#ifndef MDST_TOMOGRAPHY_H
#define MDST_TOMOGRAPHY_H

#include <string>
#include <vector>

#include "mdst/measurement.h"
#include "mdst/states.h"

namespace mdst {

enum class SchemeKind { Mdst, Dst, Pauli, Su2Kernel, RandomBasisLsq };

struct TomographyScheme {
    SchemeKind kind = SchemeKind::Mdst;
    /// Coupling strength (MDST and DST only).
    double g = 0;
    /// Number of random bases (RandomBasisLsq only); 0 means 2d.
    size_t bases = 0;

    static TomographyScheme mdst(double g) { return {SchemeKind::Mdst, g, 0}; }
    static TomographyScheme dst(double g) { return {SchemeKind::Dst, g, 0}; }
    static TomographyScheme pauli() { return {SchemeKind::Pauli, 0, 0}; }
    static TomographyScheme su2_kernel() { return {SchemeKind::Su2Kernel, 0, 0}; }
    static TomographyScheme random_basis_lsq(size_t bases = 0) { return {SchemeKind::RandomBasisLsq, 0, bases}; }

    bool is_direct() const { return kind == SchemeKind::Mdst || kind == SchemeKind::Dst; }

    /// Short name written to the scheme column: MDST, DST, Pauli, SU2Kernel, SU2Lsq.
    std::string name() const;
    /// Parses the config/CLI form: mdst:<g>, dst:<g>, pauli, su2 (or su2kernel), lsq[:<bases>].
    static TomographyScheme parse(const std::string &text);
    /// Inverse of parse.
    std::string spec_string() const;
};

/// Estimates of P_f W_if indexed [i][f], plus the number of shots spent on each of the 2d
/// (i, observable) settings, ordered setting = 2 i + (0 for q, 1 for p).
struct WeakValueTable {
    size_t dim = 0;
    CMatrix pw;
    std::vector<uint64_t> counts;
};

/// rho_r = sum_{i,f} pw[i][f] / <psi_f|a_i> |a_i><psi_f|.
ReconstructedMatrix reconstruct_from_table(const WeakValueTable &table, const MubPair &mub);

/// Gives estimators access to an unknown state only through sampled measurement outcomes.
class BornSampler {
   public:
    BornSampler(const DensityMatrix &rho, const MubPair &mub) : rho_(rho), mub_(mub) {}

    size_t dim() const { return rho_.dim(); }
    const MubPair &mub() const { return mub_; }

    /// Couple on index i with strength g, postselect in the MUB, read pointer observable s.
    /// Returns counts flattened as f * 2 + k.
    std::vector<uint64_t> pointer_counts(size_t i, double g, const PointerObservable &s, uint64_t shots,
                                         Rng &rng) const;
    /// Projective measurement in the orthonormal basis given by the columns of `basis`.
    std::vector<uint64_t> basis_counts(const CMatrix &basis, uint64_t shots, Rng &rng) const;
    size_t basis_shot(const CMatrix &basis, Rng &rng) const;

   private:
    std::vector<double> basis_probabilities(const CMatrix &basis) const;

    const DensityMatrix &rho_;
    const MubPair &mub_;
};

/// Shots for each of `settings` settings when `total` shots are split evenly, the remainder
/// going one each to settings 0, 1, ...
std::vector<uint64_t> equal_allocation(uint64_t total, size_t settings);

/// Modified direct tomography with the coupling-deformed pointer readouts.
ReconstructedMatrix run_mdst(const DensityMatrix &rho, double g, uint64_t n, const MubPair &mub, Rng &rng);
/// Original direct tomography: weak-limit readouts sigma_y, sigma_x scaled by 1/(2g), used at finite g.
ReconstructedMatrix run_dst(const DensityMatrix &rho, double g, uint64_t n, const MubPair &mub, Rng &rng);

/// Infinite-statistics reconstruction (exact expectations instead of samples) for MDST, DST or
/// Pauli. MDST returns rho exactly for every valid g; DST retains its finite-g bias.
ReconstructedMatrix analytic_reconstruction(const DensityMatrix &rho, const TomographyScheme &scheme,
                                            const MubPair &mub);

/// Qubit tomography from sigma_x, sigma_y, sigma_z measurements: rho_r = I/2 + sum_k <sigma_k> sigma_k / 2.
ReconstructedMatrix run_pauli(const DensityMatrix &rho, uint64_t n, Rng &rng);

/// Spin-j (d = 2j + 1) group-kernel estimator: each shot draws a Haar SU(2) element, measures
/// n.J and accumulates d e^{i psi m} exp(-i psi n.J). Unbiased by Schur orthogonality.
ReconstructedMatrix run_su2_kernel(const DensityMatrix &rho, uint64_t n, Rng &rng);
/// E[X | g] = d tr[rho R(g)^dagger] R(g): the kernel averaged over the Born outcomes for a fixed
/// group element. Averaging this over Haar samples approaches rho.
CMatrix su2_kernel_conditional_mean(const DensityMatrix &rho, const AxisAngle &element);

/// Haar-random bases with linear least-squares inversion over unit-trace Hermitian matrices.
/// `bases` = 0 selects 2d.
ReconstructedMatrix run_random_basis_lsq(const DensityMatrix &rho, uint64_t n, size_t bases, Rng &rng);
/// Least-squares fit of unit-trace Hermitian X to observed frequencies freqs[b][k] of outcome k
/// (column k of bases[b]). Throws PreconditionError if the normal matrix is singular.
CMatrix lsq_fit(std::span<const CMatrix> bases, std::span<const std::vector<double>> freqs);

/// Orthonormal traceless Hermitian basis (generalized Gell-Mann, tr(E_a E_b) = delta_ab).
std::vector<CMatrix> traceless_hermitian_basis(size_t d);

/// Dispatches on the scheme tag.
ReconstructedMatrix run_scheme(const TomographyScheme &scheme, const DensityMatrix &rho, uint64_t n,
                               const MubPair &mub, Rng &rng);

/// Minimum sample size accepted by a scheme at dimension d.
uint64_t minimum_samples(const TomographyScheme &scheme, size_t d);

}  // namespace mdst

#endif
