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

#ifndef MDST_STATES_H
#define MDST_STATES_H

#include <string>

#include "mdst/qmath.h"

namespace mdst {

/// A validated quantum state: Hermitian, unit trace, positive semidefinite (all within 1e-10).
class DensityMatrix {
   public:
    /// Throws PreconditionError if `mat` violates any of the invariants.
    explicit DensityMatrix(CMatrix mat);

    size_t dim() const { return mat_.rows(); }
    const CMatrix &mat() const { return mat_; }

    double purity() const;

    static DensityMatrix pure(std::span<const Complex> ket);
    static DensityMatrix maximally_mixed(size_t d);

   private:
    CMatrix mat_;
};

/// Output of an estimator. Statistical noise may leave it non-Hermitian, non-positive, or
/// off unit trace; only finiteness is checked.
struct ReconstructedMatrix {
    CMatrix mat;
    std::string scheme;
    uint64_t samples = 0;
};

/// Computational basis {|a_i>} paired with the Fourier basis {|psi_f>}.
struct MubPair {
    size_t dim = 0;
    CMatrix a_basis;    // identity; column i is |a_i>
    CMatrix psi_basis;  // column f is |psi_f>

    /// <psi_f|a_i>
    Complex overlap(size_t f, size_t i) const { return std::conj(psi_basis(i, f)); }
};

MubPair fourier_mub(size_t d);

enum class Ensemble { HilbertSchmidt, Pure };

Ensemble parse_ensemble(const std::string &name);
std::string to_string(Ensemble e);

/// Hilbert-Schmidt random mixed state: G G^dagger / tr(G G^dagger) for complex Ginibre G.
DensityMatrix random_density_hs(size_t d, Rng &rng);
/// Haar-random pure state.
DensityMatrix random_pure(size_t d, Rng &rng);
DensityMatrix random_state(Ensemble ensemble, size_t d, Rng &rng);

/// Half the trace norm of a - b, computed from singular values so non-Hermitian
/// reconstructions are scored as-is. With `hermitize`, (M + M^dagger)/2 is scored instead.
double trace_distance(const CMatrix &a, const CMatrix &b, bool hermitize = false);

}  // namespace mdst

#endif
