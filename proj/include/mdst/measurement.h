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

#ifndef MDST_MEASUREMENT_H
#define MDST_MEASUREMENT_H

#include <array>
#include <string>
#include <utility>

#include "mdst/states.h"

namespace mdst {

enum class PointerLabel { Q, P, QDeformed, PDeformed, Custom };

std::string to_string(PointerLabel label);

/// 2x2 Hermitian readout on the pointer qubit, with its spectral decomposition.
struct PointerObservable {
    CMatrix mat;
    std::array<double, 2> eigvals{};
    CMatrix eigvecs;  // column k belongs to eigvals[k]
    PointerLabel label = PointerLabel::Custom;

    static PointerObservable from_matrix(CMatrix mat, PointerLabel label);
};

/// Smallest |sin g| accepted by the coupling-deformed observables.
inline constexpr double kMinSinCoupling = 1e-6;

/// exp(-i g A_i (x) sigma_x) on system (x) pointer, built from the projector closed form
/// (I - A_i) (x) I + A_i (x) (cos g I - i sin g sigma_x).
CMatrix coupling_unitary(size_t i, double g, size_t d);

/// q(g) = (sigma_y - tan(g/2)(I - sigma_z)) / sin g and p(g) = sigma_x / sin g. These make the
/// weak-value extraction exact at any coupling strength 0 < g < pi.
std::pair<PointerObservable, PointerObservable> cd_observables(double g);

/// Weak-limit readouts q = sigma_y, p = sigma_x.
std::pair<PointerObservable, PointerObservable> standard_observables();

/// Joint system-pointer state after the coupling U_i(g) (rho (x) |0><0|) U_i(g)^dagger.
struct JointState {
    size_t dim = 0;
    CMatrix mat;
};

JointState evolve(const DensityMatrix &rho, size_t i, double g);

/// tr[js (Pi_f (x) s)] where Pi_f = |psi_f><psi_f|.
double exact_expectation(const JointState &js, size_t f, const PointerObservable &s, const MubPair &mub);

/// Born weights p(f, k) = tr[js (Pi_f (x) |s_k><s_k|)], flattened as f * 2 + k. Roundoff
/// negativity down to -1e-12 is clipped and the result renormalized; anything below -1e-9
/// raises NumericalError.
std::vector<double> outcome_probabilities(const JointState &js, const PointerObservable &s,
                                          const MubPair &mub);

struct Outcome {
    size_t f = 0;  // postselection outcome
    size_t k = 0;  // pointer eigenvalue index
};

/// Single joint measurement shot: postselection outcome and pointer eigenvalue index.
Outcome sample_outcome(const JointState &js, const PointerObservable &s, const MubPair &mub, Rng &rng);

/// Outcome counts of `shots` independent shots, flattened as f * 2 + k. Distributed
/// identically to `shots` calls of sample_outcome.
std::vector<uint64_t> sample_outcome_counts(const JointState &js, const PointerObservable &s,
                                            const MubPair &mub, uint64_t shots, Rng &rng);

}  // namespace mdst

#endif
