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

#ifndef MDST_ANALYSIS_H
#define MDST_ANALYSIS_H

#include "mdst/states.h"

namespace mdst {

/// Per-shot variance of the MDST reconstruction, split into the g-dependent second-moment sum
/// (tv1) and the squared-mean sum, which does not depend on g.
struct VarianceBreakdown {
    size_t d = 0;
    double g = 0;
    double tv1 = 0;
    double second_term = 0;
    double total = 0;
};

/// d^2 / (2 sin^2 g) + d / (2 cos^2(g/2)). Throws PreconditionError outside 0 < g < pi.
double tv1_closed_form(size_t d, double g);

/// arccos(1 + d/2 - sqrt(d + d^2/4)), the minimizer of tv1_closed_form.
double g_opt(size_t d);

/// Minimizer of tv1_closed_form found numerically (Brent), without the closed-form optimum.
double tv1_minimizer_numeric(size_t d);

/// Second moments of the deformed readouts on the reduced pointer state rho_i after
/// coupling on index i: tr[rho_i q(g)^2] and tr[rho_i p(g)^2].
struct PointerMoments {
    double q2 = 0;
    double p2 = 0;
};
PointerMoments pointer_second_moments(const DensityMatrix &rho, size_t i, double g);

/// Evaluates the total variance by exact traces over every (i, f, observable).
VarianceBreakdown variance_numeric(const DensityMatrix &rho, double g, const MubPair &mub);

}  // namespace mdst

#endif
