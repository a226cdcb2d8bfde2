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

#include "mdst/analysis.h"

#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "mdst/measurement.h"

namespace mdst {

double tv1_closed_form(size_t d, double g) {
    if (!(g > 0 && g < std::numbers::pi)) {
        throw PreconditionError("tv1_closed_form: g must lie strictly inside (0, pi)");
    }
    const double dd = static_cast<double>(d);
    const double s = std::sin(g);
    const double c = std::cos(g / 2);
    return dd * dd / (2 * s * s) + dd / (2 * c * c);
}

double g_opt(size_t d) {
    if (d < 2) {
        throw PreconditionError("g_opt: dimension must be at least 2");
    }
    const double dd = static_cast<double>(d);
    const double arg = 1 + dd / 2 - std::sqrt(dd + dd * dd / 4);
    if (arg < -1 || arg > 1) {
        throw NumericalError("g_opt: arccos argument outside [-1, 1]");
    }
    return std::acos(arg);
}

double tv1_minimizer_numeric(size_t d) {
    auto objective = [d](double g) { return tv1_closed_form(d, g); };
    auto [g, value] = boost::math::tools::brent_find_minima(objective, 1e-3, std::numbers::pi - 1e-3, 52);
    (void)value;
    return g;
}

PointerMoments pointer_second_moments(const DensityMatrix &rho, size_t i, double g) {
    auto [q, p] = cd_observables(g);
    CMatrix pointer = partial_trace_system(evolve(rho, i, g).mat, rho.dim());
    return {trace(pointer * q.mat * q.mat).real(), trace(pointer * p.mat * p.mat).real()};
}

VarianceBreakdown variance_numeric(const DensityMatrix &rho, double g, const MubPair &mub) {
    const size_t d = rho.dim();
    auto [q, p] = cd_observables(g);
    const std::array<const PointerObservable *, 2> observables{&q, &p};
    const double prefactor = static_cast<double>(d) / 4;

    VarianceBreakdown out;
    out.d = d;
    out.g = g;
    double first_term = 0;
    for (size_t i = 0; i < d; i++) {
        auto js = evolve(rho, i, g);
        CMatrix pointer = partial_trace_system(js.mat, d);
        for (const auto *s : observables) {
            // Pi_f summed out: tr[rho_i s^2].
            out.tv1 += prefactor * trace(pointer * s->mat * s->mat).real();
            auto squared = PointerObservable::from_matrix(s->mat * s->mat, PointerLabel::Custom);
            for (size_t f = 0; f < d; f++) {
                first_term += prefactor * exact_expectation(js, f, squared, mub);
                double mean = exact_expectation(js, f, *s, mub);
                out.second_term += prefactor * mean * mean;
            }
        }
    }
    if (std::abs(first_term - out.tv1) > 1e-9 * std::max(1.0, out.tv1)) {
        throw NumericalError("variance_numeric: postselection-resolved and summed second moments disagree");
    }
    out.total = out.tv1 - out.second_term;
    return out;
}

}  // namespace mdst
