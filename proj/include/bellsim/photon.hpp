// Copyright 2026 The bellsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Polarization-entangled photon pair and the two-outcome analyzer
 * observables at each station. All vectors are expressed in the linear
 * polarization basis {x, y}.
 */

#pragma once

#include <numbers>

#include "bellsim/tensor.hpp"

namespace bellsim {

/// Analyzer orientations in radians, measured from the x axis.
struct AnalyzerSettings {
    double alpha = 0.0;
    double beta = 0.0;
};

inline double degrees_to_radians(double deg) {
    return deg * std::numbers::pi / 180.0;
}

/// Transmitted (+1) and reflected (-1) output states of an analyzer.
struct AnalyzerBasis {
    Eigen::Vector2cd plus;
    Eigen::Vector2cd minus;
};

struct StationObservable {
    double theta = 0.0;
    ComplexMatrix matrix; // 2x2, real symmetric, involutory
    AnalyzerBasis eigenbasis;
};

/// (|xx> + |yy>)/sqrt(2) ordered |xx>, |xy>, |yx>, |yy>.
StateVector bell_phi_plus();

/// |+> = (cos t, sin t), |-> = (-sin t, cos t).
AnalyzerBasis analyzer_basis(double theta);

/// (+1)|+><+| + (-1)|-><-| = [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
StationObservable observable(double theta);

} // namespace bellsim
