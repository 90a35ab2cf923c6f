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
#include "bellsim/photon.hpp"

#include <cmath>

namespace bellsim {

StateVector bell_phi_plus() {
    StateVector v = StateVector::Zero(4);
    v(0) = v(3) = 1.0 / std::numbers::sqrt2;
    return v;
}

AnalyzerBasis analyzer_basis(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    AnalyzerBasis basis;
    basis.plus << c, s;
    basis.minus << -s, c;
    return basis;
}

StationObservable observable(double theta) {
    StationObservable obs;
    obs.theta = theta;
    obs.eigenbasis = analyzer_basis(theta);
    const double c2 = std::cos(2.0 * theta);
    const double s2 = std::sin(2.0 * theta);
    obs.matrix.resize(2, 2);
    obs.matrix << c2, s2, s2, -c2;
    return obs;
}

} // namespace bellsim
