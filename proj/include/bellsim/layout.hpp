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
 * Named-subsystem bookkeeping for composite Hilbert spaces.
 *
 * Subsystems are ordered; the first one is the most significant tensor
 * factor, so a basis index of the composite space is the mixed-radix number
 * whose digits are the subsystem indices in layout order.
 */

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bellsim/tensor.hpp"

namespace bellsim {

struct Subsystem {
    std::string name;
    std::size_t dim;
};

class SubsystemLayout {
  public:
    /// Throws std::invalid_argument on duplicate names, dims below 2, or
    /// more than four subsystems.
    explicit SubsystemLayout(std::vector<Subsystem> subsystems);

    /// photonA:2, photonB:2, pointerA:N, pointerB:N.
    static SubsystemLayout canonical(std::size_t pointer_sites);

    [[nodiscard]] const std::vector<Subsystem> &subsystems() const {
        return subsystems_;
    }
    [[nodiscard]] std::size_t size() const { return subsystems_.size(); }
    [[nodiscard]] std::size_t total_dim() const { return total_dim_; }

    /// Position of `name` in the layout; throws std::invalid_argument if the
    /// name is unknown.
    [[nodiscard]] std::size_t index_of(const std::string &name) const;
    [[nodiscard]] std::size_t dim_of(const std::string &name) const;
    [[nodiscard]] bool contains(const std::string &name) const;

    /// Product of the dimensions of the subsystems after position `pos`.
    [[nodiscard]] std::size_t stride(std::size_t pos) const;

    bool operator==(const SubsystemLayout &other) const;

  private:
    std::vector<Subsystem> subsystems_;
    std::size_t total_dim_ = 1;
};

inline constexpr const char *kPhotonA = "photonA";
inline constexpr const char *kPhotonB = "photonB";
inline constexpr const char *kPointerA = "pointerA";
inline constexpr const char *kPointerB = "pointerB";

/// Kronecker product over the layout with identities on unassigned
/// subsystems.
ComplexMatrix embed(const SubsystemLayout &layout,
                    const std::map<std::string, ComplexMatrix> &assignments,
                    std::size_t max_dim = kDefaultMaxDim);

/// A ket on one subsystem or on a run of adjacent subsystems.
struct StateFactor {
    std::vector<std::string> subsystems;
    StateVector amplitudes;
};

/// Kronecker product of factors that together cover every subsystem exactly
/// once. Factors may be given in any order; multi-subsystem factors must
/// name adjacent subsystems in layout order.
StateVector product_state(const SubsystemLayout &layout,
                          const std::vector<StateFactor> &factors);

/// Trace out every subsystem not in `keep`. The result is ordered by the
/// kept subsystems' layout order.
ComplexMatrix partial_trace(const ComplexMatrix &rho,
                            const SubsystemLayout &layout,
                            const std::set<std::string> &keep);

DensityMatrix partial_trace(const DensityMatrix &rho,
                            const SubsystemLayout &layout,
                            const std::set<std::string> &keep);

/// Reduced state of the pure state |psi><psi| without forming the full
/// projector: reshape psi into (kept x traced) and return Psi Psi^dagger.
DensityMatrix partial_trace_pure(const StateVector &psi,
                                 const SubsystemLayout &layout,
                                 const std::set<std::string> &keep);

} // namespace bellsim
