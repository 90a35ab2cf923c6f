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
#include "bellsim/layout.hpp"

#include <algorithm>
#include <stdexcept>

namespace bellsim {

namespace {

constexpr std::size_t kMaxSubsystems = 4;

/// full_index(k, t) for every kept index k and traced index t.
struct SplitIndex {
    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
    std::vector<std::size_t> full; // kept_dim * traced_dim, row-major in k
};

SplitIndex split_index(const SubsystemLayout &layout,
                       const std::set<std::string> &keep) {
    for (const auto &name : keep) {
        if (!layout.contains(name)) {
            throw std::invalid_argument("partial_trace: unknown subsystem '" +
                                        name + "'");
        }
    }
    const auto &subs = layout.subsystems();
    SplitIndex split;
    for (const auto &s : subs) {
        (keep.count(s.name) ? split.kept_dim : split.traced_dim) *= s.dim;
    }
    split.full.resize(layout.total_dim());

    // Walk the full index in mixed radix and accumulate the kept/traced
    // digits separately.
    std::vector<std::size_t> digits(subs.size(), 0);
    for (std::size_t full = 0; full < layout.total_dim(); ++full) {
        std::size_t k = 0;
        std::size_t t = 0;
        for (std::size_t p = 0; p < subs.size(); ++p) {
            if (keep.count(subs[p].name)) {
                k = k * subs[p].dim + digits[p];
            } else {
                t = t * subs[p].dim + digits[p];
            }
        }
        split.full[k * split.traced_dim + t] = full;
        for (std::size_t p = subs.size(); p-- > 0;) {
            if (++digits[p] < subs[p].dim) {
                break;
            }
            digits[p] = 0;
        }
    }
    return split;
}

} // namespace

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
    if (subsystems_.empty() || subsystems_.size() > kMaxSubsystems) {
        throw std::invalid_argument(
            "SubsystemLayout: expected between 1 and 4 subsystems");
    }
    std::set<std::string> seen;
    for (const auto &s : subsystems_) {
        if (s.dim < 2) {
            throw std::invalid_argument("SubsystemLayout: subsystem '" +
                                        s.name + "' has dimension < 2");
        }
        if (!seen.insert(s.name).second) {
            throw std::invalid_argument("SubsystemLayout: duplicate name '" +
                                        s.name + "'");
        }
        total_dim_ *= s.dim;
    }
}

SubsystemLayout SubsystemLayout::canonical(std::size_t pointer_sites) {
    return SubsystemLayout({{kPhotonA, 2},
                            {kPhotonB, 2},
                            {kPointerA, pointer_sites},
                            {kPointerB, pointer_sites}});
}

std::size_t SubsystemLayout::index_of(const std::string &name) const {
    const auto it =
        std::find_if(subsystems_.begin(), subsystems_.end(),
                     [&](const Subsystem &s) { return s.name == name; });
    if (it == subsystems_.end()) {
        throw std::invalid_argument("unknown subsystem '" + name + "'");
    }
    return static_cast<std::size_t>(it - subsystems_.begin());
}

std::size_t SubsystemLayout::dim_of(const std::string &name) const {
    return subsystems_[index_of(name)].dim;
}

bool SubsystemLayout::contains(const std::string &name) const {
    return std::any_of(subsystems_.begin(), subsystems_.end(),
                       [&](const Subsystem &s) { return s.name == name; });
}

std::size_t SubsystemLayout::stride(std::size_t pos) const {
    std::size_t s = 1;
    for (std::size_t p = pos + 1; p < subsystems_.size(); ++p) {
        s *= subsystems_[p].dim;
    }
    return s;
}

bool SubsystemLayout::operator==(const SubsystemLayout &other) const {
    return std::equal(subsystems_.begin(), subsystems_.end(),
                      other.subsystems_.begin(), other.subsystems_.end(),
                      [](const Subsystem &a, const Subsystem &b) {
                          return a.name == b.name && a.dim == b.dim;
                      });
}

ComplexMatrix embed(const SubsystemLayout &layout,
                    const std::map<std::string, ComplexMatrix> &assignments,
                    std::size_t max_dim) {
    for (const auto &[name, op] : assignments) {
        const auto d = static_cast<Eigen::Index>(layout.dim_of(name));
        if (op.rows() != d || op.cols() != d) {
            throw std::invalid_argument("embed: operator on '" + name +
                                        "' must be " + std::to_string(d) +
                                        "x" + std::to_string(d));
        }
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (const auto &s : layout.subsystems()) {
        const auto it = assignments.find(s.name);
        const auto d = static_cast<Eigen::Index>(s.dim);
        out = kron(out,
                   it != assignments.end() ? it->second
                                           : ComplexMatrix::Identity(d, d),
                   max_dim);
    }
    return out;
}

StateVector product_state(const SubsystemLayout &layout,
                          const std::vector<StateFactor> &factors) {
    // Order factors by the layout position of their first subsystem and
    // check that together they tile the layout.
    std::vector<std::pair<std::size_t, const StateFactor *>> ordered;
    std::vector<int> covered(layout.size(), 0);
    for (const auto &f : factors) {
        if (f.subsystems.empty()) {
            throw std::invalid_argument("product_state: empty factor");
        }
        const std::size_t first = layout.index_of(f.subsystems.front());
        std::size_t dim = 1;
        for (std::size_t i = 0; i < f.subsystems.size(); ++i) {
            const std::size_t pos = layout.index_of(f.subsystems[i]);
            if (pos != first + i) {
                throw std::invalid_argument(
                    "product_state: factor subsystems must be adjacent and "
                    "in layout order");
            }
            ++covered[pos];
            dim *= layout.subsystems()[pos].dim;
        }
        if (static_cast<std::size_t>(f.amplitudes.size()) != dim) {
            throw std::invalid_argument(
                "product_state: factor on '" + f.subsystems.front() +
                "' has " + std::to_string(f.amplitudes.size()) +
                " amplitudes, expected " + std::to_string(dim));
        }
        ordered.emplace_back(first, &f);
    }
    for (std::size_t p = 0; p < covered.size(); ++p) {
        if (covered[p] != 1) {
            throw std::invalid_argument(
                "product_state: subsystem '" + layout.subsystems()[p].name +
                (covered[p] == 0 ? "' is not covered" : "' is covered twice"));
        }
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });

    StateVector out = StateVector::Ones(1);
    for (const auto &[pos, f] : ordered) {
        out = kron(out, f->amplitudes, layout.total_dim());
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho,
                            const SubsystemLayout &layout,
                            const std::set<std::string> &keep) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    if (rho.rows() != n || rho.cols() != n) {
        throw std::invalid_argument("partial_trace: matrix is " +
                                    std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) +
                                    ", layout dimension is " +
                                    std::to_string(n));
    }
    const SplitIndex split = split_index(layout, keep);
    const auto kd = split.kept_dim;
    const auto td = split.traced_dim;
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kd),
                                            static_cast<Eigen::Index>(kd));
    for (std::size_t k2 = 0; k2 < kd; ++k2) {
        for (std::size_t k1 = 0; k1 < kd; ++k1) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < td; ++t) {
                acc += rho(static_cast<Eigen::Index>(split.full[k1 * td + t]),
                           static_cast<Eigen::Index>(split.full[k2 * td + t]));
            }
            out(static_cast<Eigen::Index>(k1), static_cast<Eigen::Index>(k2)) =
                acc;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho,
                            const SubsystemLayout &layout,
                            const std::set<std::string> &keep) {
    return DensityMatrix(partial_trace(rho.matrix(), layout, keep));
}

DensityMatrix partial_trace_pure(const StateVector &psi,
                                 const SubsystemLayout &layout,
                                 const std::set<std::string> &keep) {
    if (static_cast<std::size_t>(psi.size()) != layout.total_dim()) {
        throw std::invalid_argument("partial_trace_pure: state dimension " +
                                    std::to_string(psi.size()) +
                                    " does not match layout dimension " +
                                    std::to_string(layout.total_dim()));
    }
    const SplitIndex split = split_index(layout, keep);
    const auto kd = static_cast<Eigen::Index>(split.kept_dim);
    const auto td = static_cast<Eigen::Index>(split.traced_dim);
    ComplexMatrix reshaped(kd, td);
    for (Eigen::Index k = 0; k < kd; ++k) {
        for (Eigen::Index t = 0; t < td; ++t) {
            reshaped(k, t) = psi(static_cast<Eigen::Index>(
                split.full[static_cast<std::size_t>(k * td + t)]));
        }
    }
    return DensityMatrix(reshaped * reshaped.adjoint());
}

} // namespace bellsim
