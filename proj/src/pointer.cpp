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
#include "bellsim/pointer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bellsim/errors.hpp"

namespace bellsim {

namespace {

/// (1/N) sum_k f(w_k) exp(i w_k m) over the symmetric frequency range. The
/// argument m is the signed site difference, so entries for m and -m are
/// exact conjugates whenever f is real.
template <typename F>
ComplexMatrix fourier_diagonal_operator(std::size_t n_sites, F &&f) {
    const auto freqs = momentum_spectrum(n_sites);
    const auto n = static_cast<Eigen::Index>(n_sites);
    ComplexMatrix out(n, n);
    for (Eigen::Index x = 0; x < n; ++x) {
        for (Eigen::Index y = 0; y < n; ++y) {
            const auto m = static_cast<double>(x - y);
            Complex acc = 0.0;
            for (const double w : freqs) {
                acc += f(w) * std::polar(1.0, w * m);
            }
            out(x, y) = acc / static_cast<double>(n_sites);
        }
    }
    return out;
}

void require_sites(std::size_t n_sites) {
    if (n_sites < 3) {
        throw ConfigError("pointer lattice needs at least 3 sites, got " +
                          std::to_string(n_sites));
    }
}

} // namespace

std::vector<double> momentum_spectrum(std::size_t n_sites) {
    require_sites(n_sites);
    const auto n = static_cast<long>(n_sites);
    std::vector<double> freqs;
    freqs.reserve(n_sites);
    for (long k = -((n - 1) / 2); k <= n / 2; ++k) {
        freqs.push_back(2.0 * std::numbers::pi * static_cast<double>(k) /
                        static_cast<double>(n));
    }
    return freqs;
}

ComplexMatrix momentum_operator(std::size_t n_sites) {
    return fourier_diagonal_operator(n_sites,
                                     [](double w) { return Complex(w, 0.0); });
}

PointerSpace::PointerSpace(std::size_t n_sites, PointerMode mode,
                           double spacing, double leak_tolerance)
    : n_sites_(n_sites), mode_(mode), spacing_(spacing),
      leak_tolerance_(leak_tolerance) {
    require_sites(n_sites);
    if (!(spacing > 0.0) || !(spacing < static_cast<double>(n_sites) / 2.0)) {
        throw ConfigError("pointer spacing must lie in (0, N/2), got " +
                          std::to_string(spacing));
    }
    if (!mode.is_delta() && !(mode.sigma > 0.0)) {
        throw ConfigError("gaussian pointer width must be positive");
    }
    if (!(leak_tolerance >= 0.0)) {
        throw ConfigError("leak tolerance must be non-negative");
    }
    momentum_ = momentum_operator(n_sites);

    const double half = spacing / 2.0;
    bins_.resize(n_sites);
    for (std::size_t site = 0; site < n_sites; ++site) {
        const auto r = static_cast<double>(offset(site));
        if (std::abs(r) <= half || std::abs(r) > 3.0 * half) {
            bins_[site] = PointerBin::neutral;
        } else {
            bins_[site] = r > 0 ? PointerBin::plus : PointerBin::minus;
        }
    }
}

long PointerSpace::offset(std::size_t site) const {
    const auto n = static_cast<long>(n_sites_);
    long r = static_cast<long>(site) - static_cast<long>(center());
    r = ((r % n) + n) % n; // [0, N)
    if (2 * r > n) {
        r -= n;
    }
    return r;
}

ComplexMatrix translation(const PointerSpace &space, double displacement) {
    if (!(std::abs(displacement) <
          static_cast<double>(space.n_sites()) / 2.0)) {
        throw ConfigError("pointer displacement " +
                          std::to_string(displacement) +
                          " is too large for a lattice of " +
                          std::to_string(space.n_sites()) + " sites");
    }
    if (displacement == 0.0) {
        const auto n = static_cast<Eigen::Index>(space.n_sites());
        return ComplexMatrix::Identity(n, n);
    }
    return fourier_diagonal_operator(space.n_sites(), [&](double w) {
        return std::polar(1.0, -displacement * w);
    });
}

StateVector initial_state(const PointerSpace &space) {
    const auto n = static_cast<Eigen::Index>(space.n_sites());
    StateVector psi = StateVector::Zero(n);
    if (space.mode().is_delta()) {
        psi(static_cast<Eigen::Index>(space.center())) = 1.0;
        return psi;
    }
    const double sigma = space.mode().sigma;
    for (Eigen::Index x = 0; x < n; ++x) {
        const auto r =
            static_cast<double>(space.offset(static_cast<std::size_t>(x)));
        psi(x) = std::exp(-r * r / (2.0 * sigma * sigma));
    }
    psi /= psi.norm();

    double leaked = 0.0;
    for (Eigen::Index x = 0; x < n; ++x) {
        if (space.bin(static_cast<std::size_t>(x)) != PointerBin::neutral) {
            leaked += std::norm(psi(x));
        }
    }
    if (leaked > space.leak_tolerance()) {
        throw ConfigError("gaussian pointer width " + std::to_string(sigma) +
                          " puts " + std::to_string(leaked) +
                          " of the initial probability outside the neutral "
                          "bin (tolerance " +
                          std::to_string(space.leak_tolerance()) + ")");
    }
    return psi;
}

BinProbabilities readout(const PointerSpace &space, const DensityMatrix &rho) {
    if (rho.dim() != space.n_sites()) {
        throw std::invalid_argument("readout: density matrix dimension " +
                                    std::to_string(rho.dim()) +
                                    " does not match " +
                                    std::to_string(space.n_sites()) + " sites");
    }
    BinProbabilities p;
    for (std::size_t x = 0; x < space.n_sites(); ++x) {
        const double w = rho(x, x).real();
        switch (space.bin(x)) {
        case PointerBin::plus:
            p.plus += w;
            break;
        case PointerBin::neutral:
            p.neutral += w;
            break;
        case PointerBin::minus:
            p.minus += w;
            break;
        }
    }
    return p;
}

} // namespace bellsim
