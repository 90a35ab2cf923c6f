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
 * The measuring apparatus pointer, modeled as a particle on a cyclic lattice
 * of N sites.
 *
 * The momentum generator is diagonal in the discrete Fourier basis,
 * P = F^dagger diag(2 pi k / N) F with k in the symmetric integer range, so
 * exp(-i s P) is an exact cyclic shift by s sites whenever s is an integer.
 */

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "bellsim/tensor.hpp"

namespace bellsim {

struct PointerMode {
    enum class Kind { delta, gaussian };

    Kind kind = Kind::delta;
    /// Width of the gaussian amplitude, exp(-r^2 / (2 sigma^2)), in sites.
    double sigma = 0.0;

    static PointerMode delta() { return {Kind::delta, 0.0}; }
    static PointerMode gaussian(double sigma) { return {Kind::gaussian, sigma}; }

    [[nodiscard]] bool is_delta() const { return kind == Kind::delta; }
};

enum class PointerBin { plus, neutral, minus };

struct BinProbabilities {
    double plus = 0.0;
    double neutral = 0.0;
    double minus = 0.0;
};

/**
 * Lattice geometry, initial-state mode and readout partition of one pointer.
 *
 * Readout bins are three arcs of width `spacing` centred on the rest site c
 * (neutral), c + spacing (plus) and c - spacing (minus). Sites outside all
 * three arcs are read as neutral, i.e. no click. A site exactly on the
 * neutral/plus boundary counts as neutral.
 */
class PointerSpace {
  public:
    /// Throws ConfigError if n_sites < 3, spacing is not in (0, n_sites/2),
    /// or a gaussian mode has sigma <= 0.
    PointerSpace(std::size_t n_sites, PointerMode mode, double spacing,
                 double leak_tolerance = 1e-6);

    [[nodiscard]] std::size_t n_sites() const { return n_sites_; }
    [[nodiscard]] const PointerMode &mode() const { return mode_; }
    [[nodiscard]] double spacing() const { return spacing_; }
    /// Maximum probability of the initial state outside the neutral bin.
    [[nodiscard]] double leak_tolerance() const { return leak_tolerance_; }
    /// Rest site of the pointer, floor(N / 2).
    [[nodiscard]] std::size_t center() const { return n_sites_ / 2; }
    [[nodiscard]] const ComplexMatrix &momentum() const { return momentum_; }
    [[nodiscard]] PointerBin bin(std::size_t site) const { return bins_[site]; }
    [[nodiscard]] const std::vector<PointerBin> &bins() const { return bins_; }

    /// Signed offset of `site` from the rest site, in (-N/2, N/2].
    [[nodiscard]] long offset(std::size_t site) const;

  private:
    std::size_t n_sites_;
    PointerMode mode_;
    double spacing_;
    double leak_tolerance_;
    ComplexMatrix momentum_;
    std::vector<PointerBin> bins_;
};

/// Eigenvalues 2 pi k / N for k = -floor((N-1)/2), ..., floor(N/2).
std::vector<double> momentum_spectrum(std::size_t n_sites);

/// Throws ConfigError for n_sites < 3.
ComplexMatrix momentum_operator(std::size_t n_sites);

/// exp(-i * displacement * P). Requires |displacement| < N/2 (ConfigError
/// otherwise).
ComplexMatrix translation(const PointerSpace &space, double displacement);

/// Delta mode: the basis state at center(). Gaussian mode: normalized
/// amplitudes exp(-r^2 / (2 sigma^2)) with r the cyclic offset from center().
/// Throws ConfigError if more than leak_tolerance() of the probability lies
/// outside the neutral bin.
StateVector initial_state(const PointerSpace &space);

/// Probability mass per readout bin of a single-pointer density matrix.
BinProbabilities readout(const PointerSpace &space, const DensityMatrix &rho);

} // namespace bellsim
