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
#pragma once

#include <stdexcept>
#include <string>

namespace bellsim {

/// Invalid experiment or run configuration (bad angles, lattice too small,
/// Hilbert dimension over the configured cap, ...). The CLI maps it to exit 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

/// A computed quantity broke a numerical invariant (trace, norm, hermiticity)
/// beyond tolerance. The CLI maps it to exit 3.
class InvariantError : public std::runtime_error {
  public:
    explicit InvariantError(const std::string &what)
        : std::runtime_error(what) {}
};

} // namespace bellsim
