// Copyright 2026 The fusionsim Authors
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

#ifndef FUSIONSIM_TYPES_H
#define FUSIONSIM_TYPES_H

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fusionsim {

using Complex = std::complex<double>;

/// Photon label. Spatial paths and qubits share the same integer label space
/// so that photon 3 in path 3 becomes qubit 3 after post-selection.
using Label = int;

inline constexpr double kPi = std::numbers::pi;

/// Raised when two states being combined claim the same spatial path.
class RegistryConflict : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a state does not satisfy an operation's photon-number
/// precondition (e.g. detecting a path that does not hold exactly one photon).
class ContractViolation : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fusionsim

#endif
