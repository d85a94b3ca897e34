// Copyright 2026 The qtedopa Authors
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

#pragma once

#include <numbers>

/// Energies are wavenumbers (cm^-1), times are picoseconds, temperatures
/// are kelvin.
namespace qtedopa::units {

/// Boltzmann constant in cm^-1 / K.
inline constexpr double boltzmann_cm1_per_k = 0.695034800;

/// Speed of light in cm / ps.
inline constexpr double light_speed_cm_per_ps = 0.0299792458;

/// Angular frequency (rad/ps) of a 1 cm^-1 energy: 2 pi c.
inline constexpr double rad_per_ps_per_cm1 =
    2.0 * std::numbers::pi * light_speed_cm_per_ps;

/// Dimensionless phase accumulated by energy `cm1` over `ps` picoseconds.
constexpr double phase(double cm1, double ps) {
    return rad_per_ps_per_cm1 * cm1 * ps;
}

/// Inverse temperature in cm (i.e. 1 / (k_B T) with k_B T in cm^-1).
constexpr double beta_from_kelvin(double kelvin) {
    return 1.0 / (boltzmann_cm1_per_k * kelvin);
}

} // namespace qtedopa::units
