// Copyright 2026 The qgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Numeric tolerances shared by the library and its tests.

namespace qgate::tol {

// Outcome probabilities must sum to one within this bound.
inline constexpr double normalization = 1e-12;

// |n| = 1 for rotation axes; |c|^2 = 1 for Bell probes.
inline constexpr double unit_norm = 1e-12;

// Axis-conjugated law vs. canonical sigma_3 law.
inline constexpr double conjugation = 1e-10;

// Quadrature integral of every posterior density.
inline constexpr double posterior_normalization = 1e-10;

// Finite-difference Fisher information.
inline constexpr double fd_step = 1e-5;
inline constexpr double probability_floor = 1e-14;
inline constexpr double derivative_floor = 1e-9;

// Closed-form Fisher denominators at or below this are degenerate.
inline constexpr double denominator_floor = 1e-14;

// Step for the peak check on the asymptotic posterior.
inline constexpr double peak_step = 1e-4;

// Smallest quadrature grid accepted by the posterior builders.
inline constexpr int min_grid_size = 64;
inline constexpr int default_grid_size = 4096;

} // namespace qgate::tol
