// Copyright 2026 The steerbox Authors
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

#include "steerbox/quantum.hpp"

namespace steerbox {

struct SearchConfig {
    int theta_steps = 60;
    int phi_steps = 120;
    double angle_tolerance = 1e-8;
    int refine_starts = 5;
};

/// Entropies are in bits. Eigenvalues in [-1e-10, 0) count as zero.
double von_neumann_entropy(const DensityMatrix &m);
double binary_entropy(double p);

/// sum_i p_i S(rho_{other|i}) for a fixed projective measurement on `measured`.
double measured_conditional_entropy(const DensityMatrix &state, Party measured, const Measurement &m);

struct ConditionalEntropyMin {
    double value = 0;
    double grid_best = 0;
    double theta = 0;
    double phi = 0;
    Measurement argmin = Measurement::sigma_z();
};

/// Minimum of measured_conditional_entropy over projective qubit measurements:
/// coarse (theta, phi) grid, then golden-section coordinate refinement from the
/// best cells. Ties in the grid go to the smaller theta, then phi.
ConditionalEntropyMin conditional_entropy_min(const DensityMatrix &state, Party measured,
                                              const SearchConfig &cfg = {});

double mutual_information(const DensityMatrix &state);

struct DiscordResult {
    Direction direction = Direction::AliceToBob;
    double discord = 0;
    double mutual_information = 0;
    double classical_correlation = 0;
    double conditional_entropy = 0;
    Measurement argmin = Measurement::sigma_z();
};

DiscordResult discord(const DensityMatrix &state, Direction direction, const SearchConfig &cfg = {});

/// Bob's side admits a basis in which the state is block diagonal.
bool is_quantum_classical(const DensityMatrix &state, double tol = 1e-9);
/// Alice's side admits such a basis.
bool is_classical_quantum(const DensityMatrix &state, double tol = 1e-9);

}  // namespace steerbox
