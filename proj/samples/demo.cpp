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

// Simulates one experiment with the optimal single-qubit probe and compares
// the posterior from the counts with the asymptotic posterior and the
// van Trees bound.

#include <cstdio>

#include "qgate/qgate.hpp"

int main() {
    using namespace qgate;

    const auto model = SingleQubitModel::optimal();
    const GateParam truth(0.6);
    const std::uint64_t shots = 500;

    ReplicateStream stream(/*seed=*/7, /*index=*/0);
    const auto counts = sample_outcomes(model, truth, shots, stream);
    const auto post = posterior_from_counts(model, counts, Prior::uniform());
    const auto asym = asymptotic_posterior(model, truth, shots);
    const auto report = bound_report(model, truth, shots, Prior::uniform());

    std::printf("counts           m0=%llu m1=%llu\n", static_cast<unsigned long long>(counts[0]),
                static_cast<unsigned long long>(counts[1]));
    std::printf("posterior        mean=%.6f  var=%.3e\n", post.mean, post.variance);
    std::printf("asymptotic       mean=%.6f  var=%.3e\n", asym.mean, asym.variance);
    std::printf("van Trees bound  %.3e  (G=%.6f, H_M=%.1f)\n", report.van_trees_bound.value(),
                report.G.value(), report.H_M.value());
    std::printf("Var*H_M          %.4f\n", post.variance * report.H_M.value());
}
