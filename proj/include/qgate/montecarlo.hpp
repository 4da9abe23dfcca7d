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

// Monte Carlo simulated experiments: draw M outcomes at a true theta*, build
// the posterior from the counts, and aggregate efficiency and bias
// diagnostics over independent replicates.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "qgate/bayes.hpp"
#include "qgate/bounds.hpp"
#include "qgate/errors.hpp"
#include "qgate/gate_model.hpp"

namespace qgate {

/// Random stream of one replicate, fully determined by (seed, index).
///
/// The 64-bit Mersenne Twister and std::seed_seq are specified bit-exactly by
/// the standard, and uniforms are formed from the top 53 bits by hand, so
/// streams are identical across standard libraries.
class ReplicateStream {
public:
    ReplicateStream(std::uint64_t seed, std::uint64_t index) : engine_(make_engine(seed, index)) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        return std::mt19937_64(seq);
    }

    std::mt19937_64 engine_;
};

/// M independent draws from the outcome law at theta*, by inverse CDF.
template <OutcomeModel Mdl>
OutcomeCounts sample_outcomes(const Mdl& model, GateParam theta_star, std::uint64_t m,
                              ReplicateStream& stream) {
    if (m < 1) throw DomainError("number of measurements must be >= 1");
    const std::size_t k = model.outcome_count();
    std::vector<double> cdf(k);
    std::size_t last_positive = 0;
    double acc = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
        const double p = model.probability(s, theta_star.value());
        acc += p;
        cdf[s] = acc;
        if (p > 0.0) last_positive = s;
    }
    std::vector<std::uint64_t> counts(k, 0);
    for (std::uint64_t n = 0; n < m; ++n) {
        const double u = stream.uniform();
        std::size_t s = 0;
        while (s < k && !(u < cdf[s])) ++s;
        // cdf[k-1] may round below 1
        ++counts[s < k ? s : last_positive];
    }
    return OutcomeCounts(std::move(counts));
}

struct ExperimentSpec {
    Model model;
    GateParam theta_star;
    std::uint64_t M = 1;
    std::uint64_t replicates = 100;
    std::uint64_t seed = 0;
    int grid_size = tol::default_grid_size;

    void validate() const {
        if (M < 1) throw DomainError("number of measurements must be >= 1");
        if (replicates < 1) throw DomainError("replicate count must be >= 1");
        if (grid_size < tol::min_grid_size) throw DomainError("grid size below minimum");
    }
};

struct ExperimentResult {
    std::uint64_t replicate = 0;
    OutcomeCounts counts;
    double posterior_mean = 0.0;
    double posterior_variance = 0.0;
    double rescaled_variance = 0.0;  // Var[theta] H_M
    double mean_ratio = 0.0;         // theta_bar / theta*; NaN when theta* = 0
    double bias = 0.0;               // theta_bar - theta*
    bool boundary_degenerate = false;
};

struct ExperimentSummary {
    std::uint64_t M = 0;
    std::uint64_t replicates = 0;
    double mean_ratio = 0.0;
    double rescaled_variance = 0.0;
    double empirical_bias = 0.0;
    double posterior_mean = 0.0;
    double posterior_variance = 0.0;
    bool boundary_degenerate = false;
};

namespace detail {

struct InformationAtTruth {
    double H_M;
    bool boundary_degenerate;
};

// H_M = F + M G(theta*). When G is a 0/0 at theta* (certain outcome at the
// boundary), use its one-sided limit from inside Omega.
inline InformationAtTruth information_at_truth(const ExperimentSpec& spec, const Prior& prior) {
    const double t = spec.theta_star.value();
    const bool on_boundary = (t == 0.0 || t == pi);
    const auto report = bound_report(spec.model, spec.theta_star, spec.M, prior);
    if (report.H_M.is_finite()) return {report.H_M.value(), on_boundary};
    constexpr double inset = 1e-6;
    const GateParam inner(t < pi / 2 ? t + inset : t - inset);
    const auto limit = bound_report(spec.model, inner, spec.M, prior);
    if (!limit.H_M.is_finite()) throw NumericError("generalized Fisher information is not finite at theta*");
    return {limit.H_M.value(), true};
}

} // namespace detail

/// One result per replicate, in replicate order. Replicates run on up to
/// `threads` workers (0 = hardware concurrency); output does not depend on it.
inline std::vector<ExperimentResult> run_experiment(const ExperimentSpec& spec, unsigned threads = 0) {
    spec.validate();
    const Prior prior = Prior::uniform();
    const auto info = detail::information_at_truth(spec, prior);
    const LogLikelihoodTable table(spec.model, ThetaGrid(spec.grid_size));
    const double truth = spec.theta_star.value();

    auto one = [&](std::uint64_t r) {
        ReplicateStream stream(spec.seed, r);
        OutcomeCounts counts = sample_outcomes(spec.model, spec.theta_star, spec.M, stream);
        const PosteriorGrid post = posterior_from_counts(table, counts, prior);
        return ExperimentResult{
            r,
            std::move(counts),
            post.mean,
            post.variance,
            post.variance * info.H_M,
            truth > 0.0 ? post.mean / truth : std::numeric_limits<double>::quiet_NaN(),
            post.mean - truth,
            info.boundary_degenerate,
        };
    };

    const std::uint64_t n = spec.replicates;
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, (n + 15) / 16));
    std::vector<std::optional<ExperimentResult>> slots(n);
    if (workers <= 1) {
        for (std::uint64_t r = 0; r < n; ++r) slots[r] = one(r);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (std::uint64_t r = w; r < n; r += workers) slots[r] = one(r);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    std::vector<ExperimentResult> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

/// Replicate averages.
inline ExperimentSummary summarize(std::span<const ExperimentResult> results, std::uint64_t m) {
    if (results.empty()) throw DomainError("no replicates to summarize");
    ExperimentSummary s;
    s.M = m;
    s.replicates = results.size();
    for (const auto& r : results) {
        s.mean_ratio += r.mean_ratio;
        s.rescaled_variance += r.rescaled_variance;
        s.empirical_bias += r.bias;
        s.posterior_mean += r.posterior_mean;
        s.posterior_variance += r.posterior_variance;
        s.boundary_degenerate = s.boundary_degenerate || r.boundary_degenerate;
    }
    const double n = static_cast<double>(results.size());
    s.mean_ratio /= n;
    s.rescaled_variance /= n;
    s.empirical_bias /= n;
    s.posterior_mean /= n;
    s.posterior_variance /= n;
    return s;
}

/// One replicate-averaged row per M, each run with the base spec's seed.
inline std::vector<ExperimentSummary> convergence_sweep(const ExperimentSpec& base,
                                                        std::span<const std::uint64_t> m_list,
                                                        unsigned threads = 0) {
    if (m_list.empty()) throw DomainError("empty M list");
    for (std::size_t i = 1; i < m_list.size(); ++i)
        if (!(m_list[i] > m_list[i - 1])) throw DomainError("M list must be strictly increasing");
    std::vector<ExperimentSummary> rows;
    rows.reserve(m_list.size());
    for (auto m : m_list) {
        ExperimentSpec spec = base;
        spec.M = m;
        const auto results = run_experiment(spec, threads);
        rows.push_back(summarize(results, m));
    }
    return rows;
}

} // namespace qgate
