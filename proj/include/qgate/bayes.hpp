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

// Exact and asymptotic a-posteriori distributions of the gate parameter on
// a uniform quadrature grid over Omega = [0, pi].
//
// Likelihoods are accumulated in log-domain and normalized with a
// max-subtraction before exponentiation. Grid points where some contributing
// P(s|theta) vanishes carry log-density -inf and density exactly 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qgate/errors.hpp"
#include "qgate/gate_model.hpp"
#include "qgate/tolerances.hpp"

namespace qgate {

/// Observed outcome tallies m_j; the sufficient statistic of the likelihood.
class OutcomeCounts {
public:
    explicit OutcomeCounts(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
        if (counts_.empty()) throw DomainError("outcome counts are empty");
        for (auto m : counts_) total_ += m;
    }

    /// Counts of a raw sample of outcome labels.
    static OutcomeCounts tally(std::span<const std::size_t> sample, std::size_t outcome_count) {
        std::vector<std::uint64_t> c(outcome_count, 0);
        for (std::size_t x : sample) {
            if (x >= outcome_count) throw DomainError("sample outcome label out of range");
            ++c[x];
        }
        return OutcomeCounts(std::move(c));
    }

    const std::vector<std::uint64_t>& values() const { return counts_; }
    std::uint64_t operator[](std::size_t j) const { return counts_[j]; }
    std::size_t size() const { return counts_.size(); }
    std::uint64_t total() const { return total_; }

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Uniform grid over [0, pi] with composite trapezoid weights.
class ThetaGrid {
public:
    explicit ThetaGrid(int size) {
        if (size < tol::min_grid_size)
            throw DomainError("grid size " + std::to_string(size) + " below minimum " +
                              std::to_string(tol::min_grid_size));
        nodes_.resize(static_cast<std::size_t>(size));
        step_ = pi / (size - 1);
        for (int i = 0; i < size; ++i) nodes_[i] = i * step_;
        nodes_.back() = pi;
    }

    std::size_t size() const { return nodes_.size(); }
    double step() const { return step_; }
    const std::vector<double>& nodes() const { return nodes_; }
    double operator[](std::size_t i) const { return nodes_[i]; }

    double integrate(std::span<const double> f) const {
        double s = 0.5 * (f.front() + f.back());
        for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
        return s * step_;
    }

private:
    std::vector<double> nodes_;
    double step_ = 0.0;
};

/// Prior on Omega. Only the flat prior is provided; its Fisher information
/// is taken as 0 (the hard edges make the defining integral ill-posed).
class Prior {
public:
    enum class Kind { uniform };

    static Prior uniform() { return Prior(Kind::uniform, 0.0); }

    Kind kind() const { return kind_; }
    double fisher() const { return fisher_; }

    double density(double theta) const {
        return (theta >= 0.0 && theta <= pi) ? 1.0 / pi : 0.0;
    }
    double log_density(double theta) const {
        return (theta >= 0.0 && theta <= pi) ? -std::log(pi)
                                             : -std::numeric_limits<double>::infinity();
    }
    std::vector<double> density_on(const ThetaGrid& grid) const {
        std::vector<double> d(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) d[i] = density(grid[i]);
        return d;
    }

private:
    Prior(Kind k, double f) : kind_(k), fisher_(f) {}
    Kind kind_;
    double fisher_;
};

struct PosteriorGrid {
    std::vector<double> grid;
    std::vector<double> log_density;  // normalized; -inf where density is 0
    std::vector<double> density;
    double mean = 0.0;
    double variance = 0.0;
    double argmax = 0.0;
};

struct PosteriorMoments {
    double mean;
    double variance;
    double argmax;
};

/// Mean and variance by trapezoid quadrature over the grid nodes; argmax is
/// the node of largest density, smallest theta on ties.
inline PosteriorMoments posterior_moments(const PosteriorGrid& p) {
    const auto& x = p.grid;
    const auto& d = p.density;
    if (x.size() < 2 || d.size() != x.size())
        throw DomainError("malformed posterior grid");
    auto trapezoid = [&](auto&& f) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i)
            s += 0.5 * (x[i + 1] - x[i]) * (f(i) + f(i + 1));
        return s;
    };
    const double mean = trapezoid([&](std::size_t i) { return x[i] * d[i]; });
    const double var = trapezoid([&](std::size_t i) {
        const double u = x[i] - mean;
        return u * u * d[i];
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < d.size(); ++i)
        if (d[i] > d[best]) best = i;
    return {mean, std::max(var, 0.0), x[best]};
}

/// log P(s|theta) tabulated on a grid, reusable across many count vectors.
class LogLikelihoodTable {
public:
    template <OutcomeModel M>
    LogLikelihoodTable(const M& model, const ThetaGrid& grid)
        : grid_(grid), logs_(model.outcome_count(), std::vector<double>(grid.size())) {
        for (std::size_t s = 0; s < logs_.size(); ++s)
            for (std::size_t i = 0; i < grid.size(); ++i)
                logs_[s][i] = std::log(model.probability(s, grid[i]));
    }

    const ThetaGrid& grid() const { return grid_; }
    std::size_t outcome_count() const { return logs_.size(); }

    /// sum_s w_s log P(s|theta_i); outcomes with w_s = 0 are skipped so that
    /// 0 * log 0 counts as 0.
    std::vector<double> accumulate(std::span<const double> weights) const {
        std::vector<double> acc(grid_.size(), 0.0);
        for (std::size_t s = 0; s < logs_.size(); ++s) {
            if (weights[s] == 0.0) continue;
            const auto& ls = logs_[s];
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weights[s] * ls[i];
        }
        return acc;
    }

private:
    ThetaGrid grid_;
    std::vector<std::vector<double>> logs_;
};

namespace detail {

inline PosteriorGrid normalize_log_weights(const ThetaGrid& grid, std::vector<double> logw) {
    const double ninf = -std::numeric_limits<double>::infinity();
    double peak = ninf;
    for (double l : logw)
        if (l > peak) peak = l;
    if (!(peak > ninf) || !std::isfinite(peak))
        throw NumericError("non-normalizable posterior: likelihood vanishes on the whole grid");

    PosteriorGrid p;
    p.grid = grid.nodes();
    p.density.resize(logw.size());
    for (std::size_t i = 0; i < logw.size(); ++i)
        p.density[i] = (logw[i] == ninf) ? 0.0 : std::exp(logw[i] - peak);
    const double z = grid.integrate(p.density);
    if (!(z > 0.0) || !std::isfinite(z))
        throw NumericError("non-normalizable posterior: zero quadrature mass");
    const double log_z = std::log(z);
    for (std::size_t i = 0; i < logw.size(); ++i) {
        p.density[i] /= z;
        logw[i] = (logw[i] == ninf) ? ninf : logw[i] - peak - log_z;
    }
    p.log_density = std::move(logw);
    const auto m = posterior_moments(p);
    p.mean = m.mean;
    p.variance = m.variance;
    p.argmax = m.argmax;
    return p;
}

} // namespace detail

/// Posterior from counts with a prepared likelihood table.
inline PosteriorGrid posterior_from_counts(const LogLikelihoodTable& table, const OutcomeCounts& counts,
                                           const Prior& prior) {
    if (counts.size() != table.outcome_count())
        throw DomainError("counts have " + std::to_string(counts.size()) + " entries, model has " +
                          std::to_string(table.outcome_count()) + " outcomes");
    std::vector<double> w(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) w[j] = static_cast<double>(counts[j]);
    auto logw = table.accumulate(w);
    const auto& grid = table.grid();
    for (std::size_t i = 0; i < logw.size(); ++i) logw[i] += prior.log_density(grid[i]);
    return detail::normalize_log_weights(grid, std::move(logw));
}

/// P(theta|X) = prod_j P(j|theta)^{m_j} P(theta) / N on a grid of grid_size points.
template <OutcomeModel M>
PosteriorGrid posterior_from_counts(const M& model, const OutcomeCounts& counts, const Prior& prior,
                                    int grid_size = tol::default_grid_size) {
    const ThetaGrid grid(grid_size);
    return posterior_from_counts(LogLikelihoodTable(model, grid), counts, prior);
}

/// Exponents P(s|theta*) M of the asymptotic posterior.
template <OutcomeModel M>
std::vector<double> asymptotic_weights(const M& model, GateParam theta_star, std::uint64_t m) {
    if (m < 1) throw DomainError("number of measurements must be >= 1");
    std::vector<double> w(model.outcome_count());
    for (std::size_t s = 0; s < w.size(); ++s)
        w[s] = model.probability(s, theta_star.value()) * static_cast<double>(m);
    return w;
}

/// Unnormalized log P_M(theta|theta*) at an arbitrary theta.
template <OutcomeModel M>
double asymptotic_log_likelihood(const M& model, std::span<const double> weights, double theta) {
    double acc = 0.0;
    for (std::size_t s = 0; s < weights.size(); ++s)
        if (weights[s] != 0.0) acc += weights[s] * std::log(model.probability(s, theta));
    return acc;
}

/// P_M(theta|theta*) = prod_s P(s|theta)^{P(s|theta*) M} / N.
template <OutcomeModel M>
PosteriorGrid asymptotic_posterior(const M& model, GateParam theta_star, std::uint64_t m,
                                   int grid_size = tol::default_grid_size) {
    const ThetaGrid grid(grid_size);
    const auto w = asymptotic_weights(model, theta_star, m);
    return detail::normalize_log_weights(grid, LogLikelihoodTable(model, grid).accumulate(w));
}

struct PeakCheck {
    double first_derivative;
    double second_derivative;
};

/// Central differences of log P_M(theta|theta*) at theta*.
template <OutcomeModel M>
PeakCheck asymptotic_peak_check(const M& model, GateParam theta_star, std::uint64_t m,
                                double step = tol::peak_step) {
    const double t = theta_star.value();
    if (!(t - step > 0.0 && t + step < pi))
        throw DomainError(detail::describe("theta*", t) + " too close to the boundary for the stencil");
    const auto w = asymptotic_weights(model, theta_star, m);
    const double lo = asymptotic_log_likelihood(model, w, t - step);
    const double mid = asymptotic_log_likelihood(model, w, t);
    const double hi = asymptotic_log_likelihood(model, w, t + step);
    return {(hi - lo) / (2.0 * step), (hi - 2.0 * mid + lo) / (step * step)};
}

} // namespace qgate
