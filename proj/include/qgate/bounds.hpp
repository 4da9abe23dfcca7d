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

// Fisher information of the outcome laws (closed form and finite
// differences), its second-order expansion around the optimal single-qubit
// settings, (alpha, beta) stability scans, the generalized Fisher information
// of the asymptotic posterior, and Cramer-Rao / van Trees bounds.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qgate/bayes.hpp"
#include "qgate/errors.hpp"
#include "qgate/extended_value.hpp"
#include "qgate/gate_model.hpp"
#include "qgate/tolerances.hpp"

namespace qgate {

namespace detail {

/// Central difference with one Richardson level: (4 D(h/2) - D(h)) / 3.
template <class F>
double richardson_derivative(F&& f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double h2 = 0.5 * h;
    const double d2 = (f(x + h2) - f(x - h2)) / (2.0 * h2);
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace detail

/// G(theta) = sum_s (dP(s|theta)/dtheta)^2 / P(s|theta) with finite-difference
/// slopes. Outcomes with P < 1e-14 and |dP| < 1e-9 are a removable 0/0 and
/// contribute nothing; P -> 0 with a finite slope yields +infinity.
template <OutcomeModel M>
ExtendedValue fisher_numeric(const M& model, GateParam theta, double step = tol::fd_step) {
    const double t = theta.value();
    if (!(t - step >= 0.0 && t + step <= pi))
        throw DomainError(detail::describe("theta", t) + " leaves no room for the difference stencil");
    double g = 0.0;
    for (std::size_t s = 0; s < model.outcome_count(); ++s) {
        const double p = model.probability(s, t);
        const double dp = detail::richardson_derivative(
            [&](double x) { return model.probability(s, x); }, t, step);
        if (p < tol::probability_floor) {
            if (std::abs(dp) < tol::derivative_floor) continue;
            return ExtendedValue::infinite("outcome " + std::to_string(s) +
                                           " has vanishing probability but nonzero slope");
        }
        g += dp * dp / p;
    }
    return ExtendedValue::finite(g);
}

/// Closed-form single-qubit Fisher information
///   G = sin^2(a) sin^2(b) sin^2(x) / [1 - (cos(a) cos(b) + sin(a) sin(b) cos(x))^2],
/// x = theta + phi - omega. The denominator equals 4 P(0) P(1) and is
/// evaluated that way. Degenerate denominators give an indeterminate value.
inline ExtendedValue fisher_single_analytic(const SingleQubitModel& model, GateParam theta) {
    const double t = theta.value();
    const double half = 0.5 * model.phase(t);
    const double sx = 2.0 * std::sin(half) * std::cos(half);
    const double num = model.sin_product() * model.sin_product() * sx * sx;
    const double den = 4.0 * model.probability(0, t) * model.probability(1, t);
    if (den <= tol::denominator_floor) {
        if (num <= tol::denominator_floor)
            return ExtendedValue::indeterminate("0/0: a measurement outcome is certain at this theta");
        return ExtendedValue::infinite("vanishing denominator");
    }
    return ExtendedValue::finite(num / den);
}

/// Closed-form Bell-probe Fisher information
///   G = c1^2 + c2^2 + (c0^2 - c3^2)(c0^4 - c3^4) sin^2(theta)
///                     / [(c0^2 + c3^2)^2 - (c0^2 - c3^2)^2 cos^2(theta)].
/// When c0 c3 = 0 the second term is the removable limit c0^2 + c3^2, so G = 1.
inline ExtendedValue fisher_bell_analytic(const BellProbeModel& model, GateParam theta) {
    const auto& c = model.coefficients();
    const double a = c[0] * c[0], d = c[3] * c[3];
    const double base = c[1] * c[1] + c[2] * c[2];
    if (a == 0.0 || d == 0.0) return ExtendedValue::finite(base + a + d);
    const double diff = a - d;
    const double st = std::sin(theta.value());
    // (a + d)^2 - diff^2 cos^2 = 4 a d + diff^2 sin^2, free of cancellation.
    const double den = 4.0 * a * d + diff * diff * st * st;
    return ExtendedValue::finite(base + diff * diff * (a + d) * st * st / den);
}

/// Second-order expansion of the single-qubit G about alpha = beta = pi/2:
///   1 - [da^2 + db^2] / sin^2(theta) + 2 cos(theta) / sin^2(theta) da db.
/// Not a bound; large mismatches make it negative.
inline double fisher_expansion(double alpha, double beta, double theta) {
    if (!(theta > 0.0 && theta < pi))
        throw DomainError(detail::describe("theta", theta) + " outside (0, pi)");
    const double da = alpha - pi / 2, db = beta - pi / 2;
    const double s2 = std::sin(theta) * std::sin(theta);
    return 1.0 - (da * da + db * db) / s2 + 2.0 * std::cos(theta) / s2 * da * db;
}

/// G over an (alpha, beta) grid at fixed theta; values are alpha-major.
struct StabilityMap {
    double theta;
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<ExtendedValue> values;

    const ExtendedValue& at(std::size_t i, std::size_t j) const { return values[i * betas.size() + j]; }
};

inline StabilityMap stability_scan(GateParam theta, std::span<const double> alphas,
                                   std::span<const double> betas, double phi, double omega) {
    StabilityMap map{theta.value(), {alphas.begin(), alphas.end()}, {betas.begin(), betas.end()}, {}};
    map.values.reserve(alphas.size() * betas.size());
    for (double a : alphas)
        for (double b : betas)
            map.values.push_back(fisher_single_analytic(SingleQubitModel(a, b, phi, omega), theta));
    return map;
}

/// Evenly spaced points over [0, pi], endpoints included.
inline std::vector<double> angle_grid(std::size_t n) {
    if (n < 2) throw DomainError("angle grid needs at least 2 points");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = pi * static_cast<double>(i) / static_cast<double>(n - 1);
    g.back() = pi;
    return g;
}

/// F_M(theta*) = int P_M(theta|theta*) [d/dtheta log P_M(theta|theta*)]^2 dtheta.
/// Approaches M G(theta*) for M >> 1.
template <OutcomeModel M>
double generalized_fisher_asymptotic(const M& model, GateParam theta_star, std::uint64_t m,
                                     int grid_size = tol::default_grid_size) {
    const double t = theta_star.value();
    if (!(t > 0.0 && t < pi)) throw DomainError(detail::describe("theta*", t) + " not interior to (0, pi)");
    const PosteriorGrid post = asymptotic_posterior(model, theta_star, m, grid_size);
    const auto w = asymptotic_weights(model, theta_star, m);
    const ThetaGrid grid(grid_size);
    std::vector<double> integrand(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (post.density[i] == 0.0) continue;
        const double score = detail::richardson_derivative(
            [&](double x) { return asymptotic_log_likelihood(model, w, x); }, grid[i], tol::fd_step);
        if (std::isfinite(score)) integrand[i] = post.density[i] * score * score;
    }
    return grid.integrate(integrand);
}

/// Closed-form G where available, finite differences otherwise.
inline ExtendedValue fisher_information(const Model& model, GateParam theta) {
    if (const auto* b = model.bell()) return fisher_bell_analytic(*b, theta);
    const auto g = fisher_single_analytic(*model.single(), theta);
    if (g.is_finite()) return g;
    const double t = theta.value();
    if (t - tol::fd_step >= 0.0 && t + tol::fd_step <= pi) {
        const auto n = fisher_numeric(*model.single(), theta);
        if (n.is_finite()) return n;
    }
    return g;
}

struct BoundReport {
    double theta = 0.0;
    ExtendedValue G = ExtendedValue::finite(0.0);
    double F = 0.0;
    std::uint64_t M = 1;
    ExtendedValue H_M = ExtendedValue::finite(0.0);
    ExtendedValue cr_bound = ExtendedValue::finite(0.0);
    ExtendedValue van_trees_bound = ExtendedValue::finite(0.0);
};

/// H_M = F + M G, Cramer-Rao bound 1/(M G) and van Trees bound 1/H_M.
inline BoundReport bound_report(const Model& model, GateParam theta, std::uint64_t m, const Prior& prior) {
    if (m < 1) throw DomainError("number of measurements must be >= 1");
    BoundReport r;
    r.theta = theta.value();
    r.F = prior.fisher();
    r.M = m;
    r.G = fisher_information(model, theta);
    const double md = static_cast<double>(m);
    switch (r.G.kind()) {
    case ExtendedValue::Kind::finite: {
        const double mg = md * r.G.value();
        const double h = r.F + mg;
        r.H_M = ExtendedValue::finite(h);
        r.cr_bound = mg > 0.0 ? ExtendedValue::finite(1.0 / mg)
                              : ExtendedValue::infinite("zero Fisher information");
        r.van_trees_bound = h > 0.0 ? ExtendedValue::finite(1.0 / h)
                                    : ExtendedValue::infinite("zero generalized Fisher information");
        break;
    }
    case ExtendedValue::Kind::infinite:
        r.H_M = ExtendedValue::infinite(r.G.reason());
        r.cr_bound = ExtendedValue::finite(0.0);
        r.van_trees_bound = ExtendedValue::finite(0.0);
        break;
    case ExtendedValue::Kind::indeterminate:
        r.H_M = r.G;
        r.cr_bound = r.G;
        r.van_trees_bound = r.G;
        break;
    }
    return r;
}

} // namespace qgate
