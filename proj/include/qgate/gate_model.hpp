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

// Probe states, gates, measurements and exact outcome-probability laws for
// the one-parameter gate U3(theta) = exp(-i theta sigma_3 / 2), probed either
// by a single qubit with a two-outcome projective measurement or by a
// two-qubit state with a Bell measurement.

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qgate/errors.hpp"
#include "qgate/qubit_algebra.hpp"
#include "qgate/tolerances.hpp"

namespace qgate {

inline constexpr double pi = std::numbers::pi;

namespace detail {

inline std::string describe(const char* name, double v) {
    std::ostringstream os;
    os.precision(17);
    os << name << " = " << v;
    return os.str();
}

inline void require_closed(const char* name, double v, double lo, double hi, const char* range) {
    if (!(v >= lo && v <= hi))
        throw DomainError(describe(name, v) + " outside " + range);
}

inline void require_half_open(const char* name, double v, double lo, double hi, const char* range) {
    if (!(v >= lo && v < hi))
        throw DomainError(describe(name, v) + " outside " + range);
}

inline double square(double x) { return x * x; }

} // namespace detail

/// Gate parameter theta, restricted to Omega = [0, pi].
class GateParam {
public:
    explicit GateParam(double theta) : theta_(theta) {
        detail::require_closed("theta", theta, 0.0, pi, "[0, pi]");
    }
    double value() const { return theta_; }

private:
    double theta_;
};

/// Outcome probabilities indexed by outcome label.
class OutcomeDistribution {
public:
    explicit OutcomeDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t s) const { return probs_[s]; }
    const std::vector<double>& values() const { return probs_; }

    double sum() const {
        double t = 0.0;
        for (double p : probs_) t += p;
        return t;
    }

private:
    std::vector<double> probs_;
};

/// Single-qubit probe |psi(alpha, phi)> and two-outcome measurement set by
/// |Psi(beta, omega)>.
///
/// Outcome 0 is the projector orthogonal to |Psi(beta, omega)>, so that
///   P(0|theta) = 1/2 [1 - cos(a) cos(b) - cos(phi - omega + theta) sin(a) sin(b)].
/// At the optimum alpha = beta = pi/2, phi = omega this is (1 - cos theta)/2.
/// Both outcomes are evaluated through cancellation-free forms
///   P(0) = sin^2((a - b)/2) + sin(a) sin(b) sin^2(x/2)
///   P(1) = cos^2((a + b)/2) + sin(a) sin(b) cos^2(x/2),   x = phi - omega + theta,
/// which keeps log P accurate near the ends of Omega.
class SingleQubitModel {
public:
    SingleQubitModel(double alpha, double beta, double phi, double omega)
        : alpha_(alpha), beta_(beta), phi_(phi), omega_(omega) {
        detail::require_closed("alpha", alpha, 0.0, pi, "[0, pi]");
        detail::require_closed("beta", beta, 0.0, pi, "[0, pi]");
        detail::require_half_open("phi", phi, 0.0, 2.0 * pi, "[0, 2pi)");
        detail::require_half_open("omega", omega, 0.0, 2.0 * pi, "[0, 2pi)");
        sin_product_ = std::sin(alpha) * std::sin(beta);
        cos_product_ = std::cos(alpha) * std::cos(beta);
        half_diff_sin2_ = detail::square(std::sin(0.5 * (alpha - beta)));
        half_sum_cos2_ = detail::square(std::cos(0.5 * (alpha + beta)));
    }

    static SingleQubitModel optimal(double phi = 0.0, double omega = 0.0) {
        return {pi / 2, pi / 2, phi, omega};
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double phi() const { return phi_; }
    double omega() const { return omega_; }
    double sin_product() const { return sin_product_; }
    double cos_product() const { return cos_product_; }

    static constexpr std::size_t outcome_count() { return 2; }

    /// x = phi - omega + theta. Shared by the law and the Fisher formula so
    /// both see the same rounding.
    double phase(double theta) const { return phi_ - omega_ + theta; }

    // theta is not range-checked here; callers holding a GateParam are.
    double probability(std::size_t outcome, double theta) const {
        const double half = 0.5 * phase(theta);
        if (outcome == 0) return half_diff_sin2_ + sin_product_ * detail::square(std::sin(half));
        return half_sum_cos2_ + sin_product_ * detail::square(std::cos(half));
    }

    OutcomeDistribution probabilities(double theta) const {
        return OutcomeDistribution({probability(0, theta), probability(1, theta)});
    }

private:
    double alpha_, beta_, phi_, omega_;
    double sin_product_ = 0.0, cos_product_ = 0.0;
    double half_diff_sin2_ = 0.0, half_sum_cos2_ = 0.0;
};

/// Two-qubit probe (1/sqrt2) sum_k c_k |sigma_k>> with real c, read out by the
/// Bell measurement {|sigma_k>><<sigma_k| / 2}.
class BellProbeModel {
public:
    explicit BellProbeModel(std::array<double, 4> c) : c_(c) {
        const double n2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
        if (!(std::abs(n2 - 1.0) <= tol::unit_norm))
            throw DomainError(detail::describe("|c|^2", n2) + " is not 1");
    }

    /// Rescales c to unit norm.
    static BellProbeModel normalized(std::array<double, 4> c) {
        const double n = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
        if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("Bell coefficients have zero norm");
        for (double& x : c) x /= n;
        return BellProbeModel(c);
    }

    const std::array<double, 4>& coefficients() const { return c_; }

    static constexpr std::size_t outcome_count() { return 4; }

    double probability(std::size_t outcome, double theta) const {
        const double ch = std::cos(0.5 * theta);
        const double sh = std::sin(0.5 * theta);
        using detail::square;
        switch (outcome) {
        case 0: return square(c_[0] * ch) + square(c_[3] * sh);
        case 1: return square(c_[1] * ch - c_[2] * sh);
        case 2: return square(c_[1] * sh + c_[2] * ch);
        default: return square(c_[0] * sh) + square(c_[3] * ch);
        }
    }

    OutcomeDistribution probabilities(double theta) const {
        return OutcomeDistribution({probability(0, theta), probability(1, theta),
                                    probability(2, theta), probability(3, theta)});
    }

private:
    std::array<double, 4> c_;
};

/// Anything with a finite outcome set and a probability law in theta.
template <class M>
concept OutcomeModel = requires(const M& m, std::size_t s, double theta) {
    { m.outcome_count() } -> std::convertible_to<std::size_t>;
    { m.probability(s, theta) } -> std::convertible_to<double>;
};

/// Type-erased model for the CLI and the Monte Carlo driver.
class Model {
public:
    Model(SingleQubitModel m) : v_(std::move(m)) {}
    Model(BellProbeModel m) : v_(std::move(m)) {}

    std::size_t outcome_count() const {
        return std::visit([](const auto& m) { return m.outcome_count(); }, v_);
    }
    double probability(std::size_t s, double theta) const {
        return std::visit([&](const auto& m) { return m.probability(s, theta); }, v_);
    }
    OutcomeDistribution probabilities(double theta) const {
        return std::visit([&](const auto& m) { return m.probabilities(theta); }, v_);
    }

    bool is_single() const { return std::holds_alternative<SingleQubitModel>(v_); }
    const SingleQubitModel* single() const { return std::get_if<SingleQubitModel>(&v_); }
    const BellProbeModel* bell() const { return std::get_if<BellProbeModel>(&v_); }

    template <class F>
    decltype(auto) visit(F&& f) const {
        return std::visit(std::forward<F>(f), v_);
    }

private:
    std::variant<SingleQubitModel, BellProbeModel> v_;
};

inline OutcomeDistribution single_qubit_probs(const SingleQubitModel& model, GateParam theta) {
    return model.probabilities(theta.value());
}

inline OutcomeDistribution bell_probe_probs(const BellProbeModel& model, GateParam theta) {
    return model.probabilities(theta.value());
}

// ---------------------------------------------------------------------------
// State-vector view, used for gates about an arbitrary axis.

/// cos(alpha/2)|0> + e^{i phi} sin(alpha/2)|1>
inline qubit::Ket qubit_state(double polar, double azimuth) {
    return {{qubit::Complex(std::cos(0.5 * polar)), std::polar(std::sin(0.5 * polar), azimuth)}};
}

/// Outcome-0 projector of the single-qubit measurement: 1 - |Psi(beta, omega)><Psi(beta, omega)|.
inline qubit::Matrix outcome0_projector(double beta, double omega) {
    return qubit::identity() - qubit::outer(qubit_state(beta, omega));
}

/// exp(-i theta sigma.n / 2) = cos(theta/2) 1 - i sin(theta/2) sigma.n
inline qubit::Matrix gate_about_axis(const std::array<double, 3>& n, double theta) {
    using namespace std::complex_literals;
    return qubit::Complex(std::cos(0.5 * theta)) * qubit::identity() -
           (1.0i * std::sin(0.5 * theta)) * qubit::pauli_dot(n);
}

/// Unit rotation axis.
class AxisSpec {
public:
    explicit AxisSpec(std::array<double, 3> n) : n_(n) {
        const double n2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
        if (!(std::abs(n2 - 1.0) <= tol::unit_norm))
            throw DomainError(detail::describe("|n|^2", n2) + " is not 1");
    }

    static AxisSpec from_direction(std::array<double, 3> v) {
        const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (!(len > tol::unit_norm) || !std::isfinite(len))
            throw DomainError("degenerate rotation axis");
        for (double& x : v) x /= len;
        return AxisSpec(v);
    }

    const std::array<double, 3>& direction() const { return n_; }

private:
    std::array<double, 3> n_;
};

/// Optimal probe and measurement for U_n(theta) = O U3(theta) O^dagger.
struct AxisSettings {
    qubit::Matrix rotation;  // O, with O sigma_3 O^dagger = sigma.n
    qubit::Ket probe;        // O |psi(pi/2, 0)>
    qubit::Matrix projector0;  // O Pi_0(pi/2, 0) O^dagger
    qubit::Matrix projector1;
};

/// SU(2) rotation carrying the z axis onto n.
inline qubit::Matrix rotation_to_axis(const AxisSpec& axis) {
    using namespace std::complex_literals;
    const auto& n = axis.direction();
    const double kx = -n[1], ky = n[0];  // z cross n
    const double sin_angle = std::hypot(kx, ky);
    if (sin_angle < tol::unit_norm) {
        if (n[2] > 0.0) return qubit::identity();
        return -1.0i * qubit::pauli(1);  // pi about x
    }
    const double angle = std::atan2(sin_angle, n[2]);
    const std::array<double, 3> k{kx / sin_angle, ky / sin_angle, 0.0};
    return qubit::Complex(std::cos(0.5 * angle)) * qubit::identity() -
           (1.0i * std::sin(0.5 * angle)) * qubit::pauli_dot(k);
}

inline AxisSettings axis_conjugated_settings(const AxisSpec& axis) {
    const qubit::Matrix o = rotation_to_axis(axis);
    const qubit::Matrix od = qubit::adjoint(o);
    AxisSettings s{};
    s.rotation = o;
    s.probe = o * qubit_state(pi / 2, 0.0);
    s.projector0 = o * outcome0_projector(pi / 2, 0.0) * od;
    s.projector1 = qubit::identity() - s.projector0;
    return s;
}

/// Outcome law of the conjugated settings, evolved under exp(-i theta sigma.n / 2)
/// built directly from n (independent of O).
inline OutcomeDistribution conjugated_probs(const AxisSettings& settings, const AxisSpec& axis,
                                            GateParam theta) {
    const qubit::Ket out = gate_about_axis(axis.direction(), theta.value()) * settings.probe;
    return OutcomeDistribution(
        {qubit::expectation(out, settings.projector0), qubit::expectation(out, settings.projector1)});
}

} // namespace qgate
