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

// Batch front-end: `qgate <subcommand> [options]`.
//
// Subcommands: probs, posterior, asymptotic, fisher, scan, mc, sweep.
// Data goes to --output (default "-" = stdout), diagnostics to stderr.
// Exit codes: 0 success, 2 configuration error, 3 numeric error.
// A relative --output path is resolved against $QGATE_OUTPUT_DIR when set.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qgate/io.hpp"
#include "qgate/qgate.hpp"

namespace qgate::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_numeric = 3;

inline constexpr const char* output_dir_env = "QGATE_OUTPUT_DIR";

struct RunConfig {
    std::string subcommand;

    // model
    bool bell = false;
    double alpha = pi / 2, beta = pi / 2, phi = 0.0, omega = 0.0;
    std::vector<double> c;
    bool normalize_c = false;
    bool degrees = false;

    // evaluation points
    std::optional<double> theta;
    double theta_star = 0.0;
    std::vector<double> theta_star_list{0.05, 0.1, 1.0};
    int grid = 181;
    int grid_size = tol::default_grid_size;
    int alpha_points = 101, beta_points = 101;
    bool numeric = false;

    // sampling
    std::optional<std::uint64_t> M;
    std::vector<std::uint64_t> M_list;
    std::vector<std::uint64_t> counts;
    std::uint64_t replicates = 100;
    std::uint64_t seed = 0;
    unsigned threads = 0;

    std::string format = "csv";
    std::string output = "-";
};

namespace detail {

inline Model build_model(const RunConfig& cfg) {
    if (!cfg.bell) return SingleQubitModel(cfg.alpha, cfg.beta, cfg.phi, cfg.omega);
    if (cfg.c.size() != 4) throw DomainError("--c needs exactly four coefficients");
    const std::array<double, 4> c{cfg.c[0], cfg.c[1], cfg.c[2], cfg.c[3]};
    return cfg.normalize_c ? BellProbeModel::normalized(c) : BellProbeModel(c);
}

inline void to_radians(RunConfig& cfg) {
    if (!cfg.degrees) return;
    const double k = pi / 180.0;
    cfg.alpha *= k;
    cfg.beta *= k;
    cfg.phi *= k;
    cfg.omega *= k;
    cfg.theta_star *= k;
    if (cfg.theta) *cfg.theta *= k;
    for (double& t : cfg.theta_star_list) t *= k;
}

inline io::Json model_json(const Model& model) {
    io::Json j;
    if (const auto* s = model.single()) {
        j["kind"] = "single";
        j["alpha"] = s->alpha();
        j["beta"] = s->beta();
        j["phi"] = s->phi();
        j["omega"] = s->omega();
    } else {
        j["kind"] = "bell";
        j["c"] = model.bell()->coefficients();
    }
    return j;
}

inline std::string probability_header(std::size_t k) {
    std::string h = "theta";
    for (std::size_t s = 0; s < k; ++s) h += ",P" + std::to_string(s);
    return h;
}

inline void cmd_probs(const RunConfig& cfg, std::ostream& out) {
    const Model model = build_model(cfg);
    const auto thetas = angle_grid(static_cast<std::size_t>(cfg.grid));
    const std::size_t k = model.outcome_count();
    if (cfg.format == "json") {
        io::Json j;
        j["model"] = model_json(model);
        j["theta"] = io::json_reals(thetas);
        io::Json rows = io::Json::array();
        for (double t : thetas) rows.push_back(model.probabilities(GateParam(t).value()).values());
        j["probabilities"] = std::move(rows);
        out << j.dump(2) << '\n';
        return;
    }
    out << probability_header(k) << '\n';
    for (double t : thetas) {
        const auto p = model.probabilities(GateParam(t).value());
        out << io::format_real(t);
        for (std::size_t s = 0; s < k; ++s) out << ',' << io::format_real(p[s]);
        out << '\n';
    }
}

inline ExtendedValue numeric_or_unavailable(const Model& model, double t) {
    if (t - tol::fd_step < 0.0 || t + tol::fd_step > pi)
        return ExtendedValue::indeterminate("no stencil room at the boundary");
    return model.visit([&](const auto& m) { return fisher_numeric(m, GateParam(t)); });
}

inline void cmd_fisher(const RunConfig& cfg, std::ostream& out) {
    const Model model = build_model(cfg);
    const std::vector<double> thetas =
        cfg.theta ? std::vector<double>{*cfg.theta} : angle_grid(static_cast<std::size_t>(cfg.grid));
    const Prior prior = Prior::uniform();
    if (cfg.format == "json") {
        io::Json rows = io::Json::array();
        for (double t : thetas) {
            const GateParam theta(t);
            io::Json r;
            r["theta"] = t;
            r["G"] = io::json_value(fisher_information(model, theta));
            if (cfg.numeric) r["G_numeric"] = io::json_value(numeric_or_unavailable(model, t));
            if (cfg.M) r["bound_report"] = io::to_json(bound_report(model, theta, *cfg.M, prior));
            rows.push_back(std::move(r));
        }
        io::Json j;
        j["model"] = model_json(model);
        j["rows"] = std::move(rows);
        out << j.dump(2) << '\n';
        return;
    }
    std::vector<std::string> header{"theta", "G"};
    if (cfg.numeric) header.emplace_back("G_numeric");
    if (cfg.M) header.insert(header.end(), {"F", "M", "H_M", "cr_bound", "van_trees_bound"});
    io::write_csv_row(out, header);
    for (double t : thetas) {
        const GateParam theta(t);
        std::vector<std::string> row{io::format_real(t), io::format_value(fisher_information(model, theta))};
        if (cfg.numeric) row.push_back(io::format_value(numeric_or_unavailable(model, t)));
        if (cfg.M) {
            const auto cells = io::bound_report_cells(bound_report(model, theta, *cfg.M, prior));
            row.insert(row.end(), cells.begin(), cells.end());
        }
        io::write_csv_row(out, row);
    }
}

inline void cmd_scan(const RunConfig& cfg, std::ostream& out) {
    if (cfg.bell) throw DomainError("scan applies to single-qubit settings only");
    const auto alphas = angle_grid(static_cast<std::size_t>(cfg.alpha_points));
    const auto betas = angle_grid(static_cast<std::size_t>(cfg.beta_points));
    std::vector<StabilityMap> maps;
    for (double t : cfg.theta_star_list) maps.push_back(stability_scan(GateParam(t), alphas, betas, cfg.phi, cfg.omega));
    if (cfg.format == "json") {
        io::Json scans = io::Json::array();
        for (const auto& m : maps) {
            io::Json s;
            s["theta_star"] = m.theta;
            s["alphas"] = io::json_reals(m.alphas);
            s["betas"] = io::json_reals(m.betas);
            io::Json g = io::Json::array();
            for (std::size_t i = 0; i < m.alphas.size(); ++i) {
                io::Json row = io::Json::array();
                for (std::size_t jb = 0; jb < m.betas.size(); ++jb) row.push_back(io::json_value(m.at(i, jb)));
                g.push_back(std::move(row));
            }
            s["G"] = std::move(g);
            scans.push_back(std::move(s));
        }
        io::Json j;
        j["phi"] = cfg.phi;
        j["omega"] = cfg.omega;
        j["scans"] = std::move(scans);
        out << j.dump(2) << '\n';
        return;
    }
    out << "theta_star,alpha,beta,G\n";
    for (const auto& m : maps)
        for (std::size_t i = 0; i < m.alphas.size(); ++i)
            for (std::size_t jb = 0; jb < m.betas.size(); ++jb)
                out << io::format_real(m.theta) << ',' << io::format_real(m.alphas[i]) << ','
                    << io::format_real(m.betas[jb]) << ',' << io::format_value(m.at(i, jb)) << '\n';
}

inline void emit_posterior(const RunConfig& cfg, std::ostream& out, const PosteriorGrid& post,
                           io::Json extra) {
    if (cfg.format == "json") {
        io::Json j = io::to_json(post);
        for (auto& [k, v] : extra.items()) j[k] = v;
        out << j.dump(2) << '\n';
        return;
    }
    io::write_posterior_csv(out, post);
}

inline void cmd_posterior(const RunConfig& cfg, std::ostream& out) {
    const Model model = build_model(cfg);
    const OutcomeCounts counts(cfg.counts);
    const Prior prior = Prior::uniform();
    const auto post = posterior_from_counts(model, counts, prior, cfg.grid_size);
    io::Json extra;
    extra["counts"] = counts.values();
    extra["M"] = counts.total();
    extra["bound_report"] =
        counts.total() > 0 ? io::to_json(bound_report(model, GateParam(post.mean), counts.total(), prior))
                           : io::Json(nullptr);
    emit_posterior(cfg, out, post, std::move(extra));
}

inline std::uint64_t required_M(const RunConfig& cfg) {
    if (!cfg.M) throw DomainError("--M is required");
    return *cfg.M;
}

inline void cmd_asymptotic(const RunConfig& cfg, std::ostream& out) {
    const Model model = build_model(cfg);
    const GateParam theta_star(cfg.theta_star);
    const std::uint64_t m = required_M(cfg);
    const auto post = asymptotic_posterior(model, theta_star, m, cfg.grid_size);
    io::Json extra;
    extra["theta_star"] = cfg.theta_star;
    extra["M"] = m;
    extra["bound_report"] = io::to_json(bound_report(model, theta_star, m, Prior::uniform()));
    const bool interior = cfg.theta_star > 0.0 && cfg.theta_star < pi;
    extra["generalized_fisher"] =
        interior ? io::Json(generalized_fisher_asymptotic(model, theta_star, m, cfg.grid_size))
                 : io::Json(nullptr);
    emit_posterior(cfg, out, post, std::move(extra));
}

inline ExperimentSpec experiment_spec(const RunConfig& cfg, std::uint64_t m) {
    return ExperimentSpec{build_model(cfg), GateParam(cfg.theta_star), m, cfg.replicates, cfg.seed,
                          cfg.grid_size};
}

inline void cmd_mc(const RunConfig& cfg, std::ostream& out) {
    const ExperimentSpec spec = experiment_spec(cfg, required_M(cfg));
    const auto results = run_experiment(spec, cfg.threads);
    const auto summary = summarize(results, spec.M);
    if (cfg.format == "json") {
        io::Json j;
        j["model"] = model_json(spec.model);
        j["theta_star"] = cfg.theta_star;
        j["M"] = spec.M;
        j["replicates"] = spec.replicates;
        j["seed"] = spec.seed;
        j["grid_size"] = spec.grid_size;
        io::Json rows = io::Json::array();
        for (const auto& r : results) rows.push_back(io::to_json(r));
        j["results"] = std::move(rows);
        j["summary"] = io::to_json(summary);
        out << j.dump(2) << '\n';
        return;
    }
    std::vector<std::string> header{"replicate"};
    for (std::size_t s = 0; s < spec.model.outcome_count(); ++s) header.push_back("m" + std::to_string(s));
    header.insert(header.end(), {"posterior_mean", "posterior_variance", "rescaled_variance", "mean_ratio",
                                 "bias", "boundary_degenerate"});
    io::write_csv_row(out, header);
    for (const auto& r : results) {
        std::vector<std::string> row{std::to_string(r.replicate)};
        for (auto m : r.counts.values()) row.push_back(std::to_string(m));
        row.insert(row.end(), {io::format_real(r.posterior_mean), io::format_real(r.posterior_variance),
                               io::format_real(r.rescaled_variance), io::format_real(r.mean_ratio),
                               io::format_real(r.bias), r.boundary_degenerate ? "1" : "0"});
        io::write_csv_row(out, row);
    }
}

inline void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    if (cfg.M_list.empty()) throw DomainError("--M-list is required");
    const ExperimentSpec base = experiment_spec(cfg, cfg.M_list.front());
    const auto rows = convergence_sweep(base, cfg.M_list, cfg.threads);
    if (cfg.format == "json") {
        io::Json j;
        j["model"] = model_json(base.model);
        j["theta_star"] = cfg.theta_star;
        j["replicates"] = cfg.replicates;
        j["seed"] = cfg.seed;
        io::Json a = io::Json::array();
        for (const auto& r : rows) a.push_back(io::to_json(r));
        j["rows"] = std::move(a);
        out << j.dump(2) << '\n';
        return;
    }
    out << "M,mean_ratio,rescaled_variance\n";
    for (const auto& r : rows)
        out << r.M << ',' << io::format_real(r.mean_ratio) << ',' << io::format_real(r.rescaled_variance) << '\n';
}

inline std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(output_dir_env); dir && *dir) return std::filesystem::path(dir) / p;
    }
    return p;
}

} // namespace detail

/// Parses `args` (program name first) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    RunConfig cfg;
    CLI::App app{"Bayesian estimation of one-parameter qubit gates", "qgate"};
    app.require_subcommand(1);

    auto add_model = [&](CLI::App* sub) {
        auto* single = sub->add_flag("--single", "single-qubit probe (default)");
        auto* bell = sub->add_flag("--bell", cfg.bell, "two-qubit Bell probe");
        single->excludes(bell);
        sub->add_option("--alpha", cfg.alpha, "probe polar angle");
        sub->add_option("--beta", cfg.beta, "measurement polar angle");
        sub->add_option("--phi", cfg.phi, "probe phase");
        sub->add_option("--omega", cfg.omega, "measurement phase");
        sub->add_option("--c", cfg.c, "Bell coefficients c0,c1,c2,c3")->delimiter(',');
        sub->add_flag("--normalize-c", cfg.normalize_c, "rescale --c to unit norm");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--degrees", cfg.degrees, "angles are given in degrees");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output,-o", cfg.output, "output path, - for stdout");
    };
    auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--replicates", cfg.replicates, "independent replicates")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "64-bit seed");
        sub->add_option("--threads", cfg.threads, "worker threads, 0 = all cores");
    };

    auto* probs = app.add_subcommand("probs", "outcome probabilities over a theta grid");
    add_model(probs);
    add_common(probs);
    probs->add_option("--grid", cfg.grid, "theta grid points")->check(CLI::Range(2, 1 << 24));

    auto* posterior = app.add_subcommand("posterior", "posterior from observed counts");
    add_model(posterior);
    add_common(posterior);
    posterior->add_option("--counts", cfg.counts, "m0,m1[,m2,m3]")->delimiter(',')->required();
    posterior->add_option("--grid-size", cfg.grid_size, "quadrature points");

    auto* asymptotic = app.add_subcommand("asymptotic", "asymptotic posterior P_M(theta|theta*)");
    add_model(asymptotic);
    add_common(asymptotic);
    asymptotic->add_option("--theta-star", cfg.theta_star, "true parameter")->required();
    asymptotic->add_option("--M", cfg.M, "number of measurements")->required();
    asymptotic->add_option("--grid-size", cfg.grid_size, "quadrature points");

    auto* fisher = app.add_subcommand("fisher", "Fisher information and bounds");
    add_model(fisher);
    add_common(fisher);
    fisher->add_option("--theta", cfg.theta, "single theta (default: grid over [0, pi])");
    fisher->add_option("--grid", cfg.grid, "theta grid points")->check(CLI::Range(2, 1 << 24));
    fisher->add_flag("--numeric", cfg.numeric, "add finite-difference column");
    fisher->add_option("--M", cfg.M, "add bound report for M measurements");

    auto* scan = app.add_subcommand("scan", "Fisher information over (alpha, beta)");
    add_common(scan);
    scan->add_option("--theta-star-list", cfg.theta_star_list, "gate parameters")->delimiter(',');
    scan->add_option("--alpha-points", cfg.alpha_points, "alpha grid points")->check(CLI::Range(2, 1 << 14));
    scan->add_option("--beta-points", cfg.beta_points, "beta grid points")->check(CLI::Range(2, 1 << 14));
    scan->add_option("--phi", cfg.phi, "probe phase");
    scan->add_option("--omega", cfg.omega, "measurement phase");

    auto* mc = app.add_subcommand("mc", "Monte Carlo simulated experiment");
    add_model(mc);
    add_common(mc);
    add_sampling(mc);
    mc->add_option("--theta-star", cfg.theta_star, "true parameter")->required();
    mc->add_option("--M", cfg.M, "measurements per replicate")->required();
    mc->add_option("--grid-size", cfg.grid_size, "quadrature points");

    auto* sweep = app.add_subcommand("sweep", "replicate averages over a list of M");
    add_model(sweep);
    add_common(sweep);
    add_sampling(sweep);
    sweep->add_option("--theta-star", cfg.theta_star, "true parameter")->required();
    sweep->add_option("--M-list", cfg.M_list, "increasing list of M")->delimiter(',')->required();
    sweep->add_option("--grid-size", cfg.grid_size, "quadrature points");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }
    for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();

    using Handler = std::function<void(const RunConfig&, std::ostream&)>;
    const std::map<std::string, Handler> handlers{
        {"probs", detail::cmd_probs},         {"posterior", detail::cmd_posterior},
        {"asymptotic", detail::cmd_asymptotic}, {"fisher", detail::cmd_fisher},
        {"scan", detail::cmd_scan},           {"mc", detail::cmd_mc},
        {"sweep", detail::cmd_sweep},
    };

    try {
        detail::to_radians(cfg);
        // Render fully before touching the output so failures leave no partial file.
        std::ostringstream buffer;
        handlers.at(cfg.subcommand)(cfg, buffer);
        if (cfg.output == "-") {
            out << buffer.str();
        } else {
            const auto path = detail::resolve_output(cfg.output);
            std::ofstream file(path, std::ios::binary);
            if (!file) throw DomainError("cannot open output file " + path.string());
            file << buffer.str();
            if (!file) throw DomainError("failed writing " + path.string());
        }
    } catch (const DomainError& e) {
        err << "qgate " << cfg.subcommand << ": configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const NumericError& e) {
        err << "qgate " << cfg.subcommand << ": numeric error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        err << "qgate " << cfg.subcommand << ": numeric error: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_ok;
}

} // namespace qgate::cli
