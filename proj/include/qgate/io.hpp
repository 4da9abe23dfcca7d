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

// CSV and JSON encodings of library results.
//
// CSV: comma separated, one header row, LF line endings, reals with 17
// significant digits. Non-finite values are written as the strings "inf",
// "-inf", "nan" and "indeterminate", in JSON as well as CSV.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "qgate/bayes.hpp"
#include "qgate/bounds.hpp"
#include "qgate/extended_value.hpp"
#include "qgate/montecarlo.hpp"

namespace qgate::io {

using Json = nlohmann::ordered_json;

inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_value(const ExtendedValue& v) {
    switch (v.kind()) {
    case ExtendedValue::Kind::finite: return format_real(v.value());
    case ExtendedValue::Kind::infinite: return "inf";
    default: return "indeterminate";
    }
}

inline Json json_real(double v) {
    if (std::isfinite(v)) return v;
    return format_real(v);
}

inline Json json_value(const ExtendedValue& v) {
    if (v.is_finite()) return v.value();
    return format_value(v);
}

inline Json json_reals(std::span<const double> xs) {
    Json a = Json::array();
    for (double x : xs) a.push_back(json_real(x));
    return a;
}

inline void write_csv_row(std::ostream& os, std::span<const std::string> cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

inline Json to_json(const BoundReport& r) {
    Json j;
    j["theta"] = r.theta;
    j["G"] = json_value(r.G);
    j["F"] = r.F;
    j["M"] = r.M;
    j["H_M"] = json_value(r.H_M);
    j["cr_bound"] = json_value(r.cr_bound);
    j["van_trees_bound"] = json_value(r.van_trees_bound);
    return j;
}

inline std::vector<std::string> bound_report_cells(const BoundReport& r) {
    return {format_real(r.F), std::to_string(r.M), format_value(r.H_M), format_value(r.cr_bound),
            format_value(r.van_trees_bound)};
}

inline Json to_json(const PosteriorGrid& p) {
    Json j;
    j["grid"] = json_reals(p.grid);
    j["density"] = json_reals(p.density);
    j["log_density"] = json_reals(p.log_density);
    j["mean"] = p.mean;
    j["variance"] = p.variance;
    j["argmax"] = p.argmax;
    return j;
}

inline void write_posterior_csv(std::ostream& os, const PosteriorGrid& p) {
    os << "theta,density,log_density\n";
    for (std::size_t i = 0; i < p.grid.size(); ++i)
        os << format_real(p.grid[i]) << ',' << format_real(p.density[i]) << ','
           << format_real(p.log_density[i]) << '\n';
}

inline Json to_json(const ExperimentResult& r) {
    Json j;
    j["replicate"] = r.replicate;
    j["counts"] = r.counts.values();
    j["posterior_mean"] = r.posterior_mean;
    j["posterior_variance"] = r.posterior_variance;
    j["rescaled_variance"] = json_real(r.rescaled_variance);
    j["mean_ratio"] = json_real(r.mean_ratio);
    j["bias"] = r.bias;
    j["boundary_degenerate"] = r.boundary_degenerate;
    return j;
}

inline Json to_json(const ExperimentSummary& s) {
    Json j;
    j["M"] = s.M;
    j["replicates"] = s.replicates;
    j["mean_ratio"] = json_real(s.mean_ratio);
    j["rescaled_variance"] = json_real(s.rescaled_variance);
    j["empirical_bias"] = s.empirical_bias;
    j["posterior_mean"] = s.posterior_mean;
    j["posterior_variance"] = s.posterior_variance;
    j["boundary_degenerate"] = s.boundary_degenerate;
    return j;
}

} // namespace qgate::io
