// Copyright 2026 The WarmState Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file io.hpp
 * CSV (RFC 4180, LF line endings) and JSON serialization of run results.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "trainer.hpp"

namespace warmstate::io {

using nlohmann::json;

/// Shortest round-trip decimal form of a double ("nan"/"inf" spelled out).
inline std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

/// Quotes a field when it contains a comma, quote, CR or LF.
inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header)
        : columns_(header.size()) {
        row(header);
    }

    void row(const std::vector<std::string> &fields) {
        if (fields.size() != columns_) {
            throw DimensionError("CSV row has " +
                                 std::to_string(fields.size()) +
                                 " fields, header has " +
                                 std::to_string(columns_));
        }
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) {
                out_ << ',';
            }
            out_ << csv_field(fields[i]);
        }
        out_ << '\n';
    }

    [[nodiscard]] std::string str() const { return out_.str(); }

  private:
    std::size_t columns_;
    std::ostringstream out_;
};

inline void write_file(const std::filesystem::path &path,
                       const std::string &content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " +
                          path.parent_path().string() + ": " + ec.message());
        }
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    f << content;
    if (!f) {
        throw IoError("failed writing " + path.string());
    }
}

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

/// JSON number, with non-finite values written as strings.
inline json number(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return format_double(v);
}

inline std::string dump(const json &j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Tracking

inline std::string tracking_csv(const RunLog &log) {
    CsvWriter w({"k", "x", "energy_learned", "e0", "e1", "fidelity_gs", "eps",
                 "iters_used", "grad_norm_final", "branch"});
    for (const auto &r : log.records) {
        w.row({std::to_string(r.k), format_double(r.x),
               format_double(r.energy_learned), format_double(r.e0),
               format_double(r.e1), format_double(r.fidelity_gs),
               format_double(r.eps), std::to_string(r.iters_used),
               format_double(r.grad_norm_final), to_string(r.branch)});
    }
    return w.str();
}

inline std::string test_points_csv(const RunLog &log) {
    CsvWriter w({"x", "energy", "e0", "e1", "fidelity_gs", "eps",
                 "semi_norm", "branch"});
    for (const auto &t : log.tests) {
        w.row({format_double(t.x), format_double(t.energy),
               format_double(t.e0), format_double(t.e1),
               format_double(t.fidelity_gs), format_double(t.eps),
               format_double(t.semi_norm), to_string(t.branch)});
    }
    return w.str();
}

inline std::string curve_csv(const std::vector<CurvePoint> &curve) {
    CsvWriter w({"x", "e0", "e1"});
    for (const auto &c : curve) {
        w.row({format_double(c.x), format_double(c.e0), format_double(c.e1)});
    }
    return w.str();
}

inline json to_json(const StepTelemetry &t) {
    return {{"max_step", number(t.max_step)},
            {"max_radius", number(t.max_radius)},
            {"step_ok", t.step_ok},
            {"radius_ok", t.radius_ok}};
}

inline json to_json(const TrainRecord &r, bool with_trace) {
    json j = {{"k", r.k},
              {"x", r.x},
              {"theta_star", r.theta_star},
              {"energy_learned", r.energy_learned},
              {"loss", r.loss},
              {"init_loss", r.init_loss},
              {"e0", r.e0},
              {"e1", r.e1},
              {"fidelity_gs", r.fidelity_gs},
              {"eps", r.eps},
              {"iters_used", r.iters_used},
              {"grad_norm_final", r.grad_norm_final},
              {"failed", r.failed},
              {"branch", to_string(r.branch)}};
    j["telemetry"] = r.telemetry ? to_json(*r.telemetry) : json(nullptr);
    if (with_trace) {
        j["trace"] = r.trace;
    }
    return j;
}

inline json to_json(const TestRecord &t) {
    return {{"x", t.x},
            {"energy", t.energy},
            {"e0", t.e0},
            {"e1", t.e1},
            {"fidelity_gs", t.fidelity_gs},
            {"eps", t.eps},
            {"semi_norm", t.semi_norm},
            {"error", t.error()},
            {"branch", to_string(t.branch)}};
}

inline json to_json(const RunLog &log, bool with_trace) {
    json records = json::array();
    for (const auto &r : log.records) {
        records.push_back(to_json(r, with_trace));
    }
    json tests = json::array();
    for (const auto &t : log.tests) {
        tests.push_back(to_json(t));
    }
    return {{"mode", to_string(log.schedule.mode)},
            {"xs", log.schedule.xs},
            {"records", records},
            {"tests", tests}};
}

// ---------------------------------------------------------------------------
// Variance scan

inline std::string variance_scan_csv(const std::vector<ScanBlock> &blocks) {
    CsvWriter w({"n", "L", "M", "r", "var", "se", "samples"});
    for (const auto &b : blocks) {
        for (const auto &r : b.rows) {
            w.row({std::to_string(r.n), std::to_string(r.L),
                   std::to_string(r.M), format_double(r.r),
                   format_double(r.var), format_double(r.se),
                   std::to_string(r.samples)});
        }
    }
    return w.str();
}

inline json to_json(const FitResult &f) {
    return {{"exponent", f.exponent},
            {"intercept", f.intercept},
            {"rss", f.rss},
            {"points", f.points}};
}

// ---------------------------------------------------------------------------
// Bounds

inline json to_json(const BoundInputs &in) {
    return {{"gap", in.gap},
            {"h_seminorm", in.h_seminorm},
            {"h1_seminorm", in.h1_seminorm},
            {"M", in.M},
            {"eps", in.eps},
            {"gamma", in.gamma},
            {"gamma_tilde", in.gamma_tilde},
            {"g_max_deriv", in.g_max_deriv},
            {"g_min", in.g_min},
            {"g_max", in.g_max}};
}

inline json to_json(const BoundReport &r) {
    json first = r.first_valid_gate ? json(*r.first_valid_gate) : json(nullptr);
    return {{"inputs", to_json(r.inputs)},
            {"step", r.step},
            {"radius", r.radius},
            {"max_step", number(r.max_step)},
            {"max_step_unbounded", r.step_unbounded},
            {"max_radius", r.max_radius},
            {"variance_lower", r.variance_lower},
            {"first_valid_gate", first},
            {"conditions_met", r.conditions_met()},
            {"conditions",
             {{"inputs_valid", r.conditions.inputs_valid},
              {"step_ok", r.conditions.step_ok},
              {"radius_ok", r.conditions.radius_ok},
              {"fidelity_ok", r.conditions.fidelity_ok},
              {"gap_open", r.conditions.gap_open},
              {"first_gate_ok", r.conditions.first_gate_ok}}}};
}

/// 64-bit FNV-1a of a string, as 16 hex digits.
inline std::string content_id(const std::string &s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

} // namespace warmstate::io
