/*
   Copyright 2026 The ffq Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ffq/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace ffq {

namespace {

Json round_doubles(const Json& j) {
    if (j.is_number_float()) return round12(j.get<double>());
    if (j.is_array() || j.is_object()) {
        Json out = j;
        for (auto it = out.begin(); it != out.end(); ++it) *it = round_doubles(*it);
        return out;
    }
    return j;
}

std::string param_text(const Json& params, const char* key) {
    if (!params.contains(key)) return {};
    const Json& v = params.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_double(v.get<double>());
    return v.dump();
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::none:
            return "none";
        case Verdict::pass:
            return "pass";
        case Verdict::fail:
            return "fail";
    }
    return "none";
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    const std::string s = format_double(x);
    double out = x;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

Json to_json(const ExperimentReport& r) {
    Json j = Json::object();
    j["experiment"] = r.experiment;
    j["provenance"] = r.provenance;
    j["parameters"] = round_doubles(r.parameters);
    j["mode"] = r.mode;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    const auto num = [](double x) -> Json {
        if (std::isfinite(x)) return round12(x);
        return nullptr;
    };
    j["empirical"] = num(r.empirical);
    j["predicted"] = num(r.predicted);
    j["abs_error"] = num(r.abs_error);
    j["normalized_error"] = num(r.normalized_error);
    j["error_scale"] = r.error_scale;
    j["verdict"] = to_string(r.verdict);
    j["verdict_rule"] = r.verdict_rule;
    j["details"] = round_doubles(r.details);
    j["notes"] = r.notes;
    j["millis"] = round12(r.millis);
    return j;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{"command", "q",          "n",         "h",
                                               "k",       "r",          "modulus",   "empirical",
                                               "predicted", "abs_error", "normalized_error", "samples",
                                               "seed",    "millis",     "error"};
    return cols;
}

std::string csv_header() {
    std::string s;
    for (std::size_t i = 0; i < csv_columns().size(); ++i) {
        if (i) s += ',';
        s += csv_columns()[i];
    }
    return s;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv_row(const std::string& command, const ExperimentReport& r, const std::string& error) {
    const Json& p = r.parameters;
    std::vector<std::string> f{command,
                               param_text(p, "q"),
                               param_text(p, "n"),
                               param_text(p, "h"),
                               param_text(p, "k"),
                               param_text(p, "r"),
                               param_text(p, "modulus"),
                               format_double(r.empirical),
                               format_double(r.predicted),
                               format_double(r.abs_error),
                               format_double(r.normalized_error),
                               std::to_string(r.samples),
                               std::to_string(r.seed),
                               format_double(r.millis),
                               error};
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ',';
        s += csv_escape(f[i]);
    }
    return s;
}

std::string csv_error_row(const std::string& command, const Json& parameters, std::uint64_t seed,
                          const std::string& error) {
    std::vector<std::string> f{command,
                               param_text(parameters, "q"),
                               param_text(parameters, "n"),
                               param_text(parameters, "h"),
                               param_text(parameters, "k"),
                               param_text(parameters, "r"),
                               param_text(parameters, "modulus"),
                               "", "", "", "", "", std::to_string(seed), "", error};
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ',';
        s += csv_escape(f[i]);
    }
    return s;
}

}  // namespace ffq
