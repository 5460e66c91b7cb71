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

#ifndef FFQ_REPORT_HPP
#define FFQ_REPORT_HPP

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ffq {

using Json = nlohmann::ordered_json;

enum class Verdict { none, pass, fail };
std::string to_string(Verdict v);

/// Result of one experiment run.
struct ExperimentReport {
    std::string experiment;
    std::string provenance;  // the statement the prediction comes from
    Json parameters = Json::object();
    std::string mode;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    double empirical = 0;
    double predicted = 0;
    double abs_error = 0;
    double normalized_error = 0;
    std::string error_scale;

    Verdict verdict = Verdict::none;
    std::string verdict_rule;
    Json details = Json::object();
    std::vector<std::string> notes;
    double millis = 0;
};

/// Shortest of fixed or scientific notation with 12 significant digits,
/// independent of locale.
std::string format_double(double x);
/// x rounded to 12 significant digits.
double round12(double x);

/// JSON object mirroring the report; doubles rounded to 12 digits.
Json to_json(const ExperimentReport& r);

/// Sweep CSV schema.
const std::vector<std::string>& csv_columns();
std::string csv_header();
/// One row; `error` is the per-point error message (empty on success).
std::string csv_row(const std::string& command, const ExperimentReport& r, const std::string& error = {});
/// Row for a point that failed before producing a report.
std::string csv_error_row(const std::string& command, const Json& parameters, std::uint64_t seed,
                          const std::string& error);
std::string csv_escape(const std::string& field);

}  // namespace ffq

#endif  // FFQ_REPORT_HPP
