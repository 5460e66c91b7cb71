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

// ffq: command-line front end for the experiments and primitives.

#include "ffq/dirichlet.hpp"
#include "ffq/error.hpp"
#include "ffq/experiments.hpp"
#include "ffq/factor.hpp"
#include "ffq/report.hpp"
#include "ffq/rmt.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace ffq;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerdict = 4;

struct Common {
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultBudget;
    int threads = 0;
    std::uint64_t mc_samples = 100'000;
    std::string format = "json";
    std::string out;
    bool no_timing = false;
};

/// Raw option text by name; "" means not given.
using Params = std::map<std::string, std::string>;

struct Command {
    const char* name;
    const char* summary;
    std::vector<const char*> options;
};

// clang-format off
const std::vector<Command> kExperiments = {
    {"prime-count", "count monic irreducibles of degree n [Prime Polynomial Theorem]", {"q", "n", "mode"}},
    {"interval-primes", "primes in short intervals I(A;h) [short-interval prime theorem, 3 <= h < n]", {"q", "n", "h", "mode", "samples"}},
    {"interval-cycles", "cycle structure in short intervals [short-interval cycle-type theorem]", {"q", "n", "h", "lambda", "mode", "samples"}},
    {"cycle-census", "factorization type of all of M_n [Cauchy's formula for cycle types]", {"q", "n", "backend"}},
    {"ap-primes", "primes in an arithmetic progression mod Q [prime theorem for progressions]", {"q", "n", "modulus", "residue"}},
    {"chowla", "Moebius autocorrelations [function-field Chowla theorem]", {"q", "n", "shifts", "exps", "mode", "samples"}},
    {"twin", "simultaneous primality of shifts [prime tuples count q^n/n^r]", {"q", "n", "shifts"}},
    {"divisor-corr", "shifted divisor correlations [additive divisor theorem]", {"q", "n", "r", "shift"}},
    {"joint-cycles", "cycle types of f and f+alpha [independence of shifted cycle types]", {"q", "n", "alpha", "lambda1", "lambda2"}},
    {"var-psi", "variance of primes in short intervals [variance theorem for Lambda]", {"q", "n", "h", "mode", "samples"}},
    {"var-ap", "variance of primes in progressions G(n;Q) [variance theorem for progressions]", {"q", "n", "modulus"}},
    {"var-lambda2", "variance of Lambda_2 in short intervals [Rodgers matrix integral]", {"q", "n", "h", "mode", "samples"}},
    {"var-mobius", "variance of the Moebius function in short intervals [Sym^n matrix integral]", {"q", "n", "h", "mode", "samples"}},
    {"var-divisor", "variance of d_k in short intervals [divisor variance theorem, I_k integrals]", {"q", "n", "h", "k", "mode", "samples"}},
    {"katz", "average of |tr Theta_chi^j|^2 over even primitive characters [Katz equidistribution]", {"q", "N", "j"}},
};
// clang-format on

const std::map<std::string, const char*> kOptionHelp = {
    {"q", "field size (prime)"},
    {"n", "degree"},
    {"h", "interval radius exponent"},
    {"k", "divisor function index"},
    {"r", "divisor function index for correlations"},
    {"N", "matrix size"},
    {"j", "trace power"},
    {"m", "coefficient index"},
    {"mode", "exhaustive | sampled (experiments); closed | monte_carlo (integrals); naive | dft (L-functions)"},
    {"samples", "sampled interval classes or Monte Carlo draws"},
    {"modulus", "modulus Q, coefficients lowest first, e.g. 0,1,1"},
    {"residue", "residue A"},
    {"shifts", "shifts separated by ';' (or comma-separated constants)"},
    {"exps", "comma-separated exponents in {1,2}"},
    {"lambda", "partition as counts of parts of size 1..n, e.g. 2,1,0,0"},
    {"lambda1", "partition for f"},
    {"lambda2", "partition for f + alpha"},
    {"alpha", "shift polynomial"},
    {"shift", "shift polynomial"},
    {"backend", "factorization | sieve (census); factorization | pellet (mobius)"},
    {"f", "polynomial"},
    {"chi", "character id"},
    {"filter", "all | even | even_primitive | primitive"},
    {"kind", "trace | divisor | rodgers"},
    {"command", "experiment to sweep"},
};

// ---------------------------------------------------------------------------
// parameter parsing

std::int64_t parse_int(const std::string& key, const std::string& text) {
    std::int64_t v = 0;
    const char* end = text.data() + text.size();
    const auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || p != end) throw Error(Errc::InvalidArgument, "--" + key + " expects an integer, got '" + text + "'");
    return v;
}

const std::string& need(const Params& p, const std::string& key) {
    const auto it = p.find(key);
    if (it == p.end() || it->second.empty()) throw Error(Errc::InvalidArgument, "missing --" + key);
    return it->second;
}

std::string get_or(const Params& p, const std::string& key, const std::string& fallback) {
    const auto it = p.find(key);
    return it == p.end() || it->second.empty() ? fallback : it->second;
}

int need_int(const Params& p, const std::string& key) { return static_cast<int>(parse_int(key, need(p, key))); }

std::uint64_t get_u64(const Params& p, const std::string& key, std::uint64_t fallback) {
    const std::string s = get_or(p, key, "");
    if (s.empty()) return fallback;
    const auto v = parse_int(key, s);
    if (v < 0) throw Error(Errc::InvalidArgument, "--" + key + " must be non-negative");
    return static_cast<std::uint64_t>(v);
}

Field need_field(const Params& p) {
    const auto q = parse_int("q", need(p, "q"));
    if (q < 2) throw Error(Errc::CompositeModulus, "q must be a prime");
    return Field(static_cast<std::uint64_t>(q));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::vector<Poly> parse_shifts(const Field& F, const std::string& text) {
    std::vector<Poly> out;
    const char sep = text.find(';') != std::string::npos ? ';' : ',';
    for (const auto& t : split(text, sep)) out.push_back(parse_poly(F, t));
    return out;
}

EnumerationMode parse_mode(const Params& p) {
    const std::string m = get_or(p, "mode", "exhaustive");
    if (m == "exhaustive") return EnumerationMode::exhaustive;
    if (m == "sampled") return EnumerationMode::sampled;
    throw Error(Errc::InvalidArgument, "--mode must be exhaustive or sampled");
}

RunOptions run_options(const Common& c) {
    RunOptions o;
    o.seed = c.seed;
    o.budget = c.budget;
    o.threads = c.threads;
    o.mc_samples = c.mc_samples;
    return o;
}

// ---------------------------------------------------------------------------
// experiments

ExperimentReport run_experiment(const std::string& cmd, const Params& p, const Common& c) {
    const RunOptions opt = run_options(c);
    const Field F = need_field(p);
    const std::uint64_t samples = get_u64(p, "samples", 0);
    if (cmd == "prime-count") {
        const std::string m = get_or(p, "mode", "exhaustive");
        if (m != "exhaustive" && m != "necklace") throw Error(Errc::InvalidArgument, "--mode must be exhaustive or necklace");
        return exp_prime_count(F, need_int(p, "n"), m == "necklace" ? PrimeCountMode::necklace : PrimeCountMode::exhaustive, opt);
    }
    if (cmd == "interval-primes") return exp_interval_primes(F, need_int(p, "n"), need_int(p, "h"), parse_mode(p), samples, opt);
    if (cmd == "interval-cycles") {
        return exp_interval_cycles(F, need_int(p, "n"), need_int(p, "h"), parse_cycle_type(need(p, "lambda")), parse_mode(p),
                                   samples, opt);
    }
    if (cmd == "cycle-census") {
        const std::string b = get_or(p, "backend", "factorization");
        if (b != "factorization" && b != "sieve") throw Error(Errc::InvalidArgument, "--backend must be factorization or sieve");
        return exp_cycle_census(F, need_int(p, "n"), b == "sieve" ? CensusBackend::sieve : CensusBackend::factorization, opt);
    }
    if (cmd == "ap-primes") {
        return exp_ap_primes(F, need_int(p, "n"), parse_poly(F, need(p, "modulus")), parse_poly(F, need(p, "residue")), opt);
    }
    if (cmd == "chowla") {
        ShiftTuple t;
        t.shifts = parse_shifts(F, need(p, "shifts"));
        const std::string e = get_or(p, "exps", "");
        if (e.empty()) {
            t.exponents.assign(t.shifts.size(), 1);
        } else {
            for (const auto& x : split(e, ',')) t.exponents.push_back(static_cast<int>(parse_int("exps", x)));
        }
        return exp_chowla(F, need_int(p, "n"), t, parse_mode(p), samples, opt);
    }
    if (cmd == "twin") return exp_twin(F, need_int(p, "n"), parse_shifts(F, need(p, "shifts")), opt);
    if (cmd == "divisor-corr") {
        return exp_divisor_corr(F, need_int(p, "n"), need_int(p, "r"), parse_poly(F, need(p, "shift")), opt);
    }
    if (cmd == "joint-cycles") {
        std::optional<CycleType> l1, l2;
        if (!get_or(p, "lambda1", "").empty()) l1 = parse_cycle_type(need(p, "lambda1"));
        if (!get_or(p, "lambda2", "").empty()) l2 = parse_cycle_type(need(p, "lambda2"));
        return exp_joint_cycles(F, need_int(p, "n"), parse_poly(F, need(p, "alpha")), l1, l2, opt);
    }
    if (cmd == "var-psi") return exp_var_psi(F, need_int(p, "n"), need_int(p, "h"), parse_mode(p), samples, opt);
    if (cmd == "var-ap") return exp_var_G(F, need_int(p, "n"), parse_poly(F, need(p, "modulus")), opt);
    if (cmd == "var-lambda2") return exp_var_lambda2(F, need_int(p, "n"), need_int(p, "h"), parse_mode(p), samples, opt);
    if (cmd == "var-mobius") return exp_var_mobius(F, need_int(p, "n"), need_int(p, "h"), parse_mode(p), samples, opt);
    if (cmd == "var-divisor") {
        return exp_var_divisor(F, need_int(p, "n"), need_int(p, "h"), need_int(p, "k"), parse_mode(p), samples, opt);
    }
    if (cmd == "katz") return exp_katz(F, need_int(p, "N"), need_int(p, "j"), opt);
    throw Error(Errc::InvalidArgument, "unknown experiment '" + cmd + "'");
}

// ---------------------------------------------------------------------------
// utilities

std::string fixed12(double x) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 12);
    return ec == std::errc{} ? std::string(buf, end) : "nan";
}

Json complex_json(Complex z) { return Json::array({round12(z.real()), round12(z.imag())}); }

Json run_factor(const Params& p) {
    const Field F = need_field(p);
    const Poly f = parse_poly(F, need(p, "f"));
    const Factorization fac = factor(f);
    Json j;
    j["f"] = format_poly(f);
    j["unit"] = fac.unit;
    j["factors"] = Json::array();
    for (const auto& fp : fac.factors) j["factors"].push_back(Json{{"prime", format_poly(fp.prime)}, {"multiplicity", fp.multiplicity}});
    if (f.degree() >= 1) {
        j["cycle_type"] = format_cycle_type(cycle_type(fac, f.degree()));
        j["mobius"] = mobius(fac);
        j["von_mangoldt"] = von_mangoldt(fac);
    }
    return j;
}

Json run_mobius(const Params& p) {
    const Field F = need_field(p);
    const Poly f = parse_poly(F, need(p, "f"));
    const std::string b = get_or(p, "backend", "factorization");
    if (b != "factorization" && b != "pellet") throw Error(Errc::InvalidArgument, "--backend must be factorization or pellet");
    return Json{{"f", format_poly(f)},
                {"backend", b},
                {"mobius", mobius(f, b == "pellet" ? MobiusBackend::pellet : MobiusBackend::factorization)}};
}

CharacterFilter parse_filter(const Params& p) {
    const std::string s = get_or(p, "filter", "all");
    if (s == "all") return CharacterFilter::all;
    if (s == "even") return CharacterFilter::even;
    if (s == "even_primitive") return CharacterFilter::even_primitive;
    if (s == "primitive") return CharacterFilter::primitive;
    throw Error(Errc::InvalidArgument, "--filter must be all, even, even_primitive or primitive");
}

std::string join(const std::vector<std::uint64_t>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    return s;
}

std::string run_characters(const Params& p, const Common& c) {
    const Field F = need_field(p);
    const GroupPtr G = DirichletGroup::build(parse_poly(F, need(p, "modulus")), c.budget);
    const auto chars = list_characters(G, parse_filter(p));
    const auto coeffs = l_coefficients_all(G, c.threads);
    const bool csv = c.format == "csv";
    std::string out = csv ? "id,exponents,even,primitive,l_degree,angles\n" : "";
    Json arr = Json::array();
    for (const auto& chi : chars) {
        std::string angles;
        Json jangles = Json::array();
        int degree = -1;
        if (!chi.is_trivial) {
            const LPolynomial L = l_polynomial_from_coeffs(chi, coeffs[chi.id]);
            degree = L.degree();
            for (std::size_t i = 0; i < L.angles.size(); ++i) {
                angles += (i ? ";" : "") + fixed12(L.angles[i]);
                jangles.push_back(round12(L.angles[i]));
            }
        }
        if (csv) {
            out += std::to_string(chi.id) + "," + join(chi.exponents, ';') + "," + (chi.is_even ? "1" : "0") + "," +
                   (chi.is_primitive ? "1" : "0") + "," + (degree < 0 ? "" : std::to_string(degree)) + "," + angles + "\n";
        } else {
            Json j{{"id", chi.id}, {"exponents", chi.exponents}, {"even", chi.is_even}, {"primitive", chi.is_primitive}};
            j["l_degree"] = degree < 0 ? Json(nullptr) : Json(degree);
            j["angles"] = jangles;
            arr.push_back(std::move(j));
        }
    }
    if (csv) return out;
    Json j{{"modulus", format_poly(G->modulus())}, {"order", G->order()}, {"characters", std::move(arr)}};
    return j.dump(2) + "\n";
}

DirichletCharacter need_character(const Params& p, const Common& c) {
    const Field F = need_field(p);
    const GroupPtr G = DirichletGroup::build(parse_poly(F, need(p, "modulus")), c.budget);
    return character_by_id(G, get_u64(p, "chi", 0));
}

Json run_l_function(const Params& p, const Common& c) {
    const DirichletCharacter chi = need_character(p, c);
    const std::string m = get_or(p, "mode", "naive");
    if (m != "naive" && m != "dft") throw Error(Errc::InvalidArgument, "--mode must be naive or dft");
    const LPolynomial L = l_polynomial(chi, m == "dft" ? CoefficientMode::dft : CoefficientMode::naive);
    Json j{{"modulus", format_poly(chi.group->modulus())},
           {"chi", chi.id},
           {"exponents", chi.exponents},
           {"even", chi.is_even},
           {"primitive", chi.is_primitive},
           {"degree", L.degree()}};
    j["coefficients"] = Json::array();
    for (Complex z : L.coeffs) j["coefficients"].push_back(complex_json(z));
    j["inverse_roots"] = Json::array();
    for (Complex z : L.inverse_roots) j["inverse_roots"].push_back(complex_json(z));
    j["trivial_zeros_removed"] = L.trivial_zeros_removed;
    j["angles"] = Json::array();
    for (double a : L.angles) j["angles"].push_back(round12(a));
    return j;
}

Json run_explicit_formula(const Params& p, const Common& c) {
    const DirichletCharacter chi = need_character(p, c);
    const int n = need_int(p, "n");
    const auto r = explicit_formula_check(n, chi, c.budget);
    return Json{{"modulus", format_poly(chi.group->modulus())}, {"chi", chi.id}, {"n", n},
                {"direct", complex_json(r.lhs)}, {"explicit_formula", complex_json(r.rhs)}, {"error", round12(r.error)}};
}

Json run_rmt_integral(const Params& p, const Common& c) {
    const std::string kind = get_or(p, "kind", "divisor");
    const std::string m = get_or(p, "mode", "closed");
    if (m != "closed" && m != "monte_carlo") throw Error(Errc::InvalidArgument, "--mode must be closed or monte_carlo");
    const bool mc = m == "monte_carlo";
    const int N = need_int(p, "N");
    const std::uint64_t samples = get_u64(p, "samples", c.mc_samples);
    Json j{{"kind", kind}, {"mode", m}, {"N", N}};
    McEstimate est;
    double closed = 0;
    if (kind == "trace") {
        const int n = need_int(p, "n");
        if (n < 0 || N < 1) throw Error(Errc::InvalidArgument, "need n >= 0 and N >= 1");
        j["n"] = n;
        closed = n == 0 ? static_cast<double>(N) * N : std::min(n, N);
        if (mc) {
            est = mc_integral([n](const UnitarySpectrum& s) {
                Complex t = 0;
                for (double a : s.angles) t += std::polar(1.0, n * a);
                return std::norm(t);
            }, N, samples, c.seed, c.threads);
        }
    } else if (kind == "divisor") {
        const int k = need_int(p, "k"), mm = need_int(p, "m");
        j["k"] = k;
        j["m"] = mm;
        if (mc) {
            est = divisor_integral_mc(k, mm, N, samples, c.seed, c.threads);
        } else {
            closed = divisor_integral_closed(k, mm, N);
        }
    } else if (kind == "rodgers") {
        const int n = need_int(p, "n");
        j["n"] = n;
        if (mc) {
            est = rodgers_mc(n, N, samples, c.seed, c.threads);
        } else {
            closed = rodgers_closed(n, N);
        }
    } else {
        throw Error(Errc::InvalidArgument, "--kind must be trace, divisor or rodgers");
    }
    if (mc) {
        j["value"] = round12(est.mean);
        j["stderr"] = round12(est.stderr_);
        j["samples"] = est.samples;
        j["seed"] = c.seed;
    } else {
        j["value"] = round12(closed);
    }
    return j;
}

Json run_mobius_decomposition(const Params& p, const Common& c) {
    const Field F = need_field(p);
    const int n = need_int(p, "n"), h = need_int(p, "h");
    const auto d = check_mobius_decomposition(F, n, h, run_options(c));
    Json via = Json::array();
    for (double v : d.via_characters) via.push_back(round12(v));
    return Json{{"q", F.q()}, {"n", n}, {"h", h}, {"direct", d.direct}, {"via_characters", std::move(via)},
                {"max_error", round12(d.max_error)}};
}

// ---------------------------------------------------------------------------
// sweep

const std::vector<std::string> kSweepKeys = {"q", "n", "h", "k", "r", "N", "j"};

/// "3,5,7", "3..7" or a mix; "a..b" with b < a is empty.
std::vector<std::string> expand_list(const std::string& key, const std::string& text) {
    std::vector<std::string> out;
    for (const auto& tok : split(text, ',')) {
        if (tok.empty()) continue;
        const auto dots = tok.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::to_string(parse_int(key, tok)));
            continue;
        }
        const auto a = parse_int(key, tok.substr(0, dots)), b = parse_int(key, tok.substr(dots + 2));
        if (b - a > 100000) throw Error(Errc::InvalidArgument, "--" + key + " range too long");
        for (auto v = a; v <= b; ++v) out.push_back(std::to_string(v));
    }
    return out;
}

std::string run_sweep(const Params& p, const std::map<std::string, bool>& given, const Common& c) {
    const std::string cmd = need(p, "command");
    const auto known = std::find_if(kExperiments.begin(), kExperiments.end(), [&](const Command& e) { return cmd == e.name; });
    if (known == kExperiments.end()) throw Error(Errc::InvalidArgument, "unknown experiment '" + cmd + "'");

    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    for (const auto& key : kSweepKeys) {
        if (given.at(key)) axes.emplace_back(key, expand_list(key, p.at(key)));
    }
    std::string out = csv_header() + "\n";
    for (const auto& [key, values] : axes) {
        if (values.empty()) return out;
    }
    std::vector<std::size_t> pos(axes.size(), 0);
    while (true) {
        Params point = p;
        Json params;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            point[axes[a].first] = axes[a].second[pos[a]];
            params[axes[a].first] = parse_int(axes[a].first, axes[a].second[pos[a]]);
        }
        try {
            ExperimentReport r = run_experiment(cmd, point, c);
            if (c.no_timing) r.millis = 0;
            out += csv_row(cmd, r) + "\n";
        } catch (const std::exception& e) {
            out += csv_error_row(cmd, params, c.seed, e.what()) + "\n";
        }
        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++pos[a] < axes[a].second.size()) break;
            pos[a] = 0;
            if (a == 0) return out;
        }
        if (axes.empty()) return out;
    }
}

// ---------------------------------------------------------------------------

void write_output(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error(Errc::InvalidArgument, "cannot open --out file '" + c.out + "'");
    f << text;
}

std::string render_report(const std::string& cmd, ExperimentReport r, const Common& c) {
    if (c.no_timing) r.millis = 0;
    if (c.format == "csv") return csv_header() + "\n" + csv_row(cmd, r) + "\n";
    return to_json(r).dump(2) + "\n";
}

int exit_code_for(const Error& e) { return e.code() == Errc::BudgetExceeded ? kExitBudget : kExitPrecondition; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ffq: arithmetic statistics of polynomials over finite fields, checked against their q -> infinity\n"
        "limits and random matrix predictions."};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_help_all_flag("--help-all", "Show help for every command");

    Common common;
    app.add_option("--seed", common.seed, "master random seed")->capture_default_str();
    app.add_option("--budget", common.budget, "maximum number of polynomials one enumeration may visit")->capture_default_str();
    app.add_option("--threads", common.threads, "worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--mc-samples", common.mc_samples, "Haar samples for Monte Carlo predictions")->capture_default_str();
    app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--out", common.out, "write output to this file instead of stdout");
    app.add_flag("--no-timing", common.no_timing, "report millis as 0 so repeated runs are byte-identical");

    std::map<std::string, Params> params;
    std::map<std::string, std::map<std::string, CLI::Option*>> options;
    auto add_command = [&](const std::string& name, const std::string& summary, const std::vector<const char*>& keys,
                           const std::string& group) {
        CLI::App* sub = app.add_subcommand(name, summary);
        sub->set_help_flag("--help", "Print this help message and exit");
        sub->group(group);
        auto& p = params[name];
        for (const char* k : keys) options[name][k] = sub->add_option(std::string("--") + k, p[k], kOptionHelp.at(k));
        return sub;
    };

    for (const auto& e : kExperiments) add_command(e.name, e.summary, e.options, "Experiments");
    add_command("factor", "factor a polynomial; report cycle type, mu and Lambda", {"q", "f"}, "Primitives");
    add_command("mobius", "Moebius function by factorization or by Pellet's discriminant formula", {"q", "f", "backend"}, "Primitives");
    add_command("characters", "list Dirichlet characters mod Q with their L-function zero angles", {"q", "modulus", "filter"},
                "Primitives");
    add_command("l-function", "L(u, chi) coefficients and inverse roots", {"q", "modulus", "chi", "mode"}, "Primitives");
    add_command("explicit-formula", "M(n; mu chi) directly and from the zeros of L(u, chi)", {"q", "modulus", "chi", "n"},
                "Primitives");
    add_command("mobius-decomposition", "interval sums of mu against their even-character expansion", {"q", "n", "h"},
                "Primitives");
    add_command("rmt-integral", "matrix integrals over U(N): closed form or Monte Carlo", {"kind", "n", "k", "m", "N", "mode", "samples"},
                "Primitives");
    {
        std::vector<const char*> keys = {"command", "q", "n", "h", "k", "r", "N", "j", "mode", "samples", "modulus",
                                         "residue", "shifts", "exps", "lambda", "lambda1", "lambda2", "alpha", "shift", "backend"};
        CLI::App* sweep = add_command("sweep", "run an experiment over lists or ranges (a..b) of q, n, h, k, r, N, j; CSV output",
                                      keys, "Batch");
        sweep->footer("Each point becomes one CSV row; a failing point fills the error column and the sweep continues.");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitPrecondition;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    const Params& p = params[cmd];
    try {
        if (cmd == "sweep") {
            std::map<std::string, bool> given;
            for (const auto& key : kSweepKeys) given[key] = options[cmd][key]->count() > 0;
            write_output(common, run_sweep(p, given, common));
            return 0;
        }
        const bool is_experiment =
            std::any_of(kExperiments.begin(), kExperiments.end(), [&](const Command& e) { return cmd == e.name; });
        if (is_experiment) {
            const ExperimentReport r = run_experiment(cmd, p, common);
            write_output(common, render_report(cmd, r, common));
            return r.verdict == Verdict::fail ? kExitVerdict : 0;
        }
        if (cmd == "characters") {
            write_output(common, run_characters(p, common));
            return 0;
        }
        Json j;
        if (cmd == "factor") j = run_factor(p);
        if (cmd == "mobius") j = run_mobius(p);
        if (cmd == "l-function") j = run_l_function(p, common);
        if (cmd == "explicit-formula") j = run_explicit_formula(p, common);
        if (cmd == "mobius-decomposition") j = run_mobius_decomposition(p, common);
        if (cmd == "rmt-integral") j = run_rmt_integral(p, common);
        write_output(common, j.dump(2) + "\n");
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
