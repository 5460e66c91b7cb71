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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Optional arguments select criteria by number.

#include "ffq/dirichlet.hpp"
#include "ffq/ensembles.hpp"
#include "ffq/error.hpp"
#include "ffq/experiments.hpp"
#include "ffq/factor.hpp"
#include "ffq/rmt.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ffq;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (pass) detail.clear();
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
    void note(const std::string& s) {
        if (!pass) return;
        if (!detail.empty()) detail += "; ";
        detail += s;
    }
};

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
};

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

std::string verdict_detail(const ExperimentReport& r) {
    return r.experiment + " empirical " + num(r.empirical) + " vs " + num(r.predicted) + " (" + r.verdict_rule + ")";
}

void require_pass(Outcome& o, const ExperimentReport& r) {
    o.require(r.verdict == Verdict::pass, verdict_detail(r) + " -> " + to_string(r.verdict));
    if (r.verdict == Verdict::pass) o.note(r.experiment + " " + num(r.empirical) + " vs " + num(r.predicted));
}

// ---------------------------------------------------------------------------

Outcome exact_identities() {
    Outcome o;
    for (std::uint64_t q : {3, 5, 7}) {
        const Field F(q);
        for (int n = 1; n <= 6; ++n) {
            std::int64_t lambda = 0, mu = 0, lambda2 = 0, squarefree = 0;
            std::uint64_t dk[5] = {0, 0, 0, 0, 0};
            for (const Poly& f : enumerate_monic(F, n)) {
                const Factorization fac = factor(f);
                lambda += von_mangoldt(fac);
                const int m = mobius(fac);
                mu += m;
                squarefree += m != 0 ? 1 : 0;
                lambda2 += von_mangoldt2(f);
                for (int k = 1; k <= 4; ++k) dk[k] += divisor_k(fac, k);
            }
            const std::int64_t qn = static_cast<std::int64_t>(ipow(q, n));
            const std::string at = " at q=" + std::to_string(q) + ", n=" + std::to_string(n);
            o.require(lambda == qn, "sum Lambda" + at);
            o.require(mu == (n == 1 ? -static_cast<std::int64_t>(q) : 0), "sum mu" + at);
            o.require(lambda2 == (2 * n - 1) * qn, "sum Lambda_2" + at);
            o.require(squarefree == (n == 1 ? qn : qn - qn / static_cast<std::int64_t>(q)), "squarefree count" + at);
            for (int k = 1; k <= 4; ++k) {
                const auto b = binomial(static_cast<std::uint64_t>(n + k - 1), static_cast<std::uint64_t>(k - 1));
                o.require(dk[k] == b * static_cast<std::uint64_t>(qn), "sum d_" + std::to_string(k) + at);
            }
        }
    }
    o.note("q in {3,5,7}, n <= 6, k <= 4");
    return o;
}

Outcome pellet() {
    Outcome o;
    std::uint64_t checked = 0;
    for (std::uint64_t q : {5, 7}) {
        const Field F(q);
        for (int n = 1; n <= 4; ++n) {
            for (const Poly& f : enumerate_monic(F, n)) {
                o.require(mobius(f, MobiusBackend::factorization) == mobius(f, MobiusBackend::pellet), "mismatch at " + format_poly(f));
                ++checked;
            }
        }
    }
    o.note(std::to_string(checked) + " polynomials");
    return o;
}

Outcome prime_counts() {
    Outcome o;
    int runs = 0;
    for (std::uint64_t q : {2, 3, 5, 7}) {
        for (int n = 1; n <= 8; ++n) {
            if (ipow(q, n) > kDefaultBudget) continue;
            const auto r = exp_prime_count(Field(q), n);
            const bool agree = r.details["routes_agree"].get<bool>();
            const std::string at = " at q=" + std::to_string(q) + ", n=" + std::to_string(n);
            o.require(agree, "exhaustive count differs from necklace" + at);
            o.require(r.verdict == Verdict::pass, "outside 2 q^{n/2}" + at);
            ++runs;
        }
    }
    o.note(std::to_string(runs) + " (q, n) pairs");
    return o;
}

Outcome census() {
    Outcome o;
    require_pass(o, exp_cycle_census(Field(31), 4));
    return o;
}

Outcome interval_primes() {
    Outcome o;
    require_pass(o, exp_interval_primes(Field(31), 5, 3, EnumerationMode::sampled, 5));
    return o;
}

Outcome chowla() {
    Outcome o;
    const Field F(101);
    require_pass(o, exp_chowla(F, 2, ShiftTuple{{Poly::constant(F, 0), Poly::constant(F, 1)}, {1, 1}}));
    const Field F3(3);
    for (int n = 2; n <= 5; ++n) {
        const auto r = exp_chowla(F3, n, ShiftTuple{{Poly::constant(F3, 0)}, {1}});
        o.require(r.empirical == 0 && r.verdict == Verdict::pass, "sum mu != 0 at q=3, n=" + std::to_string(n));
    }
    return o;
}

Outcome divisor_corr() {
    Outcome o;
    const Field F(101);
    const auto r = exp_divisor_corr(F, 3, 2, Poly::constant(F, 1));
    o.require(r.predicted == 16, "prediction is not 16");
    o.require(std::abs(r.empirical - 16) <= 1, "|mean - 16| = " + num(std::abs(r.empirical - 16)));
    require_pass(o, r);
    return o;
}

Outcome joint() {
    Outcome o;
    const Field F(31);
    const auto r = exp_joint_cycles(F, 3, Poly::constant(F, 1), {}, {});
    o.require(r.details["pairs"].get<int>() == 9, "expected 9 partition pairs");
    require_pass(o, r);
    return o;
}

Outcome var_psi() {
    Outcome o;
    const auto r = exp_var_psi(Field(37), 5, 0, EnumerationMode::exhaustive, 0);
    o.require(r.details["exact_total"].get<bool>(), "mean of psi is not exactly H");
    require_pass(o, r);
    return o;
}

Outcome var_mobius() {
    Outcome o;
    const auto r = exp_var_mobius(Field(37), 5, 0, EnumerationMode::exhaustive, 0);
    o.require(r.details["exact_total"].get<bool>(), "mean of N_mu is not exactly 0");
    require_pass(o, r);
    return o;
}

Outcome var_ap() {
    Outcome o;
    const Field F(31);
    require_pass(o, exp_var_G(F, 4, parse_poly(F, "0,2,3,1")));
    return o;
}

Outcome var_divisor() {
    Outcome o;
    const auto zero = exp_var_divisor(Field(5), 6, 3, 2, EnumerationMode::exhaustive, 0);
    o.require(zero.verdict == Verdict::pass && zero.empirical == 0, "Delta_2 does not vanish at q=5, n=6, h=3");
    const auto r = exp_var_divisor(Field(31), 9, 2, 2, EnumerationMode::sampled, 2000);
    o.require(r.predicted == 4, "I_2(9;5) != 4");
    require_pass(o, r);
    return o;
}

Outcome l_functions() {
    Outcome o;
    std::uint64_t count = 0;
    for (std::uint64_t q : {3, 5, 7}) {
        const Field F(q);
        const double sq = std::sqrt(static_cast<double>(q));
        for (int m = 1; m <= 5; ++m) {
            const auto G = DirichletGroup::build(Poly::monomial(F, m));
            const auto coeffs = l_coefficients_all(G);
            const std::string at = " mod x^" + std::to_string(m) + ", q=" + std::to_string(q);
            for (const auto& chi : list_characters(G, CharacterFilter::all)) {
                if (chi.is_trivial) continue;
                ++count;
                const LPolynomial L = l_polynomial_from_coeffs(chi, coeffs[chi.id]);
                o.require(L.degree() <= m - 1, "deg L > m-1" + at);
                if (chi.is_even) o.require(std::abs(L.evaluate(1.0)) <= 1e-6, "|L(1)| > 1e-6" + at);
                if (chi.is_primitive) {
                    std::vector<Complex> roots = L.inverse_roots;
                    if (chi.is_even && !roots.empty()) {
                        auto it = std::min_element(roots.begin(), roots.end(), [](Complex a, Complex b) {
                            return std::abs(a - 1.0) < std::abs(b - 1.0);
                        });
                        roots.erase(it);
                    }
                    for (Complex a : roots) o.require(std::abs(std::abs(a) - sq) <= 1e-6, "|alpha| != sqrt q" + at);
                }
                if (m == 2 && chi.is_even) {
                    o.require(L.coeffs.size() == 2 && std::abs(L.coeffs[0] - 1.0) <= 1e-9 && std::abs(L.coeffs[1] + 1.0) <= 1e-9,
                              "L != 1 - u" + at);
                }
            }
        }
    }
    o.note(std::to_string(count) + " nontrivial characters");
    return o;
}

Outcome explicit_formula() {
    Outcome o;
    const Field F(5);
    const auto G = DirichletGroup::build(Poly::monomial(F, 5));
    const auto chars = list_characters(G, CharacterFilter::even_primitive);
    const auto coeffs = l_coefficients_all(G);
    std::vector<std::vector<std::int64_t>> counts;
    for (int n = 0; n <= 6; ++n) counts.push_back(weighted_unit_counts(*G, n, Weight::mobius()));
    double worst = 0;
    for (const auto& chi : chars) {
        const LPolynomial L = l_polynomial_from_coeffs(chi, coeffs[chi.id]);
        std::vector<Complex> M;
        for (int n = 0; n <= 6; ++n) {
            const auto chk = explicit_formula_check(n, chi, L, counts[static_cast<std::size_t>(n)]);
            const double tol = 1e-6 * std::pow(5.0, n / 2.0);
            o.require(chk.error <= tol, "explicit formula off at n=" + std::to_string(n));
            worst = std::max(worst, chk.error / tol);
            M.push_back(chk.lhs);
        }
        // L(u) * sum_n M(n; mu chi) u^n = 1 up to degree 6
        for (int d = 0; d <= 6; ++d) {
            Complex s = 0;
            for (int j = 0; j <= d && j <= L.degree(); ++j) s += L.coeffs[static_cast<std::size_t>(j)] * M[static_cast<std::size_t>(d - j)];
            const double tol = 1e-6 * std::pow(5.0, d / 2.0);
            o.require(std::abs(s - (d == 0 ? 1.0 : 0.0)) <= tol, "generating identity off at degree " + std::to_string(d));
        }
    }
    o.note(std::to_string(chars.size()) + " characters, worst error / tolerance " + num(worst));
    return o;
}

Outcome katz() {
    Outcome o;
    RunOptions opt;
    opt.mc_samples = 100'000;
    const auto r = exp_katz(Field(11), 3, 1, opt);
    o.require(std::abs(r.empirical - 1) <= 0.35, "average " + num(r.empirical) + " not within 0.35 of 1");
    o.require(std::abs(r.details["haar_reference"].get<double>() - 1) <= 3 * r.details["haar_stderr"].get<double>(),
              "Haar reference not within 3 sigma of 1");
    require_pass(o, r);
    return o;
}

Outcome rmt() {
    Outcome o;
    constexpr std::uint64_t kSamples = 100'000;
    int checks = 0;
    double worst = 0;
    auto check = [&](const McEstimate& e, double exact, const std::string& what) {
        const double z = e.stderr_ > 0 ? std::abs(e.mean - exact) / e.stderr_ : (e.mean == exact ? 0 : 1e9);
        worst = std::max(worst, z);
        ++checks;
        o.require(z <= 3, what + ": " + num(e.mean) + " vs " + num(exact) + " (" + num(z) + " sigma)");
    };
    for (int N = 1; N <= 6; ++N) {
        std::vector<SpectrumStatistic> stats;
        for (int n = 1; n <= 6; ++n) {
            stats.push_back([n](const UnitarySpectrum& s) {
                Complex t = 0;
                for (double a : s.angles) t += std::polar(1.0, n * a);
                return std::norm(t);
            });
        }
        for (int m = 0; m <= N && N <= 5; ++m) {
            stats.push_back([m](const UnitarySpectrum& s) { return divisor_statistic(s, 2, m); });
        }
        const auto est = mc_integrals(stats, N, kSamples, 1000 + static_cast<std::uint64_t>(N));
        for (int n = 1; n <= 6; ++n) {
            check(est[static_cast<std::size_t>(n - 1)], std::min(n, N), "|tr U^" + std::to_string(n) + "|^2 on U(" + std::to_string(N) + ")");
        }
        for (int m = 0; m <= N && N <= 5; ++m) {
            check(est[static_cast<std::size_t>(6 + m)], static_cast<double>(binomial(static_cast<std::uint64_t>(m + 3), 3)),
                  "I_2(" + std::to_string(m) + ";" + std::to_string(N) + ")");
        }
    }
    for (int n : {6, 7}) {
        double sum = 0;
        for (int d = 1; d <= 3; ++d) sum += (2 * d - 1) * (2 * d - 1);
        o.require(rodgers_closed(n, 3) == sum, "Rodgers closed form at n=" + std::to_string(n));
        check(rodgers_mc(n, 3, kSamples, 2000 + static_cast<std::uint64_t>(n)), sum, "Rodgers (" + std::to_string(n) + ",3)");
    }
    o.note(std::to_string(checks) + " Monte Carlo checks, worst " + num(worst) + " sigma");
    return o;
}

Outcome bijection() {
    Outcome o;
    int pairs = 0;
    for (std::uint64_t q : {2, 3, 5}) {
        const Field F(q);
        for (int n = 2; n <= 5; ++n) {
            for (int h = 0; h <= n - 2; ++h) {
                for (const Poly& B : enumerate_monic(F, n - h - 1)) {
                    ++pairs;
                    o.require(verify_interval_ap_bijection(interval_to_ap(B, n, h)),
                              "image mismatch at q=" + std::to_string(q) + ", n=" + std::to_string(n) + ", h=" + std::to_string(h));
                }
            }
        }
    }
    o.note(std::to_string(pairs) + " interval/progression pairs");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "exact identities over M_n", 10, exact_identities},
        {2, "Pellet's formula against factorization", 30, pellet},
        {3, "prime counts: sieve, necklace formula, PPT scale", 120, prime_counts},
        {4, "cycle census q=31, n=4", 120, census},
        {5, "primes in short intervals q=31, n=5, h=3", 180, interval_primes},
        {6, "Chowla correlations q=101, n=2", 120, chowla},
        {7, "additive divisor problem q=101, n=3, r=2", 180, divisor_corr},
        {8, "independence of shifted cycle types q=31, n=3", 60, joint},
        {9, "variance of Lambda in short intervals q=37, n=5, h=0", 600, var_psi},
        {10, "variance of mu in short intervals q=37, n=5, h=0", 600, var_mobius},
        {11, "variance of primes in progressions q=31, n=4", 120, var_ap},
        {12, "variance of d_2 in short intervals", 600, var_divisor},
        {13, "L-functions mod x^m, m <= 5", 180, l_functions},
        {14, "explicit formula and generating identity q=5, x^5", 180, explicit_formula},
        {15, "Katz equidistribution q=11, N=3", 600, katz},
        {16, "matrix integrals: closed forms against Monte Carlo", 300, rmt},
        {17, "short interval / progression bijection", 60, bijection},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds) {
            o.pass = false;
            o.detail = "time limit " + num(c.limit_seconds) + " s exceeded; " + o.detail;
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %2d  %s  [%.1f s]  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
