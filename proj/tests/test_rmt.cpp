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

#include "ffq/ensembles.hpp"
#include "ffq/error.hpp"
#include "ffq/rmt.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace ffq;

namespace {

// coefficients of prod (1 + u z_i), expanded directly
std::vector<Complex> secular_direct(const std::vector<Complex>& z) {
    std::vector<Complex> c{1};
    for (const Complex& zi : z) {
        c.push_back(0);
        for (std::size_t j = c.size() - 1; j > 0; --j) c[j] += zi * c[j - 1];
    }
    return c;
}

// prod 1/(1 - u z_i) truncated at degree m, multiplying geometric series
std::vector<Complex> homogeneous_direct(const std::vector<Complex>& z, int m) {
    std::vector<Complex> c(static_cast<std::size_t>(m) + 1, Complex(0));
    c[0] = 1;
    for (const Complex& zi : z) {
        for (std::size_t j = 1; j < c.size(); ++j) c[j] += zi * c[j - 1];
    }
    return c;
}

}  // namespace

TEST_CASE("trace functionals of the identity") {
    const UnitarySpectrum id{4, {0, 0, 0, 0}};
    const auto t = trace_functionals(id, 6);
    REQUIRE(t.elementary.size() == 5);
    for (int j = 0; j <= 4; ++j) CHECK(std::abs(t.elementary[j] - static_cast<double>(binomial(4, j))) < 1e-12);
    for (int n = 0; n <= 6; ++n) CHECK(std::abs(t.homogeneous[n] - static_cast<double>(binomial(n + 3, 3))) < 1e-9);
    for (int j = 0; j <= 6; ++j) CHECK(std::abs(t.power[j] - 4.0) < 1e-12);
}

TEST_CASE("Newton identities agree with direct expansion") {
    Rng rng = derive_rng(5, 0);
    for (int s = 0; s < 100; ++s) {
        const int N = 1 + s % 8;
        const UnitarySpectrum spec = haar_spectrum(N, rng);
        REQUIRE(spec.angles.size() == static_cast<std::size_t>(N));
        for (double a : spec.angles) REQUIRE((a >= 0 && a < 2 * std::numbers::pi));
        const auto z = spec.eigenvalues();
        const auto t = trace_functionals(spec, 10);
        const auto e = secular_direct(z);
        REQUIRE(t.elementary.size() == e.size());
        for (std::size_t j = 0; j < e.size(); ++j) REQUIRE(std::abs(t.elementary[j] - e[j]) < 1e-10);
        const auto h = homogeneous_direct(z, 10);
        for (std::size_t j = 0; j < h.size(); ++j) REQUIRE(std::abs(t.homogeneous[j] - h[j]) < 1e-8);
        for (const auto& p : t.power) REQUIRE(std::abs(p) <= N + 1e-9);
    }
}

TEST_CASE("U(1) Haar phases are uniform (Kolmogorov-Smirnov at 1%)") {
    Rng rng = derive_rng(1, 0);
    const int n = 100000;
    std::vector<double> x;
    x.reserve(n);
    for (int i = 0; i < n; ++i) x.push_back(haar_spectrum(1, rng).angles[0] / (2 * std::numbers::pi));
    std::sort(x.begin(), x.end());
    double d = 0;
    for (int i = 0; i < n; ++i) d = std::max({d, (i + 1.0) / n - x[i], x[i] - static_cast<double>(i) / n});
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("mean of tr U vanishes on U(4)") {
    Rng rng = derive_rng(2, 0);
    Complex s = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) s += trace_functionals(haar_spectrum(4, rng), 1).power[1];
    CHECK(std::abs(s / static_cast<double>(n)) <= 5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("Monte Carlo moments of traces") {
    const auto tr3 = mc_integral([](const UnitarySpectrum& s) { return std::norm(trace_functionals(s, 3).power[3]); },
                                 5, 100000, 0);
    CHECK(tr3.samples == 100000);
    CHECK(std::abs(tr3.mean - 3) <= 3 * tr3.stderr_);

    // |tr U^n|^2 = N for n >= N and |tr Sym^n U|^2 = 1
    for (int N : {2, 3}) {
        const int n = N + 2;
        std::vector<SpectrumStatistic> stats{
            [n](const UnitarySpectrum& s) { return std::norm(trace_functionals(s, n).power[n]); },
            [n](const UnitarySpectrum& s) { return std::norm(trace_functionals(s, n).homogeneous[n]); }};
        const auto est = mc_integrals(stats, N, 50000, 9);
        CHECK(std::abs(est[0].mean - N) <= 3 * est[0].stderr_);
        CHECK(std::abs(est[1].mean - 1) <= 3 * est[1].stderr_);
    }
}

TEST_CASE("Monte Carlo results do not depend on the thread count") {
    const auto stat = [](const UnitarySpectrum& s) { return std::norm(trace_functionals(s, 2).power[2]); };
    const auto a = mc_integral(stat, 3, 5000, 17, 1);
    const auto b = mc_integral(stat, 3, 5000, 17, 3);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("divisor_integral closed form") {
    CHECK(divisor_integral_closed(2, 3, 5) == 20);
    CHECK(divisor_integral_closed(2, 9, 5) == 4);
    CHECK(divisor_integral_closed(2, 11, 5) == 0);
    CHECK(divisor_integral_closed(1, 0, 3) == 1);
    CHECK(divisor_integral_closed(3, 7, 3) == divisor_integral_closed(3, 2, 3));
    try {
        (void)divisor_integral_closed(3, 4, 3);
        FAIL("expected ClosedFormNotAvailable");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ClosedFormNotAvailable);
    }
    const auto mc = divisor_integral_mc(2, 3, 5, 100000, 3);
    CHECK(std::abs(mc.mean - 20) <= 3 * mc.stderr_);
}

TEST_CASE("functional equation of I_3(m;3) holds in Monte Carlo") {
    std::vector<SpectrumStatistic> stats;
    for (int m = 0; m <= 9; ++m) stats.push_back([m](const UnitarySpectrum& s) { return divisor_statistic(s, 3, m); });
    const auto est = mc_integrals(stats, 3, 50000, 23);
    for (int m = 0; m <= 9; ++m) {
        const auto& a = est[static_cast<std::size_t>(m)];
        const auto& b = est[static_cast<std::size_t>(9 - m)];
        CHECK(std::abs(a.mean - b.mean) <= 4 * std::hypot(a.stderr_, b.stderr_) + 1e-9);
    }
}

TEST_CASE("Rodgers integral") {
    CHECK(rodgers_closed(5, 2) == 10);
    CHECK(rodgers_closed(5, 2) == (4.0 * 8 - 2) / 3);
    CHECK(rodgers_closed(4, 1) == 1);
    CHECK(rodgers_closed(6, 3) == 35);
    CHECK(rodgers_closed(3, 10) == 1 + 9 + 25);
    const auto mc = rodgers_mc(6, 3, 100000, 4);
    CHECK(std::abs(mc.mean - 35) <= 3 * mc.stderr_);
    CHECK(rodgers_integral(6, 3, IntegralMode::closed) == 35);
}
