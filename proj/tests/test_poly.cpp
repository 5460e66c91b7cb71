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

#include "ffq/error.hpp"
#include "ffq/poly.hpp"

#include <doctest.h>

using namespace ffq;

TEST_CASE("divrem examples") {
    const Field F3(3);
    auto [q1, r1] = divrem(Poly(F3, {1, 0, 0, 1}), Poly(F3, {1, 1}));
    CHECK(q1 == Poly(F3, {1, 2, 1}));
    CHECK(r1.is_zero());

    const Field F5(5);
    const Poly f(F5, {3, 1, 4, 1});
    auto [q2, r2] = divrem(f, Poly::constant(F5, 1));
    CHECK(q2 == f);
    CHECK(r2.is_zero());

    auto [q3, r3] = divrem(Poly(F5, {1, 0, 1}), Poly::x(F5));
    CHECK(q3 == Poly::x(F5));
    CHECK(r3 == Poly::constant(F5, 1));

    try {
        (void)divrem(f, Poly(F5));
        FAIL("expected DivisionByZeroPoly");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DivisionByZeroPoly);
    }
}

TEST_CASE("divrem reconstructs f for random inputs") {
    const Field F(7);
    for (int a = 0; a < 200; ++a) {
        std::vector<Elem> fc, gc;
        for (int i = 0; i < 1 + a % 9; ++i) fc.push_back(static_cast<Elem>((a * 31 + i * 17) % 7));
        for (int i = 0; i < 1 + a % 4; ++i) gc.push_back(static_cast<Elem>((a * 13 + i * 5 + 1) % 7));
        const Poly f(F, fc), g(F, gc);
        if (g.is_zero()) continue;
        auto [qq, rr] = divrem(f, g);
        CHECK(qq * g + rr == f);
        CHECK(rr.degree() < g.degree());
    }
}

TEST_CASE("gcd examples") {
    const Field F5(5);
    const Poly f(F5, {2, 0, 4});  // 4x^2 + 2
    CHECK(gcd(f, Poly(F5)) == monic(f));
    CHECK(gcd(Poly(F5, {-1, 0, 1}), Poly(F5, {-1, 1})) == Poly(F5, {4, 1}));
    const Field F3(3);
    CHECK(gcd(Poly(F3, {1, 0, 1}), Poly(F3, {2, 0, 1})) == Poly::constant(F3, 1));
    try {
        (void)gcd(Poly(F5), Poly(F5));
        FAIL("expected BothZero");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BothZero);
    }
}

TEST_CASE("discriminant of quadratics is b^2 - 4c for all b, c mod 7") {
    const Field F(7);
    for (std::int64_t b = 0; b < 7; ++b) {
        for (std::int64_t c = 0; c < 7; ++c) {
            CHECK(discriminant(Poly(F, {c, b, 1})) == F.reduce(b * b - 4 * c));
            // scaling by a unit multiplies disc by lc^{2n-2}
            CHECK(discriminant(Poly(F, {3 * c, 3 * b, 3})) == F.reduce(9 * (b * b - 4 * c)));
        }
    }
}

TEST_CASE("discriminant of depressed cubics is -4p^3 - 27r^2") {
    const Field F5(5);
    CHECK(discriminant(Poly(F5, {1, 1, 0, 1})) == 4);
    for (std::uint32_t p : {5u, 7u, 11u}) {
        const Field F(p);
        for (std::int64_t a = 0; a < p; ++a) {
            for (std::int64_t r = 0; r < p; ++r) {
                CHECK(discriminant(Poly(F, {r, a, 0, 1})) == F.reduce(-4 * a * a * a - 27 * r * r));
            }
        }
    }
}

TEST_CASE("discriminant vanishes exactly on polynomials with a repeated factor") {
    const Field F(5);
    const Poly a(F, {1, 1});
    const Poly b(F, {2, 0, 1});
    CHECK(discriminant(a * a * b) == 0);
    CHECK(discriminant(b * b) == 0);
    CHECK(discriminant(a * b) != 0);
    CHECK_THROWS_AS(discriminant(Poly::constant(F, 3)), Error);
}

TEST_CASE("text format round trip and parse errors") {
    const Field F(5);
    const Poly f = parse_poly(F, "1,0,1");
    CHECK(f == Poly(F, {1, 0, 1}));
    CHECK(format_poly(f) == "1,0,1");
    CHECK(parse_poly(F, " 1, 0 ,1 ") == f);
    CHECK(parse_poly(F, "7,-1") == Poly(F, {2, 4}));
    CHECK(parse_poly(F, "0").is_zero());
    CHECK(format_poly(Poly(F)) == "0");
    CHECK_THROWS_AS(parse_poly(F, "1,,2"), Error);
    CHECK_THROWS_AS(parse_poly(F, "1,a"), Error);
    CHECK(pretty(Poly(F, {1, 2, 0, 1})) == "x^3 + 2x + 1");
}

TEST_CASE("canonical order is degree first then top coefficient") {
    const Field F(3);
    CHECK(canonical_compare(Poly(F, {2, 1}), Poly(F, {0, 0, 1})) < 0);
    CHECK(canonical_compare(Poly(F, {2, 1, 1}), Poly(F, {0, 2, 1})) < 0);
    CHECK(canonical_compare(Poly(F, {1, 1}), Poly(F, {1, 1})) == 0);
}

TEST_CASE("norm is q^deg") {
    const Field F(7);
    CHECK(norm(Poly(F, {1, 2, 3})) == 49.0);
    CHECK_THROWS_AS(norm(Poly(F)), Error);
}
