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
#include "ffq/field.hpp"

#include <doctest.h>

#include <set>

using namespace ffq;

namespace {

// brute-force oracle: set of nonzero squares
int chi_by_squares(std::uint32_t p, std::uint32_t a) {
    if (a % p == 0) return 0;
    for (std::uint64_t x = 1; x < p; ++x) {
        if (x * x % p == a % p) return 1;
    }
    return -1;
}

}  // namespace

TEST_CASE("make_field accepts primes and rejects composites") {
    const Field f7(7);
    CHECK(f7.p() == 7);
    CHECK(f7.odd());
    const Field f2(2);
    CHECK_FALSE(f2.odd());
    try {
        Field bad(6);
        FAIL("expected CompositeModulus");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CompositeModulus);
    }
    CHECK_THROWS_AS(Field(1), Error);
}

TEST_CASE("quadratic character examples mod 7") {
    const Field F(7);
    CHECK(F.quadratic_character(2) == 1);
    CHECK(F.quadratic_character(0) == 0);
    CHECK(F.quadratic_character(3) == -1);
    for (std::uint32_t a = 0; a < 7; ++a) CHECK(F.quadratic_character(a) == chi_by_squares(7, a));
}

TEST_CASE("quadratic character needs odd characteristic") {
    const Field F(2);
    try {
        (void)F.quadratic_character(1);
        FAIL("expected EvenCharacteristic");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EvenCharacteristic);
    }
}

TEST_CASE("quadratic character is multiplicative and balanced for p <= 101") {
    for (std::uint32_t p = 3; p <= 101; ++p) {
        if (!is_prime_u64(p)) continue;
        const Field F(p);
        int sum = 0;
        for (std::uint32_t a = 0; a < p; ++a) {
            sum += F.quadratic_character(a);
            for (std::uint32_t b = 0; b < p; ++b) {
                REQUIRE(F.quadratic_character(F.mul(a, b)) == F.quadratic_character(a) * F.quadratic_character(b));
            }
        }
        CHECK(sum == 0);
    }
}

TEST_CASE("Euler's criterion agrees with the table above the table limit") {
    const Field F(65537 + 2 * 3);  // 65543 is prime
    REQUIRE(F.p() == 65543);
    for (std::uint32_t a : {1u, 2u, 3u, 5u, 65542u}) CHECK(F.quadratic_character(a) == chi_by_squares(65543, a));
}

TEST_CASE("field axioms hold exhaustively for p <= 13") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        const Field F(p);
        for (std::uint32_t a = 0; a < p; ++a) {
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a) CHECK(F.mul(a, F.inv(a)) == 1);
            for (std::uint32_t b = 0; b < p; ++b) {
                for (std::uint32_t c = 0; c < p; ++c) {
                    REQUIRE(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                    REQUIRE(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                    REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
        }
    }
    CHECK_THROWS_AS(Field(5).inv(0), Error);
}

TEST_CASE("primitive root generates the unit group") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 31u, 101u}) {
        const Field F(p);
        std::set<Elem> seen;
        Elem x = 1;
        for (std::uint32_t i = 0; i + 1 < p; ++i) {
            seen.insert(x);
            x = F.mul(x, F.primitive_root());
        }
        CHECK(seen.size() == p - 1);
    }
}
