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
#include "ffq/factor.hpp"
#include "ffq/sieve.hpp"

#include <doctest.h>

using namespace ffq;

namespace {

void check_shape_against_factor(const FactorShape& s, const Poly& f) {
    const Factorization fac = factor(f);
    const int n = f.degree();
    REQUIRE(s.count == fac.factors.size());
    REQUIRE(shape_mobius(s) == mobius(fac));
    REQUIRE(shape_von_mangoldt(s) == von_mangoldt(fac));
    REQUIRE(shape_von_mangoldt2(s) == von_mangoldt2(f, Lambda2Route::convolution));
    for (int k = 1; k <= 4; ++k) REQUIRE(shape_divisor_k(s, k) == divisor_k(fac, k));
    REQUIRE(shape_is_prime(s) == is_irreducible(f));
    REQUIRE(shape_cycle_type(s, n) == cycle_type(fac, n));
}

}  // namespace

TEST_CASE("sieve shapes agree with factor() on all of M_n for small q, n") {
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
        const Field F(q);
        for (int n = 1; n <= 7; ++n) {
            if (ipow(q, n) > 20000) continue;
            const IntervalSieve sv(F, n);
            const auto layout = sv.blocks(0, 64);
            std::vector<FactorShape> shapes;
            for (std::uint64_t b = 0; b < layout.count; ++b) {
                sv.sieve_block(layout, b, shapes);
                REQUIRE(shapes.size() == layout.block_size);
                for (std::uint64_t i = 0; i < shapes.size(); ++i) {
                    check_shape_against_factor(shapes[i], monic_from_index(F, n, b * layout.block_size + i));
                }
            }
        }
    }
}

TEST_CASE("sieve handles narrow and wide intervals at larger q") {
    const Field F(31);
    Rng rng = derive_rng(11, 0);
    for (int n : {5, 6, 9}) {
        const IntervalSieve sv(F, n);
        for (int h : {0, 1, 2, 3}) {
            const Poly A = sample_monic(F, n, rng);
            std::vector<FactorShape> shapes;
            sv.sieve(A, h, shapes);
            REQUIRE(shapes.size() == ipow(31, h + 1));
            const Poly base = class_representative(A, h);
            for (int t = 0; t < 40; ++t) {
                const std::uint64_t i = std::uniform_int_distribution<std::uint64_t>(0, shapes.size() - 1)(rng);
                check_shape_against_factor(shapes[i], base + poly_from_digits(F, h + 1, i));
            }
        }
    }
}

TEST_CASE("monic_primes matches is_irreducible and the prime counting formula") {
    const Field F(3);
    for (int d = 1; d <= 6; ++d) {
        const auto primes = monic_primes(F, d);
        std::size_t brute = 0;
        for (const Poly& f : enumerate_monic(F, d)) brute += is_irreducible(f) ? 1 : 0;
        CHECK(primes.size() == brute);
        for (const Poly& P : primes) REQUIRE(is_irreducible(P));
    }
    // (1/d) sum_{e | d} mu(d/e) q^e
    CHECK(monic_primes(Field(5), 4).size() == (625 - 25) / 4);
    CHECK(monic_primes(Field(2), 10).size() == 99);
    CHECK(IntervalSieve(Field(3), 4).prime_count() == 3 + 3);
}
