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

#include "ffq/dirichlet.hpp"
#include "ffq/error.hpp"
#include "ffq/factor.hpp"

#include <doctest.h>

#include <cmath>

using namespace ffq;

namespace {

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

// chi is imprimitive iff it factors through reduction to some Q/P
bool primitive_by_brute_force(const DirichletCharacter& chi) {
    const DirichletGroup& G = *chi.group;
    const Field& F = G.field();
    const Factorization fac = factor(G.modulus());
    const auto units = enumerate_monic(F, 0);
    for (const auto& fp : fac.factors) {
        const Poly sub = G.modulus() / fp.prime;
        bool depends = false;
        const std::uint64_t R = ipow(F.q(), G.degree());
        for (std::uint64_t a = 0; a < R && !depends; ++a) {
            const Poly f = poly_from_digits(F, G.degree(), a);
            if (G.dlog_index(a) == DirichletGroup::npos) continue;
            for (std::uint64_t b = a + 1; b < R; ++b) {
                const Poly g = poly_from_digits(F, G.degree(), b);
                if (G.dlog_index(b) == DirichletGroup::npos) continue;
                if (sub.degree() > 0 && !((f - g) % sub).is_zero()) continue;
                if (!close(chi(f), chi(g), 1e-9)) {
                    depends = true;
                    break;
                }
            }
        }
        if (!depends) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("unit group examples") {
    const Field F3(3);
    auto G = DirichletGroup::build(Poly::monomial(F3, 2));
    CHECK(G->order() == 6);
    CHECK(G->even_order() == 3);

    for (std::uint32_t q : {2u, 3u, 7u, 11u}) {
        auto Gx = DirichletGroup::build(Poly::x(Field(q)));
        CHECK(Gx->order() == q - 1);
        CHECK(Gx->orders().size() == 1);
    }

    auto Gi = DirichletGroup::build(Poly(F3, {1, 0, 1}));  // x^2 + 1 is irreducible mod 3
    REQUIRE(Gi->orders().size() == 1);
    CHECK(Gi->orders()[0] == 8);

    auto Gs = DirichletGroup::build(Poly(Field(5), {0, 2, 3, 1}));  // x(x+1)(x+2)
    CHECK(Gs->order() == 64);

    try {
        (void)DirichletGroup::build(Poly(F3, {0, 0, 1, 1}));  // x^2 (x+1)
        FAIL("expected UnsupportedModulusShape");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnsupportedModulusShape);
    }
    CHECK_THROWS_AS((void)DirichletGroup::build(Poly::monomial(Field(101), 5), 1000), Error);
}

TEST_CASE("dlog is a homomorphism onto the coordinate group") {
    const std::vector<Poly> moduli{Poly::monomial(Field(3), 4), Poly::monomial(Field(2), 5),
                                   Poly::monomial(Field(5), 3), Poly(Field(5), {0, 2, 3, 1}),
                                   Poly(Field(3), {2, 2, 0, 1}),  // irreducible cubic
                                   Poly(Field(2), {0, 1, 1, 1})};  // x(x^2+x+1)
    for (const Poly& Q : moduli) {
        auto G = DirichletGroup::build(Q);
        const Field& F = G->field();
        std::uint64_t phi = 0;
        const std::uint64_t R = ipow(F.q(), G->degree());
        for (std::uint64_t r = 0; r < R; ++r) {
            const Poly f = poly_from_digits(F, G->degree(), r);
            const bool unit = !f.is_zero() && gcd(f, G->modulus()).degree() == 0;
            REQUIRE(unit == (G->dlog_index(r) != DirichletGroup::npos));
            phi += unit ? 1 : 0;
        }
        CHECK(phi == G->order());
        for (std::size_t i = 0; i < G->generators().size(); ++i) {
            auto e = *G->dlog(G->generators()[i]);
            for (std::size_t j = 0; j < e.size(); ++j) CHECK(e[j] == (i == j ? 1u % G->orders()[j] : 0u));
        }
        Rng rng = derive_rng(3, 0);
        for (int t = 0; t < 300; ++t) {
            const Poly u = poly_from_digits(F, G->degree(), std::uniform_int_distribution<std::uint64_t>(0, R - 1)(rng));
            const Poly v = poly_from_digits(F, G->degree(), std::uniform_int_distribution<std::uint64_t>(0, R - 1)(rng));
            const auto du = G->dlog(u), dv = G->dlog(v), duv = G->dlog(mulmod(u, v, G->modulus()));
            if (!du || !dv) {
                CHECK(!duv);
                continue;
            }
            REQUIRE(duv);
            for (std::size_t i = 0; i < du->size(); ++i) CHECK((*duv)[i] == ((*du)[i] + (*dv)[i]) % G->orders()[i]);
        }
    }
}

TEST_CASE("character listing and flags") {
    const Field F3(3);
    auto G = DirichletGroup::build(Poly::monomial(F3, 2));
    CHECK(list_characters(G, CharacterFilter::all).size() == 6);
    CHECK(list_characters(G, CharacterFilter::even).size() == 3);
    const auto trivial = character_by_id(G, 0);
    CHECK(trivial.is_trivial);
    CHECK(trivial.is_even);
    CHECK_FALSE(trivial.is_primitive);

    for (std::uint32_t q : {3u, 5u, 7u}) {
        for (int N = 1; N <= 3; ++N) {
            auto GN = DirichletGroup::build(Poly::monomial(Field(q), N + 2));
            CHECK(list_characters(GN, CharacterFilter::even_primitive).size() == ipow(q, N + 1) - ipow(q, N));
            CHECK(list_characters(GN, CharacterFilter::even).size() == GN->order() / (q - 1));
        }
    }
}

TEST_CASE("primitivity matches the brute-force induced-character test") {
    for (const Poly& Q : {Poly::monomial(Field(3), 3), Poly(Field(5), {0, 1, 1}), Poly::x(Field(5)),
                          Poly(Field(3), {0, 2, 0, 1})}) {  // x(x+1)(x+2) over F_3
        auto G = DirichletGroup::build(Q);
        for (const auto& chi : list_characters(G, CharacterFilter::all)) {
            REQUIRE(chi.is_primitive == primitive_by_brute_force(chi));
        }
    }
}

TEST_CASE("even means trivial on scalars (Q = x^3, q = 5)") {
    const Field F(5);
    auto G = DirichletGroup::build(Poly::monomial(F, 3));
    for (const auto& chi : list_characters(G, CharacterFilter::all)) {
        bool scalar_trivial = true;
        for (Elem c = 1; c < 5; ++c) scalar_trivial &= close(chi(Poly::constant(F, c)), 1, 1e-12);
        REQUIRE(scalar_trivial == chi.is_even);
    }
}

TEST_CASE("orthogonality and multiplicativity") {
    const Field F(3);
    auto G = DirichletGroup::build(Poly::monomial(F, 3));
    const auto chars = list_characters(G, CharacterFilter::all);
    for (std::uint64_t r = 0; r < 27; ++r) {
        const Poly f = poly_from_digits(F, 3, r);
        Complex s = 0;
        for (const auto& chi : chars) s += chi(f);
        const double expected = (r == 1) ? static_cast<double>(G->order()) : 0.0;
        REQUIRE(close(s, expected, 1e-10));
    }
    for (const auto& chi : chars) {
        REQUIRE(close(chi(Poly::constant(F, 1)), 1, 1e-12));
        if (chi.is_trivial) {
            for (std::uint64_t r = 0; r < 27; ++r) {
                const Poly f = poly_from_digits(F, 3, r);
                REQUIRE(close(chi(f), f.coeff(0) != 0 ? 1.0 : 0.0, 1e-12));
            }
        }
    }

    auto G2 = DirichletGroup::build(Poly::monomial(F, 2));
    for (const auto& chi : list_characters(G2, CharacterFilter::all)) {
        for (std::uint64_t a = 0; a < 9; ++a) {
            for (std::uint64_t b = 0; b < 9; ++b) {
                const Poly f = poly_from_digits(F, 2, a), g = poly_from_digits(F, 2, b);
                REQUIRE(close(chi(f * g), chi(f) * chi(g), 1e-12));
            }
        }
    }
}

TEST_CASE("L-polynomials of even characters mod x^2 are 1 - u") {
    for (std::uint32_t q : {3u, 5u}) {
        auto G = DirichletGroup::build(Poly::monomial(Field(q), 2));
        for (const auto& chi : list_characters(G, CharacterFilter::even)) {
            if (chi.is_trivial) continue;
            const auto L = l_polynomial(chi);
            REQUIRE(L.coeffs.size() == 2);
            CHECK(close(L.coeffs[0], 1, 1e-9));
            CHECK(close(L.coeffs[1], -1, 1e-9));
            CHECK(L.angles.empty());
        }
        CHECK_THROWS_AS(l_polynomial(character_by_id(G, 0)), Error);
    }
}

TEST_CASE("Riemann hypothesis and trivial zero for characters mod x^m") {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const double sq = std::sqrt(static_cast<double>(q));
        for (int m = 1; m <= 4; ++m) {
            auto G = DirichletGroup::build(Poly::monomial(Field(q), m));
            const auto coeffs = l_coefficients_all(G);
            for (std::uint64_t id = 1; id < G->order(); ++id) {
                const auto chi = character_by_id(G, id);
                const auto L = l_polynomial_from_coeffs(chi, coeffs[id]);
                REQUIRE(L.degree() <= m - 1);
                if (chi.is_even) REQUIRE(std::abs(L.evaluate(1.0)) <= 1e-6);
                if (chi.is_primitive) {
                    REQUIRE(L.degree() == m - 1);
                    REQUIRE(L.angles.size() == static_cast<std::size_t>(chi.is_even ? m - 2 : m - 1));
                    int trivial = 0;
                    for (const Complex& a : L.inverse_roots) {
                        if (chi.is_even && std::abs(a - Complex(1)) < 1e-6 && trivial == 0) {
                            ++trivial;
                            continue;
                        }
                        REQUIRE(std::abs(std::abs(a) - sq) <= 1e-6);
                    }
                }
            }
        }
    }
}

TEST_CASE("naive and DFT coefficients agree (Q = x^4, q = 5)") {
    auto G = DirichletGroup::build(Poly::monomial(Field(5), 4));
    const auto all = l_coefficients_all(G, 2);
    for (std::uint64_t id = 0; id < G->order(); ++id) {
        const auto naive = l_coefficients(character_by_id(G, id));
        REQUIRE(naive.size() == all[id].size());
        for (std::size_t j = 0; j < naive.size(); ++j) REQUIRE(close(naive[j], all[id][j], 1e-9));
    }
    const auto chi = character_by_id(G, 7);
    const auto a = l_polynomial(chi, CoefficientMode::naive), b = l_polynomial(chi, CoefficientMode::dft);
    for (std::size_t j = 0; j < a.angles.size(); ++j) CHECK(std::abs(a.angles[j] - b.angles[j]) < 1e-9);
}

TEST_CASE("root finding") {
    // (1 - 2u)(1 + 3u) = 1 + u - 6u^2
    auto r = inverse_roots({1, 1, -6});
    REQUIRE(r.size() == 2);
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(close(r[0], -3, 1e-9));
    CHECK(close(r[1], 2, 1e-9));
    CHECK(inverse_roots({1}).empty());
}

TEST_CASE("m_sum weights") {
    const Field F(3);
    auto Gx = DirichletGroup::build(Poly::x(F));
    const auto trivial = character_by_id(Gx, 0);
    for (int n = 1; n <= 5; ++n) {
        // brute force: sum of mu over monic f of degree n with f(0) != 0
        std::int64_t brute = 0;
        for (const Poly& f : enumerate_monic(F, n)) {
            if (f.coeff(0) != 0) brute += mobius(f);
        }
        CHECK(close(m_sum(n, trivial, Weight::mobius()), static_cast<double>(brute), 1e-9));
        // 1/L(u, chi_0) = (1 - u)/(1 - qu) has coefficient q^{n-1}(q-1)... for L; for mu it is (1-qu)/(1-u)
        CHECK(brute == 1 - 3);
    }
    CHECK(close(m_sum(0, trivial, Weight::mobius()), 1, 1e-12));

    auto G = DirichletGroup::build(Poly::monomial(Field(5), 4));
    for (std::uint64_t id : {1u, 13u, 77u}) {
        const auto chi = character_by_id(G, id);
        const auto c = l_coefficients(chi);
        for (int n = 0; n < 4; ++n) {
            const Complex cn = static_cast<std::size_t>(n) < c.size() ? c[static_cast<std::size_t>(n)] : Complex(0);
            CHECK(close(m_sum(n, chi, Weight::unit()), cn, 1e-9));
        }
        // weights against a direct factor()-based sum
        for (int n = 1; n <= 4; ++n) {
            Complex mu = 0, lam = 0, d3 = 0;
            for (const Poly& f : enumerate_monic(Field(5), n)) {
                const Complex v = chi(f);
                mu += static_cast<double>(mobius(f)) * v;
                lam += static_cast<double>(von_mangoldt(f)) * v;
                d3 += static_cast<double>(divisor_k(f, 3)) * v;
            }
            CHECK(close(m_sum(n, chi, Weight::mobius()), mu, 1e-8));
            CHECK(close(m_sum(n, chi, Weight::von_mangoldt()), lam, 1e-8));
            CHECK(close(m_sum(n, chi, Weight::divisor(3)), d3, 1e-8));
        }
    }
    // a squarefree modulus exercises the reduction path for n >= deg Q
    auto Gs = DirichletGroup::build(Poly(Field(5), {0, 2, 3, 1}));
    const auto chi = character_by_id(Gs, 11);
    Complex direct = 0;
    for (const Poly& f : enumerate_monic(Field(5), 5)) direct += static_cast<double>(mobius(f)) * chi(f);
    CHECK(close(m_sum(5, chi, Weight::mobius()), direct, 1e-8));
}

TEST_CASE("explicit formula and the generating-function identity (q = 5, Q = x^5)") {
    const Field F(5);
    auto G = DirichletGroup::build(Poly::monomial(F, 5));
    const auto evp = list_characters(G, CharacterFilter::even_primitive);
    REQUIRE(evp.size() == 500);
    std::vector<std::vector<std::int64_t>> counts;
    for (int n = 0; n <= 7; ++n) counts.push_back(weighted_unit_counts(*G, n, Weight::mobius()));
    for (std::size_t i = 0; i < evp.size(); i += 37) {
        const auto& chi = evp[i];
        const auto L = l_polynomial(chi);
        REQUIRE(L.angles.size() == 3);
        for (int n = 0; n <= 6; ++n) {
            const auto chk = explicit_formula_check(n, chi, L, counts[static_cast<std::size_t>(n)]);
            CHECK(chk.error <= 1e-6 * std::pow(5.0, n / 2.0));
            CHECK(std::abs(chk.lhs) <= std::pow(5.0, n / 2.0) * (n + 1));
            if (n == 0) {
                CHECK(close(chk.lhs, 1, 1e-12));
                CHECK(close(chk.rhs, 1, 1e-12));
            }
        }
        for (int d = 0; d <= 7; ++d) {
            Complex s = 0;
            for (int j = 0; j <= d; ++j) {
                const Complex c = static_cast<std::size_t>(j) < L.coeffs.size() ? L.coeffs[static_cast<std::size_t>(j)] : Complex(0);
                s += c * m_sum(chi, counts[static_cast<std::size_t>(d - j)]);
            }
            CHECK(close(s, d == 0 ? 1.0 : 0.0, 1e-8));
        }
    }
    const auto odd = list_characters(G, CharacterFilter::primitive);
    for (const auto& chi : odd) {
        if (chi.is_even) continue;
        try {
            (void)explicit_formula_check(2, chi);
            FAIL("expected NotEvenPrimitive");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NotEvenPrimitive);
        }
        break;
    }
}

TEST_CASE("Katz averages") {
    const auto one = katz_average(2, Field(7), [](const UnitarySpectrum&) { return 1.0; }, 2000, 0);
    CHECK(one.empirical == 1.0);
    CHECK(one.reference.mean == 1.0);
    CHECK(one.characters == 7 * 7 * 7 - 7 * 7);
    CHECK_FALSE(one.caveat);
    CHECK(katz_average(2, Field(5), [](const UnitarySpectrum&) { return 1.0; }, 1000, 0).caveat);
    CHECK_THROWS_AS(katz_average(1, Field(5), [](const UnitarySpectrum&) { return 1.0; }), Error);
}
