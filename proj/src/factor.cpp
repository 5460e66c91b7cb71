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

#include "ffq/factor.hpp"

#include "ffq/error.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace ffq {

namespace {

Poly one(const Field& F) { return Poly::constant(F, 1); }

bool is_one(const Poly& f) { return f.degree() == 0 && f.lead() == 1; }

/// g with g^p = f, for f' = 0 (every exponent divisible by p). Over F_p the
/// coefficient p-th root is the identity.
Poly pth_root(const Poly& f) {
    const Field& F = f.field();
    const auto p = static_cast<int>(F.p());
    std::vector<Elem> c(static_cast<std::size_t>(f.degree() / p) + 1, 0);
    for (int i = 0; i <= f.degree(); i += p) c[static_cast<std::size_t>(i / p)] = f.coeff(static_cast<std::size_t>(i));
    return Poly(F, std::move(c));
}

/// x^{q^k} mod f, by k successive q-th powers of x.
Poly frobenius_x(const Poly& f, int k) {
    Poly h = Poly::x(f.field()) % f;
    for (int i = 0; i < k; ++i) h = powmod(h, f.field().q(), f);
    return h;
}

Poly random_poly(const Field& F, int max_deg, Rng& rng) {
    std::uniform_int_distribution<Elem> dist(0, F.p() - 1);
    std::vector<Elem> c(static_cast<std::size_t>(max_deg) + 1);
    for (auto& a : c) a = dist(rng);
    return Poly(F, std::move(c));
}

void sort_canonical(std::vector<FactorPower>& v) {
    std::sort(v.begin(), v.end(), [](const FactorPower& a, const FactorPower& b) {
        return canonical_compare(a.prime, b.prime) < 0;
    });
}

}  // namespace

Poly Factorization::expand(const Field& field) const {
    Poly out = Poly::constant(field, unit);
    for (const auto& fp : factors) {
        for (int i = 0; i < fp.multiplicity; ++i) out *= fp.prime;
    }
    return out;
}

std::vector<FactorPower> squarefree_decomposition(const Poly& f_in) {
    const Field& F = f_in.field();
    const Poly f = monic(f_in);
    std::vector<FactorPower> out;
    if (f.degree() < 1) return out;

    const Poly df = derivative(f);
    if (df.is_zero()) {
        for (auto part : squarefree_decomposition(pth_root(f))) {
            part.multiplicity *= static_cast<int>(F.p());
            out.push_back(std::move(part));
        }
        return out;
    }

    Poly c = gcd(f, df);
    Poly w = f / c;
    int i = 1;
    while (!is_one(w)) {
        Poly y = gcd(w, c);
        Poly fac = w / y;
        if (!is_one(fac)) out.push_back({monic(fac), i});
        ++i;
        w = std::move(y);
        c = c / w;
    }
    if (!is_one(c)) {
        // what remains of c is a p-th power
        for (auto part : squarefree_decomposition(pth_root(monic(c)))) {
            part.multiplicity *= static_cast<int>(F.p());
            out.push_back(std::move(part));
        }
    }
    return out;
}

std::vector<FactorPower> distinct_degree_factorization(const Poly& f_in) {
    std::vector<FactorPower> out;
    Poly rest = monic(f_in);
    const Field& F = rest.field();
    const Poly x = Poly::x(F);
    Poly h = x % rest;
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
        h = powmod(h, F.q(), rest);
        Poly g = gcd(rest, h - x);
        if (!is_one(g)) {
            rest = rest / g;
            h = h % rest;
            out.push_back({std::move(g), d});
        }
    }
    if (rest.degree() >= 1) {
        const int d = rest.degree();
        out.push_back({std::move(rest), d});
    }
    return out;
}

std::vector<Poly> equal_degree_factorization(const Poly& f_in, int d, Rng& rng) {
    const Poly f = monic(f_in);
    const Field& F = f.field();
    const int r = f.degree() / d;
    std::vector<Poly> parts{f};
    if (r <= 1) return parts;

    while (static_cast<int>(parts.size()) < r) {
        const Poly a = random_poly(F, f.degree() - 1, rng);
        if (a.degree() < 1) continue;
        Poly b(F);
        if (F.odd()) {
            // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
            Poly cur = a % f;
            Poly norm_like = cur;
            for (int i = 1; i < d; ++i) {
                cur = powmod(cur, F.q(), f);
                norm_like = mulmod(norm_like, cur, f);
            }
            b = powmod(norm_like, (F.q() - 1) / 2, f) - one(F);
        } else {
            // absolute trace to F_2: a + a^2 + ... + a^{2^{d-1}}
            Poly cur = a % f;
            b = cur;
            for (int i = 1; i < d; ++i) {
                cur = mulmod(cur, cur, f);
                b += cur;
            }
        }
        std::vector<Poly> next;
        next.reserve(parts.size() + 1);
        for (auto& u : parts) {
            if (u.degree() == d || b.is_zero()) {
                next.push_back(std::move(u));
                continue;
            }
            Poly g = gcd(b, u);
            if (g.degree() > 0 && g.degree() < u.degree()) {
                Poly other = u / g;
                next.push_back(std::move(g));
                next.push_back(monic(other));
            } else {
                next.push_back(std::move(u));
            }
        }
        parts = std::move(next);
    }
    return parts;
}

Factorization factor(const Poly& f, Rng& rng) {
    if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "factor() of the zero polynomial");
    Factorization out;
    out.unit = f.lead();
    if (f.degree() == 0) return out;
    for (const auto& sq : squarefree_decomposition(f)) {
        for (const auto& dd : distinct_degree_factorization(sq.prime)) {
            for (auto& p : equal_degree_factorization(dd.prime, dd.multiplicity, rng)) {
                out.factors.push_back({std::move(p), sq.multiplicity});
            }
        }
    }
    sort_canonical(out.factors);
    return out;
}

Factorization factor(const Poly& f) {
    Rng rng(kDefaultFactorSeed);
    return factor(f, rng);
}

bool is_irreducible(const Poly& f_in) {
    if (f_in.is_zero()) throw Error(Errc::ZeroPolynomial, "is_irreducible() of the zero polynomial");
    const Poly f = monic(f_in);
    const int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const Poly x = Poly::x(f.field());
    for (auto r : prime_divisors(static_cast<std::uint64_t>(n))) {
        const Poly h = frobenius_x(f, n / static_cast<int>(r));
        if (!is_one(gcd(h - x, f))) return false;
    }
    return frobenius_x(f, n) == x % f;
}

CycleType cycle_type(const Factorization& fact, int n) {
    CycleType ct{n, std::vector<int>(static_cast<std::size_t>(n), 0)};
    for (const auto& fp : fact.factors) ct.lambda[static_cast<std::size_t>(fp.prime.degree() - 1)] += fp.multiplicity;
    return ct;
}

CycleType cycle_type(const Poly& f) {
    if (f.degree() < 1) throw Error(Errc::ConstantPolynomial, "cycle type needs deg f >= 1");
    return cycle_type(factor(f), f.degree());
}

int mobius(const Factorization& fact) {
    for (const auto& fp : fact.factors) {
        if (fp.multiplicity > 1) return 0;
    }
    return fact.factors.size() % 2 == 0 ? 1 : -1;
}

int mobius(const Poly& f, MobiusBackend backend) {
    if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "mobius() of the zero polynomial");
    if (backend == MobiusBackend::factorization) return mobius(factor(f));
    if (!f.field().odd()) throw Error(Errc::EvenCharacteristic, "Pellet's formula needs odd q");
    const int chi = f.field().quadratic_character(discriminant(f));
    return f.degree() % 2 == 0 ? chi : -chi;
}

int von_mangoldt(const Factorization& fact) {
    if (fact.factors.size() != 1) return 0;
    return fact.factors.front().prime.degree();
}

int von_mangoldt(const Poly& f) {
    if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "von_mangoldt() of the zero polynomial");
    return von_mangoldt(factor(f));
}

std::int64_t von_mangoldt2(const Poly& f, Lambda2Route route) {
    if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "von_mangoldt2() of the zero polynomial");
    const Factorization fact = factor(f);
    const std::size_t r = fact.factors.size();
    std::vector<int> deg(r), e(r);
    for (std::size_t i = 0; i < r; ++i) {
        deg[i] = fact.factors[i].prime.degree();
        e[i] = fact.factors[i].multiplicity;
    }
    // a divisor is an exponent vector a with 0 <= a_i <= e_i
    auto lambda_of = [&](const std::vector<int>& a) -> std::int64_t {
        int nonzero = -1;
        for (std::size_t i = 0; i < r; ++i) {
            if (a[i] == 0) continue;
            if (nonzero >= 0) return 0;
            nonzero = static_cast<int>(i);
        }
        return nonzero < 0 ? 0 : deg[static_cast<std::size_t>(nonzero)];
    };
    auto mu_of = [&](const std::vector<int>& a) -> std::int64_t {
        std::int64_t s = 1;
        for (std::size_t i = 0; i < r; ++i) {
            if (a[i] > 1) return 0;
            if (a[i] == 1) s = -s;
        }
        return s;
    };
    auto degree_of = [&](const std::vector<int>& a) -> std::int64_t {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < r; ++i) s += static_cast<std::int64_t>(a[i]) * deg[i];
        return s;
    };

    std::int64_t total = 0;
    std::vector<int> a(r, 0), b(r);
    while (true) {
        for (std::size_t i = 0; i < r; ++i) b[i] = e[i] - a[i];
        if (route == Lambda2Route::convolution) {
            total += lambda_of(a) * lambda_of(b);
        } else {
            const std::int64_t db = degree_of(b);
            total += mu_of(a) * db * db;
        }
        std::size_t i = 0;
        while (i < r && a[i] == e[i]) a[i++] = 0;
        if (i == r) break;
        ++a[i];
    }
    if (route == Lambda2Route::convolution) total += degree_of(e) * lambda_of(e);
    return total;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::uint64_t divisor_k(const Factorization& fact, int k) {
    if (k < 1) throw Error(Errc::InvalidArgument, "divisor_k needs k >= 1");
    std::uint64_t out = 1;
    for (const auto& fp : fact.factors) {
        out *= binomial(static_cast<std::uint64_t>(fp.multiplicity + k - 1), static_cast<std::uint64_t>(k - 1));
    }
    return out;
}

std::uint64_t divisor_k(const Poly& f, int k) {
    if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "divisor_k() of the zero polynomial");
    return divisor_k(factor(f), k);
}

std::vector<CycleType> partitions(int n) {
    std::vector<CycleType> out;
    CycleType cur{n, std::vector<int>(static_cast<std::size_t>(n), 0)};
    // fill lambda_j from the largest part down
    auto rec = [&](auto&& self, int j, int remaining) -> void {
        if (j == 0) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        for (int c = 0; c * j <= remaining; ++c) {
            cur.lambda[static_cast<std::size_t>(j - 1)] = c;
            self(self, j - 1, remaining - c * j);
        }
        cur.lambda[static_cast<std::size_t>(j - 1)] = 0;
    };
    rec(rec, n, n);
    std::sort(out.begin(), out.end());
    return out;
}

void validate_partition(const CycleType& lambda) {
    if (lambda.n < 1 || static_cast<int>(lambda.lambda.size()) != lambda.n) {
        throw Error(Errc::InvalidPartition, "cycle type must list n counts");
    }
    int total = 0;
    for (int j = 1; j <= lambda.n; ++j) {
        const int c = lambda.lambda[static_cast<std::size_t>(j - 1)];
        if (c < 0) throw Error(Errc::InvalidPartition, "negative part count");
        total += j * c;
    }
    if (total != lambda.n) throw Error(Errc::InvalidPartition, "sum j*lambda_j != n");
}

std::uint64_t centralizer_order(const CycleType& lambda) {
    validate_partition(lambda);
    std::uint64_t z = 1;
    for (int j = 1; j <= lambda.n; ++j) {
        const int c = lambda.lambda[static_cast<std::size_t>(j - 1)];
        for (int i = 1; i <= c; ++i) z *= static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(i);
    }
    return z;
}

double cauchy_probability(const CycleType& lambda) { return 1.0 / static_cast<double>(centralizer_order(lambda)); }

CycleType parse_cycle_type(std::string_view text) {
    CycleType out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const auto tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
            throw Error(Errc::ParseError, "bad cycle type '" + std::string(text) + "'");
        }
        out.lambda.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    out.n = static_cast<int>(out.lambda.size());
    validate_partition(out);
    return out;
}

std::string format_cycle_type(const CycleType& lambda) {
    std::string s;
    for (std::size_t i = 0; i < lambda.lambda.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(lambda.lambda[i]);
    }
    return s;
}

}  // namespace ffq
