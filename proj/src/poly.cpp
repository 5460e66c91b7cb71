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

#include "ffq/poly.hpp"

#include "ffq/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>
#include <sstream>

namespace ffq {

Poly::Poly(Field field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c %= field_.p();
    trim();
}

Poly::Poly(Field field, std::initializer_list<std::int64_t> coeffs) : field_(std::move(field)) {
    coeffs_.reserve(coeffs.size());
    for (auto c : coeffs) coeffs_.push_back(field_.reduce(c));
    trim();
}

Poly Poly::constant(const Field& field, Elem c) { return Poly(field, std::vector<Elem>{c}); }

Poly Poly::monomial(const Field& field, int degree, Elem c) {
    if (degree < 0) throw Error(Errc::InvalidArgument, "negative monomial degree");
    std::vector<Elem> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = c;
    return Poly(field, std::move(v));
}

void Poly::trim() noexcept {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] = field_.add(coeffs_[i], rhs.coeffs_[i]);
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] = field_.sub(coeffs_[i], rhs.coeffs_[i]);
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& rhs) {
    *this = *this * rhs;
    return *this;
}

Poly& Poly::scale(Elem c) {
    c %= field_.p();
    for (auto& a : coeffs_) a = field_.mul(a, c);
    trim();
    return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator-(Poly a) { return a.scale(a.field().p() - 1); }
Poly operator*(Elem c, Poly a) { return a.scale(c); }

Poly operator*(const Poly& a, const Poly& b) {
    const Field& F = a.field();
    if (a.is_zero() || b.is_zero()) return Poly(F);
    const auto ac = a.coeffs();
    const auto bc = b.coeffs();
    const std::uint64_t p = F.p();
    std::vector<std::uint64_t> acc(ac.size() + bc.size() - 1, 0);
    // keep partial sums below 2^63: reduce every row when p is large
    const bool wide = p > (1u << 16);
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == 0) continue;
        for (std::size_t j = 0; j < bc.size(); ++j) {
            acc[i + j] += static_cast<std::uint64_t>(ac[i]) * bc[j];
            if (wide) acc[i + j] %= p;
        }
    }
    std::vector<Elem> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<Elem>(acc[i] % p);
    return Poly(F, std::move(out));
}

std::strong_ordering canonical_compare(const Poly& a, const Poly& b) noexcept {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (int i = a.degree(); i >= 0; --i) {
        if (auto c = a.coeff(static_cast<std::size_t>(i)) <=> b.coeff(static_cast<std::size_t>(i)); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

DivRem divrem(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw Error(Errc::DivisionByZeroPoly, "division by the zero polynomial");
    const Field& F = f.field();
    if (f.degree() < g.degree()) return {Poly(F), f};
    std::vector<Elem> r(f.coeffs().begin(), f.coeffs().end());
    const auto gc = g.coeffs();
    const int dg = g.degree();
    const Elem inv_lead = F.inv(g.lead());
    std::vector<Elem> quot(static_cast<std::size_t>(f.degree() - dg) + 1, 0);
    for (int i = f.degree(); i >= dg; --i) {
        const Elem c = F.mul(r[static_cast<std::size_t>(i)], inv_lead);
        quot[static_cast<std::size_t>(i - dg)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) {
            auto& slot = r[static_cast<std::size_t>(i - dg + j)];
            slot = F.sub(slot, F.mul(c, gc[static_cast<std::size_t>(j)]));
        }
    }
    r.resize(static_cast<std::size_t>(dg));
    return {Poly(F, std::move(quot)), Poly(F, std::move(r))};
}

Poly operator%(const Poly& f, const Poly& g) { return divrem(f, g).remainder; }
Poly operator/(const Poly& f, const Poly& g) { return divrem(f, g).quotient; }

Poly monic(const Poly& f) {
    if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "monic() of the zero polynomial");
    if (f.is_monic()) return f;
    Poly out = f;
    return out.scale(f.field().inv(f.lead()));
}

Poly gcd(const Poly& f, const Poly& g) {
    if (f.is_zero() && g.is_zero()) throw Error(Errc::BothZero, "gcd(0, 0) is undefined");
    Poly a = f;
    Poly b = g;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

Poly derivative(const Poly& f) {
    const Field& F = f.field();
    if (f.degree() < 1) return Poly(F);
    std::vector<Elem> d(static_cast<std::size_t>(f.degree()));
    for (int i = 1; i <= f.degree(); ++i) {
        d[static_cast<std::size_t>(i - 1)] = F.mul(F.reduce(i), f.coeff(static_cast<std::size_t>(i)));
    }
    return Poly(F, std::move(d));
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly inverse_mod(const Poly& a, const Poly& m) {
    const Field& F = m.field();
    Poly r0 = m, r1 = a % m;
    Poly s0(F), s1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        DivRem qr = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(qr.remainder);
        Poly next = s0 - qr.quotient * s1;
        s0 = std::move(s1);
        s1 = std::move(next);
    }
    if (r0.degree() != 0) throw Error(Errc::NotCoprime, "polynomial is not invertible modulo " + format_poly(m));
    return (F.inv(r0.lead()) * s0) % m;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
    Poly result = Poly::constant(base.field(), 1) % m;
    Poly b = base % m;
    while (e) {
        if (e & 1) result = mulmod(result, b, m);
        e >>= 1;
        if (e) b = mulmod(b, b, m);
    }
    return result;
}

Elem evaluate(const Poly& f, Elem x) {
    const Field& F = f.field();
    Elem acc = 0;
    for (int i = f.degree(); i >= 0; --i) acc = F.add(F.mul(acc, x), f.coeff(static_cast<std::size_t>(i)));
    return acc;
}

Elem resultant(const Poly& f, const Poly& g) {
    const Field& F = f.field();
    if (f.is_zero() || g.is_zero()) return 0;
    Poly a = f;
    Poly b = g;
    Elem acc = 1;
    while (true) {
        if (a.degree() == 0) return F.mul(acc, F.pow(a.lead(), static_cast<std::uint64_t>(b.degree())));
        if (b.degree() == 0) return F.mul(acc, F.pow(b.lead(), static_cast<std::uint64_t>(a.degree())));
        Poly r = b % a;
        if (r.is_zero()) return 0;
        // Res(a, b) = lc(a)^{deg b - deg r} Res(a, r) = ... (-1)^{deg a deg r} Res(r, a)
        acc = F.mul(acc, F.pow(a.lead(), static_cast<std::uint64_t>(b.degree() - r.degree())));
        if ((a.degree() % 2 == 1) && (r.degree() % 2 == 1)) acc = F.neg(acc);
        b = std::move(a);
        a = std::move(r);
    }
}

Elem discriminant(const Poly& f) {
    if (f.degree() < 1) throw Error(Errc::ConstantPolynomial, "discriminant needs deg f >= 1");
    const Field& F = f.field();
    const int n = f.degree();
    const Poly df = derivative(f);
    if (df.is_zero()) return 0;
    Elem res = resultant(f, df);
    res = F.mul(res, F.pow(f.lead(), static_cast<std::uint64_t>(n - 1 - df.degree())));
    res = F.div(res, f.lead());
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) res = F.neg(res);
    return res;
}

double norm(const Poly& f) {
    if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "norm of the zero polynomial");
    double r = 1.0;
    for (int i = 0; i < f.degree(); ++i) r *= f.field().q();
    return r;
}

Poly parse_poly(const Field& field, std::string_view text) {
    std::string compact;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    }
    std::vector<Elem> coeffs;
    if (compact.empty()) return Poly(field);
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = compact.find(',', pos);
        const std::string_view tok =
            std::string_view(compact).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::int64_t v = 0;
        const auto* first = tok.data();
        const auto* last = tok.data() + tok.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (tok.empty() || ec != std::errc() || ptr != last) {
            throw Error(Errc::ParseError, "bad coefficient '" + std::string(tok) + "' in \"" + std::string(text) + "\"");
        }
        coeffs.push_back(field.reduce(v));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Poly(field, std::move(coeffs));
}

std::string format_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = 0; i <= f.degree(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(f.coeff(static_cast<std::size_t>(i)));
    }
    return out;
}

std::string pretty(const Poly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const Elem c = f.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (c != 1 || i == 0) os << c;
        if (i >= 1) os << 'x';
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << pretty(f); }

}  // namespace ffq
