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

#ifndef FFQ_POLY_HPP
#define FFQ_POLY_HPP

#include "ffq/field.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ffq {

/// A polynomial over a prime field, coefficients lowest degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and reports degree kZeroDegree.
class Poly {
   public:
    static constexpr int kZeroDegree = -1;

    explicit Poly(Field field) : field_(std::move(field)) {}
    Poly(Field field, std::vector<Elem> coeffs);
    Poly(Field field, std::initializer_list<std::int64_t> coeffs);

    static Poly constant(const Field& field, Elem c);
    static Poly monomial(const Field& field, int degree, Elem c = 1);
    static Poly x(const Field& field) { return monomial(field, 1); }

    const Field& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    Elem coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
    Elem lead() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
    std::span<const Elem> coeffs() const noexcept { return coeffs_; }

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);
    Poly& scale(Elem c);

    friend bool operator==(const Poly& a, const Poly& b) noexcept {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

   private:
    void trim() noexcept;

    Field field_;
    std::vector<Elem> coeffs_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator-(Poly a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Elem c, Poly a);

/// Total order used for canonical factor lists: degree first, then
/// coefficients compared from the top (the enumeration order of M_n).
std::strong_ordering canonical_compare(const Poly& a, const Poly& b) noexcept;

struct DivRem {
    Poly quotient;
    Poly remainder;
};

/// f = quotient * g + remainder, deg remainder < deg g. Throws DivisionByZeroPoly.
DivRem divrem(const Poly& f, const Poly& g);
Poly operator%(const Poly& f, const Poly& g);
Poly operator/(const Poly& f, const Poly& g);

/// Monic gcd; throws BothZero when both arguments vanish.
Poly gcd(const Poly& f, const Poly& g);
/// f divided by its leading coefficient. Throws ZeroPolynomial.
Poly monic(const Poly& f);
Poly derivative(const Poly& f);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
/// a^{-1} mod m via the extended Euclidean algorithm; throws NotCoprime.
Poly inverse_mod(const Poly& a, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);
/// Value at a field element (Horner).
Elem evaluate(const Poly& f, Elem x);

/// Res(f, g) = lc(f)^deg g * prod_{f(a)=0} g(a), actual degrees.
Elem resultant(const Poly& f, const Poly& g);
/// (-1)^{n(n-1)/2} Res(f, f') / lc(f) with the Sylvester degree n-1 for f'.
/// Throws ConstantPolynomial for deg f < 1.
Elem discriminant(const Poly& f);

/// q^{deg f}; throws ZeroPolynomial for f = 0.
double norm(const Poly& f);

/// "c0,c1,...,cn", lowest degree first. Whitespace is ignored; "0" or an
/// empty string is the zero polynomial.
Poly parse_poly(const Field& field, std::string_view text);
std::string format_poly(const Poly& f);
/// Human-readable form such as "x^3 + 2x + 1".
std::string pretty(const Poly& f);
std::ostream& operator<<(std::ostream& os, const Poly& f);

}  // namespace ffq

#endif  // FFQ_POLY_HPP
