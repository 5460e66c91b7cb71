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

#include "ffq/field.hpp"

#include "ffq/error.hpp"

#include <string>

namespace ffq {

bool is_prime_u64(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

Field::Field(std::uint64_t p) : p_(0) {
    if (p < 2) throw Error(Errc::InvalidArgument, "field size must be at least 2");
    if (p >= (1ull << 31)) throw Error(Errc::InvalidArgument, "modulus must be below 2^31");
    if (!is_prime_u64(p)) throw Error(Errc::CompositeModulus, std::to_string(p) + " is not prime");
    p_ = static_cast<std::uint32_t>(p);

    if (p_ > 2) {
        const auto divs = prime_divisors(p_ - 1);
        for (Elem g = 2; g < p_; ++g) {
            bool ok = true;
            for (auto r : divs) {
                if (pow(g, (p_ - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                primitive_root_ = g;
                break;
            }
        }
    }

    if (odd() && p_ <= kChiTableLimit) {
        auto table = std::make_shared<std::vector<std::int8_t>>(p_, std::int8_t{-1});
        (*table)[0] = 0;
        for (std::uint64_t a = 1; a <= (p_ - 1) / 2; ++a) (*table)[a * a % p_] = 1;
        chi_table_ = std::move(table);
    }
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
    std::uint64_t r = 1 % p_;
    std::uint64_t b = a % p_;
    while (e) {
        if (e & 1) r = r * b % p_;
        b = b * b % p_;
        e >>= 1;
    }
    return static_cast<Elem>(r);
}

Elem Field::inv(Elem a) const {
    if (a % p_ == 0) throw Error(Errc::InvalidArgument, "zero has no inverse");
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        std::int64_t tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    return reduce(t);
}

int Field::quadratic_character(Elem a) const {
    if (!odd()) throw Error(Errc::EvenCharacteristic, "quadratic character needs odd q");
    a %= p_;
    if (chi_table_) return (*chi_table_)[a];
    if (a == 0) return 0;
    return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
}

}  // namespace ffq
