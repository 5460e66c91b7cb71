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

#ifndef FFQ_FIELD_HPP
#define FFQ_FIELD_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace ffq {

using Elem = std::uint32_t;

/// The prime field F_p. Elements are canonical residues in [0, p).
///
/// Immutable once built; copies share the (optional) quadratic-character
/// table, so a Field can be handed to any number of worker threads.
class Field {
   public:
    /// Largest modulus for which the quadratic character is tabulated.
    static constexpr std::uint32_t kChiTableLimit = 1u << 16;

    /// Throws CompositeModulus unless p is prime; InvalidArgument if p >= 2^31.
    explicit Field(std::uint64_t p);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t q() const noexcept { return p_; }
    bool odd() const noexcept { return p_ != 2; }

    Elem reduce(std::int64_t a) const noexcept {
        auto r = a % static_cast<std::int64_t>(p_);
        return static_cast<Elem>(r < 0 ? r + p_ : r);
    }
    Elem add(Elem a, Elem b) const noexcept {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const noexcept {
        return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    }
    Elem pow(Elem a, std::uint64_t e) const noexcept;
    /// Throws InvalidArgument for a == 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    /// Euler's criterion: 0 for a = 0, +1 on nonzero squares, -1 otherwise.
    /// Throws EvenCharacteristic for p = 2.
    int quadratic_character(Elem a) const;

    /// Smallest generator of F_p^*.
    Elem primitive_root() const noexcept { return primitive_root_; }

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.p_ == b.p_; }

   private:
    std::uint32_t p_;
    Elem primitive_root_ = 1;
    std::shared_ptr<const std::vector<std::int8_t>> chi_table_;
};

inline Field make_field(std::uint64_t p) { return Field(p); }

bool is_prime_u64(std::uint64_t n) noexcept;
/// Distinct prime divisors, ascending, by trial division.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace ffq

#endif  // FFQ_FIELD_HPP
