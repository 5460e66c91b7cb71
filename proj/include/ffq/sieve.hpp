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

#ifndef FFQ_SIEVE_HPP
#define FFQ_SIEVE_HPP

#include "ffq/factor.hpp"
#include "ffq/poly.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace ffq {

inline constexpr int kMaxSieveDegree = 24;

/// Degrees and multiplicities of the distinct prime factors of a monic
/// polynomial, in the order the sieve found them.
struct FactorShape {
    std::uint8_t count = 0;
    std::array<std::uint8_t, kMaxSieveDegree> degree{};
    std::array<std::uint8_t, kMaxSieveDegree> mult{};
};

int shape_mobius(const FactorShape& s) noexcept;
int shape_von_mangoldt(const FactorShape& s) noexcept;
/// Closed form on prime-power patterns: (2e-1)d^2 for P^e, 2 d d' for P^e Q^e'.
std::int64_t shape_von_mangoldt2(const FactorShape& s) noexcept;
std::uint64_t shape_divisor_k(const FactorShape& s, int k) noexcept;
bool shape_is_prime(const FactorShape& s) noexcept;
bool shape_is_squarefree(const FactorShape& s) noexcept;
CycleType shape_cycle_type(const FactorShape& s, int n);

/// Segmented sieve over short intervals of M_n.
///
/// For f = A + g with deg g <= h, every prime power P^e with deg P <= n/2 is
/// located by solving g = -A mod P^e: when deg P^e <= h+1 the solutions form
/// a coset enumerated directly, otherwise there is at most one. Whatever
/// degree remains unaccounted for is a single prime of degree > n/2.
class IntervalSieve {
   public:
    IntervalSieve(Field field, int n);

    const Field& field() const noexcept { return field_; }
    int n() const noexcept { return n_; }
    /// Number of monic primes of degree <= n/2 used by the sieve.
    std::size_t prime_count() const noexcept { return prime_count_; }

    /// Shapes of A + g for every g with deg g <= h, indexed by the base-q
    /// digits of g. A must be monic of degree n; its low h+1 coefficients are
    /// ignored.
    void sieve(const Poly& A, int h, std::vector<FactorShape>& out) const;

    /// M_n cut into blocks I(A_b; hb): block b holds the monic indices
    /// [b * block_size, (b+1) * block_size).
    struct Blocks {
        int hb = 0;
        std::uint64_t count = 0;
        std::uint64_t block_size = 0;
    };
    /// Largest hb >= min_h with q^{hb+1} <= max(target, q^{min_h+1}).
    Blocks blocks(int min_h, std::uint64_t target = 1u << 17) const;
    void sieve_block(const Blocks& layout, std::uint64_t block, std::vector<FactorShape>& out) const;

   private:
    struct PrimePower {
        std::vector<Elem> coeffs;  // monic, lowest first
        std::uint8_t prime_degree;
        std::uint8_t exponent;
    };

    void build_primes();
    void run(const std::vector<Elem>& base, int h, std::vector<FactorShape>& out) const;

    Field field_;
    int n_;
    std::size_t prime_count_ = 0;
    std::vector<PrimePower> powers_;  // grouped by prime, exponents ascending
};

/// Monic primes of degree exactly d, in index order (sieve based).
std::vector<Poly> monic_primes(const Field& field, int d);

}  // namespace ffq

#endif  // FFQ_SIEVE_HPP
