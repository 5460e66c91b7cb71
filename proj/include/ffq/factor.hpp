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

#ifndef FFQ_FACTOR_HPP
#define FFQ_FACTOR_HPP

#include "ffq/poly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ffq {

using Rng = std::mt19937_64;

/// Seed used by the overloads that do not take a generator.
inline constexpr std::uint64_t kDefaultFactorSeed = 0x5eed;

struct FactorPower {
    Poly prime;  // monic irreducible
    int multiplicity = 0;
};

/// unit * prod prime^multiplicity, factors sorted by canonical_compare.
struct Factorization {
    Elem unit = 1;
    std::vector<FactorPower> factors;

    Poly expand(const Field& field) const;
};

/// Yun-style decomposition of a monic f into pairwise coprime squarefree
/// parts: f = prod part^multiplicity. Characteristic-p safe.
std::vector<FactorPower> squarefree_decomposition(const Poly& f);

/// Splits a squarefree monic f into (product of all its prime factors of degree d, d).
std::vector<FactorPower> distinct_degree_factorization(const Poly& f);

/// Splits f, a product of distinct monic primes of degree d, into those primes.
std::vector<Poly> equal_degree_factorization(const Poly& f, int d, Rng& rng);

/// Full factorization. Throws ZeroPolynomial.
Factorization factor(const Poly& f, Rng& rng);
Factorization factor(const Poly& f);

/// Rabin's test on monic(f); a nonzero constant is not irreducible.
/// Throws ZeroPolynomial.
bool is_irreducible(const Poly& f);

/// lambda[j-1] = number of prime factors of degree j, counted with multiplicity.
struct CycleType {
    int n = 0;
    std::vector<int> lambda;

    friend bool operator==(const CycleType&, const CycleType&) = default;
    friend auto operator<=>(const CycleType&, const CycleType&) = default;
};

CycleType cycle_type(const Factorization& fact, int n);
/// Throws ConstantPolynomial for deg f < 1.
CycleType cycle_type(const Poly& f);

enum class MobiusBackend { factorization, pellet };

/// mu(f). The pellet backend evaluates (-1)^{deg f} chi_2(disc f) and needs
/// odd q (EvenCharacteristic) and deg f >= 1 (ConstantPolynomial).
int mobius(const Poly& f, MobiusBackend backend = MobiusBackend::factorization);
int mobius(const Factorization& fact);

/// Lambda(f) = deg P when monic(f) = P^k, else 0.
int von_mangoldt(const Poly& f);
int von_mangoldt(const Factorization& fact);

enum class Lambda2Route { convolution, mobius_degree_squared };

/// Lambda_2 = Lambda*Lambda + deg.Lambda, or equivalently mu * deg^2,
/// both evaluated by convolution over the divisors of f.
std::int64_t von_mangoldt2(const Poly& f, Lambda2Route route = Lambda2Route::convolution);

/// Number of ordered k-tuples of monic polynomials with product monic(f).
std::uint64_t divisor_k(const Poly& f, int k);
std::uint64_t divisor_k(const Factorization& fact, int k);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// ---------------------------------------------------------------------------
// partitions and Cauchy's formula

/// All partitions of n as cycle types, in lexicographic order of lambda.
std::vector<CycleType> partitions(int n);
/// z_lambda = prod_j j^{lambda_j} lambda_j!, so that p(lambda) = 1 / z_lambda.
std::uint64_t centralizer_order(const CycleType& lambda);
/// Probability that a uniform permutation of n letters has cycle type lambda.
/// Throws InvalidPartition unless sum j*lambda_j = n.
double cauchy_probability(const CycleType& lambda);
void validate_partition(const CycleType& lambda);
/// Parses "l1,l2,...,ln".
CycleType parse_cycle_type(std::string_view text);
std::string format_cycle_type(const CycleType& lambda);

}  // namespace ffq

#endif  // FFQ_FACTOR_HPP
