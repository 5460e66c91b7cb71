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

#ifndef FFQ_EXPERIMENTS_HPP
#define FFQ_EXPERIMENTS_HPP

#include "ffq/ensembles.hpp"
#include "ffq/factor.hpp"
#include "ffq/poly.hpp"
#include "ffq/report.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ffq {

/// Smallest q at which q -> infinity statements get a pass/fail verdict.
inline constexpr std::uint32_t kAsymptoticMinQ = 11;

struct RunOptions {
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultBudget;
    int threads = 0;
    /// Haar samples for Monte Carlo predictions and references.
    std::uint64_t mc_samples = 100'000;
};

enum class EnumerationMode { exhaustive, sampled };
enum class PrimeCountMode { exhaustive, necklace };
enum class CensusBackend { factorization, sieve };

std::string to_string(EnumerationMode m);

/// Shifts alpha_1..alpha_r with exponents eps_i in {1, 2}.
struct ShiftTuple {
    std::vector<Poly> shifts;
    std::vector<int> exponents;
};
/// Throws InvalidShiftTuple: empty, mismatched lengths, duplicate shifts,
/// deg >= n, exponents outside {1, 2} or all equal to 2.
void validate_shift_tuple(const ShiftTuple& t, int n);

/// (1/n) sum_{d | n} mu(d) q^{n/d}
std::uint64_t necklace_count(std::uint64_t q, int n);
/// Classical Moebius function of an integer.
int integer_mobius(std::uint64_t n);
/// Phi(Q), the number of units mod Q.
std::uint64_t totient(const Poly& Q);

ExperimentReport exp_prime_count(const Field& F, int n, PrimeCountMode mode = PrimeCountMode::exhaustive,
                                 const RunOptions& opt = {});
ExperimentReport exp_interval_primes(const Field& F, int n, int h, EnumerationMode mode, std::uint64_t samples,
                                     const RunOptions& opt = {});
ExperimentReport exp_interval_cycles(const Field& F, int n, int h, const CycleType& lambda, EnumerationMode mode,
                                     std::uint64_t samples, const RunOptions& opt = {});
ExperimentReport exp_cycle_census(const Field& F, int n, CensusBackend backend = CensusBackend::factorization,
                                  const RunOptions& opt = {});
ExperimentReport exp_ap_primes(const Field& F, int n, const Poly& Q, const Poly& A, const RunOptions& opt = {});
ExperimentReport exp_chowla(const Field& F, int n, const ShiftTuple& t, EnumerationMode mode = EnumerationMode::exhaustive,
                            std::uint64_t samples = 0, const RunOptions& opt = {});
ExperimentReport exp_twin(const Field& F, int n, const std::vector<Poly>& shifts, const RunOptions& opt = {});
ExperimentReport exp_divisor_corr(const Field& F, int n, int r, const Poly& shift, const RunOptions& opt = {});
/// With both partitions given, details carry that pair; the verdict always
/// uses the maximum over all pairs.
ExperimentReport exp_joint_cycles(const Field& F, int n, const Poly& alpha, const std::optional<CycleType>& lambda1,
                                  const std::optional<CycleType>& lambda2, const RunOptions& opt = {});
ExperimentReport exp_var_psi(const Field& F, int n, int h, EnumerationMode mode, std::uint64_t samples,
                             const RunOptions& opt = {});
ExperimentReport exp_var_G(const Field& F, int n, const Poly& Q, const RunOptions& opt = {});
ExperimentReport exp_var_lambda2(const Field& F, int n, int h, EnumerationMode mode, std::uint64_t samples,
                                 const RunOptions& opt = {});
ExperimentReport exp_var_mobius(const Field& F, int n, int h, EnumerationMode mode, std::uint64_t samples,
                                const RunOptions& opt = {});
ExperimentReport exp_var_divisor(const Field& F, int n, int h, int k, EnumerationMode mode, std::uint64_t samples,
                                 const RunOptions& opt = {});
/// Average of |tr Theta_chi^j|^2 over even primitive chi mod x^{N+2}.
ExperimentReport exp_katz(const Field& F, int N, int j, const RunOptions& opt = {});

/// H * I_2(n; n-h-2) and the cubic H (n-2h+5)(n-2h+6)(n-2h+7)/6, per unit H.
double divisor2_cubic(int n, int h);

/// N_mu(x^{h+1}B; h) by interval summation against the even-character
/// expansion, for every B in M_{n-h-1}.
struct MobiusDecomposition {
    std::vector<std::int64_t> direct;
    std::vector<double> via_characters;
    double max_error = 0;
};
MobiusDecomposition check_mobius_decomposition(const Field& F, int n, int h, const RunOptions& opt = {});

}  // namespace ffq

#endif  // FFQ_EXPERIMENTS_HPP
