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

#ifndef FFQ_RMT_HPP
#define FFQ_RMT_HPP

#include "ffq/factor.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ffq {

using Complex = std::complex<double>;

/// Eigenphases of a unitary matrix, each in [0, 2pi).
struct UnitarySpectrum {
    int N = 0;
    std::vector<double> angles;

    std::vector<Complex> eigenvalues() const;
};

/// Haar-distributed U(N): QR of a complex Ginibre matrix, columns rotated by
/// the phases of diag(R), then eigenphases. Deterministic in rng.
UnitarySpectrum haar_spectrum(int N, Rng& rng);

/// Power sums p_j = tr U^j, elementary e_j = tr Lambda^j U and complete
/// homogeneous h_j = tr Sym^j U. Index 0 holds p_0 = N, e_0 = h_0 = 1.
struct TraceFunctionals {
    std::vector<Complex> power;        // p_0..p_m
    std::vector<Complex> elementary;   // e_0..e_min(m,N)
    std::vector<Complex> homogeneous;  // h_0..h_m
};

/// Newton's identities from the power sums.
TraceFunctionals trace_functionals(std::span<const Complex> eigenvalues, int m);
TraceFunctionals trace_functionals(const UnitarySpectrum& spec, int m);

struct McEstimate {
    double mean = 0;
    double stderr_ = 0;
    std::uint64_t samples = 0;
};

using SpectrumStatistic = std::function<double(const UnitarySpectrum&)>;

/// Sample mean and standard error of each statistic over the same Haar draws.
/// Draws are split into fixed chunks with their own derived streams and
/// reduced pairwise in chunk order, so the result does not depend on threads.
std::vector<McEstimate> mc_integrals(std::span<const SpectrumStatistic> stats, int N, std::uint64_t samples,
                                     std::uint64_t seed, int threads = 0);
McEstimate mc_integral(const SpectrumStatistic& stat, int N, std::uint64_t samples, std::uint64_t seed,
                       int threads = 0);

enum class IntegralMode { closed, monte_carlo };

/// |sum_{j_1+..+j_k=m, j_i<=N} tr Lambda^{j_1}U ... tr Lambda^{j_k}U|^2, the
/// integrand of I_k(m;N).
double divisor_statistic(const UnitarySpectrum& spec, int k, int m);
/// |sum_{j=1}^{n-1} tr U^j tr U^{n-j} - n tr U^n|^2
double rodgers_statistic(const UnitarySpectrum& spec, int n);

/// I_k(m;N): binom(m+k^2-1, k^2-1) for m <= N, reflected once through
/// m -> kN - m, zero for m > kN. Throws ClosedFormNotAvailable otherwise.
double divisor_integral_closed(int k, int m, int N);
McEstimate divisor_integral_mc(int k, int m, int N, std::uint64_t samples, std::uint64_t seed, int threads = 0);
double divisor_integral(int k, int m, int N, IntegralMode mode, std::uint64_t samples = 100'000,
                        std::uint64_t seed = 0);

/// sum_{d=1}^{min(n,N)} (2d-1)^2
double rodgers_closed(int n, int N);
McEstimate rodgers_mc(int n, int N, std::uint64_t samples, std::uint64_t seed, int threads = 0);
double rodgers_integral(int n, int N, IntegralMode mode, std::uint64_t samples = 100'000, std::uint64_t seed = 0);

}  // namespace ffq

#endif  // FFQ_RMT_HPP
