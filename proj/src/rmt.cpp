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

#include "ffq/rmt.hpp"

#include "ffq/ensembles.hpp"
#include "ffq/error.hpp"
#include "ffq/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace ffq {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr std::uint64_t kChunk = 1024;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a >= kTwoPi ? 0.0 : a;
}

struct Moments {
    double sum = 0;
    double sumsq = 0;
    std::uint64_t n = 0;
};

Moments combine(const Moments& a, const Moments& b) { return {a.sum + b.sum, a.sumsq + b.sumsq, a.n + b.n}; }

/// Pairwise reduction in index order.
Moments reduce_pairwise(std::span<const Moments> parts) {
    if (parts.empty()) return {};
    if (parts.size() == 1) return parts[0];
    const std::size_t half = parts.size() / 2;
    return combine(reduce_pairwise(parts.first(half)), reduce_pairwise(parts.subspan(half)));
}

McEstimate finish(const Moments& m) {
    McEstimate e;
    e.samples = m.n;
    if (m.n == 0) return e;
    const double n = static_cast<double>(m.n);
    e.mean = m.sum / n;
    if (m.n > 1) {
        const double var = std::max(0.0, (m.sumsq - m.sum * m.sum / n) / (n - 1));
        e.stderr_ = std::sqrt(var / n);
    }
    return e;
}

// coefficient of u^m in (sum_j e_j u^j)^k
Complex power_coefficient(std::span<const Complex> e, int k, int m) {
    std::vector<Complex> acc(static_cast<std::size_t>(m) + 1, Complex(0));
    acc[0] = 1;
    for (int t = 0; t < k; ++t) {
        std::vector<Complex> next(acc.size(), Complex(0));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            if (acc[i] == Complex(0)) continue;
            for (std::size_t j = 0; j < e.size() && i + j < acc.size(); ++j) next[i + j] += acc[i] * e[j];
        }
        acc = std::move(next);
    }
    return acc[static_cast<std::size_t>(m)];
}

}  // namespace

std::vector<Complex> UnitarySpectrum::eigenvalues() const {
    std::vector<Complex> out;
    out.reserve(angles.size());
    for (double a : angles) out.push_back(std::polar(1.0, a));
    return out;
}

UnitarySpectrum haar_spectrum(int N, Rng& rng) {
    if (N < 1) throw Error(Errc::InvalidArgument, "unitary dimension must be positive");
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd Z(N, N);
    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            Z(i, j) = Complex(re, im);
        }
    }
    UnitarySpectrum out{N, {}};
    out.angles.reserve(static_cast<std::size_t>(N));
    if (N == 1) {
        out.angles.push_back(wrap_angle(std::arg(Z(0, 0))));
        return out;
    }
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    Eigen::MatrixXcd Q = qr.householderQ();
    const Eigen::MatrixXcd& R = qr.matrixQR();
    for (int j = 0; j < N; ++j) {
        const Complex r = R(j, j);
        const double a = std::abs(r);
        Q.col(j) *= a > 0 ? r / a : Complex(1);
    }
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Q, false);
    for (int j = 0; j < N; ++j) out.angles.push_back(wrap_angle(std::arg(es.eigenvalues()(j))));
    return out;
}

TraceFunctionals trace_functionals(std::span<const Complex> eigenvalues, int m) {
    if (m < 1) throw Error(Errc::InvalidArgument, "trace_functionals needs m >= 1");
    const int N = static_cast<int>(eigenvalues.size());
    TraceFunctionals t;
    t.power.assign(static_cast<std::size_t>(m) + 1, Complex(0));
    t.power[0] = static_cast<double>(N);
    std::vector<Complex> z(eigenvalues.begin(), eigenvalues.end());
    std::vector<Complex> zp(z.size(), Complex(1));
    for (int j = 1; j <= m; ++j) {
        Complex s = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            zp[i] *= z[i];
            s += zp[i];
        }
        t.power[static_cast<std::size_t>(j)] = s;
    }
    const auto& p = t.power;
    // k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    const int emax = std::min(m, N);
    t.elementary.assign(static_cast<std::size_t>(emax) + 1, Complex(0));
    t.elementary[0] = 1;
    for (int k = 1; k <= emax; ++k) {
        Complex s = 0;
        for (int i = 1; i <= k; ++i) {
            const Complex term = t.elementary[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i)];
            s += (i % 2 == 1) ? term : -term;
        }
        t.elementary[static_cast<std::size_t>(k)] = s / static_cast<double>(k);
    }
    // k h_k = sum_{i=1}^k h_{k-i} p_i
    t.homogeneous.assign(static_cast<std::size_t>(m) + 1, Complex(0));
    t.homogeneous[0] = 1;
    for (int k = 1; k <= m; ++k) {
        Complex s = 0;
        for (int i = 1; i <= k; ++i) s += t.homogeneous[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i)];
        t.homogeneous[static_cast<std::size_t>(k)] = s / static_cast<double>(k);
    }
    return t;
}

TraceFunctionals trace_functionals(const UnitarySpectrum& spec, int m) {
    const auto z = spec.eigenvalues();
    return trace_functionals(z, m);
}

std::vector<McEstimate> mc_integrals(std::span<const SpectrumStatistic> stats, int N, std::uint64_t samples,
                                     std::uint64_t seed, int threads) {
    if (N < 1) throw Error(Errc::InvalidArgument, "unitary dimension must be positive");
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    const std::size_t S = stats.size();
    std::vector<Moments> parts(chunks * S);
    parallel_for(chunks, threads, [&](std::uint64_t c, int) {
        Rng rng = derive_rng(seed, c);
        const std::uint64_t count = std::min(kChunk, samples - c * kChunk);
        for (std::uint64_t t = 0; t < count; ++t) {
            const UnitarySpectrum spec = haar_spectrum(N, rng);
            for (std::size_t s = 0; s < S; ++s) {
                const double v = stats[s](spec);
                Moments& m = parts[s * chunks + c];
                m.sum += v;
                m.sumsq += v * v;
                ++m.n;
            }
        }
    });
    std::vector<McEstimate> out;
    out.reserve(S);
    for (std::size_t s = 0; s < S; ++s) {
        out.push_back(finish(reduce_pairwise(std::span<const Moments>(parts).subspan(s * chunks, chunks))));
    }
    return out;
}

McEstimate mc_integral(const SpectrumStatistic& stat, int N, std::uint64_t samples, std::uint64_t seed,
                       int threads) {
    return mc_integrals(std::span<const SpectrumStatistic>(&stat, 1), N, samples, seed, threads)[0];
}

double divisor_statistic(const UnitarySpectrum& spec, int k, int m) {
    const auto t = trace_functionals(spec, std::max(1, m));
    return std::norm(power_coefficient(t.elementary, k, m));
}

double rodgers_statistic(const UnitarySpectrum& spec, int n) {
    const auto t = trace_functionals(spec, n);
    Complex s = -static_cast<double>(n) * t.power[static_cast<std::size_t>(n)];
    for (int j = 1; j < n; ++j) s += t.power[static_cast<std::size_t>(j)] * t.power[static_cast<std::size_t>(n - j)];
    return std::norm(s);
}

double divisor_integral_closed(int k, int m, int N) {
    if (k < 1 || m < 0 || N < 1) throw Error(Errc::InvalidArgument, "need k >= 1, m >= 0, N >= 1");
    if (m > k * N) return 0.0;
    const auto closed = [k](int mm) {
        return static_cast<double>(binomial(static_cast<std::uint64_t>(mm + k * k - 1), static_cast<std::uint64_t>(k * k - 1)));
    };
    if (m <= N) return closed(m);
    if (k * N - m <= N) return closed(k * N - m);
    throw Error(Errc::ClosedFormNotAvailable, "I_" + std::to_string(k) + "(" + std::to_string(m) + ";" +
                                                  std::to_string(N) + ") has no closed form; use monte_carlo");
}

McEstimate divisor_integral_mc(int k, int m, int N, std::uint64_t samples, std::uint64_t seed, int threads) {
    if (k < 1 || m < 0 || N < 1) throw Error(Errc::InvalidArgument, "need k >= 1, m >= 0, N >= 1");
    return mc_integral([k, m](const UnitarySpectrum& s) { return divisor_statistic(s, k, m); }, N, samples, seed,
                       threads);
}

double divisor_integral(int k, int m, int N, IntegralMode mode, std::uint64_t samples, std::uint64_t seed) {
    if (mode == IntegralMode::closed) return divisor_integral_closed(k, m, N);
    return divisor_integral_mc(k, m, N, samples, seed).mean;
}

double rodgers_closed(int n, int N) {
    if (n < 2 || N < 1) throw Error(Errc::InvalidArgument, "need n >= 2, N >= 1");
    double s = 0;
    for (int d = 1; d <= std::min(n, N); ++d) s += static_cast<double>((2 * d - 1) * (2 * d - 1));
    return s;
}

McEstimate rodgers_mc(int n, int N, std::uint64_t samples, std::uint64_t seed, int threads) {
    if (n < 2 || N < 1) throw Error(Errc::InvalidArgument, "need n >= 2, N >= 1");
    return mc_integral([n](const UnitarySpectrum& s) { return rodgers_statistic(s, n); }, N, samples, seed, threads);
}

double rodgers_integral(int n, int N, IntegralMode mode, std::uint64_t samples, std::uint64_t seed) {
    if (mode == IntegralMode::closed) return rodgers_closed(n, N);
    return rodgers_mc(n, N, samples, seed).mean;
}

}  // namespace ffq
