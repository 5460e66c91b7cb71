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

#include "ffq/dirichlet.hpp"
#include "ffq/error.hpp"
#include "ffq/parallel.hpp"
#include "ffq/sieve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ffq {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kTrimTolerance = 1e-9;
constexpr double kRootAgreement = 1e-6;

void trim(std::vector<Complex>& c) {
    while (c.size() > 1 && std::abs(c.back()) < kTrimTolerance) c.pop_back();
}

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a >= kTwoPi ? 0.0 : a;
}

// roots of z^D + a_{D-1} z^{D-1} + ... + a_0 given a (lowest first)
std::vector<Complex> companion_roots(const std::vector<Complex>& a) {
    const int D = static_cast<int>(a.size());
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(D, D);
    for (int i = 1; i < D; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < D; ++i) C(i, D - 1) = -a[static_cast<std::size_t>(i)];
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    if (es.info() != Eigen::Success) throw Error(Errc::RootFindingDidNotConverge, "companion eigensolver failed");
    std::vector<Complex> out(static_cast<std::size_t>(D));
    for (int i = 0; i < D; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return out;
}

std::vector<Complex> durand_kerner(const std::vector<Complex>& a) {
    const std::size_t D = a.size();
    double radius = 1;
    for (const auto& c : a) radius = std::max(radius, 1 + std::abs(c));
    const auto p = [&](Complex z) {
        Complex v = 1;
        for (std::size_t i = D; i-- > 0;) v = v * z + a[i];
        return v;
    };
    std::vector<Complex> z(D);
    const Complex seed(0.4, 0.9);
    Complex w = 1;
    for (std::size_t i = 0; i < D; ++i) {
        w *= seed;
        z[i] = radius * w / std::abs(w) * 0.9;
    }
    for (int iter = 0; iter < 5000; ++iter) {
        double step = 0;
        for (std::size_t i = 0; i < D; ++i) {
            Complex denom = 1;
            for (std::size_t j = 0; j < D; ++j) {
                if (j != i) denom *= z[i] - z[j];
            }
            if (std::abs(denom) == 0) denom = 1e-300;
            const Complex delta = p(z[i]) / denom;
            z[i] -= delta;
            step = std::max(step, std::abs(delta));
        }
        if (step < 1e-15 * radius) break;
    }
    return z;
}

}  // namespace

Complex LPolynomial::evaluate(Complex u) const {
    Complex v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * u + coeffs[i];
    return v;
}

std::vector<Complex> l_coefficients(const DirichletCharacter& chi) {
    const DirichletGroup& G = *chi.group;
    const std::uint32_t q = G.field().q();
    std::vector<Complex> c(static_cast<std::size_t>(G.degree()), Complex(0));
    c[0] = 1;
    for (int n = 1; n < G.degree(); ++n) {
        const std::uint64_t top = ipow(q, n);
        Complex s = 0;
        for (std::uint64_t i = 0; i < top; ++i) s += chi.at_residue(i + top);
        c[static_cast<std::size_t>(n)] = s;
    }
    trim(c);
    return c;
}

std::vector<std::vector<Complex>> l_coefficients_all(const GroupPtr& group, int threads) {
    const DirichletGroup& G = *group;
    const std::uint32_t q = G.field().q();
    const std::uint64_t Phi = G.order();
    const auto& orders = G.orders();
    std::vector<std::vector<Complex>> out(Phi, std::vector<Complex>(static_cast<std::size_t>(G.degree()), Complex(0)));
    for (auto& c : out) c[0] = 1;

    std::vector<Complex> buf(Phi), tmp;
    for (int n = 1; n < G.degree(); ++n) {
        std::fill(buf.begin(), buf.end(), Complex(0));
        const std::uint64_t top = ipow(q, n);
        for (std::uint64_t i = 0; i < top; ++i) {
            const std::uint64_t d = G.dlog_index(i + top);
            if (d != DirichletGroup::npos) buf[d] += 1.0;
        }
        // chi_c(u) = prod_i exp(2 pi i c_i u_i / d_i): one DFT per axis
        std::uint64_t stride = 1;
        for (std::uint64_t d : orders) {
            if (d > 1) {
                std::vector<Complex> w(d);
                for (std::uint64_t k = 0; k < d; ++k) {
                    w[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(d));
                }
                const std::uint64_t lines = Phi / d;
                tmp.assign(Phi, Complex(0));
                parallel_for(lines, threads, [&](std::uint64_t line, int) {
                    const std::uint64_t lo = line % stride;
                    const std::uint64_t hi = line / stride;
                    const std::uint64_t base = hi * stride * d + lo;
                    for (std::uint64_t k = 0; k < d; ++k) {
                        Complex s = 0;
                        for (std::uint64_t j = 0; j < d; ++j) s += buf[base + j * stride] * w[(j * k) % d];
                        tmp[base + k * stride] = s;
                    }
                });
                buf.swap(tmp);
            }
            stride *= d;
        }
        for (std::uint64_t id = 0; id < Phi; ++id) out[id][static_cast<std::size_t>(n)] = buf[id];
    }
    for (auto& c : out) trim(c);
    return out;
}

std::vector<Complex> inverse_roots(const std::vector<Complex>& coeffs) {
    if (coeffs.empty() || std::abs(coeffs[0] - Complex(1)) > 1e-12) {
        throw Error(Errc::InvalidArgument, "L-polynomial must have constant term 1");
    }
    const std::size_t D = coeffs.size() - 1;
    if (D == 0) return {};
    // alpha are the roots of z^D + c_1 z^{D-1} + ... + c_D, scaled monic
    std::vector<Complex> a(D);
    for (std::size_t i = 0; i < D; ++i) a[i] = coeffs[D - i];
    const auto primary = companion_roots(a);
    auto fallback = durand_kerner(a);
    for (const Complex& r : primary) {
        std::size_t best = 0;
        double dist = INFINITY;
        for (std::size_t j = 0; j < fallback.size(); ++j) {
            const double e = std::abs(fallback[j] - r);
            if (e < dist) {
                dist = e;
                best = j;
            }
        }
        if (dist > kRootAgreement * std::max(1.0, std::abs(r))) {
            throw Error(Errc::RootFindingDidNotConverge,
                        "companion and Durand-Kerner roots disagree by " + std::to_string(dist));
        }
        fallback.erase(fallback.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return primary;
}

LPolynomial l_polynomial_from_coeffs(const DirichletCharacter& chi, std::vector<Complex> coeffs) {
    if (chi.is_trivial) throw Error(Errc::TrivialCharacter, "L-polynomial of the trivial character");
    LPolynomial L;
    L.coeffs = std::move(coeffs);
    trim(L.coeffs);
    L.inverse_roots = inverse_roots(L.coeffs);
    std::vector<Complex> rest = L.inverse_roots;
    if (chi.is_even && !rest.empty()) {
        const auto it = std::min_element(rest.begin(), rest.end(), [](const Complex& a, const Complex& b) {
            return std::abs(a - Complex(1)) < std::abs(b - Complex(1));
        });
        rest.erase(it);
        L.trivial_zeros_removed = 1;
    }
    const double sq = std::sqrt(static_cast<double>(chi.group->field().q()));
    for (const Complex& a : rest) L.angles.push_back(wrap_angle(std::arg(a / sq)));
    std::sort(L.angles.begin(), L.angles.end());
    return L;
}

LPolynomial l_polynomial(const DirichletCharacter& chi, CoefficientMode mode) {
    if (chi.is_trivial) throw Error(Errc::TrivialCharacter, "L-polynomial of the trivial character");
    if (mode == CoefficientMode::dft) {
        auto all = l_coefficients_all(chi.group, 1);
        return l_polynomial_from_coeffs(chi, std::move(all[chi.id]));
    }
    return l_polynomial_from_coeffs(chi, l_coefficients(chi));
}

// ---------------------------------------------------------------------------

std::vector<std::int64_t> weighted_unit_counts(const DirichletGroup& group, int n, Weight w, std::uint64_t budget) {
    if (n < 0) throw Error(Errc::InvalidArgument, "negative degree");
    const Field& F = group.field();
    const std::uint32_t q = F.q();
    std::vector<std::int64_t> counts(group.order(), 0);
    if (n == 0) {
        const std::int64_t v = w.kind == Weight::Kind::von_mangoldt ? 0 : 1;
        counts[group.dlog_index(Poly::constant(F, 1))] += v;
        return counts;
    }
    check_budget(ipow(q, n), budget, "m_sum");
    if (w.kind == Weight::Kind::divisor && w.k < 1) throw Error(Errc::InvalidArgument, "divisor weight needs k >= 1");

    ResidueOdometer residue(group.modulus(), n);

    const IntervalSieve sieve(F, n);
    const auto layout = sieve.blocks(0);
    std::vector<FactorShape> shapes;
    for (std::uint64_t b = 0; b < layout.count; ++b) {
        if (w.kind != Weight::Kind::unit) sieve.sieve_block(layout, b, shapes);
        for (std::uint64_t i = 0; i < layout.block_size; ++i) {
            std::int64_t v = 1;
            switch (w.kind) {
                case Weight::Kind::unit:
                    break;
                case Weight::Kind::mobius:
                    v = shape_mobius(shapes[i]);
                    break;
                case Weight::Kind::von_mangoldt:
                    v = shape_von_mangoldt(shapes[i]);
                    break;
                case Weight::Kind::divisor:
                    v = static_cast<std::int64_t>(shape_divisor_k(shapes[i], w.k));
                    break;
            }
            if (v != 0) {
                const std::uint64_t d = group.dlog_index(residue.index());
                if (d != DirichletGroup::npos) counts[d] += v;
            }
            residue.next();
        }
    }
    return counts;
}

Complex m_sum(const DirichletCharacter& chi, const std::vector<std::int64_t>& counts) {
    Complex s = 0;
    for (std::uint64_t u = 0; u < counts.size(); ++u) {
        if (counts[u] != 0) s += static_cast<double>(counts[u]) * chi.group->root_of_unity(chi.phase_at(u));
    }
    return s;
}

Complex m_sum(int n, const DirichletCharacter& chi, Weight w, std::uint64_t budget) {
    return m_sum(chi, weighted_unit_counts(*chi.group, n, w, budget));
}

ExplicitFormulaCheck explicit_formula_check(int n, const DirichletCharacter& chi, const LPolynomial& L,
                                            const std::vector<std::int64_t>& mobius_counts) {
    if (!chi.is_even || !chi.is_primitive) throw Error(Errc::NotEvenPrimitive, "explicit formula needs an even primitive character");
    ExplicitFormulaCheck out;
    out.lhs = m_sum(chi, mobius_counts);
    std::vector<Complex> z;
    for (double a : L.angles) z.push_back(std::polar(1.0, a));
    const auto t = trace_functionals(z, std::max(1, n));
    const double sq = std::sqrt(static_cast<double>(chi.group->field().q()));
    double scale = 1;
    for (int k = 0; k <= n; ++k) {
        out.rhs += scale * t.homogeneous[static_cast<std::size_t>(k)];
        scale *= sq;
    }
    out.error = std::abs(out.lhs - out.rhs);
    return out;
}

ExplicitFormulaCheck explicit_formula_check(int n, const DirichletCharacter& chi, std::uint64_t budget) {
    if (!chi.is_even || !chi.is_primitive) throw Error(Errc::NotEvenPrimitive, "explicit formula needs an even primitive character");
    const LPolynomial L = l_polynomial(chi);
    return explicit_formula_check(n, chi, L, weighted_unit_counts(*chi.group, n, Weight::mobius(), budget));
}

KatzAverage katz_average(int N, const Field& field, const SpectrumStatistic& statistic,
                         std::uint64_t reference_samples, std::uint64_t seed, int threads, std::uint64_t budget) {
    if (N < 2) throw Error(Errc::InvalidArgument, "Katz averages need N >= 2");
    const GroupPtr G = DirichletGroup::build(Poly::monomial(field, N + 2), budget);
    const auto coeffs = l_coefficients_all(G, threads);
    std::vector<std::uint64_t> ids;
    for (std::uint64_t id = 0; id < G->order(); ++id) {
        const DirichletCharacter chi = character_by_id(G, id);
        if (chi.is_even && chi.is_primitive) ids.push_back(id);
    }
    std::vector<double> values(ids.size());
    parallel_for(ids.size(), threads, [&](std::uint64_t i, int) {
        const DirichletCharacter chi = character_by_id(G, ids[i]);
        const LPolynomial L = l_polynomial_from_coeffs(chi, coeffs[ids[i]]);
        if (L.angles.size() != static_cast<std::size_t>(N)) {
            throw Error(Errc::InvalidArgument, "even primitive character with " + std::to_string(L.angles.size()) +
                                                   " eigenangles, expected " + std::to_string(N));
        }
        values[i] = statistic(UnitarySpectrum{N, L.angles});
    });
    KatzAverage out;
    out.characters = ids.size();
    double s = 0;
    for (double v : values) s += v;
    out.empirical = ids.empty() ? 0 : s / static_cast<double>(ids.size());
    out.reference = mc_integral(statistic, N, reference_samples, seed, threads);
    const std::uint32_t q = field.q();
    out.caveat = N == 2 && (q % 2 == 0 || q % 5 == 0);
    return out;
}

}  // namespace ffq
