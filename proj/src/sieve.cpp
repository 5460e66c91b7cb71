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

#include "ffq/sieve.hpp"

#include "ffq/ensembles.hpp"
#include "ffq/error.hpp"

#include <string>

namespace ffq {

int shape_mobius(const FactorShape& s) noexcept {
    for (int i = 0; i < s.count; ++i) {
        if (s.mult[static_cast<std::size_t>(i)] > 1) return 0;
    }
    return s.count % 2 == 0 ? 1 : -1;
}

int shape_von_mangoldt(const FactorShape& s) noexcept { return s.count == 1 ? s.degree[0] : 0; }

std::int64_t shape_von_mangoldt2(const FactorShape& s) noexcept {
    if (s.count == 1) {
        const std::int64_t d = s.degree[0];
        return (2 * static_cast<std::int64_t>(s.mult[0]) - 1) * d * d;
    }
    if (s.count == 2) return 2 * static_cast<std::int64_t>(s.degree[0]) * s.degree[1];
    return 0;
}

std::uint64_t shape_divisor_k(const FactorShape& s, int k) noexcept {
    std::uint64_t out = 1;
    for (int i = 0; i < s.count; ++i) {
        out *= binomial(static_cast<std::uint64_t>(s.mult[static_cast<std::size_t>(i)] + k - 1),
                        static_cast<std::uint64_t>(k - 1));
    }
    return out;
}

bool shape_is_prime(const FactorShape& s) noexcept { return s.count == 1 && s.mult[0] == 1; }

bool shape_is_squarefree(const FactorShape& s) noexcept {
    for (int i = 0; i < s.count; ++i) {
        if (s.mult[static_cast<std::size_t>(i)] > 1) return false;
    }
    return true;
}

CycleType shape_cycle_type(const FactorShape& s, int n) {
    CycleType ct{n, std::vector<int>(static_cast<std::size_t>(n), 0)};
    for (int i = 0; i < s.count; ++i) {
        ct.lambda[static_cast<std::size_t>(s.degree[static_cast<std::size_t>(i)] - 1)] += s.mult[static_cast<std::size_t>(i)];
    }
    return ct;
}

IntervalSieve::IntervalSieve(Field field, int n) : field_(std::move(field)), n_(n) {
    if (n < 1 || n > kMaxSieveDegree) {
        throw Error(Errc::InvalidArgument, "sieve degree must lie in [1, " + std::to_string(kMaxSieveDegree) + "]");
    }
    build_primes();
}

void IntervalSieve::build_primes() {
    const std::uint32_t q = field_.q();
    std::vector<FactorShape> shapes;
    for (int d = 1; 2 * d <= n_; ++d) {
        // primes of degree d: sieve all of M_d with the primes found so far
        const IntervalSieve::Blocks layout = [&] {
            Blocks b;
            b.hb = 0;
            while (b.hb + 1 <= d - 1 && ipow(q, b.hb + 2) <= (1u << 17)) ++b.hb;
            b.block_size = ipow(q, b.hb + 1);
            b.count = ipow(q, d - b.hb - 1);
            return b;
        }();
        std::vector<Poly> found;
        for (std::uint64_t blk = 0; blk < layout.count; ++blk) {
            const Poly A = monic_from_index(field_, d, blk * layout.block_size);
            std::vector<Elem> base(A.coeffs().begin(), A.coeffs().end());
            run(base, layout.hb, shapes);
            for (std::uint64_t i = 0; i < shapes.size(); ++i) {
                if (shape_is_prime(shapes[i])) found.push_back(monic_from_index(field_, d, blk * layout.block_size + i));
            }
        }
        for (const Poly& P : found) {
            Poly power = P;
            for (int e = 1; e * d <= n_; ++e) {
                powers_.push_back({std::vector<Elem>(power.coeffs().begin(), power.coeffs().end()),
                                   static_cast<std::uint8_t>(d), static_cast<std::uint8_t>(e)});
                power *= P;
            }
        }
        prime_count_ += found.size();
    }
}

void IntervalSieve::run(const std::vector<Elem>& base, int h, std::vector<FactorShape>& out) const {
    const int n = static_cast<int>(base.size()) - 1;
    const std::uint32_t p = field_.p();
    const std::uint64_t H = ipow(p, h + 1);
    out.assign(H, FactorShape{});

    std::vector<std::int64_t> pw(static_cast<std::size_t>(h) + 2);
    pw[0] = 1;
    for (int j = 1; j <= h + 1; ++j) pw[static_cast<std::size_t>(j)] = pw[static_cast<std::size_t>(j - 1)] * p;

    std::vector<std::uint64_t> work(static_cast<std::size_t>(n) + 1);
    std::vector<Elem> cur(static_cast<std::size_t>(h) + 1);
    std::vector<std::uint32_t> digit(static_cast<std::size_t>(h) + 1);

    // each slot absorbs at most n products below p^2 before it is reduced
    const bool lazy = static_cast<double>(p) * p * (n + 1) < 9.0e18;

    auto mark = [](FactorShape& s, const PrimePower& pp) {
        if (pp.exponent == 1) {
            if (s.count < kMaxSieveDegree) {
                s.degree[s.count] = pp.prime_degree;
                s.mult[s.count] = 1;
                ++s.count;
            }
        } else {
            ++s.mult[static_cast<std::size_t>(s.count - 1)];
        }
    };

    for (const PrimePower& pp : powers_) {
        const int m = static_cast<int>(pp.coeffs.size()) - 1;
        if (m > n) continue;
        const Elem* D = pp.coeffs.data();

        // work <- base mod D
        for (int j = 0; j <= n; ++j) work[static_cast<std::size_t>(j)] = base[static_cast<std::size_t>(j)];
        for (int i = n; i >= m; --i) {
            const std::uint64_t c = work[static_cast<std::size_t>(i)] % p;
            if (c == 0) continue;
            const std::uint64_t negc = p - c;
            if (lazy) {
                for (int j = 0; j < m; ++j) work[static_cast<std::size_t>(i - m + j)] += negc * D[j];
            } else {
                for (int j = 0; j < m; ++j) {
                    auto& slot = work[static_cast<std::size_t>(i - m + j)];
                    slot = (slot + negc * D[j]) % p;
                }
            }
        }
        // r = -(base mod D); f = A + g is divisible by D iff g = r mod D
        if (m <= h + 1) {
            std::int64_t idx = 0;
            for (int j = 0; j <= h; ++j) {
                const Elem v = j < m ? static_cast<Elem>((p - work[static_cast<std::size_t>(j)] % p) % p) : 0;
                cur[static_cast<std::size_t>(j)] = v;
                idx += static_cast<std::int64_t>(v) * pw[static_cast<std::size_t>(j)];
                digit[static_cast<std::size_t>(j)] = 0;
            }
            const int t_len = h + 1 - m;
            while (true) {
                mark(out[static_cast<std::size_t>(idx)], pp);
                int i = 0;
                while (i < t_len) {
                    // g += D * x^i
                    for (int j = 0; j <= m; ++j) {
                        const auto pos = static_cast<std::size_t>(i + j);
                        const Elem old = cur[pos];
                        Elem nw = old + D[j];
                        if (nw >= p) nw -= p;
                        cur[pos] = nw;
                        idx += (static_cast<std::int64_t>(nw) - static_cast<std::int64_t>(old)) * pw[pos];
                    }
                    if (++digit[static_cast<std::size_t>(i)] < p) break;
                    digit[static_cast<std::size_t>(i)] = 0;
                    ++i;
                }
                if (i == t_len) break;
            }
        } else {
            bool fits = true;
            for (int j = h + 1; j < m; ++j) {
                if (work[static_cast<std::size_t>(j)] % p != 0) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;
            std::int64_t idx = 0;
            for (int j = 0; j <= h; ++j) {
                idx += static_cast<std::int64_t>((p - work[static_cast<std::size_t>(j)] % p) % p) * pw[static_cast<std::size_t>(j)];
            }
            mark(out[static_cast<std::size_t>(idx)], pp);
        }
    }

    for (auto& s : out) {
        int used = 0;
        for (int i = 0; i < s.count; ++i) used += s.degree[static_cast<std::size_t>(i)] * s.mult[static_cast<std::size_t>(i)];
        if (used < n && s.count < kMaxSieveDegree) {
            s.degree[s.count] = static_cast<std::uint8_t>(n - used);
            s.mult[s.count] = 1;
            ++s.count;
        }
    }
}

void IntervalSieve::sieve(const Poly& A, int h, std::vector<FactorShape>& out) const {
    if (!A.is_monic() || A.degree() != n_) throw Error(Errc::InvalidArgument, "sieve center must be monic of degree n");
    if (h < 0 || h >= n_) throw Error(Errc::InvalidArgument, "need 0 <= h < n");
    std::vector<Elem> base(A.coeffs().begin(), A.coeffs().end());
    for (int j = 0; j <= h; ++j) base[static_cast<std::size_t>(j)] = 0;
    run(base, h, out);
}

IntervalSieve::Blocks IntervalSieve::blocks(int min_h, std::uint64_t target) const {
    if (min_h < 0 || min_h >= n_) throw Error(Errc::InvalidArgument, "need 0 <= h < n");
    Blocks b;
    b.hb = min_h;
    while (b.hb + 1 <= n_ - 1 && ipow(field_.q(), b.hb + 2) <= target) ++b.hb;
    b.block_size = ipow(field_.q(), b.hb + 1);
    b.count = ipow(field_.q(), n_ - b.hb - 1);
    return b;
}

void IntervalSieve::sieve_block(const Blocks& layout, std::uint64_t block, std::vector<FactorShape>& out) const {
    sieve(monic_from_index(field_, n_, block * layout.block_size), layout.hb, out);
}

std::vector<Poly> monic_primes(const Field& field, int d) {
    std::vector<Poly> out;
    const IntervalSieve sv(field, d);
    const auto layout = sv.blocks(0);
    std::vector<FactorShape> shapes;
    for (std::uint64_t b = 0; b < layout.count; ++b) {
        sv.sieve_block(layout, b, shapes);
        for (std::uint64_t i = 0; i < shapes.size(); ++i) {
            if (shape_is_prime(shapes[i])) out.push_back(monic_from_index(field, d, b * layout.block_size + i));
        }
    }
    return out;
}

}  // namespace ffq
