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

#include "ffq/ensembles.hpp"

#include "ffq/error.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace ffq {

std::uint64_t ipow(std::uint64_t q, int n) noexcept {
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
        r *= q;
    }
    return r;
}

void check_budget(std::uint64_t count, std::uint64_t budget, const char* what) {
    if (count > budget) {
        throw Error(Errc::BudgetExceeded, std::string(what) + " needs " + std::to_string(count) +
                                              " polynomials, budget is " + std::to_string(budget));
    }
}

Poly poly_from_digits(const Field& field, int len, std::uint64_t index) {
    std::vector<Elem> c(static_cast<std::size_t>(len));
    for (auto& a : c) {
        a = static_cast<Elem>(index % field.q());
        index /= field.q();
    }
    return Poly(field, std::move(c));
}

std::uint64_t digits_index(const Poly& f, int len) {
    std::uint64_t idx = 0;
    for (int j = len - 1; j >= 0; --j) idx = idx * f.field().q() + f.coeff(static_cast<std::size_t>(j));
    return idx;
}

Poly monic_from_index(const Field& field, int n, std::uint64_t index) {
    std::vector<Elem> c(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j < n; ++j) {
        c[static_cast<std::size_t>(j)] = static_cast<Elem>(index % field.q());
        index /= field.q();
    }
    c.back() = 1;
    return Poly(field, std::move(c));
}

std::uint64_t monic_index(const Poly& f) {
    if (!f.is_monic()) throw Error(Errc::InvalidArgument, "monic_index needs a monic polynomial");
    return digits_index(f, f.degree());
}

PolyRange enumerate_monic(const Field& field, int n, std::uint64_t budget, std::uint64_t start_index) {
    if (n < 0) throw Error(Errc::InvalidArgument, "negative degree");
    const std::uint64_t total = ipow(field.q(), n);
    check_budget(total, budget, "enumerate_monic");
    start_index = std::min(start_index, total);
    return PolyRange(start_index, total, [field, n](std::uint64_t i) { return monic_from_index(field, n, i); });
}

IntervalSpec make_interval(Poly center, int h) {
    if (!center.is_monic() || center.degree() < 1) {
        throw Error(Errc::InvalidArgument, "interval center must be monic of degree >= 1");
    }
    if (h < 0 || h >= center.degree()) throw Error(Errc::InvalidArgument, "need 0 <= h < n");
    return IntervalSpec{std::move(center), h};
}

bool contains(const IntervalSpec& spec, const Poly& f) {
    if (!f.is_monic() || f.degree() != spec.n()) return false;
    return (f - spec.center).degree() <= spec.h;
}

Poly class_representative(const Poly& f, int h) {
    std::vector<Elem> c(f.coeffs().begin(), f.coeffs().end());
    for (int j = 0; j <= h && j < static_cast<int>(c.size()); ++j) c[static_cast<std::size_t>(j)] = 0;
    return Poly(f.field(), std::move(c));
}

PolyRange interval_members(const IntervalSpec& spec) {
    const Poly base = class_representative(spec.center, spec.h);
    const int h = spec.h;
    return PolyRange(0, spec.size(), [base, h](std::uint64_t i) { return base + poly_from_digits(base.field(), h + 1, i); });
}

IntervalClasses::IntervalClasses(Field field, int n, int h) : field_(std::move(field)), n_(n), h_(h), count_(0) {
    if (n < 1 || h < 0 || h >= n) throw Error(Errc::InvalidArgument, "need 0 <= h < n");
    count_ = ipow(field_.q(), n - h - 1);
}

IntervalSpec IntervalClasses::at(std::uint64_t class_index) const {
    const std::uint64_t stride = ipow(field_.q(), h_ + 1);
    return IntervalSpec{monic_from_index(field_, n_, class_index * stride), h_};
}

std::uint64_t IntervalClasses::index_of(const Poly& f) const { return monic_index(f) / ipow(field_.q(), h_ + 1); }

IntervalClasses interval_representatives(const Field& field, int n, int h) { return IntervalClasses(field, n, h); }

Poly reversal(const Poly& f, int n) {
    if (f.degree() > n) throw Error(Errc::DegreeExceedsN, "deg f exceeds n in reversal");
    std::vector<Elem> c(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 0; j <= f.degree(); ++j) c[static_cast<std::size_t>(n - j)] = f.coeff(static_cast<std::size_t>(j));
    return Poly(f.field(), std::move(c));
}

IntervalProgressionPair interval_to_ap(const Poly& B, int n, int h) {
    if (h < 0 || h > n - 2) throw Error(Errc::DegreeMismatch, "need 0 <= h <= n-2");
    if (!B.is_monic() || B.degree() != n - h - 1) throw Error(Errc::DegreeMismatch, "B must be monic of degree n-h-1");
    const Field& F = B.field();
    IntervalSpec interval{Poly::monomial(F, h + 1) * B, h};
    ProgressionSpec ap{Poly::monomial(F, n - h), reversal(B, n - h - 1), n};
    return {std::move(interval), std::move(ap)};
}

std::vector<Poly> progression_members(const ProgressionSpec& ap) {
    const Field& F = ap.modulus.field();
    const int free_len = ap.max_degree - ap.modulus.degree() + 1;
    std::vector<Poly> out;
    if (free_len <= 0) {
        out.push_back(ap.residue % ap.modulus);
        return out;
    }
    const Poly base = ap.residue % ap.modulus;
    const std::uint64_t count = ipow(F.q(), free_len);
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(base + ap.modulus * poly_from_digits(F, free_len, i));
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return canonical_compare(a, b) < 0; });
    return out;
}

bool verify_interval_ap_bijection(const IntervalProgressionPair& pair) {
    const int n = pair.interval.n();
    std::vector<Poly> image;
    for (const Poly& f : interval_members(pair.interval)) image.push_back(reversal(f, n));
    std::sort(image.begin(), image.end(), [](const Poly& a, const Poly& b) { return canonical_compare(a, b) < 0; });
    return image == progression_members(pair.progression);
}

ResidueOdometer::ResidueOdometer(const Poly& Q, int n) : q_(Q.field().q()), n_(n), m_(Q.degree()) {
    if (m_ < 1) throw Error(Errc::InvalidArgument, "modulus must have positive degree");
    if (n < 0) throw Error(Errc::InvalidArgument, "negative degree");
    const Field& F = Q.field();
    xr_.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const Poly r = Poly::monomial(F, j) % Q;
        auto& row = xr_[static_cast<std::size_t>(j)];
        row.resize(static_cast<std::size_t>(m_));
        for (int t = 0; t < m_; ++t) row[static_cast<std::size_t>(t)] = r.coeff(static_cast<std::size_t>(t));
    }
    qpow_.resize(static_cast<std::size_t>(m_));
    for (int t = 0; t < m_; ++t) qpow_[static_cast<std::size_t>(t)] = ipow(q_, t);
    reset();
}

void ResidueOdometer::reset() {
    cur_ = xr_[static_cast<std::size_t>(n_)];
    digit_.assign(static_cast<std::size_t>(n_), 0);
}

std::uint64_t ResidueOdometer::index() const noexcept {
    std::uint64_t r = 0;
    for (int t = 0; t < m_; ++t) r += cur_[static_cast<std::size_t>(t)] * qpow_[static_cast<std::size_t>(t)];
    return r;
}

void ResidueOdometer::next() noexcept {
    for (int j = 0; j < n_; ++j) {
        const auto& add = xr_[static_cast<std::size_t>(j)];
        for (int t = 0; t < m_; ++t) {
            Elem s = cur_[static_cast<std::size_t>(t)] + add[static_cast<std::size_t>(t)];
            if (s >= q_) s -= q_;
            cur_[static_cast<std::size_t>(t)] = s;
        }
        if (++digit_[static_cast<std::size_t>(j)] < q_) return;
        digit_[static_cast<std::size_t>(j)] = 0;
    }
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed + (stream + 1) * 0x9e3779b97f4a7c15ull));
}

Poly sample_monic(const Field& field, int n, Rng& rng) {
    std::uniform_int_distribution<Elem> dist(0, field.q() - 1);
    std::vector<Elem> c(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = dist(rng);
    c.back() = 1;
    return Poly(field, std::move(c));
}

}  // namespace ffq
