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

#ifndef FFQ_ENSEMBLES_HPP
#define FFQ_ENSEMBLES_HPP

#include "ffq/factor.hpp"
#include "ffq/poly.hpp"

#include <cstdint>
#include <functional>
#include <iterator>
#include <vector>

namespace ffq {

/// Default cap on the number of polynomials a single enumeration may visit.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// q^n, saturating at UINT64_MAX.
std::uint64_t ipow(std::uint64_t q, int n) noexcept;
/// Throws BudgetExceeded when count > budget.
void check_budget(std::uint64_t count, std::uint64_t budget, const char* what);

// ---------------------------------------------------------------------------
// index <-> polynomial
//
// A monic f = x^n + sum_{j<n} a_j x^j has index sum_j a_j q^j, so consecutive
// indices change the constant term first ("little-endian lexicographic").

Poly monic_from_index(const Field& field, int n, std::uint64_t index);
std::uint64_t monic_index(const Poly& f);
/// Polynomial of degree < len whose coefficients are the base-q digits of index.
Poly poly_from_digits(const Field& field, int len, std::uint64_t index);
std::uint64_t digits_index(const Poly& f, int len);

/// A random-access, shardable sequence of polynomials produced on demand.
class PolyRange {
   public:
    using Generator = std::function<Poly(std::uint64_t)>;

    PolyRange(std::uint64_t first, std::uint64_t last, Generator gen)
        : first_(first), last_(last), gen_(std::move(gen)) {}

    std::uint64_t size() const noexcept { return last_ - first_; }
    Poly operator[](std::uint64_t i) const { return gen_(first_ + i); }
    /// Items [begin, end) of this range, e.g. one worker's shard.
    PolyRange slice(std::uint64_t begin, std::uint64_t end) const { return {first_ + begin, first_ + end, gen_}; }

    class iterator {
       public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Poly;
        using difference_type = std::ptrdiff_t;

        iterator(const PolyRange* r, std::uint64_t i) : r_(r), i_(i) {}
        Poly operator*() const { return (*r_)[i_]; }
        iterator& operator++() {
            ++i_;
            return *this;
        }
        bool operator==(const iterator& o) const { return i_ == o.i_; }

       private:
        const PolyRange* r_;
        std::uint64_t i_;
    };
    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, size()}; }

   private:
    std::uint64_t first_, last_;
    Generator gen_;
};

/// Every monic polynomial of degree n, in index order, optionally starting at
/// start_index. Throws BudgetExceeded if q^n > budget.
PolyRange enumerate_monic(const Field& field, int n, std::uint64_t budget = kDefaultBudget,
                          std::uint64_t start_index = 0);

// ---------------------------------------------------------------------------
// short intervals

/// I(A;h) = { f monic, deg f = n, deg(f - A) <= h }, 0 <= h < n.
struct IntervalSpec {
    Poly center;
    int h = 0;

    int n() const noexcept { return center.degree(); }
    /// q^{h+1}
    std::uint64_t size() const noexcept { return ipow(center.field().q(), h + 1); }
};

/// Validates A monic of degree n >= 1 and 0 <= h < n (InvalidArgument otherwise).
IntervalSpec make_interval(Poly center, int h);
bool contains(const IntervalSpec& spec, const Poly& f);
/// The representative of the interval class: center with coefficients 0..h zeroed.
Poly class_representative(const Poly& f, int h);
/// Members in the index order of their low part (coefficients 0..h).
PolyRange interval_members(const IntervalSpec& spec);

/// The q^{n-h-1} interval classes of M_n under deg(A - A') <= h, each
/// represented with zero coefficients in degrees 0..h.
class IntervalClasses {
   public:
    IntervalClasses(Field field, int n, int h);

    std::uint64_t count() const noexcept { return count_; }
    IntervalSpec at(std::uint64_t class_index) const;
    std::uint64_t index_of(const Poly& f) const;
    int n() const noexcept { return n_; }
    int h() const noexcept { return h_; }
    const Field& field() const noexcept { return field_; }

   private:
    Field field_;
    int n_, h_;
    std::uint64_t count_;
};

IntervalClasses interval_representatives(const Field& field, int n, int h);

// ---------------------------------------------------------------------------
// reversal and the short-interval / progression correspondence

/// theta_n(f) = x^n f(1/x); throws DegreeExceedsN if deg f > n.
Poly reversal(const Poly& f, int n);

/// The residue class { g in P_{<=n} : g = residue mod modulus }.
struct ProgressionSpec {
    Poly modulus;
    Poly residue;
    int max_degree = 0;
};

struct IntervalProgressionPair {
    IntervalSpec interval;    // I(x^{h+1} B; h)
    ProgressionSpec progression;  // theta_{n-h-1}(B) mod x^{n-h}, degree <= n
};

/// B monic of degree n-h-1, 0 <= h <= n-2; throws DegreeMismatch otherwise.
IntervalProgressionPair interval_to_ap(const Poly& B, int n, int h);
/// Members of a progression sorted canonically.
std::vector<Poly> progression_members(const ProgressionSpec& ap);
/// True when theta_n maps the interval exactly onto the progression.
bool verify_interval_ap_bijection(const IntervalProgressionPair& pair);

/// Base-q index of f mod Q for f running through M_n in index order. Since
/// f mod Q is linear in the coefficients of f, each step adds x^j mod Q for
/// the digits that change.
class ResidueOdometer {
   public:
    ResidueOdometer(const Poly& Q, int n);

    std::uint64_t index() const noexcept;
    /// Moves to the next monic index (wrapping to 0 after q^n - 1).
    void next() noexcept;
    /// Restarts at monic index 0.
    void reset();

   private:
    std::uint32_t q_;
    int n_, m_;
    std::vector<std::vector<Elem>> xr_;  // x^j mod Q, j = 0..n
    std::vector<Elem> cur_;
    std::vector<std::uint32_t> digit_;
    std::vector<std::uint64_t> qpow_;
};

// ---------------------------------------------------------------------------
// sampling

/// Independent stream `stream` derived from a master seed: mt19937_64 seeded
/// with splitmix64(seed + (stream + 1) * 0x9e3779b97f4a7c15).
Rng derive_rng(std::uint64_t seed, std::uint64_t stream);
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Uniform monic polynomial of degree n (coefficients drawn directly).
Poly sample_monic(const Field& field, int n, Rng& rng);

}  // namespace ffq

#endif  // FFQ_ENSEMBLES_HPP
