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

#ifndef FFQ_DIRICHLET_HPP
#define FFQ_DIRICHLET_HPP

#include "ffq/ensembles.hpp"
#include "ffq/poly.hpp"
#include "ffq/rmt.hpp"

#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

namespace ffq {

inline constexpr std::uint64_t kGroupSeed = 0xd1c4;

/// The unit group of F_q[x]/(Q) as a direct sum of cyclic groups, for Q a
/// power of x or squarefree.
class DirichletGroup {
   public:
    static constexpr std::uint64_t npos = std::numeric_limits<std::uint64_t>::max();

    /// Throws UnsupportedModulusShape, BudgetExceeded.
    static std::shared_ptr<const DirichletGroup> build(const Poly& Q, std::uint64_t budget = kDefaultBudget,
                                                       std::uint64_t seed = kGroupSeed);

    const Field& field() const noexcept { return field_; }
    /// Monic modulus.
    const Poly& modulus() const noexcept { return Q_; }
    int degree() const noexcept { return Q_.degree(); }
    /// Phi(Q) = product of the cyclic orders.
    std::uint64_t order() const noexcept { return order_; }
    /// Phi(Q) / (q - 1).
    std::uint64_t even_order() const noexcept { return order_ / (field_.q() - 1); }
    const std::vector<Poly>& generators() const noexcept { return gens_; }
    const std::vector<std::uint64_t>& orders() const noexcept { return orders_; }
    /// Least common multiple of the cyclic orders.
    std::uint64_t exponent() const noexcept { return exponent_; }
    bool is_power_of_x() const noexcept { return power_of_x_; }

    /// Base-q digits of f mod Q.
    std::uint64_t residue_index(const Poly& f) const;
    /// Mixed-radix coordinate index of the unit with this residue index
    /// (first generator fastest), or npos for non-units.
    std::uint64_t dlog_index(std::uint64_t residue) const { return dlog_[residue]; }
    std::uint64_t dlog_index(const Poly& f) const { return dlog_[residue_index(f)]; }
    /// Exponent tuple of a unit; nullopt for non-units.
    std::optional<std::vector<std::uint64_t>> dlog(const Poly& f) const;
    std::vector<std::uint64_t> coordinates(std::uint64_t dlog_index) const;
    std::uint64_t coordinate_index(const std::vector<std::uint64_t>& coords) const;

    /// Character phase of exponents c at coordinates e, in units of 1/exponent().
    std::uint64_t phase(const std::vector<std::uint64_t>& c, const std::vector<std::uint64_t>& e) const;
    Complex root_of_unity(std::uint64_t phase) const;

    /// Coordinates of the scalar primitive root.
    const std::vector<std::uint64_t>& scalar_coordinates() const noexcept { return scalar_coords_; }
    /// For each prime P | Q, coordinates of generators of the kernel of
    /// reduction modulo Q/P.
    const std::vector<std::vector<std::vector<std::uint64_t>>>& primitivity_kernels() const noexcept {
        return kernels_;
    }

   private:
    explicit DirichletGroup(Poly Q) : field_(Q.field()), Q_(std::move(Q)) {}
    void build_power_of_x(std::uint64_t budget);
    void build_squarefree(std::uint64_t budget, std::uint64_t seed);
    void build_tables();

    Field field_;
    Poly Q_;
    bool power_of_x_ = false;
    std::vector<Poly> gens_;
    std::vector<std::uint64_t> orders_;
    std::uint64_t order_ = 1;
    std::uint64_t exponent_ = 1;
    std::vector<std::uint64_t> dlog_;
    std::vector<std::uint64_t> scalar_coords_;
    std::vector<std::vector<std::vector<std::uint64_t>>> kernels_;
    std::vector<Complex> roots_;
};

using GroupPtr = std::shared_ptr<const DirichletGroup>;

/// chi(g_i) = exp(2 pi i c_i / d_i).
struct DirichletCharacter {
    GroupPtr group;
    std::uint64_t id = 0;  // coordinate index of the exponent tuple
    std::vector<std::uint64_t> exponents;
    bool is_trivial = false;
    bool is_even = false;
    bool is_primitive = false;

    /// 0 when gcd(f, Q) != 1.
    Complex operator()(const Poly& f) const;
    /// Value at a residue index; 0 for non-units.
    Complex at_residue(std::uint64_t residue) const;
    /// Phase in units of 1/exponent() at a unit's coordinate index.
    std::uint64_t phase_at(std::uint64_t dlog_index) const;
};

enum class CharacterFilter { all, even, even_primitive, primitive };

DirichletCharacter make_character(const GroupPtr& group, std::vector<std::uint64_t> exponents);
DirichletCharacter character_by_id(const GroupPtr& group, std::uint64_t id);
/// Every character passing the filter exactly once, in id order.
std::vector<DirichletCharacter> list_characters(const GroupPtr& group, CharacterFilter filter);
Complex char_eval(const DirichletCharacter& chi, const Poly& f);

// ---------------------------------------------------------------------------
// L-functions

enum class CoefficientMode { naive, dft };

struct LPolynomial {
    std::vector<Complex> coeffs;         // c_0 = 1, ..., c_D
    std::vector<Complex> inverse_roots;  // alpha_j with L(u) = prod (1 - alpha_j u)
    std::vector<double> angles;          // unitarized eigenangles in [0, 2pi), sorted
    int trivial_zeros_removed = 0;

    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    Complex evaluate(Complex u) const;
};

/// c_n = sum over monic f of degree n < deg Q of chi(f), trailing zeros trimmed.
std::vector<Complex> l_coefficients(const DirichletCharacter& chi);
/// Coefficient vectors for every character of the group at once, indexed by
/// character id, via a discrete Fourier transform over the group.
std::vector<std::vector<Complex>> l_coefficients_all(const GroupPtr& group, int threads = 0);

/// Inverse roots from coefficients: companion-matrix eigenvalues cross-checked
/// by Durand-Kerner. Throws RootFindingDidNotConverge when they disagree.
std::vector<Complex> inverse_roots(const std::vector<Complex>& coeffs);
/// Throws TrivialCharacter.
LPolynomial l_polynomial(const DirichletCharacter& chi, CoefficientMode mode = CoefficientMode::naive);
/// Completes an L-polynomial from precomputed coefficients.
LPolynomial l_polynomial_from_coeffs(const DirichletCharacter& chi, std::vector<Complex> coeffs);

// ---------------------------------------------------------------------------
// weighted sums M(n; w chi)

struct Weight {
    enum class Kind { unit, mobius, von_mangoldt, divisor } kind = Kind::unit;
    int k = 2;

    static Weight unit() { return {Kind::unit, 0}; }
    static Weight mobius() { return {Kind::mobius, 0}; }
    static Weight von_mangoldt() { return {Kind::von_mangoldt, 0}; }
    static Weight divisor(int k) { return {Kind::divisor, k}; }
};

/// sum_{f in M_n} w(f) [f = u mod Q] for each unit coordinate index u.
std::vector<std::int64_t> weighted_unit_counts(const DirichletGroup& group, int n, Weight w,
                                               std::uint64_t budget = kDefaultBudget);
/// M(n; w chi) from precomputed weighted_unit_counts.
Complex m_sum(const DirichletCharacter& chi, const std::vector<std::int64_t>& counts);
/// M(n; w chi) = sum_{f in M_n} w(f) chi(f). Throws BudgetExceeded.
Complex m_sum(int n, const DirichletCharacter& chi, Weight w, std::uint64_t budget = kDefaultBudget);

struct ExplicitFormulaCheck {
    Complex lhs;
    Complex rhs;
    double error = 0;
};

/// M(n; mu chi) by summation against sum_{k<=n} q^{k/2} tr Sym^k Theta_chi.
/// Throws NotEvenPrimitive.
ExplicitFormulaCheck explicit_formula_check(int n, const DirichletCharacter& chi,
                                            std::uint64_t budget = kDefaultBudget);
/// Same, reusing an L-polynomial and weighted counts.
ExplicitFormulaCheck explicit_formula_check(int n, const DirichletCharacter& chi, const LPolynomial& L,
                                            const std::vector<std::int64_t>& mobius_counts);

// ---------------------------------------------------------------------------
// Katz equidistribution

struct KatzAverage {
    double empirical = 0;
    McEstimate reference;
    std::uint64_t characters = 0;
    bool caveat = false;  // N = 2 outside the q coprime to 10 case
};

/// Average of a center-invariant class function over Theta_chi for all even
/// primitive chi mod x^{N+2}, against a Haar Monte Carlo reference over U(N).
KatzAverage katz_average(int N, const Field& field, const SpectrumStatistic& statistic,
                         std::uint64_t reference_samples = 100'000, std::uint64_t seed = 0, int threads = 0,
                         std::uint64_t budget = kDefaultBudget);

}  // namespace ffq

#endif  // FFQ_DIRICHLET_HPP
