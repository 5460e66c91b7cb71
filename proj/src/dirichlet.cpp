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
#include "ffq/factor.hpp"
#include "ffq/parallel.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace ffq {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr std::uint64_t kRootTableLimit = 1u << 22;

bool monomial_modulus(const Poly& Q) {
    for (int j = 0; j < Q.degree(); ++j) {
        if (Q.coeff(static_cast<std::size_t>(j)) != 0) return false;
    }
    return true;
}

/// Generator of (F_q[x]/P)^* by seeded random search with an order check.
Poly cyclic_generator(const Poly& P, Rng& rng) {
    const Field& F = P.field();
    const int d = P.degree();
    const std::uint64_t n = ipow(F.q(), d) - 1;
    const auto primes = prime_divisors(n);
    std::uniform_int_distribution<Elem> dist(0, F.q() - 1);
    const Poly one = Poly::constant(F, 1);
    while (true) {
        std::vector<Elem> c(static_cast<std::size_t>(d));
        for (auto& a : c) a = dist(rng);
        const Poly g(F, std::move(c));
        if (g.is_zero()) continue;
        bool generator = true;
        for (std::uint64_t r : primes) {
            if (powmod(g, n / r, P) == one) {
                generator = false;
                break;
            }
        }
        if (generator) return g;
    }
}

}  // namespace

GroupPtr DirichletGroup::build(const Poly& Q, std::uint64_t budget, std::uint64_t seed) {
    if (Q.degree() < 1) throw Error(Errc::InvalidArgument, "modulus must have positive degree");
    check_budget(ipow(Q.field().q(), Q.degree()), budget, "unit group table");
    std::shared_ptr<DirichletGroup> g(new DirichletGroup(monic(Q)));
    if (monomial_modulus(g->Q_)) {
        g->build_power_of_x(budget);
    } else {
        g->build_squarefree(budget, seed);
    }
    g->build_tables();
    return g;
}

void DirichletGroup::build_power_of_x(std::uint64_t) {
    power_of_x_ = true;
    const Field& F = field_;
    const std::uint32_t q = F.q();
    const int m = Q_.degree();
    gens_.push_back(Poly::constant(F, F.primitive_root()));
    orders_.push_back(q - 1);

    if (m >= 2) {
        // basis of the 1-units, a p-group of order q^{m-1}: repeatedly adjoin an
        // element of maximal order modulo the subgroup built so far
        const std::uint64_t target = ipow(q, m - 1);
        std::vector<std::int64_t> in_h(ipow(q, m), -1);
        struct Member {
            Poly value;
            std::vector<std::uint64_t> coords;
        };
        std::vector<Member> h_members{{Poly::constant(F, 1), {}}};
        in_h[residue_index(h_members[0].value)] = 0;
        std::vector<Poly> ys;
        std::vector<std::uint64_t> ss;

        while (h_members.size() < target) {
            Poly best(F);
            std::uint64_t best_order = 0;
            for (std::uint64_t a = 0; a < target; ++a) {
                const Poly y = Poly::constant(F, 1) + Poly::x(F) * poly_from_digits(F, m - 1, a);
                if (in_h[residue_index(y)] >= 0) continue;
                std::uint64_t s = 1;
                Poly z = y;
                while (in_h[residue_index(z)] < 0) {
                    z = powmod(z, q, Q_);
                    s *= q;
                }
                if (s > best_order) {
                    best_order = s;
                    best = y;
                }
            }
            const Poly z = powmod(best, best_order, Q_);
            const auto& a = h_members[static_cast<std::size_t>(in_h[residue_index(z)])].coords;
            Poly lifted = best;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] % best_order != 0) {
                    throw Error(Errc::InvalidArgument, "1-unit basis lift failed for modulus " + format_poly(Q_));
                }
                const std::uint64_t e = (ss[i] - (a[i] / best_order) % ss[i]) % ss[i];
                lifted = mulmod(lifted, powmod(ys[i], e, Q_), Q_);
            }
            const std::size_t old = h_members.size();
            Poly step = Poly::constant(F, 1);
            for (std::uint64_t t = 1; t < best_order; ++t) {
                step = mulmod(step, lifted, Q_);
                for (std::size_t j = 0; j < old; ++j) {
                    Member mem{mulmod(h_members[j].value, step, Q_), h_members[j].coords};
                    mem.coords.push_back(t);
                    in_h[residue_index(mem.value)] = static_cast<std::int64_t>(h_members.size());
                    h_members.push_back(std::move(mem));
                }
            }
            for (std::size_t j = 0; j < old; ++j) h_members[j].coords.push_back(0);
            ys.push_back(lifted);
            ss.push_back(best_order);
        }
        for (std::size_t i = 0; i < ys.size(); ++i) {
            gens_.push_back(ys[i]);
            orders_.push_back(ss[i]);
        }
    }
}

void DirichletGroup::build_squarefree(std::uint64_t, std::uint64_t seed) {
    const Factorization fac = factor(Q_);
    for (const auto& fp : fac.factors) {
        if (fp.multiplicity > 1) {
            throw Error(Errc::UnsupportedModulusShape,
                        "modulus must be a power of x or squarefree: " + format_poly(Q_));
        }
    }
    const Field& F = field_;
    for (std::size_t j = 0; j < fac.factors.size(); ++j) {
        const Poly& P = fac.factors[j].prime;
        Rng rng = derive_rng(seed, j);
        const Poly g = cyclic_generator(P, rng);
        // CRT idempotent: 1 mod P, 0 mod Q/P
        const Poly M = Q_ / P;
        const Poly eps = (M * inverse_mod(M % P, P)) % Q_;
        const Poly one = Poly::constant(F, 1);
        gens_.push_back((one + (g - one) * eps) % Q_);
        orders_.push_back(ipow(F.q(), P.degree()) - 1);
    }
}

void DirichletGroup::build_tables() {
    const Field& F = field_;
    order_ = 1;
    exponent_ = 1;
    for (std::uint64_t d : orders_) {
        order_ *= d;
        exponent_ = std::lcm(exponent_, d);
    }
    dlog_.assign(ipow(F.q(), degree()), npos);
    std::vector<std::uint64_t> digit(orders_.size(), 0);
    Poly cur = Poly::constant(F, 1);
    for (std::uint64_t idx = 0; idx < order_; ++idx) {
        const std::uint64_t r = residue_index(cur);
        if (dlog_[r] != npos) throw Error(Errc::InvalidArgument, "unit group generators are dependent");
        dlog_[r] = idx;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            cur = mulmod(cur, gens_[i], Q_);
            if (++digit[i] < orders_[i]) break;
            digit[i] = 0;
        }
    }

    if (exponent_ <= kRootTableLimit) {
        roots_.resize(exponent_);
        for (std::uint64_t k = 0; k < exponent_; ++k) {
            roots_[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(exponent_));
        }
    }

    scalar_coords_ = coordinates(dlog_index(Poly::constant(F, F.primitive_root())));
    if (power_of_x_) {
        if (degree() == 1) {
            kernels_.push_back({});
            if (orders_[0] > 1) kernels_.back().push_back(coordinates(dlog_index(gens_[0])));
        } else {
            const Poly k = Poly::constant(F, 1) + Poly::monomial(F, degree() - 1);
            kernels_.push_back({coordinates(dlog_index(k))});
        }
    } else {
        for (std::size_t j = 0; j < gens_.size(); ++j) {
            std::vector<std::uint64_t> e(gens_.size(), 0);
            e[j] = 1;
            kernels_.push_back({});
            if (orders_[j] > 1) kernels_.back().push_back(std::move(e));
        }
    }
}

std::uint64_t DirichletGroup::residue_index(const Poly& f) const {
    const Poly r = f.degree() >= degree() ? f % Q_ : f;
    return digits_index(r, degree());
}

std::optional<std::vector<std::uint64_t>> DirichletGroup::dlog(const Poly& f) const {
    const std::uint64_t d = dlog_index(f);
    if (d == npos) return std::nullopt;
    return coordinates(d);
}

std::vector<std::uint64_t> DirichletGroup::coordinates(std::uint64_t idx) const {
    std::vector<std::uint64_t> c(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        c[i] = idx % orders_[i];
        idx /= orders_[i];
    }
    return c;
}

std::uint64_t DirichletGroup::coordinate_index(const std::vector<std::uint64_t>& coords) const {
    if (coords.size() != orders_.size()) throw Error(Errc::InvalidArgument, "coordinate tuple has the wrong length");
    std::uint64_t idx = 0;
    for (std::size_t i = orders_.size(); i-- > 0;) idx = idx * orders_[i] + coords[i] % orders_[i];
    return idx;
}

std::uint64_t DirichletGroup::phase(const std::vector<std::uint64_t>& c, const std::vector<std::uint64_t>& e) const {
    std::uint64_t ph = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        const std::uint64_t d = orders_[i];
        ph = (ph + ((c[i] * e[i]) % d) * (exponent_ / d)) % exponent_;
    }
    return ph;
}

Complex DirichletGroup::root_of_unity(std::uint64_t ph) const {
    if (!roots_.empty()) return roots_[ph % exponent_];
    return std::polar(1.0, kTwoPi * static_cast<double>(ph % exponent_) / static_cast<double>(exponent_));
}

// ---------------------------------------------------------------------------

std::uint64_t DirichletCharacter::phase_at(std::uint64_t idx) const {
    const auto& orders = group->orders();
    const std::uint64_t L = group->exponent();
    std::uint64_t ph = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const std::uint64_t d = orders[i];
        const std::uint64_t e = idx % d;
        idx /= d;
        ph = (ph + ((exponents[i] * e) % d) * (L / d)) % L;
    }
    return ph;
}

Complex DirichletCharacter::at_residue(std::uint64_t residue) const {
    const std::uint64_t d = group->dlog_index(residue);
    if (d == DirichletGroup::npos) return 0;
    return group->root_of_unity(phase_at(d));
}

Complex DirichletCharacter::operator()(const Poly& f) const { return at_residue(group->residue_index(f)); }

Complex char_eval(const DirichletCharacter& chi, const Poly& f) { return chi(f); }

DirichletCharacter make_character(const GroupPtr& group, std::vector<std::uint64_t> exponents) {
    if (exponents.size() != group->orders().size()) {
        throw Error(Errc::InvalidArgument, "exponent tuple has the wrong length");
    }
    DirichletCharacter chi;
    chi.group = group;
    for (std::size_t i = 0; i < exponents.size(); ++i) exponents[i] %= group->orders()[i];
    chi.exponents = std::move(exponents);
    chi.id = group->coordinate_index(chi.exponents);
    chi.is_trivial = std::all_of(chi.exponents.begin(), chi.exponents.end(), [](std::uint64_t c) { return c == 0; });
    chi.is_even = group->phase(chi.exponents, group->scalar_coordinates()) == 0;
    bool primitive = !group->primitivity_kernels().empty();
    for (const auto& kernel : group->primitivity_kernels()) {
        bool nontrivial = false;
        for (const auto& k : kernel) nontrivial |= group->phase(chi.exponents, k) != 0;
        primitive &= nontrivial;
    }
    chi.is_primitive = primitive;
    return chi;
}

DirichletCharacter character_by_id(const GroupPtr& group, std::uint64_t id) {
    if (id >= group->order()) throw Error(Errc::InvalidArgument, "character id out of range");
    return make_character(group, group->coordinates(id));
}

std::vector<DirichletCharacter> list_characters(const GroupPtr& group, CharacterFilter filter) {
    std::vector<DirichletCharacter> out;
    for (std::uint64_t id = 0; id < group->order(); ++id) {
        DirichletCharacter chi = character_by_id(group, id);
        bool keep = true;
        switch (filter) {
            case CharacterFilter::all:
                break;
            case CharacterFilter::even:
                keep = chi.is_even;
                break;
            case CharacterFilter::even_primitive:
                keep = chi.is_even && chi.is_primitive;
                break;
            case CharacterFilter::primitive:
                keep = chi.is_primitive;
                break;
        }
        if (keep) out.push_back(std::move(chi));
    }
    return out;
}

}  // namespace ffq
