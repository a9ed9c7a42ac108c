// Jacobians of y^2 = f(x) over F_q with deg f odd: Cantor arithmetic on
// reduced Mumford divisors, zeta point counts, and the l-Sylow type.
#ifndef HURWITZ_HYPERELLIPTIC_HPP
#define HURWITZ_HYPERELLIPTIC_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hurwitz/cohen_lenstra.hpp"
#include "hurwitz/finite_field.hpp"
#include "hurwitz/rng.hpp"

namespace hurwitz {

struct HyperellipticCurve {
    const FiniteField* F = nullptr;
    Poly f;

    /// Throws ValidationError unless f is squarefree of odd degree >= 3.
    HyperellipticCurve(const FiniteField& field, Poly poly);
    unsigned genus() const { return static_cast<unsigned>((f.size() - 2) / 2); }
    PolyRing ring() const { return PolyRing{F}; }
};

struct MumfordDivisor {
    Poly u{1};
    Poly v;
    bool operator==(const MumfordDivisor&) const = default;
    bool is_identity() const { return u.size() == 1; }
};

/// u monic with deg u <= g, deg v < deg u, u | v^2 - f
bool is_reduced_divisor(const HyperellipticCurve& C, const MumfordDivisor& D);
/// (x - a, b) for a point (a, b) on the curve
MumfordDivisor point_divisor(const HyperellipticCurve& C, FElem a, FElem b);
/// hyperelliptic involution (u, -v)
MumfordDivisor negate(const HyperellipticCurve& C, const MumfordDivisor& D);
/// Composition then reduction.  Throws ValidationError on invalid inputs.
MumfordDivisor cantor_add(const MumfordDivisor& a, const MumfordDivisor& b,
                          const HyperellipticCurve& C);
MumfordDivisor scalar_mul(std::uint64_t n, const MumfordDivisor& D, const HyperellipticCurve& C);
/// Integer key of a reduced divisor; distinct divisors of one curve get
/// distinct keys.  Throws BudgetError if it does not fit 64 bits.
std::uint64_t divisor_key(const HyperellipticCurve& C, const MumfordDivisor& D);

/// Per-field tables of v^2 mod u for monic u of degree <= g.  Shared by
/// all curves of one census.
class ReducedDivisorTables {
public:
    /// Throws BudgetError when the tables would exceed `budget` entries.
    ReducedDivisorTables(const FiniteField& F, unsigned g, std::size_t budget = 4'000'000);
    unsigned genus() const { return g_; }
    /// number of reduced divisors, which is h
    std::uint64_t count(const HyperellipticCurve& C) const;
    std::vector<MumfordDivisor> enumerate(const HyperellipticCurve& C) const;
    /// A reduced divisor with deg u = g drawn by picking u at random until
    /// f mod u is a square.  Throws ComputationError after `tries` misses.
    MumfordDivisor random_divisor(const HyperellipticCurve& C, CounterRng& rng,
                                  unsigned tries = 1000) const;

private:
    const FiniteField* F_;
    unsigned g_;
    std::vector<std::uint64_t> qpow_;
    // square_[d][u * q^d + v] = index of v^2 mod u, for u, v indices of
    // monic u of degree d and v of degree < d
    std::vector<std::vector<std::uint32_t>> square_;
    Poly poly_of(unsigned len, std::uint64_t index) const;
    std::uint64_t index_of(const Poly& r, unsigned len) const;
};

struct ZetaData {
    unsigned g = 0;
    /// N_i = #C(F_{q^i}) including the point at infinity, i = 1..g
    std::vector<long> points;
    /// P(T) = sum c_i T^i, c_0 = 1, degree 2g
    std::vector<long> coefficients;
    long h = 0;
    /// extra point counts agree with P (only N_2 when g = 1)
    bool redundant_counts_agree = true;
    bool weil_interval = true;
    bool coefficient_bounds = true;
};

/// Point counts over F_q and F_{q^2}, Newton's identities for c_1..c_g and
/// c_{2g-i} = q^{g-i} c_i.  Rejects g > 2 with ValidationError.  Throws
/// ComputationError if the extra counts contradict the functional equation.
ZetaData zeta_numerator(const HyperellipticCurve& C);
long jacobian_order(const HyperellipticCurve& C);
bool in_weil_interval(std::uint32_t q, unsigned g, long h);

struct SylowOptions {
    std::uint64_t structure_budget = 6561;  // 3^8
    unsigned samples_per_round = 8;
    unsigned max_rounds = 64;
};

/// Type of the l-Sylow subgroup of the Jacobian.  Random divisors are
/// projected by h / h_l and the subgroup they generate is closed explicitly
/// until its order reaches h_l; exponents come from element orders.  Falls
/// back to full enumeration when sampling does not saturate.
AbelianLGroup l_part_structure(const HyperellipticCurve& C, std::uint32_t l, long h,
                               const ReducedDivisorTables& tables, CounterRng& rng,
                               const SylowOptions& opt = {});

/// Exact l-power dividing h.
std::uint64_t l_power_part(long h, std::uint32_t l);

}  // namespace hurwitz

#endif
