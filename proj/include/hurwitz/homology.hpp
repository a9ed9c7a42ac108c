// H_0 and H_1 of Hurwitz spaces from the Artin presentation of B_n.
//
// The configuration space of n points is a K(B_n, 1), so the Hurwitz space
// with tuples in c^n has the homology of B_n with coefficients in Q[c^n].
// The presentation 2-complex gives the start of a free resolution:
//     C_2 = Q[X]^{relators} -> C_1 = Q[X]^{sigma_1..sigma_{n-1}} -> C_0 = Q[X]
// with X a right B_n-set (x . sigma_i = braid_act(i, +1, x)).  Both H_0 and
// H_1 are read off exactly from it.  Everything splits over B_n-orbits of X.
#ifndef HURWITZ_HOMOLOGY_HPP
#define HURWITZ_HOMOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hurwitz/braid.hpp"
#include "hurwitz/linalg.hpp"

namespace hurwitz {

/// A finite right B_n-set, split into orbits.
struct BraidSet {
    std::size_t n = 0;
    /// act[i * size + s] = s . sigma_{i+1}
    std::vector<std::uint32_t> act;
    std::vector<std::uint32_t> block_of;
    std::vector<std::uint32_t> local_index;
    std::vector<std::vector<std::uint32_t>> blocks;
    /// tuple code of each state (the least code in its G-class for quotients)
    std::vector<std::uint64_t> codes;
    /// state of every tuple code
    std::vector<std::uint32_t> state_of_code;

    std::size_t size() const { return codes.size(); }
    std::uint32_t apply(std::size_t i, std::uint32_t s) const { return act[(i - 1) * size() + s]; }
};

BraidSet tuple_braid_set(const BraidContext& ctx, std::size_t n,
                         std::uint64_t max_states = kDefaultStateBudget);
/// Tuples modulo simultaneous conjugation by G.
BraidSet quotient_braid_set(const BraidContext& ctx, std::size_t n,
                            std::uint64_t max_states = kDefaultStateBudget);

/// Letters are +-i for sigma_i^{+-1}.  Braid relators for i = 1..n-2, then
/// commutators [sigma_i, sigma_j] for j >= i + 2.
std::vector<std::vector<int>> braid_relators(std::size_t n);

struct PresentationComplex {
    struct Block {
        std::size_t states = 0;
        /// states x states*(n-1), generator-major columns
        SparseIntMatrix d1;
        /// states*(n-1) x states*|relators|, relator-major columns
        SparseIntMatrix d2;
    };
    BraidSet set;
    std::vector<std::vector<int>> relators;
    std::vector<Block> blocks;

    std::size_t n() const { return set.n; }
    std::size_t dim_c0() const { return set.size(); }
    std::size_t dim_c1() const { return set.size() * (set.n - 1); }
    std::size_t dim_c2() const { return set.size() * relators.size(); }

    /// Global chain complex, blocks concatenated in order.
    GradedChainComplex assemble() const;
    /// d1 d2 = 0 blockwise; throws ComputationError otherwise.
    void validate() const;
};

/// Throws ValidationError for n < 2.
PresentationComplex fox_complex(BraidSet set);
PresentationComplex fox_complex(const BraidContext& ctx, std::size_t n, bool quotient_by_G = false,
                                std::uint64_t max_states = kDefaultStateBudget);

struct HomologyOptions {
    /// Exact ranks over Q up to this n, two-prime modular ranks above it.
    std::size_t exact_up_to_n = 6;
    std::uint64_t max_states = kDefaultStateBudget;
    unsigned jobs = 1;
};

struct BettiNumbers {
    std::size_t n = 0;
    std::size_t b0 = 0;
    std::size_t b1 = 0;
    Certification cert0 = Certification::exact;
    Certification cert1 = Certification::exact;
};

BettiNumbers betti_numbers(const PresentationComplex& cx, const HomologyOptions& opt = {});
/// b_0 and b_1 of the Hurwitz space (or its quotient by G) with n points.
BettiNumbers betti_numbers(const BraidContext& ctx, std::size_t n, bool quotient_by_G,
                           const HomologyOptions& opt = {});
std::size_t betti(const BraidContext& ctx, std::size_t n, int p, bool quotient_by_G,
                  const HomologyOptions& opt = {});

/// A map of B-sets compatible with sigma_i -> sigma_{i+shift}, extended
/// linearly: state s goes to sum of coeff * target.
struct StateMap {
    std::size_t shift = 0;
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> image;
};

/// x -> sum over g in c of (g, ..., g, x) with D|g| copies of g.
StateMap u_state_map(const BraidContext& ctx, const BraidSet& source, const BraidSet& target,
                     std::size_t D);
/// x -> sum over h in G of x^h (same n).
StateMap averaging_state_map(const BraidContext& ctx, const BraidSet& set);

struct InducedMap {
    std::size_t rank0 = 0;
    std::size_t rank1 = 0;
    Certification cert1 = Certification::exact;
    /// d' f = f d checked exactly in degrees 1 and 2
    bool chain_map = false;
};

/// Ranks of the maps induced on H_0 and H_1.  Throws ComputationError if
/// the map fails to commute with the differentials.
InducedMap induced_map(const PresentationComplex& source, const PresentationComplex& target,
                       const StateMap& f, const HomologyOptions& opt = {});

struct UMapResult {
    int p = 0;
    std::size_t n = 0;
    std::size_t n_target = 0;
    std::size_t rank = 0;
    std::size_t b_source = 0;
    std::size_t b_target = 0;
    bool bijective = false;
    bool chain_map = false;
    Certification certification = Certification::exact;
};

UMapResult stabilization_u_map(const BraidContext& ctx, int p, std::size_t n, std::size_t D,
                               const HomologyOptions& opt = {});

struct StabilityRow {
    std::size_t n = 0;
    BettiNumbers betti;
    /// maps H_p(n) -> H_p(n + deg U), present when n + deg U is in the window
    std::optional<UMapResult> u0, u1;
    /// Betti numbers of the quotient by G and dims of G-invariants
    std::optional<BettiNumbers> quotient;
    std::optional<std::size_t> invariant_b0, invariant_b1;
    /// b_0, b_1 <= (2|G|)^n
    bool within_betti_bound = true;
    /// b_0 equals the braid orbit count
    bool orbit_count_agrees = true;
};

struct StabilityReport {
    std::size_t D = 0;
    std::size_t deg_U = 0;
    std::size_t n_min = 0;
    std::size_t n_max = 0;
    std::vector<StabilityRow> rows;
    /// least n such that the U-map on H_p is bijective for every n' >= n
    /// with n' + deg U in the window
    std::optional<std::size_t> observed_n0[2];
};

struct StabilityOptions {
    HomologyOptions homology;
    bool quotient_by_G = false;
    /// Compare quotient Betti numbers with G-invariants up to this n.
    std::size_t invariant_check_up_to_n = 6;
};

StabilityReport stability_report(const BraidContext& ctx, std::size_t D, std::size_t n_min,
                                 std::size_t n_max, const StabilityOptions& opt = {});

}  // namespace hurwitz

#endif
