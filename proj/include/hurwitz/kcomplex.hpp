// The K-complex of a graded left module over the ring of components.
//
// In total degree n, K(M)_q = M_{n-q} tensor Q[c^q], with basis (w; m)
// ordered by the word w (lexicographic, via its base-|c| code) and then m.
// The differential is
//     d(g_0..g_{q-1}; m) = sum_i (-1)^i (g_0..^g_i..g_{q-1}; r(g_i^{g_{i+1}...g_{q-1}}) m)
// with g^h = h^{-1} g h.
#ifndef HURWITZ_KCOMPLEX_HPP
#define HURWITZ_KCOMPLEX_HPP

#include <optional>
#include <string>
#include <vector>

#include "hurwitz/braid.hpp"
#include "hurwitz/linalg.hpp"

namespace hurwitz {

/// A graded module given by explicit bases and matrices for each r_g.
struct GradedModule {
    std::string tag;
    std::vector<std::size_t> dims;
    /// action[n][g] : M_n -> M_{n+1}, defined for n + 1 < dims.size()
    std::vector<std::vector<SparseIntMatrix>> action;

    std::size_t max_degree() const { return dims.empty() ? 0 : dims.size() - 1; }
    std::size_t dim(std::size_t n) const { return n < dims.size() ? dims[n] : 0; }
};

/// R itself, degrees 0..ring.n_max().
GradedModule module_R(const ComponentRing& ring);
/// R^k with the diagonal action.
GradedModule module_free(const ComponentRing& ring, std::size_t k);
/// The submodule R_{>=t}.
GradedModule module_truncated(const ComponentRing& ring, std::size_t t);

/// r_g r_h = r_{g h g^{-1}} r_g as matrices M_n -> M_{n+2}, for all n with
/// n + 2 <= max_degree.
bool check_module_relation(const BraidContext& ctx, const GradedModule& M);

/// Throws ValidationError if M lacks a degree <= n.
GradedChainComplex build_k_complex(const BraidContext& ctx, const GradedModule& M, std::size_t n);

struct KHomologyReport {
    std::string module_tag;
    std::size_t n_max = 0;
    /// dims[n][q] for 0 <= q <= n <= n_max
    std::vector<std::vector<std::size_t>> dims;
    std::vector<std::vector<Certification>> certification;
    /// h_q = largest n with dims[n][q] != 0, if any
    std::vector<std::optional<std::size_t>> h;
    /// nonzero homology in total degree n_max, so h_q is only a lower bound
    std::vector<bool> censored;

    /// max over q of h_q - q among nonzero columns
    std::optional<long> slope_one_offset() const;
    /// slope_one_offset of the report restricted to total degrees <= w,
    /// for w = 0..n_max
    std::vector<std::optional<long>> offset_by_window() const;
    bool any_censored() const;
};

KHomologyReport k_homology(const BraidContext& ctx, const GradedModule& M, std::size_t n_max,
                           const RankOptions& opt = {});

/// dim (R / R_{>0} R)_n for n = 0..n_max, computed from all products of
/// positive-degree orbits (not from the K-complex).
std::vector<std::size_t> indecomposable_dims(const ComponentRing& ring, std::size_t n_max);

struct HomotopyCheck {
    bool holds = false;
    std::size_t checked_entries = 0;
};

/// S d + d S = (right multiplication by r_g) on K(R)_q in total degree n,
/// where S(w; s) = (P g P^{-1}, w; s) with P = g_0...g_{q-1} times the
/// boundary of s.  Needs the ring through degree n + 1.
HomotopyCheck homotopy_check(const ComponentRing& ring, Local g, std::size_t n, std::size_t q);

}  // namespace hurwitz

#endif
