// Brute-force orbit check for surjections from a symplectic module.
//
// V = (Z/l^e)^{2g} with omega(x, y) = sum_i x_i y_{g+i} - x_{g+i} y_i.
// O is the set of surjections f : V -> A with f F = f for some F in
// GSp_q(V) = {F : omega(Fx, Fy) = q omega(x, y)}.
#ifndef HURWITZ_SYMPLECTIC_HPP
#define HURWITZ_SYMPLECTIC_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hurwitz/cohen_lenstra.hpp"

namespace hurwitz {

struct SymplecticSpace {
    unsigned g = 1;
    std::uint32_t l = 3;
    unsigned e = 1;

    unsigned dim() const { return 2 * g; }
    std::uint64_t modulus() const;
    std::int64_t form(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) const;
    /// Square matrices act on column vectors, stored row-major.
    using Matrix = std::vector<std::uint32_t>;
    /// omega(Fx, Fy) = multiplier * omega(x, y) on all basis pairs
    bool scales_form(const Matrix& F, std::uint64_t multiplier) const;
    Matrix multiply(const Matrix& a, const Matrix& b) const;
    Matrix identity() const;
    /// x -> x + omega(x, v) v
    Matrix transvection(const std::vector<std::uint64_t>& v) const;
    /// q on the first g coordinates, 1 on the rest
    Matrix standard_similitude(std::uint64_t q) const;
};

/// |Sp_{2g}(Z/l^e)| = l^{g^2} prod_{i<=g} (l^{2i} - 1) * l^{(e-1) g (2g+1)}
std::uint64_t symplectic_group_order(const SymplecticSpace& V);

/// Closure of the transvections by 0/1 vectors.  Throws BudgetError past cap.
std::vector<SymplecticSpace::Matrix> symplectic_group(const SymplecticSpace& V,
                                                      std::size_t cap = 2'000'000);

struct SymplecticOrbitResult {
    std::size_t surjections = 0;
    /// |O|
    std::size_t fixed = 0;
    std::size_t orbit_count = 0;
    bool nonempty = false;
    bool transitive = false;
    std::uint64_t sp_order = 0;
    std::uint64_t sp_order_expected = 0;
    /// f in O iff f F_0 lies in the Sp-orbit of f, checked against the search
    bool orbit_criterion_agrees = true;
};

/// Requires l prime to q (q - 1).  Throws BudgetError when |Hom(V, A)| or
/// the group exceeds the budgets.
SymplecticOrbitResult symplectic_orbit_check(unsigned g, std::uint32_t l, unsigned e,
                                             const AbelianLGroup& A, std::uint64_t q_residue,
                                             std::uint64_t hom_budget = 2'000'000,
                                             std::size_t group_cap = 2'000'000);

}  // namespace hurwitz

#endif
