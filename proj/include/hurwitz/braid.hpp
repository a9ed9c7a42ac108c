// Braid orbits on c^n and the graded ring of components.
//
// A tuple is a list of local indices into the class members.  Tuples are
// packed base |c| with the first entry most significant, so ascending codes
// are lexicographic order and the first code met in an orbit is its
// canonical representative.
#ifndef HURWITZ_BRAID_HPP
#define HURWITZ_BRAID_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "hurwitz/group.hpp"
#include "hurwitz/linalg.hpp"

namespace hurwitz {

using Local = std::uint16_t;
using Tuple = std::vector<Local>;

inline constexpr std::uint64_t kDefaultStateBudget = 10'000'000;

class BraidContext {
public:
    BraidContext(const Group& group, ConjClass cls);

    const Group& group() const { return *group_; }
    const ConjClass& cls() const { return cls_; }
    std::size_t k() const { return cls_.size(); }

    Elem element(Local a) const { return cls_.members[a]; }
    Local local(Elem g) const;
    /// a b a^{-1}
    Local push(Local a, Local b) const { return push_[std::size_t(a) * k() + b]; }
    /// b^{-1} a b
    Local pull(Local a, Local b) const { return pull_[std::size_t(a) * k() + b]; }

    /// Subgroup lattice used for monodromy ids; empty when |G| exceeds the cap.
    const SubgroupList& subgroups() const { return subs_; }
    int subgroup_id(const std::vector<Elem>& sorted_elements) const;

    Elem boundary(const Tuple& t) const;
    std::vector<Elem> monodromy(const Tuple& t) const;

private:
    std::shared_ptr<const Group> group_;
    ConjClass cls_;
    std::vector<Local> push_, pull_;
    SubgroupList subs_;
};

/// sigma_j (1-based) with sign +1: (.., a, b, ..) -> (.., a b a^{-1}, a, ..);
/// sign -1 applies the inverse (.., x, y, ..) -> (.., y, y^{-1} x y, ..).
Tuple braid_act(const BraidContext& ctx, std::size_t j, int sign, Tuple t);

std::uint64_t encode_tuple(const Tuple& t, std::size_t k);
Tuple decode_tuple(std::uint64_t code, std::size_t n, std::size_t k);

struct OrbitRecord {
    std::uint64_t rep_code = 0;
    std::uint64_t size = 0;
    int monodromy_subgroup = -1;
    Elem boundary = 0;
    /// All entries lie in one class, so there is a single Nielsen class.
    int nielsen_id = 0;
    bool generating = false;
};

struct OrbitTable {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<OrbitRecord> orbits;
    /// orbit id of every packed tuple
    std::vector<std::uint32_t> orbit_of;

    std::size_t size() const { return orbits.size(); }
    std::uint32_t orbit_of_tuple(const Tuple& t) const { return orbit_of[encode_tuple(t, k)]; }
    Tuple canonical_rep(std::uint32_t orbit) const { return decode_tuple(orbits[orbit].rep_code, n, k); }
    std::size_t generating_count() const;
};

/// Throws BudgetError when |c|^n exceeds `max_states`.
OrbitTable enumerate_orbits(const BraidContext& ctx, std::size_t n,
                            std::uint64_t max_states = kDefaultStateBudget);

/// Every generating orbit contains a tuple starting with each element of c.
bool first_letter_coverage(const OrbitTable& table);

// ---------------------------------------------------------------------------

struct RingElement {
    std::size_t degree = 0;
    std::map<std::uint32_t, mpq_class> coeffs;

    bool operator==(const RingElement& o) const
    {
        return degree == o.degree && coeffs == o.coeffs;
    }
};

/// Orbit tables for degrees 0..n_max with the concatenation product.
class ComponentRing {
public:
    ComponentRing(const BraidContext& ctx, std::size_t n_max,
                  std::uint64_t max_states = kDefaultStateBudget);

    const BraidContext& context() const { return ctx_; }
    std::size_t n_max() const { return tables_.size() - 1; }
    const OrbitTable& table(std::size_t n) const;
    std::size_t dim(std::size_t n) const { return table(n).size(); }

    /// Orbit of the concatenated canonical representatives.
    std::uint32_t multiply(std::size_t m, std::uint32_t a, std::size_t n, std::uint32_t b) const;
    RingElement multiply(const RingElement& x, const RingElement& y) const;

    RingElement basis(std::size_t n, std::uint32_t orbit) const;
    /// r_g in degree 1
    RingElement generator(Local g) const;
    /// r_g^e
    RingElement power(Local g, std::size_t e) const;
    /// U_D = sum over g in c of r_g^{D |g|}
    RingElement u_element(std::size_t D) const;

    /// Left and right multiplication by r_g on orbit ids.
    std::uint32_t left_mul(Local g, std::size_t n, std::uint32_t orbit) const;
    std::uint32_t right_mul(Local g, std::size_t n, std::uint32_t orbit) const;

    /// Matrix of left multiplication by a homogeneous element, R_n -> R_{n+deg}.
    SparseIntMatrix left_mul_matrix(const RingElement& x, std::size_t n) const;

private:
    BraidContext ctx_;
    std::vector<OrbitTable> tables_;
};

struct StabilizerOptions {
    std::size_t D_max = 6;
    /// 0 picks min(12, largest n with |c|^n within the state budget).
    std::size_t N_max = 0;
    std::uint64_t max_states = kDefaultStateBudget;
};

struct StabilizerDescriptor {
    bool found = false;
    std::size_t D = 0;
    std::size_t deg_U = 0;
    /// quotient vanishes for every degree in [n0, N_max]
    std::size_t n0 = 0;
    std::size_t N_max = 0;
    /// dim (R / U_D R)_n for n = 0..N_max
    std::vector<std::size_t> quotient_dims;
    std::vector<std::size_t> orbit_counts;
    std::vector<std::size_t> generating_counts;
    /// |S_n(G)| = |S_{n+deg U}(G)| whenever n0 <= n and n + deg U <= N_max
    bool component_counts_stable = false;
    Certification certification = Certification::exact;
    RingElement U;
};

std::size_t default_window(std::size_t k, std::uint64_t max_states);

/// Smallest D <= D_max whose quotient R/U_D R vanishes on a tail of the
/// window at least two periods long.  Throws ValidationError when (G, c)
/// is not non-splitting.  `found` is false if no D works.
StabilizerDescriptor find_stabilizer_U(const ComponentRing& ring, std::size_t D_max = 6);
StabilizerDescriptor find_stabilizer_U(const BraidContext& ctx, const StabilizerOptions& opt = {});

/// U s = s U for every orbit s with deg s + deg U <= N_max.
bool central_check(const ComponentRing& ring, const RingElement& U, std::size_t N_max);

/// Least n such that first_letter_coverage holds for every degree in
/// [n, n_max] that has generating orbits.
std::optional<std::size_t> first_letter_threshold(const ComponentRing& ring);

}  // namespace hurwitz

#endif
