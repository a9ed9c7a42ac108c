/**
 * Finite permutation groups materialized as full multiplication tables,
 * together with conjugacy classes, the subgroup lattice, and the
 * non-splitting and rationality tests applied to a (group, class) pair.
 *
 * Convention: products compose left to right.  For permutations a and b,
 * a*b is "apply a, then b", i.e. (a*b)(x) = b(a(x)).  Conjugation follows
 * g^h = h^{-1} g h.
 */
#ifndef HURWITZ_GROUP_HPP
#define HURWITZ_GROUP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitz {

using Elem = std::uint32_t;
/// 0-based image list: perm[i] is the image of point i.
using Permutation = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultGroupCap = 5000;

class Group {
public:
    Group() = default;

    std::size_t size() const { return perms_.size(); }
    std::size_t degree() const { return degree_; }

    Elem identity() const { return 0; }
    Elem mul(Elem a, Elem b) const { return table_[std::size_t(a) * size() + b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    std::uint32_t order_of(Elem a) const { return order_[a]; }
    /// g^h = h^{-1} g h
    Elem conj(Elem g, Elem h) const { return mul(mul(inv(h), g), h); }
    Elem pow(Elem g, std::uint64_t k) const;

    const Permutation& permutation(Elem a) const { return perms_[a]; }
    const std::vector<Elem>& generator_indices() const { return generators_; }

    /// Element whose permutation equals p (padded with fixed points), if any.
    std::optional<Elem> find(const Permutation& p) const;

    std::string cycle_string(Elem a) const;

    friend Group build_group(const std::vector<Permutation>& generators, std::size_t degree,
                             std::size_t cap);

private:
    std::size_t degree_ = 0;
    std::vector<Permutation> perms_;
    std::vector<std::uint16_t> table_;
    std::vector<Elem> inv_;
    std::vector<std::uint32_t> order_;
    std::vector<Elem> generators_;
};

/// Closure of the generators under composition.  Elements are numbered
/// breadth-first from the identity; each new layer is sorted by the
/// lexicographic order of the image lists.  Throws BudgetError above `cap`.
Group build_group(const std::vector<Permutation>& generators, std::size_t degree = 0,
                  std::size_t cap = kDefaultGroupCap);

struct ConjClass {
    std::vector<Elem> members;  // sorted
    std::uint32_t class_order = 1;

    std::size_t size() const { return members.size(); }
    bool contains(Elem g) const;
    /// Position of g in `members`, or -1.
    int local_index(Elem g) const;
};

ConjClass conjugacy_class(const Group& group, Elem element);
std::vector<ConjClass> conjugacy_classes(const Group& group);

/// Smallest subgroup containing the given elements, as a sorted list.
std::vector<Elem> generated_subgroup(const Group& group, std::span<const Elem> generators);

struct SubgroupList {
    /// Sorted by (order, element list); entry 0 is trivial, the last is G.
    std::vector<std::vector<Elem>> subgroups;

    std::size_t size() const { return subgroups.size(); }
    /// Id of an exactly matching sorted element list, or -1.
    int index_of(const std::vector<Elem>& sorted_elements) const;
};

inline constexpr std::size_t kDefaultSubgroupCap = 2000;

/// Complete subgroup lattice by layered closure: cyclic subgroups first,
/// then joins with cyclic subgroups until nothing new appears.
SubgroupList subgroups(const Group& group, std::size_t cap = kDefaultSubgroupCap);

struct NonsplittingWitness {
    enum class Kind { not_generating, splits_in_subgroup };
    Kind kind = Kind::not_generating;
    /// The generated proper subgroup, or the subgroup H in which c splits.
    std::vector<Elem> subgroup;
    /// For splits_in_subgroup: two elements of c n H that are not H-conjugate.
    std::vector<Elem> representatives;

    std::string describe(const Group& group) const;
};

struct NonsplittingResult {
    bool holds = false;
    std::optional<NonsplittingWitness> witness;
};

NonsplittingResult is_nonsplitting(const Group& group, const ConjClass& cls,
                                   const SubgroupList& subs);
NonsplittingResult is_nonsplitting(const Group& group, const ConjClass& cls);

/// True iff g^a lies in the class for every g in it and every a prime to
/// the class order.
bool is_rational_class(const Group& group, const ConjClass& cls);

// ---------------------------------------------------------------------------
// Text input

/// Parses "(1 2)(3 4 5)" (1-based points).  `degree` 0 means "as large as
/// the largest point mentioned".
Permutation parse_cycles(std::string_view text, std::size_t degree = 0);

/// Points are 1-based in the textual form.
std::string format_cycles(const Permutation& p);

struct GroupSpec {
    std::vector<Permutation> generators;
    std::size_t degree = 0;
    std::string label;
};

/// Accepts a bare preset name ("S3", "A4", "D5", "Z2", "cyclic(4)",
/// "dihedral(9)", "dihedral(3,3)", "dihedral(3;2,1)") or the line format
///     perm: <cycles>
///     preset: <name>
/// with '#' comments.  Lines may also be separated by ';' inline.
GroupSpec parse_group_spec(std::string_view text);
GroupSpec preset_group(std::string_view name);
Group build_group(const GroupSpec& spec, std::size_t cap = kDefaultGroupCap);

/// Reads a spec from a file if `spec_or_path` names one, else parses it inline.
GroupSpec load_group_spec(const std::string& spec_or_path);

/// Resolves the class of an element given in cycle notation.  An empty
/// string picks the unique involution class, failing if there is none or
/// several.
ConjClass resolve_class(const Group& group, const std::string& class_rep);

}  // namespace hurwitz

#endif
