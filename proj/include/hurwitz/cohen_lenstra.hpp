// Finite abelian l-groups, the Cohen-Lenstra measure and random cokernels.
//
// mu(A) = prod_{i>=1} (1 - l^{-i}) / |Aut A|.  A group is a partition
// e_1 >= e_2 >= ... >= 1 standing for the sum of Z/l^{e_i}.
#ifndef HURWITZ_COHEN_LENSTRA_HPP
#define HURWITZ_COHEN_LENSTRA_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hurwitz {

struct AbelianLGroup {
    std::uint32_t l = 3;
    std::vector<unsigned> partition;

    /// Sorts the exponents, drops zeros, checks that l is prime.
    static AbelianLGroup make(std::uint32_t l, std::vector<unsigned> exponents);
    /// "1", "Z/3", "Z/9 x Z/3", also accepts "3^2,1" style partitions after
    /// the prime is known.
    static AbelianLGroup parse(std::uint32_t l, const std::string& text);

    unsigned length() const { return static_cast<unsigned>(partition.size()); }
    unsigned exponent_sum() const;
    mpz_class order() const;
    bool is_trivial() const { return partition.empty(); }
    std::string to_string() const;
    /// partition as "2,1" (empty string for the trivial group)
    std::string partition_string() const;

    bool operator==(const AbelianLGroup&) const = default;
    auto operator<=>(const AbelianLGroup&) const = default;
};

bool is_prime(std::uint64_t n);

/// All partitions of m, each non-increasing, in reverse lexicographic order.
std::vector<std::vector<unsigned>> partitions_of(unsigned m);
/// Every l-group of order at most l^max_exponent, by order then partition.
std::vector<AbelianLGroup> groups_up_to(std::uint32_t l, unsigned max_exponent);

/// prod over pairs of l^{min(b_i, a_j)}
mpz_class hom_count(const AbelianLGroup& B, const AbelianLGroup& A);
/// Closed form over the partition.
mpz_class aut_order(const AbelianLGroup& A);
/// Inclusion-exclusion over subgroups of A containing lA.
mpz_class sur_count(const AbelianLGroup& B, const AbelianLGroup& A);

/// Enumeration of all homomorphisms; throws BudgetError past `budget` maps.
mpz_class sur_count_brute(const AbelianLGroup& B, const AbelianLGroup& A,
                          std::uint64_t budget = 20'000'000);
mpz_class aut_order_brute(const AbelianLGroup& A, std::uint64_t budget = 20'000'000);

struct MassBound {
    /// partial product through i = k, divided by |Aut A|
    double value = 0;
    /// the true mass lies in [value - error, value]
    double error = 0;
};

MassBound mu_mass(const AbelianLGroup& A, unsigned truncation_k);
/// prod_{i=1}^{k} (1 - l^{-i}) with the same bracket
MassBound euler_product(std::uint32_t l, unsigned truncation_k);

// ---------------------------------------------------------------------------

struct CokernelSample {
    AbelianLGroup group;
    /// working precision l^e that resolved every invariant factor
    unsigned precision = 0;
    /// number of precision escalations needed
    unsigned escalations = 0;
};

struct SamplerOptions {
    unsigned N = 8;
    std::uint32_t l = 3;
    unsigned e_cap = 4;
    /// escalations by e_cap digits before giving up
    unsigned max_escalations = 8;
};

/// Cokernel of a uniform random N x N matrix over Z_l, drawn digit by digit.
/// Invariant factors that vanish mod l^e are resolved by drawing more digits
/// of the same matrix.  Uses stream `stream` of `seed`.
CokernelSample sample_cokernel(const SamplerOptions& opt, std::uint64_t seed, std::uint64_t stream);

/// Invariant factors of a square matrix over Z/l^e as exponents v < e, plus
/// the count of factors that vanish mod l^e.
struct LocalSmith {
    std::vector<unsigned> exponents;
    unsigned saturated = 0;
};
LocalSmith smith_mod_prime_power(std::vector<std::vector<std::uint64_t>> m, std::uint32_t l,
                                 unsigned e);

struct MomentEstimate {
    AbelianLGroup target;
    double mean = 0;
    double standard_error = 0;
    std::size_t samples = 0;
};

struct SampleRun {
    SamplerOptions options;
    std::uint64_t seed = 0;
    std::vector<CokernelSample> samples;
    std::size_t escalated = 0;
};

SampleRun run_sampler(const SamplerOptions& opt, std::uint64_t seed, std::size_t samples,
                      unsigned jobs = 1);
MomentEstimate moment_estimate(const SampleRun& run, const AbelianLGroup& A);
/// fraction of samples isomorphic to A, with its binomial standard error
std::pair<double, double> empirical_mass(const SampleRun& run, const AbelianLGroup& A);

struct TruncatedMoment {
    /// sum over |B| <= l^cap of mu(B) |Sur(B, A)|
    double value = 0;
    /// sum over B != A with |B| <= l^cap of |Sur(B, A)| / |Aut B|
    double beta_partial = 0;
    /// prod (1 - l^{-i})^{-1} - 1
    double beta_limit = 0;
};

TruncatedMoment truncated_moment_identity(const AbelianLGroup& A, unsigned order_cap_exponent);

// ---------------------------------------------------------------------------

/// The groups A' of order l^s |A| that surject onto A.
std::vector<AbelianLGroup> enhom_family(const AbelianLGroup& A, unsigned s);
/// Least s >= 1 with l^s >= |M_s| / epsilon.  For cyclic X of large order
/// the only members of M_s that X surjects onto are cyclic, so this is the
/// smallest s that can work.
unsigned enhom_s(const AbelianLGroup& A, double epsilon);

struct EnhomResult {
    unsigned s = 0;
    mpz_class c;
    std::size_t family_size = 0;
    std::size_t checked = 0;
    bool holds = true;
    /// first X violating the bound, if any
    std::string counterexample;
};

/// |Sur(X, A)| <= epsilon * mean_{A' in M} |Sur(X, A')| for every X with
/// c(A) = l^{s-1} |A| < |X| <= l^{max_exponent}.
EnhomResult enhom_bound_check(const AbelianLGroup& A, double epsilon, unsigned s,
                              unsigned max_exponent);

}  // namespace hurwitz

#endif
