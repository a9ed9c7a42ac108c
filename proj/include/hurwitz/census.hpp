// Squarefree enumeration and the exhaustive class-group census over the
// imaginary quadratic extensions F_q(t)(sqrt f), deg f = n odd.
#ifndef HURWITZ_CENSUS_HPP
#define HURWITZ_CENSUS_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hurwitz/cohen_lenstra.hpp"
#include "hurwitz/finite_field.hpp"

namespace hurwitz {

enum class Leading { monic, both_square_classes };

/// Monic squarefree f of degree n in index order, followed for
/// both_square_classes by c0 f for the same list, c0 = F.nonsquare().
std::vector<Poly> enumerate_sf(const FiniteField& F, unsigned n, Leading leading);
/// Number of monic squarefree polynomials of degree n, by the gcd test.
std::uint64_t count_sf(const FiniteField& F, unsigned n);

struct ClassGroupRecord {
    std::size_t id = 0;
    Poly f;
    long h = 0;
    AbelianLGroup l_part;
    /// |Sur(Cl, A)| per target, in target order
    std::vector<std::uint64_t> m_A;
};

struct CurveFailure {
    std::size_t id = 0;
    std::string f;
    std::string message;
};

struct CensusOptions {
    std::uint32_t q = 7;
    unsigned n = 3;
    std::uint32_t l = 3;
    std::vector<AbelianLGroup> targets;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    unsigned lagrange_samples = 20;
    /// truncation of the Euler product in the reported mu-masses
    unsigned mu_truncation = 60;
    /// quarantine fraction above which the census fails
    double max_failure_fraction = 0.001;
};

struct TargetAverage {
    AbelianLGroup target;
    mpz_class total;  // sum over curves of m_A
    double average = 0;
    double deviation = 0;  // |average - 1|
    std::size_t odd_counts = 0;  // curves with m_A odd, A nontrivial
};

struct LPartRow {
    AbelianLGroup group;
    std::size_t count = 0;
    double empirical = 0;
    double mu = 0;
};

struct CensusReport {
    CensusOptions options;
    FElem c0 = 0;
    std::size_t curve_count = 0;
    std::vector<ClassGroupRecord> records;  // successful curves, by id
    std::vector<CurveFailure> failures;
    std::vector<TargetAverage> averages;
    std::vector<LPartRow> distribution;  // observed groups by order
    double tv_distance = 0;
    std::vector<std::string> warnings;

    bool failed() const;
};

/// Validates before computing: q an odd prime power <= 9 after the genus
/// limit, n odd >= 3, l an odd prime not dividing q, targets l-groups.
CensusReport cl_census(const CensusOptions& opt);

}  // namespace hurwitz

#endif
