#include "hurwitz/census.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hurwitz/errors.hpp"
#include "hurwitz/hyperelliptic.hpp"
#include "hurwitz/parallel.hpp"
#include "hurwitz/rng.hpp"

namespace hurwitz {

std::vector<Poly> enumerate_sf(const FiniteField& F, unsigned n, Leading leading)
{
    PolyRing R{&F};
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i)
        total *= F.q();
    std::vector<Poly> out;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Poly f = R.monic_from_index(n, idx);
        if (R.squarefree(f))
            out.push_back(std::move(f));
    }
    if (leading == Leading::both_square_classes) {
        const std::size_t m = out.size();
        for (std::size_t i = 0; i < m; ++i)
            out.push_back(R.scale(out[i], F.nonsquare()));
    }
    return out;
}

std::uint64_t count_sf(const FiniteField& F, unsigned n)
{
    PolyRing R{&F};
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i)
        total *= F.q();
    std::uint64_t count = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx)
        count += R.squarefree(R.monic_from_index(n, idx));
    return count;
}

bool CensusReport::failed() const
{
    return curve_count == 0 ||
           double(failures.size()) > options.max_failure_fraction * double(curve_count);
}

namespace {

ClassGroupRecord census_curve(const CensusOptions& opt, const FiniteField& F,
                              const ReducedDivisorTables& tables, std::size_t id, const Poly& f)
{
    HyperellipticCurve C(F, f);
    ZetaData z = zeta_numerator(C);
    if (!z.weil_interval || !z.coefficient_bounds)
        throw ComputationError("h = " + std::to_string(z.h) + " violates the Weil bounds");
    // P is completed by the functional equation; a wrong completion shows up here
    const std::uint64_t reduced = tables.count(C);
    if (reduced != static_cast<std::uint64_t>(z.h))
        throw ComputationError("P(1) = " + std::to_string(z.h) + " but there are " +
                               std::to_string(reduced) + " reduced divisors");

    CounterRng rng(opt.seed, id);
    for (unsigned i = 0; i < opt.lagrange_samples; ++i) {
        MumfordDivisor D = tables.random_divisor(C, rng);
        if (!scalar_mul(static_cast<std::uint64_t>(z.h), D, C).is_identity())
            throw ComputationError("h does not annihilate " + C.ring().to_string(D.u));
    }
    {
        MumfordDivisor a = tables.random_divisor(C, rng), b = tables.random_divisor(C, rng),
                       c = tables.random_divisor(C, rng);
        const MumfordDivisor ab = cantor_add(a, b, C);
        if (!(ab == cantor_add(b, a, C)) ||
            !(cantor_add(ab, c, C) == cantor_add(a, cantor_add(b, c, C), C)) ||
            !cantor_add(a, negate(C, a), C).is_identity() || !(cantor_add(a, MumfordDivisor{}, C) == a))
            throw ComputationError("Cantor group laws fail");
    }

    ClassGroupRecord rec;
    rec.id = id;
    rec.f = f;
    rec.h = z.h;
    rec.l_part = l_part_structure(C, opt.l, z.h, tables, rng);
    mpz_class order = rec.l_part.order();
    if (order != mpz_class(static_cast<unsigned long>(l_power_part(z.h, opt.l))))
        throw ComputationError("l-part order differs from the l-power of h");
    for (const auto& A : opt.targets) {
        mpz_class m = sur_count(rec.l_part, A);
        if (A.is_trivial() && m != 1)
            throw ComputationError("m_A(trivial) != 1");
        if (!A.is_trivial() && m % 2 != 0)
            throw ComputationError("odd surjection count for " + A.to_string());
        rec.m_A.push_back(m.get_ui());
    }
    return rec;
}

}  // namespace

CensusReport cl_census(const CensusOptions& opt)
{
    if (opt.n < 3 || opt.n % 2 == 0)
        throw ValidationError("census degree n must be odd and >= 3");
    if ((opt.n - 1) / 2 > 2)
        throw ValidationError("census genus is limited to 2 (n <= 5)");
    if (opt.q > 9)
        throw ValidationError("census field size is limited to q <= 9");
    if (opt.l % 2 == 0 || !is_prime(opt.l))
        throw ValidationError("l must be an odd prime");
    FiniteField F(opt.q);
    if (F.p() == opt.l)
        throw ValidationError("l must not divide q");
    for (const auto& A : opt.targets)
        if (A.l != opt.l)
            throw ValidationError("target " + A.to_string() + " is not an l-group for l = " +
                                  std::to_string(opt.l));
    if (opt.max_failure_fraction < 0)
        throw ValidationError("failure fraction must be non-negative");

    CensusReport rep;
    rep.options = opt;
    rep.c0 = F.nonsquare();
    if ((opt.q - 1) % opt.l == 0)
        rep.warnings.push_back("l divides q - 1: the limiting distribution differs from Cohen-Lenstra");

    const std::vector<Poly> curves = enumerate_sf(F, opt.n, Leading::both_square_classes);
    rep.curve_count = curves.size();
    const ReducedDivisorTables tables(F, (opt.n - 1) / 2);
    std::vector<std::optional<ClassGroupRecord>> slots(curves.size());
    std::vector<std::string> errors(curves.size());
    parallel_for(curves.size(), opt.jobs, [&](std::size_t i) {
        try {
            slots[i] = census_curve(opt, F, tables, i, curves[i]);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    PolyRing R{&F};
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (slots[i])
            rep.records.push_back(std::move(*slots[i]));
        else
            rep.failures.push_back({i, R.to_string(curves[i]), errors[i]});
    }

    const double denom = double(rep.records.size());
    for (std::size_t t = 0; t < opt.targets.size(); ++t) {
        TargetAverage avg;
        avg.target = opt.targets[t];
        for (const auto& r : rep.records) {
            avg.total += static_cast<unsigned long>(r.m_A[t]);
            if (!avg.target.is_trivial() && r.m_A[t] % 2)
                ++avg.odd_counts;
        }
        avg.average = denom > 0 ? avg.total.get_d() / denom : 0;
        avg.deviation = std::fabs(avg.average - 1);
        rep.averages.push_back(avg);
    }

    std::map<AbelianLGroup, std::size_t> counts;
    for (const auto& r : rep.records)
        ++counts[r.l_part];
    double mu_seen = 0, diff = 0;
    for (const auto& [G, c] : counts) {
        LPartRow row;
        row.group = G;
        row.count = c;
        row.empirical = denom > 0 ? double(c) / denom : 0;
        row.mu = mu_mass(G, opt.mu_truncation).value;
        mu_seen += row.mu;
        diff += std::fabs(row.empirical - row.mu);
        rep.distribution.push_back(row);
    }
    std::sort(rep.distribution.begin(), rep.distribution.end(), [](const LPartRow& a, const LPartRow& b) {
        if (a.group.exponent_sum() != b.group.exponent_sum())
            return a.group.exponent_sum() < b.group.exponent_sum();
        return a.group.partition > b.group.partition;
    });
    rep.tv_distance = 0.5 * (diff + std::max(0.0, 1.0 - mu_seen));
    return rep;
}

}  // namespace hurwitz
