#include "hurwitz/cohen_lenstra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "hurwitz/errors.hpp"
#include "hurwitz/parallel.hpp"
#include "hurwitz/rng.hpp"

namespace hurwitz {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

namespace {

mpz_class power(std::uint32_t l, unsigned e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), l, e);
    return r;
}

std::uint64_t power64(std::uint32_t l, unsigned e)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= l;
    return r;
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

// exponent of l in m, or -1 if m is not a power of l
int log_l(std::uint64_t m, std::uint32_t l)
{
    int e = 0;
    while (m > 1 && m % l == 0) {
        m /= l;
        ++e;
    }
    return m == 1 ? e : -1;
}

}  // namespace

AbelianLGroup AbelianLGroup::make(std::uint32_t l, std::vector<unsigned> exponents)
{
    if (!is_prime(l))
        throw ValidationError(std::to_string(l) + " is not prime");
    std::erase(exponents, 0u);
    std::sort(exponents.rbegin(), exponents.rend());
    AbelianLGroup A;
    A.l = l;
    A.partition = std::move(exponents);
    return A;
}

AbelianLGroup AbelianLGroup::parse(std::uint32_t l, const std::string& text)
{
    std::string t = trim(text);
    if (t.empty() || t == "1" || t == "0" || t == "trivial")
        return make(l, {});
    if (t.find_first_not_of("0123456789, ") == std::string::npos) {
        std::vector<unsigned> ex;
        std::stringstream ss(t);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!trim(part).empty())
                ex.push_back(static_cast<unsigned>(std::stoul(trim(part))));
        return make(l, ex);
    }
    std::vector<unsigned> ex;
    std::size_t pos = 0;
    while (pos < t.size()) {
        auto next = t.find('x', pos);
        std::string tok = trim(t.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        pos = next == std::string::npos ? t.size() : next + 1;
        unsigned copies = 1;
        if (!tok.empty() && tok.front() == '(') {
            auto close = tok.find(')');
            auto caret = tok.find('^', close);
            if (close == std::string::npos || caret == std::string::npos)
                throw ValidationError("cannot parse group factor '" + tok + "'");
            copies = static_cast<unsigned>(std::stoul(tok.substr(caret + 1)));
            tok = trim(tok.substr(1, close - 1));
        }
        if (tok.rfind("Z/", 0) != 0)
            throw ValidationError("cannot parse group factor '" + tok + "'");
        std::uint64_t m = std::stoull(tok.substr(2));
        int e = log_l(m, l);
        if (e < 0)
            throw ValidationError("Z/" + std::to_string(m) + " is not an " + std::to_string(l) +
                                  "-group");
        for (unsigned c = 0; c < copies; ++c)
            ex.push_back(static_cast<unsigned>(e));
    }
    return make(l, ex);
}

unsigned AbelianLGroup::exponent_sum() const
{
    return std::accumulate(partition.begin(), partition.end(), 0u);
}

mpz_class AbelianLGroup::order() const { return power(l, exponent_sum()); }

std::string AbelianLGroup::to_string() const
{
    if (partition.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        if (i)
            s += " x ";
        s += "Z/" + power(l, partition[i]).get_str();
    }
    return s;
}

std::string AbelianLGroup::partition_string() const
{
    std::string s;
    for (std::size_t i = 0; i < partition.size(); ++i)
        s += (i ? "," : "") + std::to_string(partition[i]);
    return s;
}

std::vector<std::vector<unsigned>> partitions_of(unsigned m)
{
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned cap) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned p = std::min(left, cap); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(m, m);
    return out;
}

std::vector<AbelianLGroup> groups_up_to(std::uint32_t l, unsigned max_exponent)
{
    std::vector<AbelianLGroup> out;
    for (unsigned m = 0; m <= max_exponent; ++m)
        for (auto& p : partitions_of(m))
            out.push_back(AbelianLGroup::make(l, p));
    return out;
}

// ---------------------------------------------------------------------------

mpz_class hom_count(const AbelianLGroup& B, const AbelianLGroup& A)
{
    if (A.l != B.l)
        throw ValidationError("groups for different primes");
    unsigned e = 0;
    for (auto b : B.partition)
        for (auto a : A.partition)
            e += std::min(a, b);
    return power(A.l, e);
}

mpz_class aut_order(const AbelianLGroup& A)
{
    std::vector<unsigned> e(A.partition.rbegin(), A.partition.rend());  // ascending
    const std::size_t n = e.size();
    const std::uint32_t p = A.l;
    mpz_class r = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t d = k, c = k;
        while (d + 1 < n && e[d + 1] == e[k])
            ++d;
        while (c > 0 && e[c - 1] == e[k])
            --c;
        // 1-based d_k = d + 1, c_k = c + 1
        r *= power(p, unsigned(d + 1)) - power(p, unsigned(k));
        r *= power(p, unsigned(e[k] * (n - (d + 1))));
        r *= power(p, unsigned((e[k] - 1) * (n - c)));
    }
    return r;
}

namespace {

// Rank over F_l of the rows restricted to the given columns.
unsigned rank_mod_l(std::vector<std::vector<unsigned>> rows, const std::vector<bool>& keep,
                    std::uint32_t l)
{
    for (auto& r : rows)
        for (std::size_t j = 0; j < r.size(); ++j)
            if (!keep[j])
                r[j] = 0;
    unsigned rank = 0;
    const std::size_t cols = keep.size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[rank]);
        unsigned inv = 1;
        while (rows[rank][c] * inv % l != 1)
            ++inv;
        for (auto& x : rows[rank])
            x = x * inv % l;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && rows[i][c]) {
                unsigned f = rows[i][c];
                for (std::size_t j = 0; j < cols; ++j)
                    rows[i][j] = (rows[i][j] + (l - f) * rows[rank][j]) % l;
            }
        ++rank;
    }
    return rank;
}

// Calls visit(basis) for every subspace of F_l^r, given by an echelon basis.
void for_each_subspace(unsigned r, std::uint32_t l,
                       const std::function<void(const std::vector<std::vector<unsigned>>&)>& visit)
{
    for (unsigned d = 0; d <= r; ++d) {
        std::vector<unsigned> pivots(d);
        std::function<void(unsigned, unsigned)> choose = [&](unsigned i, unsigned start) {
            if (i == d) {
                // free entries: row i, column j > pivot_i, j not a pivot
                std::vector<std::pair<unsigned, unsigned>> free;
                for (unsigned a = 0; a < d; ++a)
                    for (unsigned j = pivots[a] + 1; j < r; ++j)
                        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end())
                            free.emplace_back(a, j);
                std::vector<std::vector<unsigned>> basis(d, std::vector<unsigned>(r, 0));
                for (unsigned a = 0; a < d; ++a)
                    basis[a][pivots[a]] = 1;
                std::vector<unsigned> digits(free.size(), 0);
                for (;;) {
                    for (std::size_t f = 0; f < free.size(); ++f)
                        basis[free[f].first][free[f].second] = digits[f];
                    visit(basis);
                    std::size_t f = 0;
                    while (f < digits.size() && ++digits[f] == l)
                        digits[f++] = 0;
                    if (f == digits.size())
                        break;
                }
                return;
            }
            for (unsigned c = start; c < r; ++c) {
                pivots[i] = c;
                choose(i + 1, c + 1);
            }
        };
        choose(0, 0);
    }
}

}  // namespace

mpz_class sur_count(const AbelianLGroup& B, const AbelianLGroup& A)
{
    if (A.l != B.l)
        throw ValidationError("groups for different primes");
    if (A.is_trivial())
        return 1;
    if (B.length() < A.length() || B.exponent_sum() < A.exponent_sum())
        return 0;
    const unsigned r = A.length();
    if (r > 8)
        throw BudgetError("surjection count limited to targets of rank <= 8");
    const std::uint32_t l = A.l;
    // Sur(B,A) = sum over C with lA <= C <= A of mu(C, A) |Hom(B, C)|, where
    // C is the preimage of a subspace W of A/lA and mu = (-1)^k l^{k(k-1)/2}
    // for k = codim W.  |C[l^b]| = |A[l^b]| l^{dim(W cap E_b) - dim E_b}
    // with E_b spanned by the coordinates j with a_j <= b.
    struct Factor {
        unsigned torsion_exp;
        std::vector<bool> outside;  // coordinates not in E_b
        unsigned dim_e;
    };
    std::vector<Factor> factors;
    for (auto b : B.partition) {
        Factor f;
        f.torsion_exp = 0;
        f.outside.assign(r, false);
        f.dim_e = 0;
        for (unsigned j = 0; j < r; ++j) {
            f.torsion_exp += std::min(A.partition[j], b);
            if (A.partition[j] <= b)
                ++f.dim_e;
            else
                f.outside[j] = true;
        }
        factors.push_back(std::move(f));
    }
    mpz_class total = 0;
    for_each_subspace(r, l, [&](const std::vector<std::vector<unsigned>>& basis) {
        const unsigned dimW = static_cast<unsigned>(basis.size());
        const unsigned k = r - dimW;
        long exp = long(k) * (long(k) - 1) / 2;
        for (const auto& f : factors) {
            unsigned inter = dimW - rank_mod_l(basis, f.outside, l);
            exp += long(f.torsion_exp) - long(f.dim_e) + long(inter);
        }
        mpz_class term = power(l, static_cast<unsigned>(exp));
        if (k % 2)
            total -= term;
        else
            total += term;
    });
    return total;
}

namespace {

// Elements of A as mixed-radix integers, coordinate j mod l^{a_j}.
struct ElementCodec {
    std::vector<std::uint64_t> mod;
    std::uint64_t size = 1;

    explicit ElementCodec(const AbelianLGroup& A)
    {
        for (auto a : A.partition) {
            mod.push_back(power64(A.l, a));
            size *= mod.back();
        }
    }
    std::vector<std::uint64_t> decode(std::uint64_t x) const
    {
        std::vector<std::uint64_t> c(mod.size());
        for (std::size_t j = 0; j < mod.size(); ++j) {
            c[j] = x % mod[j];
            x /= mod[j];
        }
        return c;
    }
    std::uint64_t encode(const std::vector<std::uint64_t>& c) const
    {
        std::uint64_t x = 0;
        for (std::size_t j = mod.size(); j-- > 0;)
            x = x * mod[j] + c[j];
        return x;
    }
    std::uint64_t add(std::uint64_t x, std::uint64_t y) const
    {
        auto a = decode(x), b = decode(y);
        for (std::size_t j = 0; j < mod.size(); ++j)
            a[j] = (a[j] + b[j]) % mod[j];
        return encode(a);
    }
};

}  // namespace

mpz_class sur_count_brute(const AbelianLGroup& B, const AbelianLGroup& A, std::uint64_t budget)
{
    if (A.l != B.l)
        throw ValidationError("groups for different primes");
    mpz_class homs = hom_count(B, A);
    if (homs * A.order() > budget)
        throw BudgetError("brute-force surjection count over budget");
    ElementCodec codec(A);
    // candidate images of each generator of B: the l^{b_i}-torsion of A
    std::vector<std::vector<std::uint64_t>> torsion;
    for (auto b : B.partition) {
        std::vector<std::uint64_t> t;
        for (std::uint64_t x = 0; x < codec.size; ++x) {
            auto c = codec.decode(x);
            bool killed = true;
            for (std::size_t j = 0; j < c.size(); ++j) {
                std::uint64_t v = c[j];
                for (unsigned i = 0; i < b && v; ++i)
                    v = v * A.l % codec.mod[j];
                killed = killed && v == 0;
            }
            if (killed)
                t.push_back(x);
        }
        torsion.push_back(std::move(t));
    }
    mpz_class count = 0;
    std::vector<std::size_t> idx(torsion.size(), 0);
    std::vector<bool> in(codec.size);
    for (;;) {
        // subgroup generated by the chosen images
        std::fill(in.begin(), in.end(), false);
        std::vector<std::uint64_t> members{0};
        in[0] = true;
        for (std::size_t g = 0; g < idx.size(); ++g) {
            std::uint64_t x = torsion[g][idx[g]];
            for (std::size_t h = 0; h < members.size(); ++h) {
                std::uint64_t y = codec.add(members[h], x);
                if (!in[y]) {
                    in[y] = true;
                    members.push_back(y);
                }
            }
        }
        if (members.size() == codec.size)
            ++count;
        std::size_t g = 0;
        while (g < idx.size() && ++idx[g] == torsion[g].size())
            idx[g++] = 0;
        if (g == idx.size())
            break;
    }
    return count;
}

mpz_class aut_order_brute(const AbelianLGroup& A, std::uint64_t budget)
{
    // a surjective endomorphism of a finite group is an automorphism
    return sur_count_brute(A, A, budget);
}

MassBound euler_product(std::uint32_t l, unsigned k)
{
    if (k < 1)
        throw ValidationError("truncation must be at least 1");
    double p = 1;
    for (unsigned i = 1; i <= k; ++i)
        p *= 1.0 - std::pow(double(l), -double(i));
    // prod_{i>k} (1 - x_i) >= 1 - sum_{i>k} x_i
    double tail = std::pow(double(l), -double(k)) / double(l - 1);
    return {p, p * tail};
}

MassBound mu_mass(const AbelianLGroup& A, unsigned truncation_k)
{
    auto e = euler_product(A.l, truncation_k);
    double aut = aut_order(A).get_d();
    return {e.value / aut, e.error / aut};
}

// ---------------------------------------------------------------------------

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(u128(a) * b % m);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m)
{
    __int128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr) {
        __int128 q = r / nr;
        std::tie(t, nt) = std::pair{nt, t - q * nt};
        std::tie(r, nr) = std::pair{nr, r - q * nr};
    }
    if (r != 1)
        throw ComputationError("non-unit pivot in local Smith form");
    if (t < 0)
        t += m;
    return static_cast<std::uint64_t>(t);
}

unsigned valuation(std::uint64_t x, std::uint32_t l, unsigned e)
{
    if (x == 0)
        return e;
    unsigned v = 0;
    while (x % l == 0) {
        x /= l;
        ++v;
    }
    return v;
}

}  // namespace

LocalSmith smith_mod_prime_power(std::vector<std::vector<std::uint64_t>> m, std::uint32_t l,
                                 unsigned e)
{
    const std::uint64_t M = power64(l, e);
    const std::size_t n = m.size();
    LocalSmith out;
    for (std::size_t k = 0; k < n; ++k) {
        unsigned best = e;
        std::size_t bi = k, bj = k;
        for (std::size_t i = k; i < n && best > 0; ++i)
            for (std::size_t j = k; j < n; ++j) {
                unsigned v = valuation(m[i][j], l, e);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (v == 0)
                        break;
                }
            }
        if (best == e) {
            out.saturated = static_cast<unsigned>(n - k);
            break;
        }
        std::swap(m[k], m[bi]);
        for (auto& row : m)
            std::swap(row[k], row[bj]);
        const std::uint64_t lv = power64(l, best);
        // pivot = l^v u; scale the row by u^{-1}
        const std::uint64_t u = inverse_mod((m[k][k] / lv) % M, M);
        for (std::size_t j = k; j < n; ++j)
            m[k][j] = mulmod(m[k][j], u, M);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0)
                continue;
            std::uint64_t t = m[i][k] / lv;
            for (std::size_t j = k; j < n; ++j)
                m[i][j] = (m[i][j] + M - mulmod(t, m[k][j], M)) % M;
        }
        if (best > 0)
            out.exponents.push_back(best);
    }
    return out;
}

CokernelSample sample_cokernel(const SamplerOptions& opt, std::uint64_t seed, std::uint64_t stream)
{
    if (opt.N < 1 || opt.e_cap < 1)
        throw ValidationError("sampler needs N >= 1 and e_cap >= 1");
    if (!is_prime(opt.l))
        throw ValidationError(std::to_string(opt.l) + " is not prime");
    CounterRng rng(seed, stream);
    const std::size_t N = opt.N;
    std::vector<std::vector<std::uint64_t>> m(N, std::vector<std::uint64_t>(N, 0));
    unsigned e = 0;
    for (unsigned round = 0;; ++round) {
        const unsigned e_next = e + opt.e_cap;
        if (round > opt.max_escalations ||
            double(e_next) * std::log2(double(opt.l)) > 62.0)
            throw ComputationError("cokernel still saturated at precision " + std::to_string(opt.l) +
                                   "^" + std::to_string(e));
        const std::uint64_t scale = power64(opt.l, e);
        const std::uint64_t digits = power64(opt.l, opt.e_cap);
        for (auto& row : m)
            for (auto& x : row)
                x += scale * rng.below(digits);
        e = e_next;
        auto s = smith_mod_prime_power(m, opt.l, e);
        if (s.saturated == 0) {
            CokernelSample out;
            out.group = AbelianLGroup::make(opt.l, s.exponents);
            out.precision = e;
            out.escalations = round;
            return out;
        }
    }
}

SampleRun run_sampler(const SamplerOptions& opt, std::uint64_t seed, std::size_t samples,
                      unsigned jobs)
{
    SampleRun run;
    run.options = opt;
    run.seed = seed;
    run.samples.resize(samples);
    parallel_for(samples, jobs, [&](std::size_t i) { run.samples[i] = sample_cokernel(opt, seed, i); });
    for (const auto& s : run.samples)
        if (s.escalations)
            ++run.escalated;
    return run;
}

MomentEstimate moment_estimate(const SampleRun& run, const AbelianLGroup& A)
{
    std::map<std::vector<unsigned>, double> cache;
    double sum = 0, sum2 = 0;
    for (const auto& s : run.samples) {
        auto it = cache.find(s.group.partition);
        if (it == cache.end())
            it = cache.emplace(s.group.partition, sur_count(s.group, A).get_d()).first;
        sum += it->second;
        sum2 += it->second * it->second;
    }
    MomentEstimate m;
    m.target = A;
    m.samples = run.samples.size();
    if (m.samples == 0)
        return m;
    const double n = double(m.samples);
    m.mean = sum / n;
    if (m.samples > 1) {
        double var = std::max(0.0, (sum2 - n * m.mean * m.mean) / (n - 1));
        m.standard_error = std::sqrt(var / n);
    }
    return m;
}

std::pair<double, double> empirical_mass(const SampleRun& run, const AbelianLGroup& A)
{
    if (run.samples.empty())
        return {0, 0};
    std::size_t hits = 0;
    for (const auto& s : run.samples)
        if (s.group.partition == A.partition)
            ++hits;
    const double n = double(run.samples.size());
    const double p = double(hits) / n;
    return {p, std::sqrt(p * (1 - p) / n)};
}

TruncatedMoment truncated_moment_identity(const AbelianLGroup& A, unsigned order_cap_exponent)
{
    TruncatedMoment t;
    const double euler = euler_product(A.l, 200).value;
    for (const auto& B : groups_up_to(A.l, order_cap_exponent)) {
        double sur = sur_count(B, A).get_d();
        if (sur == 0)
            continue;
        double aut = aut_order(B).get_d();
        t.value += euler * sur / aut;
        if (!(B == A))
            t.beta_partial += sur / aut;
    }
    t.beta_limit = 1.0 / euler - 1.0;
    return t;
}

// ---------------------------------------------------------------------------

std::vector<AbelianLGroup> enhom_family(const AbelianLGroup& A, unsigned s)
{
    std::vector<AbelianLGroup> M;
    for (auto& p : partitions_of(A.exponent_sum() + s)) {
        auto Ap = AbelianLGroup::make(A.l, p);
        if (sur_count(Ap, A) > 0)
            M.push_back(Ap);
    }
    return M;
}

unsigned enhom_s(const AbelianLGroup& A, double epsilon)
{
    if (!(epsilon > 0))
        throw ValidationError("epsilon must be positive");
    for (unsigned s = 1; s < 40; ++s)
        if (std::pow(double(A.l), double(s)) * epsilon >= double(enhom_family(A, s).size()))
            return s;
    throw ComputationError("no s below 40 satisfies l^s >= |M| / epsilon");
}

EnhomResult enhom_bound_check(const AbelianLGroup& A, double epsilon, unsigned s,
                              unsigned max_exponent)
{
    if (s < 1)
        throw ValidationError("s must be at least 1");
    EnhomResult r;
    r.s = s;
    r.c = power(A.l, s - 1) * A.order();
    auto M = enhom_family(A, s);
    r.family_size = M.size();
    const mpq_class eps(epsilon);
    for (const auto& X : groups_up_to(A.l, max_exponent)) {
        if (X.order() <= r.c)
            continue;
        ++r.checked;
        mpz_class lhs = sur_count(X, A);
        mpz_class sum = 0;
        for (const auto& Ap : M)
            sum += sur_count(X, Ap);
        if (mpq_class(lhs) * mpq_class(long(M.size())) > eps * mpq_class(sum)) {
            r.holds = false;
            if (r.counterexample.empty())
                r.counterexample = X.to_string();
        }
    }
    return r;
}

}  // namespace hurwitz
