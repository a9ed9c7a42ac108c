#include "hurwitz/linalg.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hurwitz/errors.hpp"

namespace hurwitz {

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), colptr_(cols + 1, 0)
{
}

SparseIntMatrix SparseIntMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                               std::vector<Triplet> entries)
{
    for (const auto& t : entries)
        if (t.row >= rows || t.col >= cols)
            throw ValidationError("triplet (" + std::to_string(t.row) + ", " +
                                  std::to_string(t.col) + ") outside a " + std::to_string(rows) +
                                  "x" + std::to_string(cols) + " matrix");
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    SparseIntMatrix m(rows, cols);
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i;
        __int128 sum = 0;
        while (j < entries.size() && entries[j].col == entries[i].col &&
               entries[j].row == entries[i].row)
            sum += entries[j++].value;
        if (sum > std::numeric_limits<std::int64_t>::max() ||
            sum < std::numeric_limits<std::int64_t>::min())
            throw ComputationError("integer overflow while summing matrix entries");
        if (sum != 0) {
            m.rowidx_.push_back(entries[i].row);
            m.vals_.push_back(static_cast<std::int64_t>(sum));
            ++m.colptr_[entries[i].col + 1];
        }
        i = j;
    }
    std::partial_sum(m.colptr_.begin(), m.colptr_.end(), m.colptr_.begin());
    return m;
}

SparseIntMatrix SparseIntMatrix::identity(std::size_t n)
{
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i)
        t.push_back({std::uint32_t(i), std::uint32_t(i), 1});
    return from_triplets(n, n, std::move(t));
}

std::int64_t SparseIntMatrix::at(std::size_t i, std::size_t j) const
{
    auto r = col_rows(j);
    auto it = std::lower_bound(r.begin(), r.end(), i);
    if (it == r.end() || *it != i)
        return 0;
    return col_values(j)[it - r.begin()];
}

std::vector<Triplet> SparseIntMatrix::triplets() const
{
    std::vector<Triplet> out;
    out.reserve(nnz());
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t k = colptr_[j]; k < colptr_[j + 1]; ++k)
            out.push_back({rowidx_[k], std::uint32_t(j), vals_[k]});
    return out;
}

SparseIntMatrix SparseIntMatrix::transpose() const
{
    auto t = triplets();
    for (auto& x : t)
        std::swap(x.row, x.col);
    return from_triplets(cols_, rows_, std::move(t));
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& other) const
{
    if (cols_ != other.rows_)
        throw ComputationError("matrix product shape mismatch: " + std::to_string(rows_) + "x" +
                               std::to_string(cols_) + " times " + std::to_string(other.rows_) +
                               "x" + std::to_string(other.cols_));
    SparseIntMatrix out(rows_, other.cols_);
    std::vector<__int128> acc(rows_, 0);
    std::vector<char> touched(rows_, 0);
    std::vector<std::uint32_t> list;
    for (std::size_t j = 0; j < other.cols_; ++j) {
        list.clear();
        auto br = other.col_rows(j);
        auto bv = other.col_values(j);
        for (std::size_t k = 0; k < br.size(); ++k) {
            auto ar = col_rows(br[k]);
            auto av = col_values(br[k]);
            for (std::size_t l = 0; l < ar.size(); ++l) {
                if (!touched[ar[l]]) {
                    touched[ar[l]] = 1;
                    list.push_back(ar[l]);
                }
                acc[ar[l]] += static_cast<__int128>(av[l]) * bv[k];
            }
        }
        std::sort(list.begin(), list.end());
        for (auto r : list) {
            auto s = acc[r];
            acc[r] = 0;
            touched[r] = 0;
            if (s == 0)
                continue;
            if (s > std::numeric_limits<std::int64_t>::max() ||
                s < std::numeric_limits<std::int64_t>::min())
                throw ComputationError("integer overflow in matrix product");
            out.rowidx_.push_back(r);
            out.vals_.push_back(static_cast<std::int64_t>(s));
        }
        out.colptr_[j + 1] = out.vals_.size();
    }
    return out;
}

SparseIntMatrix SparseIntMatrix::hstack(const SparseIntMatrix& other) const
{
    if (rows_ != other.rows_)
        throw ComputationError("hstack with different row counts");
    SparseIntMatrix out = *this;
    out.cols_ += other.cols_;
    for (std::size_t j = 0; j < other.cols_; ++j) {
        auto r = other.col_rows(j);
        auto v = other.col_values(j);
        out.rowidx_.insert(out.rowidx_.end(), r.begin(), r.end());
        out.vals_.insert(out.vals_.end(), v.begin(), v.end());
        out.colptr_.push_back(out.vals_.size());
    }
    return out;
}

void write_triplets(std::ostream& out, const SparseIntMatrix& m)
{
    out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    for (const auto& t : m.triplets())
        out << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

SparseIntMatrix read_triplets(std::istream& in)
{
    std::size_t rows, cols, nnz;
    if (!(in >> rows >> cols >> nnz))
        throw ValidationError("triplet header must be 'rows cols nnz'");
    std::vector<Triplet> t(nnz);
    for (auto& x : t)
        if (!(in >> x.row >> x.col >> x.value))
            throw ValidationError("truncated triplet list");
    return SparseIntMatrix::from_triplets(rows, cols, std::move(t));
}

// ---------------------------------------------------------------------------

ModP::value_type ModP::inv(value_type a) const
{
    if (a == 0)
        throw ComputationError("division by zero mod p");
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<value_type>(result);
}

template <class F>
void EchelonBasis<F>::axpy(SparseVec<F>& v, const typename F::value_type& a,
                           const SparseVec<F>& b) const
{
    SparseVec<F> out;
    out.reserve(v.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < b.size()) {
        if (j == b.size() || (i < v.size() && v[i].first < b[j].first)) {
            out.push_back(std::move(v[i++]));
        } else if (i == v.size() || b[j].first < v[i].first) {
            out.emplace_back(b[j].first, f_.mul(a, b[j].second));
            ++j;
        } else {
            auto s = f_.add(v[i].second, f_.mul(a, b[j].second));
            if (!f_.is_zero(s))
                out.emplace_back(v[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    v = std::move(out);
}

template <class F>
SparseVec<F> EchelonBasis<F>::reduce_leading(SparseVec<F> v) const
{
    while (!v.empty()) {
        auto lead = v.back().first;
        if (!is_pivot(lead))
            break;
        auto a = f_.neg(v.back().second);
        axpy(v, a, vecs_[pivot_of_[lead]]);
    }
    return v;
}

template <class F>
bool EchelonBasis<F>::insert(SparseVec<F> v)
{
    v = reduce_leading(std::move(v));
    if (v.empty())
        return false;
    auto lead = v.back().first;
    if (lead >= pivot_of_.size())
        pivot_of_.resize(lead + 1, -1);
    auto s = f_.inv(v.back().second);
    for (auto& e : v)
        e.second = f_.mul(e.second, s);
    pivot_of_[lead] = static_cast<long>(vecs_.size());
    vecs_.push_back(std::move(v));
    return true;
}

template <class F>
SparseVec<F> EchelonBasis<F>::reduce(SparseVec<F> v) const
{
    SparseVec<F> rest;
    while (!v.empty()) {
        auto lead = v.back().first;
        if (is_pivot(lead)) {
            auto a = f_.neg(v.back().second);
            axpy(v, a, vecs_[pivot_of_[lead]]);
        } else {
            rest.push_back(std::move(v.back()));
            v.pop_back();
        }
    }
    std::reverse(rest.begin(), rest.end());
    return rest;
}

template class EchelonBasis<ModP>;
template class EchelonBasis<Rational>;

// ---------------------------------------------------------------------------

std::string to_string(Certification c)
{
    return c == Certification::exact ? "exact" : "modular-certified";
}

Certification weakest(Certification a, Certification b)
{
    return (a == Certification::modular || b == Certification::modular) ? Certification::modular
                                                                         : Certification::exact;
}

const std::vector<std::uint32_t>& default_primes()
{
    static const std::vector<std::uint32_t> primes{2147483647u, 2147483629u, 1073741789u,
                                                   1073741827u, 2147483587u, 2147483579u};
    return primes;
}

namespace {

template <class F>
std::size_t rank_over(const SparseIntMatrix& m, const F& field)
{
    // Insert along the shorter side, sparsest vectors first.
    const SparseIntMatrix* src = &m;
    SparseIntMatrix t;
    if (m.cols() > m.rows()) {
        t = m.transpose();
        src = &t;
    }
    std::vector<std::uint32_t> order(src->cols());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return src->col_rows(a).size() < src->col_rows(b).size();
    });
    const std::size_t cap = std::min(src->rows(), src->cols());
    EchelonBasis<F> basis(field, src->rows());
    for (auto j : order) {
        basis.insert(column_vector(*src, j, field));
        if (basis.rank() == cap)
            break;
    }
    return basis.rank();
}

}  // namespace

std::size_t rank_exact(const SparseIntMatrix& m) { return rank_over(m, Rational{}); }

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p) { return rank_over(m, ModP{p}); }

RankResult rank(const SparseIntMatrix& m, const RankOptions& opt)
{
    if (m.is_zero())
        return {0, Certification::exact};
    if (opt.force_exact || m.nnz() <= opt.exact_nnz_limit)
        return {rank_exact(m), Certification::exact};
    const auto& primes = default_primes();
    // The rational rank is the maximum over all primes; accept once two
    // primes attain the same maximum.
    std::vector<std::size_t> seen;
    for (std::size_t i = 0; i < std::min(opt.max_primes, primes.size()); ++i) {
        seen.push_back(rank_mod_p(m, primes[i]));
        auto best = *std::max_element(seen.begin(), seen.end());
        if (std::count(seen.begin(), seen.end(), best) >= 2)
            return {best, Certification::modular};
    }
    throw ComputationError("modular ranks of a " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + " matrix never agreed across " +
                           std::to_string(seen.size()) + " primes");
}

std::vector<std::vector<mpq_class>> kernel_basis(const SparseIntMatrix& m, std::size_t max_cols)
{
    if (m.cols() > max_cols)
        throw BudgetError("kernel extraction limited to " + std::to_string(max_cols) + " columns");
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<mpq_class>> a(R, std::vector<mpq_class>(C));
    for (const auto& t : m.triplets())
        a[t.row][t.col] = mpq_class(static_cast<long>(t.value));
    std::vector<long> pivot_row_of_col(C, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && sgn(a[p][c]) == 0)
            ++p;
        if (p == R)
            continue;
        std::swap(a[p], a[r]);
        mpq_class s = 1 / a[r][c];
        for (auto& x : a[r])
            x *= s;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || sgn(a[i][c]) == 0)
                continue;
            mpq_class f = a[i][c];
            for (std::size_t k = c; k < C; ++k)
                a[i][k] -= f * a[r][k];
        }
        pivot_row_of_col[c] = static_cast<long>(r);
        ++r;
    }
    std::vector<std::vector<mpq_class>> basis;
    for (std::size_t free = 0; free < C; ++free) {
        if (pivot_row_of_col[free] >= 0)
            continue;
        std::vector<mpq_class> v(C);
        v[free] = 1;
        for (std::size_t c = 0; c < C; ++c)
            if (pivot_row_of_col[c] >= 0)
                v[c] = -a[pivot_row_of_col[c]][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> a)
{
    const std::size_t R = a.size();
    const std::size_t C = R ? a[0].size() : 0;
    std::vector<mpz_class> diag;
    for (std::size_t t = 0; t < std::min(R, C); ++t) {
        for (;;) {
            // pivot of least absolute value in the trailing block
            long pi = -1, pj = -1;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (sgn(a[i][j]) != 0 &&
                        (pi < 0 || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0)) {
                        pi = static_cast<long>(i);
                        pj = static_cast<long>(j);
                    }
            if (pi < 0)
                return diag;
            std::swap(a[t], a[pi]);
            for (auto& row : a)
                std::swap(row[t], row[pj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (sgn(a[i][t]) == 0)
                    continue;
                mpz_class q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < C; ++j)
                    a[i][j] -= q * a[t][j];
                clean = clean && sgn(a[i][t]) == 0;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (sgn(a[t][j]) == 0)
                    continue;
                mpz_class q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < R; ++i)
                    a[i][j] -= q * a[i][t];
                clean = clean && sgn(a[t][j]) == 0;
            }
            if (!clean)
                continue;
            long bad = -1;
            for (std::size_t i = t + 1; i < R && bad < 0; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (sgn(a[i][j] % a[t][t]) != 0) {
                        bad = static_cast<long>(i);
                        break;
                    }
            if (bad < 0)
                break;
            for (std::size_t j = t; j < C; ++j)
                a[t][j] += a[bad][j];
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

std::vector<mpz_class> smith_diagonal(const SparseIntMatrix& m)
{
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
    for (const auto& t : m.triplets())
        a[t.row][t.col] = mpz_class(static_cast<long>(t.value));
    return smith_diagonal(std::move(a));
}

// ---------------------------------------------------------------------------

void GradedChainComplex::validate() const
{
    if (terms.empty()) {
        if (!differentials.empty())
            throw ComputationError("differentials given for an empty complex");
        return;
    }
    if (differentials.size() + 1 != terms.size())
        throw ComputationError("complex with " + std::to_string(terms.size()) + " terms needs " +
                               std::to_string(terms.size() - 1) + " differentials");
    for (std::size_t q = 0; q < differentials.size(); ++q)
        if (differentials[q].rows() != terms[q] || differentials[q].cols() != terms[q + 1])
            throw ComputationError("differential d_" + std::to_string(q + 1) + " has shape " +
                                   std::to_string(differentials[q].rows()) + "x" +
                                   std::to_string(differentials[q].cols()));
    for (std::size_t q = 0; q + 1 < differentials.size(); ++q)
        if (!differentials[q].multiply(differentials[q + 1]).is_zero())
            throw ComputationError("d_" + std::to_string(q + 1) + " d_" + std::to_string(q + 2) +
                                   " != 0 in total degree " + std::to_string(grade));
}

HomologyDims homology_dims(const GradedChainComplex& c, const RankOptions& opt)
{
    c.validate();
    std::vector<RankResult> r;
    for (const auto& d : c.differentials)
        r.push_back(rank(d, opt));
    HomologyDims h;
    for (std::size_t q = 0; q < c.terms.size(); ++q) {
        std::size_t dim = c.terms[q];
        auto cert = Certification::exact;
        if (q >= 1) {
            dim -= r[q - 1].rank;
            cert = weakest(cert, r[q - 1].certification);
        }
        if (q < r.size()) {
            dim -= r[q].rank;
            cert = weakest(cert, r[q].certification);
        }
        if (dim == 0)
            cert = Certification::exact;
        h.dims.push_back(dim);
        h.certification.push_back(cert);
    }
    return h;
}

}  // namespace hurwitz
