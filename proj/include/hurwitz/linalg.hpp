// Exact sparse linear algebra over Z, Q and F_p.
//
// Matrices are stored column-compressed with int64 entries.  Ranks are
// computed by sparse column reduction, either over Q (mpq) or modulo word
// primes; large inputs use two primes and accept only when they agree.
#ifndef HURWITZ_LINALG_HPP
#define HURWITZ_LINALG_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hurwitz {

struct Triplet {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    std::int64_t value = 0;
};

class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols);

    /// Duplicate (row, col) pairs are summed; zeros are dropped.
    static SparseIntMatrix from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> entries);
    static SparseIntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return vals_.size(); }
    bool is_zero() const { return vals_.empty(); }

    std::span<const std::uint32_t> col_rows(std::size_t j) const
    {
        return {rowidx_.data() + colptr_[j], colptr_[j + 1] - colptr_[j]};
    }
    std::span<const std::int64_t> col_values(std::size_t j) const
    {
        return {vals_.data() + colptr_[j], colptr_[j + 1] - colptr_[j]};
    }
    std::int64_t at(std::size_t i, std::size_t j) const;

    /// Column-major, rows ascending within a column.
    std::vector<Triplet> triplets() const;
    SparseIntMatrix transpose() const;
    /// this * other; throws ComputationError on shape mismatch or overflow.
    SparseIntMatrix multiply(const SparseIntMatrix& other) const;
    /// [this | other]
    SparseIntMatrix hstack(const SparseIntMatrix& other) const;

    bool operator==(const SparseIntMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> colptr_{0};
    std::vector<std::uint32_t> rowidx_;
    std::vector<std::int64_t> vals_;
};

/// Header "rows cols nnz", then one "row col value" line per entry (0-based).
void write_triplets(std::ostream& out, const SparseIntMatrix& m);
SparseIntMatrix read_triplets(std::istream& in);

// ---------------------------------------------------------------------------
// Fields and echelon bases

struct ModP {
    using value_type = std::uint32_t;
    std::uint32_t p;

    value_type from_int(std::int64_t x) const
    {
        auto r = x % static_cast<std::int64_t>(p);
        return static_cast<value_type>(r < 0 ? r + p : r);
    }
    bool is_zero(value_type a) const { return a == 0; }
    value_type add(value_type a, value_type b) const
    {
        std::uint64_t s = std::uint64_t(a) + b;
        return static_cast<value_type>(s >= p ? s - p : s);
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p - b); }
    value_type mul(value_type a, value_type b) const
    {
        return static_cast<value_type>(std::uint64_t(a) * b % p);
    }
    value_type neg(value_type a) const { return a ? p - a : 0; }
    value_type inv(value_type a) const;
};

struct Rational {
    using value_type = mpq_class;

    value_type from_int(std::int64_t x) const { return mpq_class(static_cast<long>(x)); }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const { return 1 / a; }
};

template <class F>
using SparseVec = std::vector<std::pair<std::uint32_t, typename F::value_type>>;

/// Sparse vectors sorted by index.  Each stored vector has a distinct pivot,
/// its largest index, normalized to 1.
template <class F>
class EchelonBasis {
public:
    explicit EchelonBasis(F field = F{}, std::size_t dim = 0) : f_(field), pivot_of_(dim, -1) {}

    /// Reduces v against the basis and stores the remainder if nonzero.
    /// Returns true iff v was independent.
    bool insert(SparseVec<F> v);
    /// Unique representative of v modulo the span: all pivot coordinates zero.
    SparseVec<F> reduce(SparseVec<F> v) const;
    bool contains(SparseVec<F> v) const { return reduce_leading(std::move(v)).empty(); }

    std::size_t rank() const { return vecs_.size(); }
    std::size_t dim() const { return pivot_of_.size(); }
    bool is_pivot(std::uint32_t i) const { return i < pivot_of_.size() && pivot_of_[i] >= 0; }
    const std::vector<SparseVec<F>>& vectors() const { return vecs_; }
    const F& field() const { return f_; }

private:
    SparseVec<F> reduce_leading(SparseVec<F> v) const;
    void axpy(SparseVec<F>& v, const typename F::value_type& a, const SparseVec<F>& b) const;

    F f_;
    std::vector<long> pivot_of_;
    std::vector<SparseVec<F>> vecs_;
};

extern template class EchelonBasis<ModP>;
extern template class EchelonBasis<Rational>;

/// Column j of m as a sparse vector over F.
template <class F>
SparseVec<F> column_vector(const SparseIntMatrix& m, std::size_t j, const F& field)
{
    SparseVec<F> v;
    auto r = m.col_rows(j);
    auto x = m.col_values(j);
    for (std::size_t k = 0; k < r.size(); ++k) {
        auto val = field.from_int(x[k]);
        if (!field.is_zero(val))
            v.emplace_back(r[k], std::move(val));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Rank, kernel, Smith form

enum class Certification { exact, modular };
std::string to_string(Certification c);
Certification weakest(Certification a, Certification b);

/// Word primes above 2^29, none dividing any group order in scope.
const std::vector<std::uint32_t>& default_primes();

struct RankOptions {
    /// Exact elimination over Q at or below this many nonzeros.
    std::size_t exact_nnz_limit = 20000;
    bool force_exact = false;
    /// Number of primes tried before giving up on two agreeing.
    std::size_t max_primes = 5;
};

struct RankResult {
    std::size_t rank = 0;
    Certification certification = Certification::exact;
};

RankResult rank(const SparseIntMatrix& m, const RankOptions& opt = {});
std::size_t rank_exact(const SparseIntMatrix& m);
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p);

/// Basis of {x : m x = 0} over Q in reduced echelon form.  Dense; at most
/// `max_cols` columns.
std::vector<std::vector<mpq_class>> kernel_basis(const SparseIntMatrix& m,
                                                 std::size_t max_cols = 500);

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.
std::vector<mpz_class> smith_diagonal(const SparseIntMatrix& m);
std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> dense);

// ---------------------------------------------------------------------------
// Chain complexes

struct GradedChainComplex {
    /// terms[q] = dim C_q
    std::vector<std::size_t> terms;
    /// differentials[q] : C_{q+1} -> C_q, shape terms[q] x terms[q+1]
    std::vector<SparseIntMatrix> differentials;
    /// The fixed total degree this complex computes.
    long grade = 0;

    /// Checks shapes and d_q d_{q+1} = 0 exactly; throws ComputationError
    /// naming the offending pair.
    void validate() const;
};

struct HomologyDims {
    std::vector<std::size_t> dims;
    std::vector<Certification> certification;
};

/// dim H_q = dim C_q - rank d_q - rank d_{q+1}.  A modular zero is
/// certified exact, since reduction mod p can only lower ranks.
HomologyDims homology_dims(const GradedChainComplex& c, const RankOptions& opt = {});

}  // namespace hurwitz

#endif
