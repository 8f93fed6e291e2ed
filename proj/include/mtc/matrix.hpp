#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "field.hpp"

namespace mtc {

using FpVector = std::vector<Scalar>;

/// Dense row-major matrix over GF(p).
class FpMatrix {
public:
    FpMatrix() = default;

    FpMatrix(std::size_t rows, std::size_t cols, Scalar p)
        : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0)
    {
    }

    /// Build from signed integer rows; entries are reduced mod p.
    static FpMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows, Scalar p)
    {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.begin()->size() : 0;
        FpMatrix m(r, c, p);
        std::size_t i = 0;
        for (auto& row : rows) {
            if (row.size() != c) throw InputError("ragged matrix literal");
            std::size_t j = 0;
            for (auto v : row) m(i, j++) = reduce(v, p);
            ++i;
        }
        return m;
    }

    static FpMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols, Scalar p)
    {
        FpMatrix m(rows.size(), cols, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw InputError("ragged matrix: row " + std::to_string(i));
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = reduce(rows[i][j], p);
        }
        return m;
    }

    static FpMatrix identity(std::size_t n, Scalar p)
    {
        FpMatrix m(n, n, p);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
        return m;
    }

    static FpMatrix column(const FpVector& v, Scalar p)
    {
        FpMatrix m(v.size(), 1, p);
        std::copy(v.begin(), v.end(), m.data_.begin());
        return m;
    }

    /// Columns given as vectors of equal length `rows`.
    static FpMatrix from_columns(const std::vector<FpVector>& cols, std::size_t rows, Scalar p)
    {
        FpMatrix m(rows, cols.size(), p);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw InputError("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar modulus() const { return p_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Scalar>& data() const { return data_; }

    FpVector col(std::size_t c) const
    {
        FpVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
        return v;
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
    }

    bool operator==(const FpMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && data_ == o.data_;
    }

    FpMatrix transpose() const
    {
        FpMatrix t(cols_, rows_, p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    FpMatrix operator+(const FpMatrix& o) const
    {
        check_same_shape(o);
        FpMatrix r(rows_, cols_, p_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = add_mod(data_[i], o.data_[i], p_);
        return r;
    }

    FpMatrix operator-(const FpMatrix& o) const
    {
        check_same_shape(o);
        FpMatrix r(rows_, cols_, p_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = sub_mod(data_[i], o.data_[i], p_);
        return r;
    }

    FpMatrix& operator+=(const FpMatrix& o) { return *this = *this + o; }

    FpMatrix scaled(Scalar s) const
    {
        FpMatrix r(rows_, cols_, p_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = mul_mod(data_[i], s, p_);
        return r;
    }

    /// this += s * o
    void add_scaled(const FpMatrix& o, Scalar s)
    {
        check_same_shape(o);
        if (s == 0) return;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (o.data_[i]) data_[i] = static_cast<Scalar>((data_[i] + std::uint64_t{s} * o.data_[i]) % p_);
    }

    FpMatrix operator*(const FpMatrix& o) const
    {
        check_modulus(o);
        if (cols_ != o.rows_) throw InputError("matrix product shape mismatch");
        FpMatrix r(rows_, o.cols_, p_);
        std::vector<std::uint64_t> acc(o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint64_t a = (*this)(i, k);
                if (!a) continue;
                const Scalar* orow = o.data_.data() + k * o.cols_;
                for (std::size_t j = 0; j < o.cols_; ++j) acc[j] = (acc[j] + a * orow[j]) % p_;
            }
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = static_cast<Scalar>(acc[j]);
        }
        return r;
    }

    FpVector operator*(const FpVector& v) const
    {
        if (v.size() != cols_) throw InputError("matrix-vector shape mismatch");
        FpVector r(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) acc = (acc + std::uint64_t{(*this)(i, k)} * v[k]) % p_;
            r[i] = static_cast<Scalar>(acc);
        }
        return r;
    }

    FpMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        FpMatrix b(nr, nc, p_);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const FpMatrix& b)
    {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    FpMatrix select_columns(const std::vector<std::size_t>& idx) const
    {
        FpMatrix b(rows_, idx.size(), p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
        return b;
    }

    /// Row-major flattening as a single vector.
    FpVector flatten() const { return data_; }

    static FpMatrix unflatten(const FpVector& v, std::size_t rows, std::size_t cols, Scalar p)
    {
        if (v.size() != rows * cols) throw InputError("unflatten size mismatch");
        FpMatrix m(rows, cols, p);
        m.data_ = v;
        return m;
    }

    Scalar trace() const
    {
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return static_cast<Scalar>(t % p_);
    }

    void check_modulus(const FpMatrix& o) const
    {
        if (p_ != o.p_) throw InputError("mixing matrices over different prime fields");
    }

private:
    void check_same_shape(const FpMatrix& o) const
    {
        check_modulus(o);
        if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Scalar p_ = 2;
    std::vector<Scalar> data_;
};

inline std::ostream& operator<<(std::ostream& os, const FpMatrix& m)
{
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << "]";
    }
    return os << "] mod " << m.modulus();
}

inline FpMatrix hstack(const std::vector<FpMatrix>& blocks, std::size_t rows, Scalar p)
{
    std::size_t cols = 0;
    for (auto& b : blocks) {
        if (b.rows() != rows) throw InputError("hstack row mismatch");
        cols += b.cols();
    }
    FpMatrix m(rows, cols, p);
    std::size_t c = 0;
    for (auto& b : blocks) {
        m.set_block(0, c, b);
        c += b.cols();
    }
    return m;
}

inline FpMatrix vstack(const std::vector<FpMatrix>& blocks, std::size_t cols, Scalar p)
{
    std::size_t rows = 0;
    for (auto& b : blocks) {
        if (b.cols() != cols) throw InputError("vstack column mismatch");
        rows += b.rows();
    }
    FpMatrix m(rows, cols, p);
    std::size_t r = 0;
    for (auto& b : blocks) {
        m.set_block(r, 0, b);
        r += b.rows();
    }
    return m;
}

inline FpMatrix block_diagonal(const std::vector<FpMatrix>& blocks, Scalar p)
{
    std::size_t r = 0, c = 0;
    for (auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    FpMatrix m(r, c, p);
    r = c = 0;
    for (auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

struct RowEchelon {
    FpMatrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form over GF(p).
inline RowEchelon rref(FpMatrix m)
{
    const Scalar p = m.modulus();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r) {
            auto a = m.row(piv), b = m.row(r);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        auto prow = m.row(r);
        Scalar inv = inv_mod(prow[c], p);
        for (std::size_t j = c; j < m.cols(); ++j) prow[j] = mul_mod(prow[j], inv, p);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            auto row = m.row(i);
            Scalar f = row[c];
            if (!f) continue;
            std::uint64_t nf = p - f;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (prow[j]) row[j] = static_cast<Scalar>((row[j] + nf * prow[j]) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const FpMatrix& m) { return rref(m).rank(); }

/// Columns form a basis of the right null space.
inline FpMatrix kernel_basis(const FpMatrix& m)
{
    const Scalar p = m.modulus();
    auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    FpMatrix k(m.cols(), free.size(), p);
    for (std::size_t j = 0; j < free.size(); ++j) {
        k(free[j], j) = 1 % p;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], j) = neg_mod(e.reduced(r, free[j]), p);
    }
    return k;
}

/// Some X with a X = b, or nullopt when the system is inconsistent.
inline std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b)
{
    a.check_modulus(b);
    if (a.rows() != b.rows()) throw InputError("solve: row counts differ");
    const Scalar p = a.modulus();
    FpMatrix aug = hstack({a, b}, a.rows(), p);
    auto e = rref(std::move(aug));
    FpMatrix x(a.cols(), b.cols(), p);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        std::size_t c = e.pivots[r];
        if (c >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = e.reduced(r, a.cols() + j);
    }
    return x;
}

/// v lies in the column span of `span`.
inline bool membership(const FpVector& v, const FpMatrix& span)
{
    return solve(span, FpMatrix::column(v, span.modulus())).has_value();
}

/// Basis of the column space, chosen among the original columns.
inline FpMatrix column_space(const FpMatrix& m)
{
    return m.select_columns(rref(m).pivots);
}

inline std::optional<FpMatrix> inverse(const FpMatrix& m)
{
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve(m, FpMatrix::identity(m.rows(), m.modulus()));
    if (!x || !(m * *x == FpMatrix::identity(m.rows(), m.modulus()))) return std::nullopt;
    return x;
}

/// L with L * m = I for a matrix with independent columns.
inline FpMatrix left_inverse(const FpMatrix& m)
{
    const Scalar p = m.modulus();
    if (m.cols() == 0) return FpMatrix(0, m.rows(), p);
    auto rows = rref(m.transpose()).pivots;
    if (rows.size() != m.cols()) throw Error("left_inverse: columns are dependent");
    FpMatrix sq(m.cols(), m.cols(), p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c) sq(i, c) = m(rows[i], c);
    auto inv = inverse(sq);
    FpMatrix l(m.cols(), m.rows(), p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t r = 0; r < m.cols(); ++r) l(r, rows[i]) = (*inv)(r, i);
    return l;
}

/// Linear projection of GF(p)^n onto a complement of a subspace, with a section.
struct QuotientMap {
    FpMatrix projection; // (n - r) x n, kills the subspace
    FpMatrix section;    // n x (n - r), projection * section = I
};

/// Quotient of GF(p)^n by the column span of `sub`; complement coordinates are the non-pivot ones.
inline QuotientMap quotient_map(const FpMatrix& sub, std::size_t n, Scalar p)
{
    RowEchelon e = sub.cols() ? rref(sub.transpose()) : RowEchelon{FpMatrix(0, n, p), {}};
    std::vector<long> pivot_row(n, -1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) pivot_row[e.pivots[r]] = static_cast<long>(r);
    std::vector<std::size_t> keep;
    std::vector<long> keep_pos(n, -1);
    for (std::size_t c = 0; c < n; ++c)
        if (pivot_row[c] < 0) {
            keep_pos[c] = static_cast<long>(keep.size());
            keep.push_back(c);
        }
    FpMatrix proj(keep.size(), n, p), sec(n, keep.size(), p);
    for (std::size_t j = 0; j < n; ++j) {
        if (pivot_row[j] < 0) {
            proj(static_cast<std::size_t>(keep_pos[j]), j) = 1 % p;
        } else {
            auto r = static_cast<std::size_t>(pivot_row[j]);
            for (std::size_t k = 0; k < keep.size(); ++k) proj(k, j) = neg_mod(e.reduced(r, keep[k]), p);
        }
    }
    for (std::size_t k = 0; k < keep.size(); ++k) sec(keep[k], k) = 1 % p;
    return {std::move(proj), std::move(sec)};
}

/// Incrementally maintained echelon basis of a subspace of GF(p)^n.
class EchelonBasis {
public:
    EchelonBasis(std::size_t n, Scalar p) : n_(n), p_(p) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t ambient() const { return n_; }

    /// Reduces v against the stored basis in place.
    void reduce(FpVector& v) const
    {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Scalar f = v[pivots_[i]];
            if (!f) continue;
            std::uint64_t nf = p_ - f;
            const auto& r = rows_[i];
            for (std::size_t j = 0; j < n_; ++j)
                if (r[j]) v[j] = static_cast<Scalar>((v[j] + nf * r[j]) % p_);
        }
    }

    bool contains(FpVector v) const
    {
        reduce(v);
        return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
    }

    /// Adds v; returns true if it enlarged the span.
    bool add(FpVector v)
    {
        if (v.size() != n_) throw InputError("EchelonBasis: vector length mismatch");
        reduce(v);
        std::size_t piv = 0;
        while (piv < n_ && v[piv] == 0) ++piv;
        if (piv == n_) return false;
        Scalar inv = inv_mod(v[piv], p_);
        for (auto& x : v) x = mul_mod(x, inv, p_);
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }

    const std::vector<FpVector>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    std::size_t n_;
    Scalar p_;
    std::vector<FpVector> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace mtc
