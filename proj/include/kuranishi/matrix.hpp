#ifndef KURANISHI_MATRIX_HPP
#define KURANISHI_MATRIX_HPP

#include <optional>
#include <vector>

#include "kuranishi/scalar.hpp"

namespace kuranishi {

/// Dense matrix over the exact ground field. Sized for desk-scale ranks and
/// kernels; elimination uses the first nonzero pivot in column order, so all
/// results are deterministic.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar& at(int r, int c) { return data_[size_t(r) * cols_ + c]; }
    const Scalar& at(int r, int c) const { return data_[size_t(r) * cols_ + c]; }

    static Matrix identity(int n)
    {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = Scalar(1);
        return m;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (!x.is_zero())
                return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix operator*(const Matrix& o) const
    {
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero())
                    continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }

  private:
    int rows_, cols_;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<int> row_reduce(Matrix& m)
{
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!m.at(r, col).is_zero()) {
                p = r;
                break;
            }
        if (p < 0)
            continue;
        if (p != row)
            for (int c = 0; c < m.cols(); ++c)
                std::swap(m.at(p, c), m.at(row, c));
        Scalar inv = m.at(row, col).inverse();
        for (int c = col; c < m.cols(); ++c)
            m.at(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero())
                continue;
            Scalar f = m.at(r, col);
            for (int c = col; c < m.cols(); ++c)
                m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(Matrix m) { return int(row_reduce(m).size()); }

/// Basis of the right kernel {x : m x = 0}; one vector per free column, with
/// the free coordinate set to 1.
inline std::vector<std::vector<Scalar>> kernel_basis(Matrix m)
{
    std::vector<int> pivots = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Scalar> v(m.cols());
        v[free] = Scalar(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(int(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of m x = b with all free variables zero (the canonical
/// minimal representative for the fixed column order), or nullopt if
/// inconsistent.
inline std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& b)
{
    Matrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c)
            aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = b[size_t(r)];
    }
    std::vector<int> pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == m.cols())
        return std::nullopt;
    std::vector<Scalar> x(m.cols());
    for (size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug.at(int(r), m.cols());
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    int n = m.rows();
    Matrix aug(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c)
            aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = Scalar(1);
    }
    std::vector<int> pivots = row_reduce(aug);
    if (int(pivots.size()) < n || pivots[size_t(n) - 1] != n - 1)
        return std::nullopt;
    Matrix inv(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

} // namespace kuranishi

#endif
