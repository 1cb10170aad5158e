#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zpers {

using Integer = boost::multiprecision::cpp_int;

/// A coordinate vector over the integers (a chain in a fixed basis).
using Vector = std::vector<Integer>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix or lattice shapes that do not fit together.
class ShapeError : public Error {
public:
    using Error::Error;
};

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

/// Floor division for integers (rounds toward negative infinity).
inline Integer floorDiv(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

/// Dense integer matrix, row-major. Empty shapes (0 rows or 0 columns) are
/// legal and behave like the zero map between the corresponding modules.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw ShapeError("ragged matrix literal");
            for (long long v : row)
                data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    /// Builds a rows x columns.size() matrix whose j-th column is columns[j].
    static IntMatrix fromColumns(std::size_t rows, const std::vector<Vector>& columns)
    {
        IntMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows)
                throw ShapeError("column length does not match row count");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t i, std::size_t j)
    {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const Integer& operator()(std::size_t i, std::size_t j) const
    {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    const Integer& at(std::size_t i, std::size_t j) const
    {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("IntMatrix::at(" + std::to_string(i) + ", " + std::to_string(j) + ")");
        return data_[i * cols_ + j];
    }

    Vector column(std::size_t j) const
    {
        Vector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    Vector row(std::size_t i) const
    {
        return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    std::vector<Vector> columns() const
    {
        std::vector<Vector> out;
        out.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            out.push_back(column(j));
        return out;
    }

    bool isZero() const
    {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    bool isColumnZero(std::size_t j) const
    {
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, j) != 0)
                return false;
        return true;
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix selectColumns(std::span<const std::size_t> idx) const
    {
        IntMatrix m(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                m(i, j) = (*this)(i, idx[j]);
        return m;
    }

    IntMatrix selectRows(std::span<const std::size_t> idx) const
    {
        IntMatrix m(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = (*this)(idx[i], j);
        return m;
    }

    IntMatrix leftColumns(std::size_t count) const
    {
        IntMatrix m(rows_, count);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < count; ++j)
                m(i, j) = (*this)(i, j);
        return m;
    }

    // Elementary operations used by the normal-form routines.
    void swapRows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swapColumns(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[target] += factor * row[source]
    void addRowMultiple(std::size_t target, std::size_t source, const Integer& factor)
    {
        if (factor == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(source, j) != 0)
                (*this)(target, j) += factor * (*this)(source, j);
    }
    /// col[target] += factor * col[source]
    void addColumnMultiple(std::size_t target, std::size_t source, const Integer& factor)
    {
        if (factor == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, source) != 0)
                (*this)(i, target) += factor * (*this)(i, source);
    }
    void negateRow(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = -(*this)(i, j);
    }
    void negateColumn(std::size_t j)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = -(*this)(i, j);
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw ShapeError("matrix product shape mismatch: " + a.shapeString() + " * " + b.shapeString());
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0)
                        c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vector operator*(const IntMatrix& a, const Vector& x)
    {
        if (a.cols_ != x.size())
            throw ShapeError("matrix-vector shape mismatch");
        Vector y(a.rows_);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (x[k] == 0)
                continue;
            for (std::size_t i = 0; i < a.rows_; ++i)
                if (a(i, k) != 0)
                    y[i] += a(i, k) * x[k];
        }
        return y;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ShapeError("matrix sum shape mismatch");
        IntMatrix c = a;
        for (std::size_t t = 0; t < c.data_.size(); ++t)
            c.data_[t] += b.data_[t];
        return c;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ShapeError("matrix difference shape mismatch");
        IntMatrix c = a;
        for (std::size_t t = 0; t < c.data_.size(); ++t)
            c.data_[t] -= b.data_[t];
        return c;
    }

    std::string shapeString() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
    {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (i)
                os << "; ";
            for (std::size_t j = 0; j < m.cols_; ++j) {
                if (j)
                    os << ' ';
                os << m(i, j);
            }
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Horizontal concatenation [a | b]; rows must agree.
inline IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows())
        throw ShapeError("hconcat row mismatch: " + a.shapeString() + " | " + b.shapeString());
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

inline bool isZeroVector(const Vector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

inline Vector subtract(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw ShapeError("vector length mismatch");
    Vector c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] -= b[i];
    return c;
}

inline Vector unitVector(std::size_t size, std::size_t index)
{
    Vector v(size);
    v[index] = 1;
    return v;
}

} // namespace zpers
