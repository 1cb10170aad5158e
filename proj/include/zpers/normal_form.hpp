#pragma once

// Smith and column-Hermite normal forms over the integers.

#include "zpers/matrix.hpp"

#include <optional>
#include <vector>

namespace zpers {

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... with the
/// positive entries first and zeros trailing. uInverse is U^{-1}; it lets a
/// quotient presentation lift its cyclic generators back to the source basis.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    IntMatrix uInverse;

    std::size_t rank() const
    {
        std::size_t r = 0;
        while (r < D.rows() && r < D.cols() && D(r, r) != 0)
            ++r;
        return r;
    }

    /// Diagonal of D, padded with zeros up to D.rows().
    std::vector<Integer> rowDivisors() const
    {
        std::vector<Integer> d(D.rows());
        for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i)
            d[i] = D(i, i);
        return d;
    }
};

namespace detail {

/// Minimal |entry| over the block rows >= t, cols >= t; ties go to the lowest
/// (row, col) in row-major order.
inline std::optional<std::pair<std::size_t, std::size_t>> smithPivot(const IntMatrix& D, std::size_t t)
{
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer bestAbs;
    for (std::size_t i = t; i < D.rows(); ++i)
        for (std::size_t j = t; j < D.cols(); ++j) {
            const Integer& x = D(i, j);
            if (x == 0)
                continue;
            Integer a = abs(x);
            if (!best || a < bestAbs) {
                best = {i, j};
                bestAbs = a;
            }
        }
    return best;
}

/// Same rule restricted to row t and column t (the cross through the pivot).
inline std::pair<std::size_t, std::size_t> crossPivot(const IntMatrix& D, std::size_t t)
{
    std::pair<std::size_t, std::size_t> best{t, t};
    Integer bestAbs = abs(D(t, t));
    auto consider = [&](std::size_t i, std::size_t j) {
        const Integer& x = D(i, j);
        if (x == 0)
            return;
        Integer a = abs(x);
        if (bestAbs == 0 || a < bestAbs || (a == bestAbs && std::make_pair(i, j) < best)) {
            best = {i, j};
            bestAbs = a;
        }
    };
    for (std::size_t j = t; j < D.cols(); ++j)
        consider(t, j);
    for (std::size_t i = t + 1; i < D.rows(); ++i)
        consider(i, t);
    return best;
}

} // namespace detail

/// Smith normal form. Pivoting picks the nonzero entry of least absolute value
/// (ties: lowest row, then lowest column), so the output is deterministic.
inline SmithDecomposition smith(const IntMatrix& A)
{
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    SmithDecomposition s{IntMatrix::identity(m), A, IntMatrix::identity(n), IntMatrix::identity(m)};
    IntMatrix& D = s.D;

    auto rowSwap = [&](std::size_t a, std::size_t b) {
        D.swapRows(a, b);
        s.U.swapRows(a, b);
        s.uInverse.swapColumns(a, b);
    };
    auto colSwap = [&](std::size_t a, std::size_t b) {
        D.swapColumns(a, b);
        s.V.swapColumns(a, b);
    };
    // row[target] += f * row[source]
    auto rowAdd = [&](std::size_t target, std::size_t source, const Integer& f) {
        D.addRowMultiple(target, source, f);
        s.U.addRowMultiple(target, source, f);
        s.uInverse.addColumnMultiple(source, target, -f);
    };
    auto colAdd = [&](std::size_t target, std::size_t source, const Integer& f) {
        D.addColumnMultiple(target, source, f);
        s.V.addColumnMultiple(target, source, f);
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        auto pivot = detail::smithPivot(D, t);
        if (!pivot)
            break;
        rowSwap(t, pivot->first);
        colSwap(t, pivot->second);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0)
                    continue;
                Integer q = D(i, t) / D(t, t);
                rowAdd(i, t, -q);
                if (D(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0)
                    continue;
                Integer q = D(t, j) / D(t, t);
                colAdd(j, t, -q);
                if (D(t, j) != 0)
                    clean = false;
            }
            if (!clean) {
                auto [pi, pj] = detail::crossPivot(D, t);
                rowSwap(t, pi);
                colSwap(t, pj);
                continue;
            }
            // The pivot must divide the rest of the block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        rowAdd(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (D(t, t) < 0) {
            D.negateRow(t);
            s.U.negateRow(t);
            s.uInverse.negateColumn(t);
        }
    }
    return s;
}

/// A * V = H where the first `rank` columns of H are in column Hermite normal
/// form and the remaining columns are zero.
///
/// Column c of the Hermite block has its leading (topmost) nonzero entry at
/// pivotRows[c], strictly increasing in c; pivots are positive and every entry
/// to the left of a pivot in its row lies in [0, pivot). Equal column lattices
/// therefore have identical Hermite blocks.
struct ColumnEchelon {
    IntMatrix H;
    IntMatrix V;
    std::size_t rank = 0;
    std::vector<std::size_t> pivotRows;
};

inline ColumnEchelon columnEchelon(const IntMatrix& A, bool trackTransform = true)
{
    ColumnEchelon e{A, trackTransform ? IntMatrix::identity(A.cols()) : IntMatrix{}, 0, {}};
    IntMatrix& H = e.H;
    const std::size_t n = H.cols();

    auto colSwap = [&](std::size_t a, std::size_t b) {
        H.swapColumns(a, b);
        if (trackTransform)
            e.V.swapColumns(a, b);
    };
    auto colAdd = [&](std::size_t target, std::size_t source, const Integer& f) {
        H.addColumnMultiple(target, source, f);
        if (trackTransform)
            e.V.addColumnMultiple(target, source, f);
    };

    std::size_t c = 0;
    for (std::size_t r = 0; r < H.rows() && c < n; ++r) {
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t j = c; j < n; ++j)
                if (H(r, j) != 0 && (!best || abs(H(r, j)) < abs(H(r, *best))))
                    best = j;
            if (!best)
                break;
            colSwap(c, *best);
            bool alone = true;
            for (std::size_t j = c + 1; j < n; ++j) {
                if (H(r, j) == 0)
                    continue;
                colAdd(j, c, -(H(r, j) / H(r, c)));
                if (H(r, j) != 0)
                    alone = false;
            }
            if (alone)
                break;
        }
        if (H(r, c) == 0)
            continue;
        if (H(r, c) < 0) {
            H.negateColumn(c);
            if (trackTransform)
                e.V.negateColumn(c);
        }
        for (std::size_t j = 0; j < c; ++j)
            colAdd(j, c, -floorDiv(H(r, j), H(r, c)));
        e.pivotRows.push_back(r);
        ++c;
    }
    e.rank = c;
    return e;
}

/// Column Hermite normal form with zero columns dropped.
inline IntMatrix hermite(const IntMatrix& A)
{
    ColumnEchelon e = columnEchelon(A, false);
    return e.H.leftColumns(e.rank);
}

/// Back-substitution against the Hermite block of an echelon form: returns c
/// with H[:, :rank] * c == x, or nothing when x is outside the column lattice.
inline std::optional<Vector> echelonSolve(const IntMatrix& H, std::span<const std::size_t> pivotRows, const Vector& x)
{
    if (x.size() != H.rows())
        throw ShapeError("vector length does not match lattice ambient rank");
    Vector residual = x;
    Vector coeff(pivotRows.size());
    std::size_t next = 0;
    for (std::size_t c = 0; c < pivotRows.size(); ++c) {
        const std::size_t r = pivotRows[c];
        for (; next < r; ++next)
            if (residual[next] != 0)
                return std::nullopt;
        const Integer& p = H(r, c);
        if (residual[r] % p != 0)
            return std::nullopt;
        coeff[c] = residual[r] / p;
        if (coeff[c] != 0)
            for (std::size_t i = r; i < H.rows(); ++i)
                if (H(i, c) != 0)
                    residual[i] -= coeff[c] * H(i, c);
        next = r + 1;
    }
    for (; next < residual.size(); ++next)
        if (residual[next] != 0)
            return std::nullopt;
    return coeff;
}

/// Some y with G * y == x, where G is any generating matrix (columns need not be
/// independent), or nothing if x is not in the column lattice of G.
inline std::optional<Vector> solveInteger(const IntMatrix& G, const Vector& x)
{
    ColumnEchelon e = columnEchelon(G, true);
    auto c = echelonSolve(e.H, e.pivotRows, x);
    if (!c)
        return std::nullopt;
    Vector y(G.cols());
    for (std::size_t k = 0; k < e.rank; ++k) {
        if ((*c)[k] == 0)
            continue;
        for (std::size_t j = 0; j < G.cols(); ++j)
            y[j] += e.V(j, k) * (*c)[k];
    }
    return y;
}

/// Integer rank (equals the rank over the rationals).
inline std::size_t integerRank(const IntMatrix& A) { return columnEchelon(A, false).rank; }

/// Determinant by fraction-free (Bareiss) elimination; square matrices only.
inline Integer determinant(IntMatrix A)
{
    if (A.rows() != A.cols())
        throw ShapeError("determinant of a non-square matrix");
    const std::size_t n = A.rows();
    if (n == 0)
        return 1;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && A(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            A.swapRows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

} // namespace zpers
