#pragma once

// Subgroups of Z^m kept in column Hermite normal form.

#include "zpers/normal_form.hpp"

#include <string>

namespace zpers {

/// A subgroup of Z^m. The generator matrix is always the (zero-column-free)
/// column Hermite normal form, so two lattices are equal exactly when their
/// representations are equal.
class Lattice {
public:
    Lattice() = default;

    /// Column span of `generators` inside Z^{generators.rows()}.
    explicit Lattice(const IntMatrix& generators) : ambient_(generators.rows())
    {
        ColumnEchelon e = columnEchelon(generators, false);
        basis_ = e.H.leftColumns(e.rank);
        pivotRows_ = std::move(e.pivotRows);
    }

    static Lattice zero(std::size_t ambient) { return Lattice(IntMatrix(ambient, 0)); }
    static Lattice full(std::size_t ambient) { return Lattice(IntMatrix::identity(ambient)); }

    static Lattice spannedBy(std::size_t ambient, const std::vector<Vector>& vectors)
    {
        return Lattice(IntMatrix::fromColumns(ambient, vectors));
    }

    std::size_t ambientRank() const { return ambient_; }
    std::size_t rank() const { return basis_.cols(); }
    bool isZero() const { return basis_.cols() == 0; }

    /// Hermite basis, one column per generator.
    const IntMatrix& generators() const { return basis_; }
    Vector generator(std::size_t j) const { return basis_.column(j); }

    bool contains(const Vector& x) const { return coordinates(x).has_value(); }

    /// Coefficients of x in the Hermite basis, if x lies in the lattice.
    std::optional<Vector> coordinates(const Vector& x) const
    {
        if (x.size() != ambient_)
            throw ShapeError("vector of length " + std::to_string(x.size()) + " tested against lattice in Z^" +
                             std::to_string(ambient_));
        return echelonSolve(basis_, pivotRows_, x);
    }

    bool containsLattice(const Lattice& other) const
    {
        checkSameAmbient(other);
        for (std::size_t j = 0; j < other.rank(); ++j)
            if (!contains(other.generator(j)))
                return false;
        return true;
    }

    friend bool operator==(const Lattice& a, const Lattice& b)
    {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

    void checkSameAmbient(const Lattice& other) const
    {
        if (ambient_ != other.ambient_)
            throw ShapeError("lattices live in Z^" + std::to_string(ambient_) + " and Z^" +
                             std::to_string(other.ambient_));
    }

private:
    std::size_t ambient_ = 0;
    IntMatrix basis_;
    std::vector<std::size_t> pivotRows_;
};

/// Saturated kernel {x : A x = 0} inside Z^{A.cols()}.
inline Lattice kernelLattice(const IntMatrix& A)
{
    ColumnEchelon e = columnEchelon(A, true);
    std::vector<std::size_t> free;
    for (std::size_t j = e.rank; j < A.cols(); ++j)
        free.push_back(j);
    return Lattice(e.V.selectColumns(free));
}

/// Column span of A inside Z^{A.rows()}.
inline Lattice imageLattice(const IntMatrix& A) { return Lattice(A); }

inline Lattice latticeSum(const Lattice& S, const Lattice& T)
{
    S.checkSameAmbient(T);
    return Lattice(hconcat(S.generators(), T.generators()));
}

/// S ∩ T from the kernel of [S | -T]: each kernel vector (x, y) gives S x = T y.
inline Lattice latticeIntersection(const Lattice& S, const Lattice& T)
{
    S.checkSameAmbient(T);
    IntMatrix negT = T.generators();
    for (std::size_t j = 0; j < negT.cols(); ++j)
        negT.negateColumn(j);
    Lattice k = kernelLattice(hconcat(S.generators(), negT));
    std::vector<std::size_t> top(S.rank());
    for (std::size_t i = 0; i < top.size(); ++i)
        top[i] = i;
    IntMatrix x = k.generators().selectRows(top);
    return Lattice(S.generators() * x);
}

inline bool latticeContains(const Lattice& S, const Vector& x) { return S.contains(x); }

/// Image of a lattice under a linear map M (columns of M index S's ambient).
inline Lattice mapLattice(const IntMatrix& M, const Lattice& S)
{
    if (M.cols() != S.ambientRank())
        throw ShapeError("map of width " + std::to_string(M.cols()) + " applied to lattice in Z^" +
                         std::to_string(S.ambientRank()));
    return Lattice(M * S.generators());
}

/// {x : M x ∈ T} for a map M: Z^k -> Z^m and a lattice T in Z^m.
inline Lattice preimageLattice(const IntMatrix& M, const Lattice& T)
{
    if (M.rows() != T.ambientRank())
        throw ShapeError("preimage shape mismatch");
    IntMatrix negT = T.generators();
    for (std::size_t j = 0; j < negT.cols(); ++j)
        negT.negateColumn(j);
    Lattice k = kernelLattice(hconcat(M, negT));
    std::vector<std::size_t> top(M.cols());
    for (std::size_t i = 0; i < top.size(); ++i)
        top[i] = i;
    return Lattice(k.generators().selectRows(top));
}

} // namespace zpers
