#pragma once

// Spectral sequence of a filtered complex, computed page by page from the
// closed formula
//   E^r_{p,q} = (Z^r_{p,q} + C^{p-1}) / (d(Z^{r-1}_{p+r-1,q-r+2}) + C^{p-1}),
// its differentials, the image groups A^r_{p,q} of incoming differentials,
// and the rank inequality relating pages to bars.

#include "zpers/persistence.hpp"

namespace zpers {

struct PageGroupId {
    int r = 1;
    int p = 0;
    int q = 0;
};

struct PageGroup {
    PageGroupId id;
    Subquotient quotient;
    /// One chain of Z^r_{p,q} per presentation generator, representing the same class.
    std::vector<Vector> representatives;

    const AbelianGroupPresentation& presentation() const { return quotient.presentation(); }
    const std::vector<Integer>& divisors() const { return quotient.divisors(); }
    bool isTrivial() const { return quotient.presentation().isTrivial(); }
};

inline PageGroup spsqGroup(const FilteredChainComplex& C, int r, int p, int q)
{
    if (r < 1)
        throw Error("spectral sequence level must be >= 1");
    const int n = p + q;
    const Lattice below = filtrationSubmodule(C, p - 1, n);
    const Lattice z = almostCycles(C, r, p, q);
    const Lattice num = latticeSum(z, below);
    const Lattice den = latticeSum(mapLattice(C.boundary(n + 1), almostCycles(C, r - 1, p + r - 1, q - r + 2)), below);
    PageGroup g{{r, p, q}, Subquotient(num, den), {}};
    const auto units = C.indicesUpTo(p - 1, n);
    for (const auto& gen : g.quotient.presentation().generators)
        g.representatives.push_back(detail::splitOff(z, units, gen));
    return g;
}

/// Matrix of d^r : E^r_{p,q} -> E^r_{p-r,q+r-1}; column c holds the target
/// coordinates of d applied to source generator c.
inline IntMatrix spsqDifferential(const FilteredChainComplex& C, int r, int p, int q)
{
    const PageGroup src = spsqGroup(C, r, p, q);
    const PageGroup dst = spsqGroup(C, r, p - r, q + r - 1);
    IntMatrix m(dst.divisors().size(), src.representatives.size());
    for (std::size_t c = 0; c < src.representatives.size(); ++c) {
        const Vector image = C.applyBoundary(p + q, src.representatives[c]);
        if (!dst.quotient.numerator().contains(image))
            throw Error("internal: d^" + std::to_string(r) + " leaves the target page");
        const Vector coords = dst.quotient.coordinates(image);
        for (std::size_t t = 0; t < coords.size(); ++t)
            m(t, c) = coords[t];
    }
    return m;
}

inline Lattice diagonalLattice(const std::vector<Integer>& divisors)
{
    IntMatrix r(divisors.size(), divisors.size());
    for (std::size_t t = 0; t < divisors.size(); ++t)
        r(t, t) = divisors[t];
    return Lattice(r);
}

/// A^r_{p,q}: image of d^r_{p+r,q-r+1} inside E^r_{p,q}, worked out in the
/// target page's presentation coordinates.
inline AbelianGroupPresentation imageGroup(const FilteredChainComplex& C, int r, int p, int q)
{
    const PageGroup target = spsqGroup(C, r, p, q);
    const IntMatrix incoming = spsqDifferential(C, r, p + r, q - r + 1);
    const Lattice relations = diagonalLattice(target.divisors());
    return quotientPresentation(latticeSum(Lattice(incoming), relations), relations);
}

/// ker d^r_{p,q} / im d^r_{p+r,q-r+1}, in E^r_{p,q} presentation coordinates.
inline AbelianGroupPresentation pageHomology(const FilteredChainComplex& C, int r, int p, int q)
{
    const PageGroup here = spsqGroup(C, r, p, q);
    const PageGroup next = spsqGroup(C, r, p - r, q + r - 1);
    const IntMatrix out = spsqDifferential(C, r, p, q);
    const IntMatrix in = spsqDifferential(C, r, p + r, q - r + 1);
    const Lattice cycles = preimageLattice(out, diagonalLattice(next.divisors()));
    const Lattice bounds = latticeSum(Lattice(in), diagonalLattice(here.divisors()));
    return quotientPresentation(cycles, bounds);
}

/// Level past which every page of every degree is constant.
/// dim E^r_{p,q} over F, same closed formula with field elimination.
inline std::size_t fieldPageDimension(const FilteredChainComplex& C, Field F, int r, int p, int q)
{
    if (r < 1)
        throw Error("spectral sequence level must be >= 1");
    const int n = p + q;
    const IntMatrix below = detail::units(C, p - 1, n);
    const IntMatrix dead = C.boundary(n + 1) * detail::fieldAlmostCycles(C, r - 1, p + r - 1, q - r + 2, F);
    return fieldRank(hconcat(detail::fieldAlmostCycles(C, r, p, q, F), below), F) -
           fieldRank(hconcat(dead, below), F);
}

inline int stableLevel(const FilteredChainComplex& C) { return C.maxStage() - C.filtrationStart() + 2; }

/// Smallest r >= 1 such that E^r_{p,n-p} coincides (as a subquotient of C_n)
/// with the stable page for every p.
inline int convergenceLevel(const FilteredChainComplex& C, int n)
{
    const int top = stableLevel(C);
    auto page = [&](int r, int p) {
        PageGroup g = spsqGroup(C, r, p, n - p);
        return std::make_pair(g.quotient.numerator(), g.quotient.denominator());
    };
    std::vector<std::pair<Lattice, Lattice>> stable;
    for (int p = C.filtrationStart(); p <= C.maxStage(); ++p)
        stable.push_back(page(top, p));
    for (int r = 1; r < top; ++r) {
        bool same = true;
        for (int p = C.filtrationStart(); p <= C.maxStage() && same; ++p)
            same = page(r, p) == stable[static_cast<std::size_t>(p - C.filtrationStart())];
        if (same)
            return r;
    }
    return top;
}

struct InequalityReport {
    std::size_t lhs = 0; // Σ_p rank E^r_{p,n-p}
    std::size_t rhs = 0; // bars of persistence >= r, infinite bars included
    bool strict = false;
};

/// Ranks are free ranks (dimension after tensoring with Q).
inline InequalityReport checkInequality(const FilteredChainComplex& C, int r, int n)
{
    if (r < 1)
        throw Error("spectral sequence level must be >= 1");
    InequalityReport rep;
    for (int p = C.filtrationStart(); p <= C.maxStage(); ++p)
        rep.lhs += spsqGroup(C, r, p, n - p).presentation().freeRank();
    for (int i = C.filtrationStart(); i <= C.maxStage(); ++i) {
        for (int k = i + r; k <= C.maxStage(); ++k)
            rep.rhs += bdGroup(C, i, k, n).presentation.freeRank();
        rep.rhs += bdGroup(C, i, kInfinity, n).presentation.freeRank();
    }
    rep.strict = rep.lhs > rep.rhs;
    return rep;
}

} // namespace zpers
