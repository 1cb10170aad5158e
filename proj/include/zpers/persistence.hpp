#pragma once

// Integer persistent homology of a filtered chain complex: birth-death groups
// BD^{i,k}_n, total groups H^{i,j}_n and double-filtration groups H^{i,j,k}_n,
// computed from lattice formulas. An independent oracle computes the same
// groups from per-stage homology and induced maps; field mode gives Betti
// tables and bar multiplicities over Q or Z/p.

#include "zpers/complex.hpp"
#include "zpers/field.hpp"
#include "zpers/presentation.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace zpers {

/// Death stage of classes that survive to the final stage.
inline constexpr int kInfinity = std::numeric_limits<int>::max();

inline std::string stageString(int k) { return k == kInfinity ? "inf" : std::to_string(k); }

/// Stage indices out of order or out of range.
class StageError : public Error {
public:
    using Error::Error;
};

enum class QueryKind { BirthDeath, Total, Triple };

struct PersistenceQuery {
    QueryKind kind = QueryKind::Total;
    int n = 0;
    int i = 0;
    int j = 0; // total and triple only
    int k = 0; // birth-death and triple only; may be kInfinity

    static PersistenceQuery birthDeath(int i, int k, int n) { return {QueryKind::BirthDeath, n, i, 0, k}; }
    static PersistenceQuery total(int i, int j, int n) { return {QueryKind::Total, n, i, j, 0}; }
    static PersistenceQuery triple(int i, int j, int k, int n) { return {QueryKind::Triple, n, i, j, k}; }
};

/// Generators of the presentation are degree-n cycles of the complex.
struct PersistentGroup {
    PersistenceQuery query;
    AbelianGroupPresentation presentation;

    const std::vector<Integer>& divisors() const { return presentation.divisors; }
    bool isTrivial() const { return presentation.isTrivial(); }
};

inline void checkQuery(const FilteredChainComplex& C, const PersistenceQuery& q)
{
    const int lo = C.filtrationStart() - 1;
    const int m = C.maxStage();
    auto fail = [&](const std::string& what) { throw StageError(what); };
    switch (q.kind) {
    case QueryKind::BirthDeath:
        if (q.i < lo || q.i > m)
            fail("birth stage " + std::to_string(q.i) + " outside [" + std::to_string(lo) + ", " + std::to_string(m) + "]");
        if (q.k != kInfinity && (q.k <= q.i || q.k > m))
            fail("death stage " + stageString(q.k) + " must satisfy i < k <= " + std::to_string(m));
        break;
    case QueryKind::Total:
    case QueryKind::Triple:
        if (q.i < lo || q.i > q.j || q.j > m)
            fail("stages must satisfy " + std::to_string(lo) + " <= i <= j <= " + std::to_string(m) + ", got i=" +
                 std::to_string(q.i) + " j=" + std::to_string(q.j));
        if (q.kind == QueryKind::Triple && q.k != kInfinity && (q.k < q.j || q.k > m))
            fail("triple stage k=" + stageString(q.k) + " must satisfy j <= k <= " + std::to_string(m));
        break;
    }
}

namespace detail {

/// x = b + c with b in B and c in the span of the unit vectors `units`; returns b.
inline Vector splitOff(const Lattice& B, const std::vector<std::size_t>& units, const Vector& x)
{
    IntMatrix G(x.size(), B.rank() + units.size());
    for (std::size_t j = 0; j < B.rank(); ++j)
        for (std::size_t t = 0; t < x.size(); ++t)
            G(t, j) = B.generators()(t, j);
    for (std::size_t u = 0; u < units.size(); ++u)
        G(units[u], B.rank() + u) = 1;
    auto y = solveInteger(G, x);
    if (!y)
        throw Error("internal: representative outside the expected submodule");
    Vector b(x.size());
    for (std::size_t j = 0; j < B.rank(); ++j)
        if ((*y)[j] != 0)
            for (std::size_t t = 0; t < x.size(); ++t)
                b[t] += (*y)[j] * B.generators()(t, j);
    return b;
}

inline PersistentGroup fromQuotient(const PersistenceQuery& q, const Lattice& num, const Lattice& den)
{
    return {q, quotientPresentation(num, den)};
}

} // namespace detail

/// BD^{i,k}_n = (d(Z^{k-i}_{k}) + C^{i-1}) / (d(Z^{k-i-1}_{k-1}) + C^{i-1}); for k = kInfinity the
/// classes born at i that survive: (ker d ∩ C^i) / (ker d ∩ C^{i-1} + d(C_{n+1}) ∩ C^i).
/// Generators are replaced by their boundary part, so each is a cycle of C^i.
inline PersistentGroup bdGroup(const FilteredChainComplex& C, int i, int k, int n)
{
    const auto q = PersistenceQuery::birthDeath(i, k, n);
    checkQuery(C, q);
    const Lattice below = filtrationSubmodule(C, i - 1, n);
    if (k == kInfinity) {
        const Lattice num = cyclesUpTo(C, i, n);
        const Lattice den = latticeSum(cyclesUpTo(C, i - 1, n), boundariesInto(C, C.maxStage(), i, n));
        return detail::fromQuotient(q, num, den);
    }
    const Lattice dying = boundariesInto(C, k, i, n);
    const Lattice num = latticeSum(dying, below);
    const Lattice den = latticeSum(boundariesInto(C, k - 1, i, n), below);
    PersistentGroup g = detail::fromQuotient(q, num, den);
    const auto units = C.indicesUpTo(i - 1, n);
    for (auto& gen : g.presentation.generators)
        gen = detail::splitOff(dying, units, gen);
    return g;
}

/// H^{i,j}_n = (ker d_n ∩ C^i) / (d(C^j_{n+1}) ∩ C^i): the image of H_n(C^i) in H_n(C^j).
inline PersistentGroup totalPrstGroup(const FilteredChainComplex& C, int i, int j, int n)
{
    const auto q = PersistenceQuery::total(i, j, n);
    checkQuery(C, q);
    return detail::fromQuotient(q, cyclesUpTo(C, i, n), boundariesInto(C, j, i, n));
}

/// H^{i,j,k}_n = (ker d ∩ C^{i-1} + d(C^k) ∩ C^i) / (d(C^j) ∩ C^i); k = kInfinity gives H^{i,j}_n.
inline PersistentGroup triplePrstGroup(const FilteredChainComplex& C, int i, int j, int k, int n)
{
    const auto q = PersistenceQuery::triple(i, j, k, n);
    checkQuery(C, q);
    if (k == kInfinity)
        return {q, totalPrstGroup(C, i, j, n).presentation};
    const Lattice num = latticeSum(cyclesUpTo(C, i - 1, n), boundariesInto(C, k, i, n));
    return detail::fromQuotient(q, num, boundariesInto(C, j, i, n));
}

inline PersistentGroup persistentGroup(const FilteredChainComplex& C, const PersistenceQuery& q)
{
    switch (q.kind) {
    case QueryKind::BirthDeath:
        return bdGroup(C, q.i, q.k, q.n);
    case QueryKind::Total:
        return totalPrstGroup(C, q.i, q.j, q.n);
    case QueryKind::Triple:
        return triplePrstGroup(C, q.i, q.j, q.k, q.n);
    }
    throw Error("unknown query kind");
}

/// One (divisor, cycle) pair per generator, after checking that each cycle
/// really is a cycle of C^i (and, for finite birth-death groups, a boundary
/// in C^k that is not yet one in C^{k-1} modulo C^{i-1}).
inline std::vector<std::pair<Integer, Vector>> persistentGenerators(const FilteredChainComplex& C,
                                                                     const PersistentGroup& G)
{
    const auto& q = G.query;
    const Lattice inStage = filtrationSubmodule(C, q.i, q.n);
    std::optional<Lattice> deadAtK, deadBefore;
    if (q.kind == QueryKind::BirthDeath && q.k != kInfinity) {
        deadAtK = boundariesInto(C, q.k, q.i, q.n);
        deadBefore = latticeSum(boundariesInto(C, q.k - 1, q.i, q.n), filtrationSubmodule(C, q.i - 1, q.n));
    }
    std::vector<std::pair<Integer, Vector>> out;
    for (std::size_t t = 0; t < G.presentation.generators.size(); ++t) {
        const Vector& g = G.presentation.generators[t];
        if (!C.isCycle(q.n, g))
            throw Error("internal: persistent generator is not a cycle");
        if (!inStage.contains(g))
            throw Error("internal: persistent generator outside C^" + std::to_string(q.i));
        if (deadAtK && (!deadAtK->contains(g) || deadBefore->contains(g)))
            throw Error("internal: generator does not die entering stage " + std::to_string(q.k));
        out.emplace_back(G.presentation.divisors[t], g);
    }
    return out;
}

/// Independent path: homology of every stage by Smith form, induced maps as
/// matrices between those presentations, and the persistent groups as
/// images and preimages inside them.
class PersistenceOracle {
public:
    PersistenceOracle(const FilteredChainComplex& C, int n) : C_(C), n_(n)
    {
        for (int s = C.filtrationStart() - 1; s <= C.maxStage(); ++s)
            homology_.emplace(s, stageHomology(s));
    }

    /// H_n(C^s) as a subquotient of C_n.
    const Subquotient& homology(int s) const { return homology_.at(clampStage(s)); }

    /// Matrix of H_n(C^s) -> H_n(C^t) in presentation coordinates.
    IntMatrix inducedMap(int s, int t) const
    {
        const Subquotient& src = homology(s);
        const Subquotient& dst = homology(t);
        const auto& gens = src.presentation().generators;
        IntMatrix m(dst.divisors().size(), gens.size());
        for (std::size_t c = 0; c < gens.size(); ++c) {
            Vector coords = dst.coordinates(gens[c]);
            for (std::size_t r = 0; r < coords.size(); ++r)
                m(r, c) = coords[r];
        }
        return m;
    }

    /// H^{i,j} as a lattice of H_n(C^j) coordinates, relations included.
    Lattice imageIn(int i, int j) const
    {
        return Lattice(hconcat(inducedMap(i, j), relations(j)));
    }

    /// H^{i,j,k} as a lattice of H_n(C^j) coordinates, relations included.
    Lattice tripleIn(int i, int j, int k) const
    {
        if (k == kInfinity)
            return imageIn(i, j);
        return latticeIntersection(imageIn(i, j), preimageLattice(inducedMap(j, k), imageIn(i - 1, k)));
    }

    PersistentGroup query(const PersistenceQuery& q) const
    {
        checkQuery(C_, q);
        if (q.n != n_)
            throw Error("oracle built for another degree");
        switch (q.kind) {
        case QueryKind::Total:
            return finish(q, q.j, imageIn(q.i, q.j), Lattice(relations(q.j)));
        case QueryKind::Triple:
            return finish(q, q.j, tripleIn(q.i, q.j, q.k), Lattice(relations(q.j)));
        case QueryKind::BirthDeath:
            if (q.k == kInfinity) {
                const int m = C_.maxStage();
                return finish(q, m, imageIn(q.i, m), imageIn(q.i - 1, m));
            }
            return finish(q, q.i, tripleIn(q.i, q.i, q.k), tripleIn(q.i, q.i, q.k - 1));
        }
        throw Error("unknown query kind");
    }

private:
    int clampStage(int s) const { return std::clamp(s, C_.filtrationStart() - 1, C_.maxStage()); }

    IntMatrix relations(int s) const
    {
        const auto& d = homology(s).divisors();
        IntMatrix r(d.size(), d.size());
        for (std::size_t t = 0; t < d.size(); ++t)
            r(t, t) = d[t];
        return r;
    }

    Subquotient stageHomology(int s) const
    {
        const auto cols = C_.indicesUpTo(s, n_);
        Lattice local = kernelLattice(C_.boundary(n_).selectColumns(cols));
        IntMatrix cyc(C_.size(n_), local.rank());
        for (std::size_t j = 0; j < local.rank(); ++j)
            for (std::size_t t = 0; t < cols.size(); ++t)
                cyc(cols[t], j) = local.generators()(t, j);
        const IntMatrix bd = C_.boundary(n_ + 1).selectColumns(C_.indicesUpTo(s, n_ + 1));
        return Subquotient(Lattice(cyc), Lattice(bd));
    }

    /// Quotient of lattices of H_n(C^s) coordinates; generators lifted to cycles.
    PersistentGroup finish(const PersistenceQuery& q, int s, const Lattice& num, const Lattice& den) const
    {
        AbelianGroupPresentation p = quotientPresentation(num, den);
        for (auto& g : p.generators)
            g = homology(s).lift(g);
        return {q, p};
    }

    const FilteredChainComplex& C_;
    int n_;
    std::map<int, Subquotient> homology_;
};

inline PersistentGroup oraclePersistence(const FilteredChainComplex& C, const PersistenceQuery& q)
{
    return PersistenceOracle(C, q.n).query(q);
}

/// β^{i,j}_n = rank of H^{i,j}_n over a field, for start-1 <= i <= j <= m.
class FieldBettiTable {
public:
    FieldBettiTable(Field field, int start, int maxStage, int minDegree, int maxDegree)
        : field_(field), start_(start), m_(maxStage), minDegree_(minDegree), maxDegree_(maxDegree)
    {
    }

    Field field() const { return field_; }
    int filtrationStart() const { return start_; }
    int maxStage() const { return m_; }
    int minDegree() const { return minDegree_; }
    int maxDegree() const { return maxDegree_; }

    std::size_t betti(int i, int j, int n) const
    {
        if (n < minDegree_ || n > maxDegree_)
            return 0;
        if (i < start_ - 1 || i > j || j > m_)
            throw StageError("Betti index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
        auto it = values_.find({i, j, n});
        return it == values_.end() ? 0 : it->second;
    }

    void set(int i, int j, int n, std::size_t value) { values_[{i, j, n}] = value; }

private:
    Field field_;
    int start_, m_, minDegree_, maxDegree_;
    std::map<std::tuple<int, int, int>, std::size_t> values_;
};

namespace detail {

/// Basis of ker d_n ∩ C^p over the field, embedded in C_n.
inline IntMatrix fieldCycles(const FilteredChainComplex& C, int p, int n, Field F)
{
    const auto cols = C.indicesUpTo(p, n);
    IntMatrix local = fieldNullspace(C.boundary(n).selectColumns(cols), F);
    IntMatrix out(C.size(n), local.cols());
    for (std::size_t j = 0; j < local.cols(); ++j)
        for (std::size_t t = 0; t < cols.size(); ++t)
            out(cols[t], j) = local(t, j);
    return out;
}

/// Z^r_{p,q} over the field, embedded in C_{p+q}.
inline IntMatrix fieldAlmostCycles(const FilteredChainComplex& C, int r, int p, int q, Field F)
{
    const int n = p + q;
    const auto cols = C.indicesUpTo(p, n);
    std::vector<std::size_t> rows;
    for (std::size_t t = 0; t < C.size(n - 1); ++t)
        if (C.stage(n - 1, t) > p - r)
            rows.push_back(t);
    IntMatrix local = fieldNullspace(C.boundary(n).selectRows(rows).selectColumns(cols), F);
    IntMatrix out(C.size(n), local.cols());
    for (std::size_t j = 0; j < local.cols(); ++j)
        for (std::size_t t = 0; t < cols.size(); ++t)
            out(cols[t], j) = local(t, j);
    return out;
}

inline IntMatrix units(const FilteredChainComplex& C, int p, int n)
{
    std::vector<Vector> cols;
    for (auto t : C.indicesUpTo(p, n))
        cols.push_back(unitVector(C.size(n), t));
    return IntMatrix::fromColumns(C.size(n), cols);
}

/// d(C^k_{n+1}) ∩ C^i over the field.
inline IntMatrix fieldBoundaries(const FilteredChainComplex& C, int k, int i, int n, Field F)
{
    return C.boundary(n + 1) * fieldAlmostCycles(C, std::max(0, k - i), k, n + 1 - k, F);
}

} // namespace detail

/// Ranks of H^{i,j}_n over F: dim Z_i - dim(Z_i ∩ B_j) with
/// dim(Z_i ∩ B_j) = dim Z_i + dim B_j - dim(Z_i + B_j).
inline FieldBettiTable fieldBetti(const FilteredChainComplex& C, Field F)
{
    FieldBettiTable table(F, C.filtrationStart(), C.maxStage(), C.minDegree(), C.maxDegree());
    for (int n = C.minDegree(); n <= C.maxDegree(); ++n) {
        std::map<int, IntMatrix> Z, B;
        for (int s = C.filtrationStart() - 1; s <= C.maxStage(); ++s) {
            Z[s] = detail::fieldCycles(C, s, n, F);
            B[s] = C.boundary(n + 1).selectColumns(C.indicesUpTo(s, n + 1));
        }
        for (int i = C.filtrationStart() - 1; i <= C.maxStage(); ++i) {
            const std::size_t zi = fieldRank(Z[i], F);
            for (int j = i; j <= C.maxStage(); ++j) {
                const std::size_t bj = fieldRank(B[j], F);
                const std::size_t sum = fieldRank(hconcat(Z[i], B[j]), F);
                table.set(i, j, n, zi - (zi + bj - sum));
            }
        }
    }
    return table;
}

/// Multiplicity of the bar [i,k) (k may be kInfinity) over the table's field.
inline long long muCounts(const FieldBettiTable& t, int i, int k, int n)
{
    const int m = t.maxStage();
    if (i < t.filtrationStart() || i > m || (k != kInfinity && (k <= i || k > m)))
        throw StageError("bar index [" + std::to_string(i) + ", " + stageString(k) + ") out of range");
    auto b = [&](int a, int c) { return static_cast<long long>(t.betti(a, c, n)); };
    if (k == kInfinity)
        return b(i, m) - b(i - 1, m);
    return (b(i, k - 1) - b(i, k)) - (b(i - 1, k - 1) - b(i - 1, k));
}

/// Dimension of BD^{i,k}_n over F, running the birth-death formula with field
/// elimination instead of integer lattices.
inline std::size_t fieldBdDimension(const FilteredChainComplex& C, Field F, int i, int k, int n)
{
    checkQuery(C, PersistenceQuery::birthDeath(i, k, n));
    if (k == kInfinity) {
        const IntMatrix zi = detail::fieldCycles(C, i, n, F);
        const IntMatrix below = hconcat(detail::fieldCycles(C, i - 1, n, F),
                                        detail::fieldBoundaries(C, C.maxStage(), i, n, F));
        return fieldRank(zi, F) - fieldRank(below, F);
    }
    const IntMatrix under = detail::units(C, i - 1, n);
    return fieldRank(hconcat(detail::fieldBoundaries(C, k, i, n, F), under), F) -
           fieldRank(hconcat(detail::fieldBoundaries(C, k - 1, i, n, F), under), F);
}

/// Dimension of H^{i,j}_n over F from the total-group formula.
inline std::size_t fieldTotalDimension(const FilteredChainComplex& C, Field F, int i, int j, int n)
{
    checkQuery(C, PersistenceQuery::total(i, j, n));
    return fieldRank(detail::fieldCycles(C, i, n, F), F) - fieldRank(detail::fieldBoundaries(C, j, i, n, F), F);
}

/// Dimension of H^{i,j,k}_n over F from the double-filtration formula.
inline std::size_t fieldTripleDimension(const FilteredChainComplex& C, Field F, int i, int j, int k, int n)
{
    checkQuery(C, PersistenceQuery::triple(i, j, k, n));
    if (k == kInfinity)
        return fieldTotalDimension(C, F, i, j, n);
    const IntMatrix num = hconcat(detail::fieldCycles(C, i - 1, n, F), detail::fieldBoundaries(C, k, i, n, F));
    return fieldRank(num, F) - fieldRank(detail::fieldBoundaries(C, j, i, n, F), F);
}

} // namespace zpers
