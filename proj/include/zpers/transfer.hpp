#pragma once

// Reductions D => C, strong equivalences C <= D => EC, homotopy order, and the
// comparison of spectral sequences and persistent homology across them.

#include "zpers/spectral.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace zpers {

/// A map of graded modules raising degree by `shift`; matrices[n] sends degree n
/// to degree n + shift. Missing degrees are zero.
struct GradedMap {
    int shift = 0;
    std::map<int, IntMatrix> matrices;

    /// Matrix in degree n, zero-filled with the given shape when absent.
    IntMatrix at(int n, std::size_t rows, std::size_t cols) const
    {
        auto it = matrices.find(n);
        if (it == matrices.end())
            return IntMatrix(rows, cols);
        if (it->second.rows() != rows || it->second.cols() != cols)
            throw ShapeError("map in degree " + std::to_string(n) + " has shape " + it->second.shapeString() +
                             ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
        return it->second;
    }
};

/// ρ = (f, g, h) : D => C. f: D -> C, g: C -> D, h: D -> D of degree +1.
struct Reduction {
    FilteredChainComplex top;
    FilteredChainComplex bottom;
    GradedMap f;
    GradedMap g;
    GradedMap h{1, {}};

    IntMatrix fAt(int n) const { return f.at(n, bottom.size(n), top.size(n)); }
    IntMatrix gAt(int n) const { return g.at(n, top.size(n), bottom.size(n)); }
    IntMatrix hAt(int n) const { return h.at(n, top.size(n + 1), top.size(n)); }

    int minDegree() const { return std::min(top.minDegree(), bottom.minDegree()); }
    int maxDegree() const { return std::max(top.maxDegree(), bottom.maxDegree()); }
};

/// C <= D => EC: left reduces D to C, right reduces D to EC.
struct Equivalence {
    Reduction left;
    Reduction right;
};

/// Equivalence data that failed verification, or a reduction pair whose tops differ.
class UnverifiedEquivalenceError : public Error {
public:
    using Error::Error;
};

struct Violation {
    std::string identity;
    int degree = 0;
    std::string generator;
};

struct ReductionReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::optional<std::size_t> firstBadColumn(const IntMatrix& m)
{
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m.isColumnZero(c))
            return c;
    return std::nullopt;
}

} // namespace detail

/// Checks that f, g are chain maps and that fg = 1, gf + dh + hd = 1, fh = 0,
/// hg = 0 and hh = 0, degree by degree; every failure is listed.
inline ReductionReport verifyReduction(const Reduction& rho)
{
    ReductionReport rep;
    const auto& D = rho.top;
    const auto& C = rho.bottom;
    for (const auto& [n, m] : rho.f.matrices)
        (void)rho.fAt(n);
    for (const auto& [n, m] : rho.g.matrices)
        (void)rho.gAt(n);
    for (const auto& [n, m] : rho.h.matrices)
        (void)rho.hAt(n);

    auto note = [&](const std::string& what, int n, const IntMatrix& residual, const FilteredChainComplex& src) {
        if (auto c = detail::firstBadColumn(residual))
            rep.violations.push_back({what, n, src.name(n, *c)});
    };
    for (int n = rho.minDegree() - 1; n <= rho.maxDegree() + 1; ++n) {
        note("f is a chain map", n, C.boundary(n) * rho.fAt(n) - rho.fAt(n - 1) * D.boundary(n), D);
        note("g is a chain map", n, D.boundary(n) * rho.gAt(n) - rho.gAt(n - 1) * C.boundary(n), C);
        note("f g = 1", n, rho.fAt(n) * rho.gAt(n) - IntMatrix::identity(C.size(n)), C);
        note("g f + d h + h d = 1", n,
             rho.gAt(n) * rho.fAt(n) + D.boundary(n + 1) * rho.hAt(n) + rho.hAt(n - 1) * D.boundary(n) -
                 IntMatrix::identity(D.size(n)),
             D);
        note("f h = 0", n, rho.fAt(n + 1) * rho.hAt(n), D);
        note("h g = 0", n, rho.hAt(n) * rho.gAt(n), C);
        note("h h = 0", n, rho.hAt(n + 1) * rho.hAt(n), D);
    }
    return rep;
}

/// Smallest s >= 0 with stage(image) <= stage(source) + s for every nonzero entry;
/// s = 0 means the map is filtered. Zero maps have order 0.
inline int mapOrder(const GradedMap& map, const FilteredChainComplex& source, const FilteredChainComplex& target)
{
    int s = 0;
    for (const auto& [n, m] : map.matrices) {
        const IntMatrix mat = map.at(n, target.size(n + map.shift), source.size(n));
        for (std::size_t c = 0; c < mat.cols(); ++c)
            for (std::size_t r = 0; r < mat.rows(); ++r)
                if (mat(r, c) != 0)
                    s = std::max(s, target.stage(n + map.shift, r) - source.stage(n, c));
    }
    return s;
}

inline bool filteredMapOk(const GradedMap& map, const FilteredChainComplex& source, const FilteredChainComplex& target)
{
    return mapOrder(map, source, target) == 0;
}

inline int homotopyOrder(const Reduction& rho) { return mapOrder(rho.h, rho.top, rho.top); }

inline Reduction identityReduction(const FilteredChainComplex& C)
{
    Reduction rho{C, C, {}, {}, {1, {}}};
    for (int n = C.minDegree(); n <= C.maxDegree(); ++n) {
        rho.f.matrices[n] = IntMatrix::identity(C.size(n));
        rho.g.matrices[n] = IntMatrix::identity(C.size(n));
    }
    return rho;
}

/// (D => C) followed by (C => B) gives D => B with f = f2 f1, g = g1 g2, h = h1 + g1 h2 f1.
inline Reduction compose(const Reduction& first, const Reduction& second)
{
    if (!(first.bottom == second.top))
        throw ShapeError("reductions do not compose: intermediate complexes differ");
    Reduction out{first.top, second.bottom, {}, {}, {1, {}}};
    for (int n = first.minDegree() - 1; n <= first.maxDegree() + 1; ++n) {
        if (!out.top.hasDegree(n) && !out.bottom.hasDegree(n))
            continue;
        out.f.matrices[n] = second.fAt(n) * first.fAt(n);
        out.g.matrices[n] = first.gAt(n) * second.gAt(n);
        out.h.matrices[n] = first.hAt(n) + first.gAt(n + 1) * second.hAt(n) * first.fAt(n);
    }
    return out;
}

struct EquivalenceReport {
    ReductionReport left;
    ReductionReport right;
    bool sameTop = true;
    bool filtered = true; // f and g of both reductions preserve filtration
    int leftOrder = 0;
    int rightOrder = 0;

    bool ok() const { return left.ok() && right.ok() && sameTop; }
    int order() const { return std::max(leftOrder, rightOrder); }
};

inline EquivalenceReport verifyEquivalence(const Equivalence& e)
{
    EquivalenceReport rep;
    rep.left = verifyReduction(e.left);
    rep.right = verifyReduction(e.right);
    rep.sameTop = e.left.top == e.right.top;
    rep.filtered = filteredMapOk(e.left.f, e.left.top, e.left.bottom) &&
                   filteredMapOk(e.left.g, e.left.bottom, e.left.top) &&
                   filteredMapOk(e.right.f, e.right.top, e.right.bottom) &&
                   filteredMapOk(e.right.g, e.right.bottom, e.right.top);
    rep.leftOrder = homotopyOrder(e.left);
    rep.rightOrder = homotopyOrder(e.right);
    return rep;
}

/// A spectral page query E^r_{p,q}.
struct PageQuery {
    int r = 1;
    int p = 0;
    int q = 0;
};

using TransferQuery = std::variant<PageQuery, PersistenceQuery>;

struct TransferReport {
    std::vector<Integer> left;  // divisors computed on C
    std::vector<Integer> right; // divisors computed on EC
    bool match = false;
    bool hypothesis = false; // filtered maps and the order condition for this query
    int order = 0;

    std::string verdict() const
    {
        if (match)
            return hypothesis ? "match" : "match (outside theorem range)";
        return hypothesis ? "MISMATCH inside theorem range" : "mismatch (outside theorem range)";
    }
};

inline std::vector<Integer> queryDivisors(const FilteredChainComplex& C, const TransferQuery& q)
{
    if (const auto* page = std::get_if<PageQuery>(&q))
        return spsqGroup(C, page->r, page->p, page->q).divisors();
    return persistentGroup(C, std::get<PersistenceQuery>(q)).divisors();
}

/// Whether the transfer theorems cover the query for homotopy order s:
/// r > s for pages, j - i >= s for total groups, k - i > s for triple and birth-death groups.
inline bool withinTheoremRange(const TransferQuery& q, int s)
{
    if (const auto* page = std::get_if<PageQuery>(&q))
        return page->r > s;
    const auto& pq = std::get<PersistenceQuery>(q);
    switch (pq.kind) {
    case QueryKind::Total:
        return pq.j - pq.i >= s;
    case QueryKind::Triple:
    case QueryKind::BirthDeath:
        return pq.k == kInfinity || pq.k - pq.i > s;
    }
    return false;
}

inline void requireVerified(const EquivalenceReport& rep)
{
    if (rep.ok())
        return;
    std::string why = !rep.sameTop ? "reductions have different top complexes" : "reduction identities fail";
    const auto& bad = !rep.left.ok() ? rep.left : rep.right;
    if (!bad.ok())
        why += ": " + bad.violations.front().identity + " in degree " + std::to_string(bad.violations.front().degree) +
               " at " + bad.violations.front().generator;
    throw UnverifiedEquivalenceError(why);
}

/// Computes the query on C (left bottom) and EC (right bottom). Re-verifies the
/// equivalence and re-evaluates the hypotheses on every call.
inline TransferReport transferCheck(const Equivalence& e, const TransferQuery& q)
{
    const EquivalenceReport rep = verifyEquivalence(e);
    requireVerified(rep);
    TransferReport out;
    out.left = queryDivisors(e.left.bottom, q);
    out.right = queryDivisors(e.right.bottom, q);
    out.match = out.left == out.right;
    out.order = rep.order();
    out.hypothesis = rep.filtered && withinTheoremRange(q, out.order);
    return out;
}

/// Carries cycles of EC to C through f1 g2; each result is checked to be a
/// cycle of C lying in the same filtration stage.
inline std::vector<Vector> transferGenerators(const Equivalence& e, const PersistentGroup& G)
{
    requireVerified(verifyEquivalence(e));
    const int n = G.query.n;
    const FilteredChainComplex& EC = e.right.bottom;
    const FilteredChainComplex& C = e.left.bottom;
    const IntMatrix carry = e.left.fAt(n) * e.right.gAt(n);
    const Lattice stage = filtrationSubmodule(C, G.query.i, n);
    std::vector<Vector> out;
    for (const auto& gen : G.presentation.generators) {
        if (gen.size() != EC.size(n) || !EC.isCycle(n, gen))
            throw Error("generator is not a degree-" + std::to_string(n) + " cycle of the reduced complex");
        Vector image = carry * gen;
        if (!C.isCycle(n, image))
            throw Error("internal: transferred generator is not a cycle");
        if (!stage.contains(image))
            throw Error("transferred generator leaves stage " + std::to_string(G.query.i) +
                        " (the equivalence maps are not filtered)");
        out.push_back(std::move(image));
    }
    return out;
}

} // namespace zpers
