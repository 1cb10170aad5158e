#pragma once

// Filtered chain complexes of free Z-modules and filtered simplicial
// complexes, plus the filtration submodules every subquotient is built from.

#include "zpers/lattice.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zpers {

/// Invalid complex data: d∘d != 0, a differential leaving its filtration
/// stage, missing faces and similar.
class ComplexError : public Error {
public:
    using Error::Error;
};

/// A basis element of one degree of a filtered chain complex.
struct Generator {
    std::string name;
    int stage = 0;
};

class FilteredChainComplex {
public:
    FilteredChainComplex() = default;

    /// basis[t] lists the generators of degree minDegree + t in basis order;
    /// differentials[n] is the matrix of d_n : C_n -> C_{n-1} (rows follow the
    /// degree n-1 basis). Missing differentials are zero.
    FilteredChainComplex(int minDegree, std::vector<std::vector<Generator>> basis,
                         const std::map<int, IntMatrix>& differentials, int filtrationStart = 0,
                         std::optional<int> maxStage = std::nullopt)
        : minDegree_(minDegree), basis_(std::move(basis)), start_(filtrationStart)
    {
        if (start_ != 0 && start_ != 1)
            throw ComplexError("filtration start must be 0 or 1");
        int top = start_;
        for (const auto& degree : basis_)
            for (const auto& g : degree) {
                if (g.stage < start_)
                    throw ComplexError("generator " + g.name + " has stage " + std::to_string(g.stage) +
                                       " below the filtration start " + std::to_string(start_));
                top = std::max(top, g.stage);
            }
        if (maxStage && *maxStage < top)
            throw ComplexError("declared final stage " + std::to_string(*maxStage) +
                               " is below a generator stage " + std::to_string(top));
        maxStage_ = maxStage.value_or(top);

        for (int n = minDegree_; n <= maxDegree() + 1; ++n) {
            auto it = differentials.find(n);
            IntMatrix d = it != differentials.end() ? it->second : IntMatrix(size(n - 1), size(n));
            if (d.rows() != size(n - 1) || d.cols() != size(n))
                throw ComplexError("differential d_" + std::to_string(n) + " has shape " + d.shapeString() +
                                   ", expected " + std::to_string(size(n - 1)) + "x" + std::to_string(size(n)));
            d_.push_back(std::move(d));
        }
        for (const auto& [n, d] : differentials)
            if ((n < minDegree_ || n > maxDegree() + 1) && !d.isZero())
                throw ComplexError("nonzero differential d_" + std::to_string(n) + " outside the degree range");
        validate();
    }

    int minDegree() const { return minDegree_; }
    int maxDegree() const { return minDegree_ + static_cast<int>(basis_.size()) - 1; }
    bool hasDegree(int n) const { return n >= minDegree_ && n <= maxDegree(); }
    int filtrationStart() const { return start_; }
    int maxStage() const { return maxStage_; }

    std::size_t size(int n) const { return hasDegree(n) ? basis_[static_cast<std::size_t>(n - minDegree_)].size() : 0; }

    const std::vector<Generator>& basis(int n) const
    {
        static const std::vector<Generator> none;
        return hasDegree(n) ? basis_[static_cast<std::size_t>(n - minDegree_)] : none;
    }

    int stage(int n, std::size_t index) const { return basis(n).at(index).stage; }
    const std::string& name(int n, std::size_t index) const { return basis(n).at(index).name; }

    /// Matrix of d_n : C_n -> C_{n-1}; zero-sized outside the degree range.
    const IntMatrix& boundary(int n) const
    {
        static const IntMatrix none;
        if (basis_.empty() || n < minDegree_ || n > maxDegree() + 1)
            return none;
        return d_[static_cast<std::size_t>(n - minDegree_)];
    }

    Vector applyBoundary(int n, const Vector& chain) const
    {
        if (chain.size() != size(n))
            throw ShapeError("chain of length " + std::to_string(chain.size()) + " in degree " + std::to_string(n) +
                             " (basis size " + std::to_string(size(n)) + ")");
        return boundary(n) * chain;
    }

    bool isCycle(int n, const Vector& chain) const { return isZeroVector(applyBoundary(n, chain)); }

    /// Indices of degree-n generators with stage <= p.
    std::vector<std::size_t> indicesUpTo(int p, int n) const
    {
        std::vector<std::size_t> idx;
        const auto& b = basis(n);
        for (std::size_t t = 0; t < b.size(); ++t)
            if (b[t].stage <= p)
                idx.push_back(t);
        return idx;
    }

    /// Highest stage carrying a nonzero coordinate of the chain (start - 1 for 0).
    int stageOf(int n, const Vector& chain) const
    {
        int s = start_ - 1;
        for (std::size_t t = 0; t < chain.size(); ++t)
            if (chain[t] != 0)
                s = std::max(s, stage(n, t));
        return s;
    }

    /// Same degrees, generator names and stages, start, final stage and differentials.
    friend bool operator==(const FilteredChainComplex& a, const FilteredChainComplex& b)
    {
        if (a.minDegree_ != b.minDegree_ || a.basis_.size() != b.basis_.size() || a.start_ != b.start_ ||
            a.maxStage_ != b.maxStage_ || a.d_ != b.d_)
            return false;
        for (std::size_t t = 0; t < a.basis_.size(); ++t) {
            if (a.basis_[t].size() != b.basis_[t].size())
                return false;
            for (std::size_t u = 0; u < a.basis_[t].size(); ++u)
                if (a.basis_[t][u].name != b.basis_[t][u].name || a.basis_[t][u].stage != b.basis_[t][u].stage)
                    return false;
        }
        return true;
    }

private:
    void validate() const
    {
        for (int n = minDegree_; n <= maxDegree(); ++n) {
            const IntMatrix& d = boundary(n);
            for (std::size_t col = 0; col < d.cols(); ++col)
                for (std::size_t row = 0; row < d.rows(); ++row)
                    if (d(row, col) != 0 && stage(n - 1, row) > stage(n, col))
                        throw ComplexError("filtration violation: d(" + name(n, col) + ") involves " +
                                           name(n - 1, row) + " at stage " + std::to_string(stage(n - 1, row)) +
                                           " > " + std::to_string(stage(n, col)));
            if (n - 1 >= minDegree_) {
                IntMatrix dd = boundary(n - 1) * d;
                for (std::size_t col = 0; col < dd.cols(); ++col)
                    if (!dd.isColumnZero(col))
                        throw ComplexError("d∘d != 0 on generator " + name(n, col));
            }
        }
    }

    int minDegree_ = 0;
    std::vector<std::vector<Generator>> basis_;
    std::vector<IntMatrix> d_;
    int start_ = 0;
    int maxStage_ = 0;
};

/// A chain of a given degree in the basis of a complex.
struct Chain {
    int degree = 0;
    Vector coordinates;
};

/// Lattice spanned by the degree-n generators of stage <= p. Stages below the
/// filtration start give the zero lattice; stages >= the final one give all of C_n.
inline Lattice filtrationSubmodule(const FilteredChainComplex& C, int p, int n)
{
    std::vector<Vector> units;
    for (auto t : C.indicesUpTo(p, n))
        units.push_back(unitVector(C.size(n), t));
    return Lattice::spannedBy(C.size(n), units);
}

/// Z^r_{p,q}: chains of C^p in degree p+q whose boundary lies in C^{p-r}.
inline Lattice almostCycles(const FilteredChainComplex& C, int r, int p, int q)
{
    if (r < 0)
        throw Error("almost-cycle level must be non-negative");
    const int n = p + q;
    const std::vector<std::size_t> cols = C.indicesUpTo(p, n);
    std::vector<std::size_t> rows;
    for (std::size_t t = 0; t < C.size(n - 1); ++t)
        if (C.stage(n - 1, t) > p - r)
            rows.push_back(t);
    Lattice local = kernelLattice(C.boundary(n).selectRows(rows).selectColumns(cols));
    IntMatrix embedded(C.size(n), local.rank());
    for (std::size_t j = 0; j < local.rank(); ++j)
        for (std::size_t k = 0; k < cols.size(); ++k)
            embedded(cols[k], j) = local.generators()(k, j);
    return Lattice(embedded);
}

/// ker d_n ∩ C^p_n.
inline Lattice cyclesUpTo(const FilteredChainComplex& C, int p, int n)
{
    return almostCycles(C, std::max(0, p - C.filtrationStart() + 1), p, n - p);
}

/// d_{n+1}(Z^{k-i}_{k,n-k+1}): boundaries of degree n+1 chains of C^k that land in C^i.
inline Lattice boundariesInto(const FilteredChainComplex& C, int k, int i, int n)
{
    Lattice z = almostCycles(C, std::max(0, k - i), k, n + 1 - k);
    return mapLattice(C.boundary(n + 1), z);
}

/// Vertex ids in strictly increasing order.
using Simplex = std::vector<int>;

inline std::string simplexName(const Simplex& s)
{
    std::string out = "[";
    for (std::size_t t = 0; t < s.size(); ++t) {
        if (t)
            out += ',';
        out += std::to_string(s[t]);
    }
    return out + "]";
}

class FilteredSimplicialComplex {
public:
    FilteredSimplicialComplex() = default;

    /// Throws ComplexError on unsorted vertex tuples, duplicates, missing faces
    /// or a face entering later than its coface.
    explicit FilteredSimplicialComplex(const std::vector<std::pair<Simplex, int>>& simplices)
    {
        for (const auto& [s, stage] : simplices) {
            if (s.empty())
                throw ComplexError("empty simplex");
            for (std::size_t t = 1; t < s.size(); ++t)
                if (s[t - 1] >= s[t])
                    throw ComplexError("simplex " + simplexName(s) + " is not strictly increasing");
            if (!stages_.emplace(s, stage).second)
                throw ComplexError("simplex " + simplexName(s) + " listed twice");
        }
        for (const auto& [s, stage] : stages_) {
            if (s.size() < 2)
                continue;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                auto it = stages_.find(face);
                if (it == stages_.end())
                    throw ComplexError("missing face " + simplexName(face) + " of " + simplexName(s));
                if (it->second > stage)
                    throw ComplexError("face " + simplexName(face) + " enters at stage " + std::to_string(it->second) +
                                       " after " + simplexName(s) + " at stage " + std::to_string(stage));
            }
        }
    }

    const std::map<Simplex, int>& stages() const { return stages_; }
    bool empty() const { return stages_.empty(); }

    int dimension() const
    {
        int d = -1;
        for (const auto& [s, stage] : stages_)
            d = std::max(d, static_cast<int>(s.size()) - 1);
        return d;
    }

private:
    std::map<Simplex, int> stages_;
};

/// Simplicial chain complex with alternating-sign boundary. Generators of each
/// degree are ordered by stage, then lexicographically by vertices.
inline FilteredChainComplex chainComplexOf(const FilteredSimplicialComplex& K, int filtrationStart = 1,
                                           std::optional<int> maxStage = std::nullopt)
{
    const int top = K.dimension();
    std::vector<std::vector<std::pair<int, Simplex>>> ordered(static_cast<std::size_t>(std::max(top + 1, 0)));
    for (const auto& [s, stage] : K.stages())
        ordered[s.size() - 1].emplace_back(stage, s);
    std::vector<std::vector<Generator>> basis;
    std::vector<std::map<Simplex, std::size_t>> position(ordered.size());
    for (std::size_t n = 0; n < ordered.size(); ++n) {
        std::sort(ordered[n].begin(), ordered[n].end());
        std::vector<Generator> gens;
        for (std::size_t t = 0; t < ordered[n].size(); ++t) {
            gens.push_back({simplexName(ordered[n][t].second), ordered[n][t].first});
            position[n][ordered[n][t].second] = t;
        }
        basis.push_back(std::move(gens));
    }
    std::map<int, IntMatrix> d;
    for (std::size_t n = 1; n < ordered.size(); ++n) {
        IntMatrix m(ordered[n - 1].size(), ordered[n].size());
        for (std::size_t col = 0; col < ordered[n].size(); ++col) {
            const Simplex& s = ordered[n][col].second;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                m(position[n - 1].at(face), col) += (drop % 2 == 0) ? 1 : -1;
            }
        }
        d[static_cast<int>(n)] = std::move(m);
    }
    return FilteredChainComplex(0, std::move(basis), d, filtrationStart, maxStage);
}

} // namespace zpers
