#pragma once

// Fixtures and random filtered complexes shared by the unit tests and the
// acceptance runner.

#include "zpers/transfer.hpp"

#include <random>

namespace zpers::testing {

inline FilteredSimplicialComplex triangleSimplicial()
{
    return FilteredSimplicialComplex({{{0}, 1}, {{1}, 2}, {{2}, 3}, {{0, 1}, 4}, {{1, 2}, 5}, {{0, 2}, 6}, {{0, 1, 2}, 7}});
}

inline FilteredChainComplex triangle() { return chainComplexOf(triangleSimplicial()); }

/// Two vertices at stage 1, the edge between them at stage 2.
inline FilteredChainComplex interval()
{
    return chainComplexOf(FilteredSimplicialComplex({{{0}, 1}, {{1}, 1}, {{0, 1}, 2}}));
}

/// a (degree 0, stage 1); b1 (1, stage 2), b2 (1, stage 1); c (2, stage 2);
/// d b1 = a, d c = b2.
inline FilteredChainComplex threeGroup(int start = 0)
{
    return FilteredChainComplex(0, {{{"a", 1}}, {{"b1", 2}, {"b2", 1}}, {{"c", 2}}},
                                {{1, IntMatrix{{1, 0}}}, {2, IntMatrix{{0}, {1}}}}, start);
}

/// Degree-1 cycles x (stage 1), y (stage 2) and degree-2 killers
/// u: 4x (1), w: x - 8y (2), v_s: (32 >> (s-2)) y at stage s = 3..7.
/// H^{i,2}_1 for i = 1, 2 and the double filtration give
/// 0 ⊂ Z/2 ⊂ Z/4 ⊂ Z/8 ⊂ Z/16 ⊂ Z/32 inside H_1(C^2) = Z/32.
inline FilteredChainComplex staircase()
{
    std::vector<Generator> deg2{{"u", 1}, {"w", 2}, {"v3", 3}, {"v4", 4}, {"v5", 5}, {"v6", 6}, {"v7", 7}};
    IntMatrix d2{{4, 1, 0, 0, 0, 0, 0}, {0, -8, 16, 8, 4, 2, 1}};
    return FilteredChainComplex(1, {{{"x", 1}, {"y", 2}}, deg2}, {{2, d2}}, 1);
}

/// x (stage 1) with 2x = 0; y (stage 3) with 2y = x, so H_1(C^3) = Z/4.
/// x dies entering stage 5, y entering stage 6.
inline FilteredChainComplex extension()
{
    std::vector<Generator> deg2{{"u", 1}, {"w", 3}, {"kx", 5}, {"ky", 6}};
    IntMatrix d2{{2, -1, 1, 0}, {0, 2, 0, 1}};
    return FilteredChainComplex(1, {{{"x", 1}, {"y", 3}}, deg2}, {{2, d2}}, 1);
}

/// Closes every simplex in `top` under faces; vertices at stage 1, edges 2, triangles 3.
inline FilteredSimplicialComplex byDimension(const std::vector<Simplex>& top)
{
    std::map<Simplex, int> all;
    for (const auto& s : top) {
        const std::size_t k = s.size();
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            Simplex f;
            for (std::size_t t = 0; t < k; ++t)
                if (mask & (1u << t))
                    f.push_back(s[t]);
            all[f] = static_cast<int>(f.size());
        }
    }
    return FilteredSimplicialComplex(std::vector<std::pair<Simplex, int>>(all.begin(), all.end()));
}

/// Seven-vertex torus (Möbius–Kantor / Császár triangulation).
inline FilteredSimplicialComplex torusSimplicial()
{
    std::vector<Simplex> tris;
    for (int i = 0; i < 7; ++i) {
        Simplex a{i, (i + 1) % 7, (i + 3) % 7};
        Simplex b{i, (i + 2) % 7, (i + 3) % 7};
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        tris.push_back(a);
        tris.push_back(b);
    }
    return byDimension(tris);
}

/// Klein bottle from a 3x3 grid on the square with the top edge glued reversed.
inline FilteredSimplicialComplex kleinSimplicial()
{
    // vertex (r, c) on the torus-like grid; columns wrap plainly, rows wrap with a flip
    auto v = [](int r, int c) {
        if (r == 3) {
            r = 0;
            c = (3 - c) % 3;
        }
        c %= 3;
        return r * 3 + c;
    };
    std::vector<Simplex> tris;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            Simplex a{v(r, c), v(r, c + 1), v(r + 1, c + 1)};
            Simplex b{v(r, c), v(r + 1, c), v(r + 1, c + 1)};
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            tris.push_back(a);
            tris.push_back(b);
        }
    return byDimension(tris);
}

struct RandomComplexOptions {
    int maxGenerators = 6; // per degree
    int maxStage = 5;
    int degrees = 3;       // degrees 0 .. degrees-1
    int start = 1;
    int coefficientBound = 3;
};

/// Random filtered complex with d∘d = 0 by construction: each column of d_n is a
/// small random combination of a basis of ker d_{n-1} ∩ C^{stage}.
inline FilteredChainComplex randomComplex(std::mt19937& rng, const RandomComplexOptions& o = {})
{
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int m = uniform(o.start, o.maxStage);
    std::vector<std::vector<Generator>> basis(static_cast<std::size_t>(o.degrees));
    for (int n = 0; n < o.degrees; ++n) {
        const int count = uniform(0, o.maxGenerators);
        std::vector<int> stages;
        for (int t = 0; t < count; ++t)
            stages.push_back(uniform(o.start, m));
        std::sort(stages.begin(), stages.end());
        for (int t = 0; t < count; ++t)
            basis[n].push_back({"g" + std::to_string(n) + "_" + std::to_string(t), stages[t]});
    }
    // build the complex one degree at a time so kernels can be taken on the partial complex
    std::map<int, IntMatrix> d;
    for (int n = 1; n < o.degrees; ++n) {
        const auto& src = basis[n];
        const auto& tgt = basis[n - 1];
        IntMatrix dn(tgt.size(), src.size());
        const IntMatrix& prev = n >= 2 ? d.at(n - 1) : IntMatrix(0, tgt.size());
        for (std::size_t col = 0; col < src.size(); ++col) {
            if (uniform(0, 5) == 0)
                continue;
            std::vector<std::size_t> allowed;
            for (std::size_t t = 0; t < tgt.size(); ++t)
                if (tgt[t].stage <= src[col].stage)
                    allowed.push_back(t);
            Lattice ker = kernelLattice(prev.selectColumns(allowed));
            for (std::size_t j = 0; j < ker.rank(); ++j) {
                if (uniform(0, 2) == 0)
                    continue;
                const int c = uniform(-o.coefficientBound, o.coefficientBound);
                for (std::size_t t = 0; t < allowed.size(); ++t)
                    dn(allowed[t], col) += c * ker.generators()(t, j);
            }
        }
        d[n] = dn;
    }
    return FilteredChainComplex(0, basis, d, o.start, m);
}

/// Random filtered simplicial complex on up to `vertices` vertices with stages in [1, maxStage].
inline FilteredSimplicialComplex randomSimplicial(std::mt19937& rng, int vertices = 6, int maxStage = 5)
{
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::map<Simplex, int> stages;
    for (int v = 0; v < vertices; ++v)
        if (uniform(0, 4) != 0)
            stages[{v}] = uniform(1, maxStage);
    for (int dim = 1; dim <= 3; ++dim) {
        std::vector<std::pair<Simplex, int>> add;
        for (const auto& [s, st] : stages) {
            if (static_cast<int>(s.size()) != dim)
                continue;
            for (int v = s.back() + 1; v < vertices; ++v) {
                Simplex t = s;
                t.push_back(v);
                int minStage = 0;
                bool ok = true;
                for (std::size_t drop = 0; drop < t.size() && ok; ++drop) {
                    Simplex f = t;
                    f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
                    auto it = stages.find(f);
                    ok = it != stages.end();
                    if (ok)
                        minStage = std::max(minStage, it->second);
                }
                if (ok && uniform(0, 2) == 0)
                    add.emplace_back(t, uniform(minStage, maxStage));
            }
        }
        for (auto& [s, st] : add)
            stages.emplace(s, st);
    }
    return FilteredSimplicialComplex(std::vector<std::pair<Simplex, int>>(stages.begin(), stages.end()));
}

/// D = B + <x, y> with x in degree n+1 at stage sx, y = d x in degree n at stage sy <= sx.
/// A functional τ on B_n, supported on generators of stage >= sy, twists the
/// inclusion: g(b) = b + τ(b) y, d_D c = d_B c + τ(d_B c) y, h(y) = x, h(b) = -τ(b) x.
/// Returns the reduction D => B; its homotopy order is at most sx - sy.
inline Reduction adjoinAcyclicPair(const FilteredChainComplex& B, int n, int sy, int sx, std::mt19937& rng,
                                   int tauBound = 2)
{
    static int counter = 0;
    ++counter;
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int lo = B.minDegree(), hi = std::max(B.maxDegree(), n + 1);
    std::vector<std::vector<Generator>> basis;
    for (int k = lo; k <= hi; ++k) {
        basis.push_back(B.basis(k));
        if (k == n)
            basis.back().push_back({"y" + std::to_string(counter), sy});
        if (k == n + 1)
            basis.back().push_back({"x" + std::to_string(counter), sx});
    }
    auto sizeD = [&](int k) { return k < lo || k > hi ? std::size_t(0) : basis[static_cast<std::size_t>(k - lo)].size(); };
    Vector tau(B.size(n));
    for (std::size_t t = 0; t < tau.size(); ++t)
        if (B.stage(n, t) >= sy)
            tau[t] = uniform(-tauBound, tauBound);

    std::map<int, IntMatrix> d;
    for (int k = lo; k <= hi + 1; ++k) {
        IntMatrix m(sizeD(k - 1), sizeD(k));
        const IntMatrix& db = B.boundary(k);
        for (std::size_t r = 0; r < db.rows(); ++r)
            for (std::size_t c = 0; c < db.cols(); ++c)
                m(r, c) = db(r, c);
        if (k == n + 1) {
            const std::size_t yRow = sizeD(n) - 1, xCol = sizeD(n + 1) - 1;
            m(yRow, xCol) = 1;
            for (std::size_t c = 0; c < B.size(n + 1); ++c) {
                Integer a = 0;
                for (std::size_t r = 0; r < B.size(n); ++r)
                    a += tau[r] * db(r, c);
                m(yRow, c) = a;
            }
        }
        d[k] = m;
    }
    FilteredChainComplex D(lo, basis, d, B.filtrationStart(), B.maxStage());

    Reduction rho{D, B, {}, {}, {1, {}}};
    for (int k = lo; k <= hi; ++k) {
        IntMatrix f(B.size(k), D.size(k)), g(D.size(k), B.size(k));
        for (std::size_t t = 0; t < B.size(k); ++t) {
            f(t, t) = 1;
            g(t, t) = 1;
        }
        if (k == n)
            for (std::size_t t = 0; t < B.size(n); ++t)
                g(D.size(n) - 1, t) = tau[t];
        rho.f.matrices[k] = f;
        rho.g.matrices[k] = g;
    }
    IntMatrix h(D.size(n + 1), D.size(n));
    const std::size_t x = D.size(n + 1) - 1, y = D.size(n) - 1;
    h(x, y) = 1;
    for (std::size_t t = 0; t < B.size(n); ++t)
        h(x, t) = -tau[t];
    rho.h.matrices[n] = h;
    return rho;
}

/// Adds `pairs` acyclic pairs one after another; returns the composite reduction.
inline Reduction thicken(const FilteredChainComplex& B, int pairs, std::mt19937& rng, int maxOrder = 100)
{
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    Reduction total = identityReduction(B);
    for (int t = 0; t < pairs; ++t) {
        const int n = uniform(B.minDegree(), std::max(B.minDegree(), B.maxDegree() - 1));
        const int sy = uniform(B.filtrationStart(), B.maxStage());
        const int sx = uniform(sy, std::min(B.maxStage(), sy + maxOrder));
        Reduction step = adjoinAcyclicPair(total.top, n, sy, sx, rng);
        total = compose(step, total);
    }
    return total;
}

/// C <= D => EC with C = EC + acyclic pairs and D = C + more pairs.
inline Equivalence randomEquivalence(std::mt19937& rng, const RandomComplexOptions& o = {}, int maxOrder = 100)
{
    FilteredChainComplex EC = randomComplex(rng, o);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    Reduction toEC = thicken(EC, uniform(0, 2), rng, maxOrder);
    Reduction toC = thicken(toEC.top, uniform(0, 2), rng, maxOrder);
    return {toC, compose(toC, toEC)};
}

} // namespace zpers::testing
