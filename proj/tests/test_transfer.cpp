#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace zpers;
using namespace zpers::testing;

namespace {

/// The three-group complex reduced to zero: h(a) = b1, h(b2) = c.
Equivalence threeGroupEquivalence(IntMatrix h0 = IntMatrix{{1}, {0}})
{
    FilteredChainComplex C = threeGroup();
    FilteredChainComplex zero(0, {{}, {}, {}}, {}, 0, C.maxStage());
    Reduction right{C, zero, {}, {}, {1, {{0, h0}, {1, IntMatrix{{0, 1}}}}}};
    return {identityReduction(C), right};
}

} // namespace

TEST_CASE("identity reduction verifies")
{
    CHECK(verifyReduction(identityReduction(triangle())).ok());
    CHECK(homotopyOrder(identityReduction(triangle())) == 0);
}

TEST_CASE("three-group reduction to zero")
{
    Equivalence e = threeGroupEquivalence();
    CHECK(verifyReduction(e.right).ok());
    CHECK(homotopyOrder(e.right) == 1);
    CHECK(filteredMapOk(e.right.g, e.right.bottom, e.right.top));

    auto level1 = transferCheck(e, PageQuery{1, 2, -1});
    CHECK_FALSE(level1.match);
    CHECK_FALSE(level1.hypothesis);
    CHECK(level1.verdict() == "mismatch (outside theorem range)");
    std::size_t components = 0;
    for (int p = 0; p <= 2; ++p)
        for (int n = 0; n <= 2; ++n) {
            auto r1 = transferCheck(e, PageQuery{1, p, n - p});
            components += r1.left.size();
            CHECK(r1.right.empty());
            auto r2 = transferCheck(e, PageQuery{2, p, n - p});
            CHECK(r2.match);
            CHECK(r2.hypothesis);
        }
    CHECK(components == 4);
}

TEST_CASE("broken homotopy is reported")
{
    Equivalence e = threeGroupEquivalence(IntMatrix{{0}, {0}});
    ReductionReport rep = verifyReduction(e.right);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.identity == "g f + d h + h d = 1" && v.degree == 0 && v.generator == "a")
            found = true;
    CHECK(found);
    CHECK_THROWS_AS(transferCheck(e, PageQuery{1, 1, -1}), UnverifiedEquivalenceError);
}

TEST_CASE("shape mismatches throw")
{
    Reduction rho = identityReduction(triangle());
    rho.f.matrices[0] = IntMatrix(2, 2);
    CHECK_THROWS_AS(verifyReduction(rho), ShapeError);
}

TEST_CASE("filtered maps")
{
    FilteredChainComplex C = triangle();
    GradedMap id{0, {{0, IntMatrix::identity(3)}}};
    CHECK(filteredMapOk(id, C, C));
    GradedMap up{0, {{0, IntMatrix{{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}}}}; // v0 (stage 1) -> v1 (stage 2)
    CHECK_FALSE(filteredMapOk(up, C, C));
    CHECK(mapOrder(up, C, C) == 1);
}

TEST_CASE("identity equivalence matches everywhere")
{
    FilteredChainComplex C = triangle();
    Equivalence e{identityReduction(C), identityReduction(C)};
    for (int r = 1; r <= 3; ++r)
        for (int p = 1; p <= 7; ++p)
            CHECK(transferCheck(e, PageQuery{r, p, -p}).match);
    auto G = bdGroup(C, 6, 7, 1);
    CHECK(transferGenerators(e, G) == G.presentation.generators);
    CHECK(transferGenerators(e, bdGroup(C, 2, 5, 0)).empty());
}

TEST_CASE("hand-built acyclic pair moves a generator by a boundary")
{
    // EC: one cycle z in degree 1 at stage 1. C adds x (degree 2) and y = d x (degree 1), both stage 1.
    FilteredChainComplex EC(0, {{}, {{"z", 1}}}, {}, 1, 2);
    std::mt19937 rng(1);
    Reduction rho;
    do
        rho = adjoinAcyclicPair(EC, 1, 1, 2, rng);
    while (rho.gAt(1)(1, 0) == 0);
    REQUIRE(verifyReduction(rho).ok());
    Equivalence e{identityReduction(rho.top), rho};
    auto G = totalPrstGroup(EC, 1, 1, 1);
    auto moved = transferGenerators(e, G);
    REQUIRE(moved.size() == 1);
    CHECK(moved[0] != Vector{G.presentation.generators[0][0], 0});
    Vector diff = subtract(moved[0], Vector{G.presentation.generators[0][0], 0});
    CHECK(mapLattice(rho.top.boundary(2), Lattice::full(rho.top.size(2))).contains(diff));
}

TEST_CASE("random equivalences: identities, decomposition and transfer")
{
    std::mt19937 rng(53);
    RandomComplexOptions opt;
    opt.maxGenerators = 4;
    opt.maxStage = 4;
    for (int trial = 0; trial < 30; ++trial) {
        Equivalence e = randomEquivalence(rng, opt);
        EquivalenceReport rep = verifyEquivalence(e);
        REQUIRE(rep.ok());
        REQUIRE(rep.filtered);
        const int s = rep.order();
        const FilteredChainComplex& D = e.left.top;
        // D = C + acyclic: ranks add up and ker f has no homology
        for (int n = D.minDegree(); n <= D.maxDegree(); ++n) {
            Lattice kf = kernelLattice(e.left.fAt(n));
            CHECK(D.size(n) == e.left.bottom.size(n) + kf.rank());
            Lattice cyc = latticeIntersection(kf, kernelLattice(D.boundary(n)));
            Lattice bd = mapLattice(D.boundary(n + 1), kernelLattice(e.left.fAt(n + 1)));
            CHECK(cyc == bd);
        }
        const FilteredChainComplex& C = e.left.bottom;
        const FilteredChainComplex& EC = e.right.bottom;
        for (int n = 0; n <= 2; ++n) {
            for (int r = 1; r <= stableLevel(C); ++r)
                for (int p = C.filtrationStart(); p <= C.maxStage(); ++p) {
                    auto t = transferCheck(e, PageQuery{r, p, n - p});
                    if (t.hypothesis)
                        CHECK(t.match);
                }
            for (int i = C.filtrationStart(); i <= C.maxStage(); ++i)
                for (int j = i; j <= C.maxStage(); ++j) {
                    auto t = transferCheck(e, PersistenceQuery::total(i, j, n));
                    if (!t.hypothesis)
                        continue;
                    CHECK(t.match);
                    // the carried generators span H^{i,j} of C
                    auto G = totalPrstGroup(EC, i, j, n);
                    auto carried = transferGenerators(e, G);
                    Lattice den = boundariesInto(C, j, i, n);
                    Lattice span = latticeSum(Lattice::spannedBy(C.size(n), carried), den);
                    CHECK(span == cyclesUpTo(C, i, n));
                    for (int k = j; k <= C.maxStage(); ++k) {
                        auto tt = transferCheck(e, PersistenceQuery::triple(i, j, k, n));
                        if (tt.hypothesis)
                            CHECK(tt.match);
                    }
                }
            (void)s;
        }
    }
}
