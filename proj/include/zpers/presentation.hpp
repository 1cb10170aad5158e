#pragma once

#include "zpers/lattice.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace zpers {

/// Thrown when a quotient is requested whose denominator is not a subgroup of
/// its numerator.
class ContainmentError : public Error {
public:
    using Error::Error;
};

/// Basis-divisors description of a finitely generated abelian group:
/// generator t spans a cyclic summand Z/divisors[t] (0 meaning Z). Divisors
/// are never 1, each divides the next, and the free summands come last.
struct AbelianGroupPresentation {
    std::vector<Integer> divisors;
    std::vector<Vector> generators;

    bool isTrivial() const { return divisors.empty(); }

    std::size_t freeRank() const
    {
        std::size_t r = 0;
        for (const auto& d : divisors)
            if (d == 0)
                ++r;
        return r;
    }

    std::vector<Integer> torsion() const
    {
        std::vector<Integer> t;
        for (const auto& d : divisors)
            if (d != 0)
                t.push_back(d);
        return t;
    }
};

/// Label syntax shared by every text output: "0", "Z", "Z/2", "Z/2+Z/4+Z".
inline std::string groupLabel(const std::vector<Integer>& divisors)
{
    if (divisors.empty())
        return "0";
    std::ostringstream os;
    for (std::size_t t = 0; t < divisors.size(); ++t) {
        if (t)
            os << '+';
        if (divisors[t] == 0)
            os << 'Z';
        else
            os << "Z/" << divisors[t];
    }
    return os.str();
}

/// Brings an arbitrary list of cyclic orders to invariant-factor form (the
/// divisor list of the direct sum). Used to compare a group with a direct sum
/// of pieces.
inline std::vector<Integer> normalizeDivisors(const std::vector<Integer>& orders)
{
    IntMatrix d(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i)
        d(i, i) = orders[i];
    SmithDecomposition s = smith(d);
    std::vector<Integer> out;
    for (const auto& x : s.rowDivisors())
        if (x != 1)
            out.push_back(x);
    return out;
}

/// numerator / denominator for lattices denominator ⊆ numerator ⊆ Z^m, with
/// enough bookkeeping to read off the coordinates of any numerator element in
/// the quotient's cyclic decomposition.
class Subquotient {
public:
    Subquotient() = default;

    Subquotient(Lattice numerator, Lattice denominator)
        : numerator_(std::move(numerator)), denominator_(std::move(denominator))
    {
        numerator_.checkSameAmbient(denominator_);
        const IntMatrix& nb = numerator_.generators();
        const std::size_t a = nb.cols();
        IntMatrix relations(a, denominator_.rank());
        for (std::size_t j = 0; j < denominator_.rank(); ++j) {
            auto c = numerator_.coordinates(denominator_.generator(j));
            if (!c)
                throw ContainmentError("denominator generator " + std::to_string(j) +
                                       " is not contained in the numerator");
            for (std::size_t i = 0; i < a; ++i)
                relations(i, j) = (*c)[i];
        }
        SmithDecomposition s = smith(relations);
        toCyclic_ = std::move(s.U);
        std::vector<Integer> diag = s.rowDivisors();
        for (std::size_t t = 0; t < a; ++t) {
            if (diag[t] == 1)
                continue;
            kept_.push_back(t);
            presentation_.divisors.push_back(diag[t]);
            presentation_.generators.push_back(nb * s.uInverse.column(t));
        }
    }

    const AbelianGroupPresentation& presentation() const { return presentation_; }
    const std::vector<Integer>& divisors() const { return presentation_.divisors; }
    const Lattice& numerator() const { return numerator_; }
    const Lattice& denominator() const { return denominator_; }
    std::size_t ambientRank() const { return numerator_.ambientRank(); }

    /// Coordinates of a numerator element with respect to the presentation's
    /// generators; torsion coordinates are reduced into [0, divisor).
    Vector coordinates(const Vector& x) const
    {
        auto c = numerator_.coordinates(x);
        if (!c)
            throw ContainmentError("element is not in the numerator of the subquotient");
        Vector w = toCyclic_ * *c;
        Vector out(kept_.size());
        for (std::size_t t = 0; t < kept_.size(); ++t) {
            out[t] = w[kept_[t]];
            const Integer& d = presentation_.divisors[t];
            if (d != 0) {
                out[t] %= d;
                if (out[t] < 0)
                    out[t] += d;
            }
        }
        return out;
    }

    /// True when x ∈ numerator represents the zero class.
    bool isZeroClass(const Vector& x) const { return denominator_.contains(x); }

    /// Ambient chain representing the class with the given coordinates.
    Vector lift(const Vector& coords) const
    {
        Vector x(ambientRank());
        for (std::size_t t = 0; t < coords.size(); ++t) {
            if (coords[t] == 0)
                continue;
            for (std::size_t i = 0; i < x.size(); ++i)
                x[i] += coords[t] * presentation_.generators[t][i];
        }
        return x;
    }

    /// Lattice of relations among the presentation coordinates: diag(divisors).
    Lattice relationLattice() const
    {
        const std::size_t k = kept_.size();
        IntMatrix r(k, k);
        for (std::size_t t = 0; t < k; ++t)
            r(t, t) = presentation_.divisors[t];
        return Lattice(r);
    }

private:
    Lattice numerator_;
    Lattice denominator_;
    IntMatrix toCyclic_;
    std::vector<std::size_t> kept_;
    AbelianGroupPresentation presentation_;
};

/// Basis-divisors presentation of numerator / denominator. Throws
/// ContainmentError if denominator ⊄ numerator.
inline AbelianGroupPresentation quotientPresentation(const Lattice& numerator, const Lattice& denominator)
{
    return Subquotient(numerator, denominator).presentation();
}

} // namespace zpers
