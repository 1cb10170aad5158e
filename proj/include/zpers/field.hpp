#pragma once

// Linear algebra over a prime field Z/p or over Q (p == 0). Rational ranks and
// null spaces go through the integer routines: an integer kernel basis also
// spans the rational kernel, and integer rank equals rational rank.

#include "zpers/lattice.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zpers {

/// Coefficient field: characteristic p (prime) or 0 for the rationals.
struct Field {
    std::uint64_t characteristic = 0;

    static Field rationals() { return {0}; }
    static Field prime(std::uint64_t p)
    {
        if (!isPrime(p))
            throw Error("field characteristic " + std::to_string(p) + " is not prime");
        return {p};
    }

    bool isRational() const { return characteristic == 0; }

    std::string name() const { return isRational() ? "Q" : "Z/" + std::to_string(characteristic) + "Z"; }

    static bool isPrime(std::uint64_t p)
    {
        if (p < 2)
            return false;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0)
                return false;
        return true;
    }
};

namespace detail {

using ModMatrix = std::vector<std::vector<std::uint64_t>>;

inline std::uint64_t modReduce(const Integer& x, std::uint64_t p)
{
    Integer r = x % p;
    if (r < 0)
        r += p;
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t modMul(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t modInverse(std::uint64_t a, std::uint64_t p)
{
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1)
            result = modMul(result, base, p);
        base = modMul(base, base, p);
        e >>= 1;
    }
    return result;
}

inline ModMatrix toMod(const IntMatrix& A, std::uint64_t p)
{
    ModMatrix m(A.rows(), std::vector<std::uint64_t>(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            m[i][j] = modReduce(A(i, j), p);
    return m;
}

/// In-place reduced row echelon form mod p; returns the pivot columns.
inline std::vector<std::size_t> modRref(ModMatrix& m, std::size_t cols, std::uint64_t p)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][c] == 0)
            ++sel;
        if (sel == m.size())
            continue;
        std::swap(m[row], m[sel]);
        const std::uint64_t inv = modInverse(m[row][c], p);
        for (auto& x : m[row])
            x = modMul(x, inv, p);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][c] == 0)
                continue;
            const std::uint64_t f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                m[i][j] = (m[i][j] + p - modMul(f, m[row][j], p)) % p;
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

} // namespace detail

inline std::size_t fieldRank(const IntMatrix& A, Field F)
{
    if (F.isRational())
        return integerRank(A);
    auto m = detail::toMod(A, F.characteristic);
    return detail::modRref(m, A.cols(), F.characteristic).size();
}

/// Basis of the null space {x : A x = 0} over F, one vector per column. Over
/// Z/p the entries are representatives in [0, p).
inline IntMatrix fieldNullspace(const IntMatrix& A, Field F)
{
    if (F.isRational())
        return kernelLattice(A).generators();
    const std::uint64_t p = F.characteristic;
    auto m = detail::toMod(A, p);
    auto pivots = detail::modRref(m, A.cols(), p);
    std::vector<bool> isPivot(A.cols(), false);
    for (auto c : pivots)
        isPivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < A.cols(); ++f) {
        if (isPivot[f])
            continue;
        Vector v(A.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (m[r][f] != 0)
                v[pivots[r]] = Integer((p - m[r][f]) % p);
        basis.push_back(std::move(v));
    }
    return IntMatrix::fromColumns(A.cols(), basis);
}

} // namespace zpers
