#pragma once

// Integer barcodes. Stagewise mode follows, for every H_n(C^j), the filtration
//   H^{i-1,j} = H^{i,j,j} ⊆ H^{i,j,j+1} ⊆ ... ⊆ H^{i,j,m} ⊆ H^{i,j}
// and draws a bar [i,k) wherever a step is nontrivial. Alternative mode draws
// one bar per cyclic summand of each BD^{i,k}_n and joins bars whose direct sum
// differs from the total group they live in.

#include "zpers/persistence.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace zpers {

enum class BarcodeMode { Stagewise, Alternative };

struct IntegerBar {
    int n = 0;
    int birth = 0;
    int death = kInfinity;
    int j = -1;                    // stagewise: the H_n(C^j) being filtered; -1 in alternative mode
    std::vector<Integer> group;    // stagewise: H^{i,j,k}; alternative: the whole BD^{i,k}
    std::vector<Integer> quotient; // stagewise: step quotient; alternative: this bar's cyclic summand
};

struct ExtensionLink {
    int n = 0;
    std::vector<std::size_t> bars; // indices into BarcodeDiagram::bars
    int from = 0;                  // window of stages where all the bars are alive
    int to = 0;
    std::vector<Integer> label;    // divisors of the total group over the window
};

struct BarcodeDiagram {
    BarcodeMode mode = BarcodeMode::Alternative;
    int start = 1;
    int maxStage = 1;
    std::vector<IntegerBar> bars;
    std::vector<ExtensionLink> links;
};

inline bool barLess(const IntegerBar& a, const IntegerBar& b)
{
    return std::tie(a.n, a.birth, a.death, a.j) < std::tie(b.n, b.birth, b.death, b.j);
}

namespace detail {

inline void sortBars(BarcodeDiagram& d) { std::stable_sort(d.bars.begin(), d.bars.end(), barLess); }

inline void stagewise(const FilteredChainComplex& C, int n, std::optional<int> onlyJ, BarcodeDiagram& out)
{
    const int s = C.filtrationStart(), m = C.maxStage();
    for (int j = s; j <= m; ++j) {
        if (onlyJ && j != *onlyJ)
            continue;
        for (int i = s; i <= j; ++i) {
            const Lattice old = cyclesUpTo(C, i - 1, n);
            const Lattice dead = boundariesInto(C, j, i, n);
            Lattice previous = latticeSum(old, dead);
            for (int k = j + 1; k <= m + 1; ++k) {
                const bool infinite = k == m + 1;
                Lattice current = infinite ? cyclesUpTo(C, i, n) : latticeSum(old, boundariesInto(C, k, i, n));
                if (!(current == previous)) {
                    IntegerBar bar;
                    bar.n = n;
                    bar.birth = i;
                    bar.death = infinite ? kInfinity : k;
                    bar.j = j;
                    bar.group = quotientPresentation(current, dead).divisors;
                    bar.quotient = quotientPresentation(current, previous).divisors;
                    out.bars.push_back(std::move(bar));
                }
                previous = std::move(current);
            }
        }
    }
}

inline void alternative(const FilteredChainComplex& C, int n, BarcodeDiagram& out)
{
    const int s = C.filtrationStart(), m = C.maxStage();
    for (int i = s; i <= m; ++i)
        for (int k = i + 1; k <= m + 1; ++k) {
            const int death = k == m + 1 ? kInfinity : k;
            const auto bd = bdGroup(C, i, death, n).divisors();
            for (const auto& d : bd)
                out.bars.push_back({n, i, death, -1, bd, {d}});
        }
}

/// For each window (i, j), the bars alive there are those born by i and dying after j;
/// link them when H^{i,j}_n is not the direct sum of their summands.
inline void links(const FilteredChainComplex& C, int n, BarcodeDiagram& out)
{
    const int s = C.filtrationStart(), m = C.maxStage();
    std::map<std::pair<std::vector<std::size_t>, std::vector<Integer>>, std::pair<int, int>> merged;
    std::vector<std::pair<std::vector<std::size_t>, std::vector<Integer>>> order;
    for (int i = s; i <= m; ++i)
        for (int j = i; j <= m; ++j) {
            std::vector<std::size_t> alive;
            std::vector<Integer> pieces;
            for (std::size_t b = 0; b < out.bars.size(); ++b) {
                const auto& bar = out.bars[b];
                if (bar.n == n && bar.birth <= i && (bar.death == kInfinity || bar.death > j)) {
                    alive.push_back(b);
                    pieces.insert(pieces.end(), bar.quotient.begin(), bar.quotient.end());
                }
            }
            const auto total = totalPrstGroup(C, i, j, n).divisors();
            if (total == normalizeDivisors(pieces))
                continue;
            auto key = std::make_pair(alive, total);
            auto it = merged.find(key);
            if (it == merged.end()) {
                merged.emplace(key, std::make_pair(i, j));
                order.push_back(key);
            } else {
                it->second.first = std::min(it->second.first, i);
                it->second.second = std::max(it->second.second, j);
            }
        }
    for (const auto& key : order) {
        const auto& [from, to] = merged.at(key);
        out.links.push_back({n, key.first, from, to, key.second});
    }
}

} // namespace detail

/// Bars for the requested degrees (all degrees when empty). `onlyJ` restricts
/// stagewise mode to the filtration of a single H_n(C^j).
inline BarcodeDiagram buildBarcode(const FilteredChainComplex& C, BarcodeMode mode, std::vector<int> degrees = {},
                                   std::optional<int> onlyJ = std::nullopt)
{
    BarcodeDiagram out;
    out.mode = mode;
    out.start = C.filtrationStart();
    out.maxStage = C.maxStage();
    if (degrees.empty())
        for (int n = C.minDegree(); n <= C.maxDegree(); ++n)
            degrees.push_back(n);
    std::sort(degrees.begin(), degrees.end());
    for (int n : degrees) {
        if (mode == BarcodeMode::Stagewise)
            detail::stagewise(C, n, onlyJ, out);
        else
            detail::alternative(C, n, out);
    }
    detail::sortBars(out);
    if (mode == BarcodeMode::Alternative)
        for (int n : degrees)
            detail::links(C, n, out);
    return out;
}

inline std::string intervalString(int birth, int death)
{
    return "[" + std::to_string(birth) + "," + stageString(death) + ")";
}

/// Fixed-width table, one row per bar and one per link.
inline std::string renderText(const BarcodeDiagram& d)
{
    std::ostringstream os;
    const bool stagewise = d.mode == BarcodeMode::Stagewise;
    os << std::left << std::setw(4) << "id" << std::setw(8) << "degree" << std::setw(10) << "interval";
    if (stagewise)
        os << std::setw(4) << "j" << std::setw(18) << "group" << "quotient\n";
    else
        os << std::setw(18) << "group" << "component\n";
    for (std::size_t b = 0; b < d.bars.size(); ++b) {
        const auto& bar = d.bars[b];
        os << std::setw(4) << b + 1 << std::setw(8) << bar.n << std::setw(10) << intervalString(bar.birth, bar.death);
        if (stagewise)
            os << std::setw(4) << bar.j;
        os << std::setw(18) << groupLabel(bar.group) << groupLabel(bar.quotient) << "\n";
    }
    for (const auto& link : d.links) {
        os << std::setw(4) << "+" << std::setw(8) << link.n << std::setw(10)
           << ("[" + std::to_string(link.from) + "," + std::to_string(link.to) + "]") << "joined: " << groupLabel(link.label)
           << " bars";
        for (std::size_t t = 0; t < link.bars.size(); ++t)
            os << (t ? "," : " ") << link.bars[t] + 1;
        os << "\n";
    }
    return os.str();
}

/// SVG 1.1 drawing on a stage grid: closed dot at birth, hollow dot at a finite
/// death, arrowhead for bars that never die. Links are dashed brackets.
inline std::string renderSvg(const BarcodeDiagram& d)
{
    const int unit = 60, left = 70, top = 40, row = 24, labelRoom = 160;
    const int stages = d.maxStage - d.start + 1;
    const int rows = static_cast<int>(d.bars.size() + d.links.size());
    const int infX = left + stages * unit;
    const int width = infX + labelRoom;
    const int height = top + std::max(rows, 1) * row + 30;
    auto x = [&](int stage) { return stage == kInfinity ? infX : left + (stage - d.start) * unit; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
       << "<defs><marker id=\"arrow\" markerWidth=\"10\" markerHeight=\"10\" refX=\"8\" refY=\"5\" orient=\"auto\">"
       << "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/></marker></defs>\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
       << "<g class=\"grid\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
    for (int s = d.start; s <= d.maxStage; ++s)
        os << "<line x1=\"" << x(s) << "\" y1=\"" << top - 10 << "\" x2=\"" << x(s) << "\" y2=\"" << height - 20
           << "\"/>\n";
    os << "</g>\n<g class=\"stages\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">\n";
    for (int s = d.start; s <= d.maxStage; ++s)
        os << "<text x=\"" << x(s) << "\" y=\"" << top - 16 << "\">" << s << "</text>\n";
    os << "</g>\n<g class=\"bars\" font-family=\"monospace\" font-size=\"12\">\n";
    int r = 0;
    for (const auto& bar : d.bars) {
        const int y = top + r * row + row / 2;
        const int x1 = x(bar.birth), x2 = x(bar.death);
        const bool inf = bar.death == kInfinity;
        os << "<text x=\"8\" y=\"" << y + 4 << "\">H" << bar.n;
        if (bar.j >= 0)
            os << " j=" << bar.j;
        os << "</text>\n";
        os << "<line x1=\"" << x1 << "\" y1=\"" << y << "\" x2=\"" << (inf ? x2 - 4 : x2) << "\" y2=\"" << y
           << "\" stroke=\"black\" stroke-width=\"2\"" << (inf ? " marker-end=\"url(#arrow)\"" : "") << "/>\n";
        os << "<circle cx=\"" << x1 << "\" cy=\"" << y << "\" r=\"4\" fill=\"black\"/>\n";
        if (!inf)
            os << "<circle cx=\"" << x2 << "\" cy=\"" << y << "\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n";
        os << "<text x=\"" << infX + 14 << "\" y=\"" << y + 4 << "\">" << groupLabel(bar.quotient);
        if (d.mode == BarcodeMode::Stagewise)
            os << " in " << groupLabel(bar.group);
        os << "</text>\n";
        ++r;
    }
    os << "</g>\n<g class=\"links\" font-family=\"monospace\" font-size=\"12\">\n";
    for (const auto& link : d.links) {
        const int y = top + r * row + row / 2;
        const int x1 = x(link.from), x2 = x(link.to);
        os << "<line x1=\"" << x1 << "\" y1=\"" << y << "\" x2=\"" << x2 << "\" y2=\"" << y
           << "\" stroke=\"black\" stroke-dasharray=\"4,3\"/>\n";
        for (auto b : link.bars) {
            const int yb = top + static_cast<int>(b) * row + row / 2;
            os << "<line x1=\"" << x1 << "\" y1=\"" << yb << "\" x2=\"" << x1 << "\" y2=\"" << y
               << "\" stroke=\"black\" stroke-dasharray=\"2,2\"/>\n";
        }
        os << "<text x=\"" << infX + 14 << "\" y=\"" << y + 4 << "\">joined: " << groupLabel(link.label) << "</text>\n";
        ++r;
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace zpers
