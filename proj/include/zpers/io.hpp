#pragma once

// Text formats: filtered simplicial complexes, filtered chain complexes and
// equivalence files, plus the "Component" output used by the command line.
//
// Simplicial:  <stage> <v0> <v1> ... <vk>
// Chain:       generator <name> degree <n> stage <p>
//              d <name> = <c1>*<g1> + <c2>*<g2> - <g3> ...
//              start <0|1>   final <m>     (optional)
// Equivalence: complex <C|D|EC> ... end   blocks in chain format, then
//              matrix <f1|g1|h1|f2|g2|h2> degree <n>, integer rows, end
// '#' starts a comment everywhere.

#include "zpers/transfer.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace zpers {

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
    std::string text; // comment stripped
};

inline std::vector<Line> tokenize(const std::string& text, std::size_t firstLine = 1)
{
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = firstLine - 1;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream words(raw);
        Line line{number, {}, raw};
        for (std::string w; words >> w;)
            line.tokens.push_back(w);
        if (!line.tokens.empty())
            out.push_back(std::move(line));
    }
    return out;
}

inline bool isIntegerToken(const std::string& s)
{
    std::size_t t = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (t == s.size())
        return false;
    for (; t < s.size(); ++t)
        if (s[t] < '0' || s[t] > '9')
            return false;
    return true;
}

inline Integer parseInteger(const std::string& s, std::size_t line)
{
    if (!isIntegerToken(s))
        throw ParseError(line, "expected an integer, got '" + s + "'");
    return Integer(s[0] == '+' ? s.substr(1) : s);
}

inline int parseSmallInt(const std::string& s, std::size_t line)
{
    Integer v = parseInteger(s, line);
    if (v > 1000000 || v < -1000000)
        throw ParseError(line, "value " + s + " out of range");
    return static_cast<int>(v);
}

} // namespace detail

/// Simplices with their stages; every face must be listed explicitly.
inline FilteredSimplicialComplex parseFilteredSimplicialComplex(const std::string& text)
{
    std::map<Simplex, std::pair<int, std::size_t>> seen; // stage, line
    std::vector<std::pair<Simplex, int>> simplices;
    for (const auto& line : detail::tokenize(text)) {
        if (line.tokens.size() < 2)
            throw ParseError(line.number, "expected '<stage> <vertex> ...'");
        const int stage = detail::parseSmallInt(line.tokens[0], line.number);
        if (stage < 0)
            throw ParseError(line.number, "negative stage " + line.tokens[0]);
        Simplex s;
        for (std::size_t t = 1; t < line.tokens.size(); ++t)
            s.push_back(detail::parseSmallInt(line.tokens[t], line.number));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ParseError(line.number, "repeated vertex in " + simplexName(s));
        if (!seen.emplace(s, std::make_pair(stage, line.number)).second)
            throw ParseError(line.number, "simplex " + simplexName(s) + " already listed on line " +
                                              std::to_string(seen.at(s).second));
        simplices.emplace_back(s, stage);
    }
    for (const auto& [s, stage] : simplices) {
        const auto& info = seen.at(s);
        if (s.size() < 2)
            continue;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face = s;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            auto it = seen.find(face);
            if (it == seen.end())
                throw ParseError(info.second, "missing face " + simplexName(face) + " of " + simplexName(s));
            if (it->second.first > info.first)
                throw ParseError(info.second, "face " + simplexName(face) + " (stage " +
                                                  std::to_string(it->second.first) + ", line " +
                                                  std::to_string(it->second.second) + ") enters after " +
                                                  simplexName(s) + " (stage " + std::to_string(info.first) + ")");
        }
    }
    return FilteredSimplicialComplex(simplices);
}

struct ChainFileOptions {
    std::optional<int> start; // overrides a "start" directive; default 0
};

namespace detail {

inline FilteredChainComplex parseChainLines(const std::vector<Line>& lines, const ChainFileOptions& opt)
{
    struct Gen {
        std::string name;
        int degree;
        int stage;
        std::size_t line;
    };
    std::vector<Gen> gens;
    std::map<std::string, std::size_t> byName;
    std::vector<const Line*> dLines;
    std::optional<int> start, final;
    for (const auto& line : lines) {
        const auto& tk = line.tokens;
        if (tk[0] == "generator") {
            if (tk.size() != 6 || tk[2] != "degree" || tk[4] != "stage")
                throw ParseError(line.number, "expected 'generator <name> degree <n> stage <p>'");
            if (byName.count(tk[1]))
                throw ParseError(line.number, "generator " + tk[1] + " declared twice");
            byName[tk[1]] = gens.size();
            gens.push_back({tk[1], parseSmallInt(tk[3], line.number), parseSmallInt(tk[5], line.number), line.number});
        } else if (tk[0] == "d") {
            dLines.push_back(&line);
        } else if (tk[0] == "start" && tk.size() == 2) {
            start = parseSmallInt(tk[1], line.number);
            if (*start != 0 && *start != 1)
                throw ParseError(line.number, "filtration start must be 0 or 1");
        } else if (tk[0] == "final" && tk.size() == 2) {
            final = parseSmallInt(tk[1], line.number);
        } else {
            throw ParseError(line.number, "unrecognised line starting with '" + tk[0] + "'");
        }
    }
    const int filtrationStart = opt.start.value_or(start.value_or(0));
    for (const auto& g : gens)
        if (g.stage < filtrationStart)
            throw ParseError(g.line, "generator " + g.name + " has stage " + std::to_string(g.stage) +
                                         " below the filtration start " + std::to_string(filtrationStart));
    if (final)
        for (const auto& g : gens)
            if (g.stage > *final)
                throw ParseError(g.line, "generator " + g.name + " has stage beyond the final stage");

    int lo = 0, hi = -1;
    if (!gens.empty()) {
        lo = hi = gens[0].degree;
        for (const auto& g : gens) {
            lo = std::min(lo, g.degree);
            hi = std::max(hi, g.degree);
        }
    }
    std::vector<std::vector<Generator>> basis(static_cast<std::size_t>(hi - lo + 1));
    std::vector<std::size_t> position(gens.size());
    for (std::size_t t = 0; t < gens.size(); ++t) {
        auto& deg = basis[static_cast<std::size_t>(gens[t].degree - lo)];
        position[t] = deg.size();
        deg.push_back({gens[t].name, gens[t].stage});
    }
    auto sizeOf = [&](int n) { return n < lo || n > hi ? std::size_t(0) : basis[static_cast<std::size_t>(n - lo)].size(); };
    std::map<int, IntMatrix> d;
    for (int n = lo + 1; n <= hi; ++n)
        d[n] = IntMatrix(sizeOf(n - 1), sizeOf(n));
    std::map<std::string, std::size_t> dLineOf;

    for (const Line* line : dLines) {
        // re-split the raw text so "2*a+b" and "2 * a + b" both work
        std::string body = line->text;
        const auto eq = body.find('=');
        std::istringstream head(body.substr(0, eq));
        std::string dword, name, extra;
        head >> dword >> name;
        if (eq == std::string::npos || name.empty() || (head >> extra))
            throw ParseError(line->number, "expected 'd <name> = <terms>'");
        auto it = byName.find(name);
        if (it == byName.end())
            throw ParseError(line->number, "unknown generator '" + name + "'");
        if (dLineOf.count(name))
            throw ParseError(line->number, "second differential for " + name);
        dLineOf[name] = line->number;
        const Gen& src = gens[it->second];
        std::string rhs = body.substr(eq + 1);
        rhs.erase(std::remove_if(rhs.begin(), rhs.end(), [](unsigned char c) { return std::isspace(c); }), rhs.end());
        if (rhs.empty())
            throw ParseError(line->number, "empty right-hand side (write 0 for a zero differential)");
        if (rhs == "0")
            continue;
        std::size_t pos = 0;
        while (pos < rhs.size()) {
            int sign = 1;
            if (rhs[pos] == '+' || rhs[pos] == '-') {
                sign = rhs[pos] == '-' ? -1 : 1;
                ++pos;
            } else if (pos != 0) {
                throw ParseError(line->number, "expected '+' or '-' between terms");
            }
            std::size_t end = pos;
            while (end < rhs.size() && rhs[end] != '+' && rhs[end] != '-')
                ++end;
            std::string term = rhs.substr(pos, end - pos);
            pos = end;
            Integer coeff = sign;
            std::string target = term;
            if (auto star = term.find('*'); star != std::string::npos) {
                coeff *= parseInteger(term.substr(0, star), line->number);
                target = term.substr(star + 1);
            }
            auto tg = byName.find(target);
            if (target.empty() || tg == byName.end())
                throw ParseError(line->number, "unknown generator '" + target + "'");
            const Gen& dst = gens[tg->second];
            if (dst.degree != src.degree - 1)
                throw ParseError(line->number, "d(" + src.name + ") must lie in degree " +
                                                   std::to_string(src.degree - 1) + " but " + dst.name +
                                                   " has degree " + std::to_string(dst.degree));
            if (dst.stage > src.stage)
                throw ParseError(line->number, "filtration violation: d(" + src.name + ") involves " + dst.name +
                                                   " at stage " + std::to_string(dst.stage) + " > " +
                                                   std::to_string(src.stage));
            d[src.degree](position[tg->second], position[it->second]) += coeff;
        }
    }
    // d∘d, reported at the generator's d line
    for (int n = lo + 2; n <= hi; ++n) {
        IntMatrix dd = d[n - 1] * d[n];
        for (std::size_t c = 0; c < dd.cols(); ++c)
            if (!dd.isColumnZero(c)) {
                const std::string& name = basis[static_cast<std::size_t>(n - lo)][c].name;
                throw ParseError(dLineOf.count(name) ? dLineOf[name] : 0, "d(d(" + name + ")) != 0");
            }
    }
    return FilteredChainComplex(lo, std::move(basis), d, filtrationStart, final);
}

} // namespace detail

inline FilteredChainComplex parseFilteredChainComplex(const std::string& text, const ChainFileOptions& opt = {})
{
    return detail::parseChainLines(detail::tokenize(text), opt);
}

enum class InputFormat { Simplicial, Chain, Equivalence };

/// Decided by the first meaningful line: "generator"/"d"/"start"/"final" mean a
/// chain file, "complex"/"matrix" an equivalence file, anything else simplicial.
inline InputFormat detectFormat(const std::string& text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty())
        return InputFormat::Simplicial;
    const std::string& w = lines.front().tokens.front();
    if (w == "generator" || w == "d" || w == "start" || w == "final")
        return InputFormat::Chain;
    if (w == "complex" || w == "matrix")
        return InputFormat::Equivalence;
    return InputFormat::Simplicial;
}

/// Reads either input kind. Simplicial files default to start 1, chain files to 0.
inline FilteredChainComplex loadComplex(const std::string& text, std::optional<int> start = std::nullopt)
{
    switch (detectFormat(text)) {
    case InputFormat::Chain:
        return parseFilteredChainComplex(text, {start});
    case InputFormat::Simplicial:
        return chainComplexOf(parseFilteredSimplicialComplex(text), start.value_or(1));
    case InputFormat::Equivalence:
        break;
    }
    throw Error("this is an equivalence file; expected a complex");
}

inline Equivalence parseEquivalence(const std::string& text, std::optional<int> start = std::nullopt)
{
    const auto lines = detail::tokenize(text);
    std::map<std::string, FilteredChainComplex> complexes;
    struct Block {
        std::size_t line;
        IntMatrix m;
    };
    std::map<std::string, std::map<int, Block>> matrices;
    for (std::size_t t = 0; t < lines.size();) {
        const auto& head = lines[t];
        std::size_t end = t + 1;
        while (end < lines.size() && lines[end].tokens.front() != "end")
            ++end;
        if (end == lines.size())
            throw ParseError(head.number, "block is not closed by 'end'");
        if (head.tokens[0] == "complex") {
            if (head.tokens.size() != 2 || (head.tokens[1] != "C" && head.tokens[1] != "D" && head.tokens[1] != "EC"))
                throw ParseError(head.number, "expected 'complex C', 'complex D' or 'complex EC'");
            if (complexes.count(head.tokens[1]))
                throw ParseError(head.number, "complex " + head.tokens[1] + " given twice");
            std::vector<detail::Line> body(lines.begin() + static_cast<std::ptrdiff_t>(t + 1),
                                           lines.begin() + static_cast<std::ptrdiff_t>(end));
            complexes.emplace(head.tokens[1], detail::parseChainLines(body, {start}));
        } else if (head.tokens[0] == "matrix") {
            static const std::set<std::string> names{"f1", "g1", "h1", "f2", "g2", "h2"};
            if (head.tokens.size() != 4 || !names.count(head.tokens[1]) || head.tokens[2] != "degree")
                throw ParseError(head.number, "expected 'matrix <f1|g1|h1|f2|g2|h2> degree <n>'");
            const int n = detail::parseSmallInt(head.tokens[3], head.number);
            std::vector<std::vector<Integer>> rows;
            for (std::size_t r = t + 1; r < end; ++r) {
                std::vector<Integer> row;
                for (const auto& tok : lines[r].tokens)
                    row.push_back(detail::parseInteger(tok, lines[r].number));
                if (!rows.empty() && row.size() != rows.front().size())
                    throw ParseError(lines[r].number, "ragged matrix row");
                rows.push_back(std::move(row));
            }
            IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t c = 0; c < rows[r].size(); ++c)
                    m(r, c) = rows[r][c];
            if (!matrices[head.tokens[1]].emplace(n, Block{head.number, m}).second)
                throw ParseError(head.number, "matrix " + head.tokens[1] + " degree " + std::to_string(n) +
                                                  " given twice");
        } else {
            throw ParseError(head.number, "expected 'complex' or 'matrix'");
        }
        t = end + 1;
    }
    for (const char* name : {"C", "D", "EC"})
        if (!complexes.count(name))
            throw Error(std::string("equivalence file has no 'complex ") + name + "' block");
    const FilteredChainComplex& C = complexes.at("C");
    const FilteredChainComplex& D = complexes.at("D");
    const FilteredChainComplex& EC = complexes.at("EC");

    auto graded = [&](const std::string& name, int shift, const FilteredChainComplex& src,
                      const FilteredChainComplex& dst) {
        GradedMap g{shift, {}};
        for (const auto& [n, block] : matrices[name]) {
            IntMatrix m = block.m;
            const std::size_t rows = dst.size(n + shift), cols = src.size(n);
            if (m.rows() == 0 && rows == 0)
                m = IntMatrix(0, cols);
            if (m.rows() != rows || m.cols() != cols)
                throw ParseError(block.line, "matrix " + name + " degree " + std::to_string(n) + " is " +
                                                 m.shapeString() + ", expected " + std::to_string(rows) + "x" +
                                                 std::to_string(cols));
            g.matrices[n] = m;
        }
        return g;
    };
    Reduction left{D, C, graded("f1", 0, D, C), graded("g1", 0, C, D), graded("h1", 1, D, D)};
    Reduction right{D, EC, graded("f2", 0, D, EC), graded("g2", 0, EC, D), graded("h2", 1, D, D)};
    return {left, right};
}

inline std::string readFile(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// "Z" or "Z/6Z", as in the component lines.
inline std::string componentLabel(const Integer& divisor)
{
    if (divisor == 0)
        return "Z";
    std::ostringstream os;
    os << "Z/" << divisor << "Z";
    return os.str();
}

/// Linear combination of basis names, e.g. "[0,1] - 2*[1,2]".
inline std::string formatChain(const FilteredChainComplex& C, int n, const Vector& chain)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t t = 0; t < chain.size(); ++t) {
        if (chain[t] == 0)
            continue;
        Integer a = abs(chain[t]);
        if (first)
            os << (chain[t] < 0 ? "-" : "");
        else
            os << (chain[t] < 0 ? " - " : " + ");
        if (a != 1)
            os << a << "*";
        os << C.name(n, t);
        first = false;
    }
    return first ? "0" : os.str();
}

} // namespace zpers
