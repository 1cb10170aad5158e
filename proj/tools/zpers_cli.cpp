#include "zpers/barcode.hpp"
#include "zpers/io.hpp"
#include "zpers/spectral.hpp"
#include "zpers/transfer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace zpers;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string file;
    std::string field;
    bool generators = false;
    bool oracle = false;
    std::optional<int> start;
    std::string format = "text";
};

int parseStage(const std::string& s, bool allowInfinity)
{
    if (allowInfinity && (s == "inf" || s == "infinity"))
        return kInfinity;
    if (!detail::isIntegerToken(s))
        throw UsageError("expected an integer" + std::string(allowInfinity ? " or 'inf'" : "") + ", got '" + s + "'");
    return std::stoi(s);
}

std::optional<Field> fieldOf(const Options& o)
{
    if (o.field.empty())
        return std::nullopt;
    if (o.field == "Q" || o.field == "q" || o.field == "0")
        return Field::rationals();
    if (!detail::isIntegerToken(o.field) || o.field[0] == '-')
        throw UsageError("--field expects a prime or Q, got '" + o.field + "'");
    const auto p = std::stoull(o.field);
    if (!Field::isPrime(p))
        throw UsageError("--field " + o.field + " is not prime");
    return Field::prime(p);
}

FilteredChainComplex load(const Options& o) { return loadComplex(readFile(o.file), o.start); }

void disallow(const Options& o, const std::string& cmd, bool field, bool oracle, bool generators)
{
    if (field && !o.field.empty())
        throw UsageError("--field is not supported by " + cmd);
    if (oracle && o.oracle)
        throw UsageError("--oracle is not supported by " + cmd);
    if (generators && o.generators)
        throw UsageError("--generators is not supported by " + cmd);
}

void checkFormat(const Options& o)
{
    if (o.format != "text" && o.format != "tsv")
        throw UsageError("--format must be text or tsv");
}

// Component lines for a divisor list, optionally with one generator chain each.
void printComponents(const Options& o, const std::string& header, const std::string& label,
                     const std::vector<Integer>& divisors, const std::vector<std::string>& gens)
{
    if (o.format == "tsv") {
        std::cout << "query\tcomponent" << (o.generators ? "\tgenerator" : "") << "\n";
        for (std::size_t t = 0; t < divisors.size(); ++t) {
            std::cout << label << "\t" << componentLabel(divisors[t]);
            if (o.generators)
                std::cout << "\t" << gens[t];
            std::cout << "\n";
        }
        return;
    }
    std::cout << header << "\n";
    for (std::size_t t = 0; t < divisors.size(); ++t) {
        std::cout << "Component " << componentLabel(divisors[t]) << "\n";
        if (o.generators)
            std::cout << "  generator: " << gens[t] << "\n";
    }
}

void printFieldComponents(const Options& o, const std::string& header, const std::string& label, Field F,
                          std::size_t dim)
{
    const std::string name = F.isRational() ? "Q" : F.name();
    if (o.format == "tsv") {
        std::cout << "query\tcomponent\n";
        for (std::size_t t = 0; t < dim; ++t)
            std::cout << label << "\t" << name << "\n";
        return;
    }
    std::cout << header << " over " << name << "\n";
    for (std::size_t t = 0; t < dim; ++t)
        std::cout << "Component " << name << "\n";
}

std::string pageLabel(int r, int p, int q)
{
    return "E^" + std::to_string(r) + "_{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

int runSpsqGroup(const Options& o, int r, int p, int q)
{
    disallow(o, "spsq-group", false, true, false);
    const auto C = load(o);
    const std::string label = pageLabel(r, p, q);
    const std::string header = "Spectral sequence " + label;
    if (auto F = fieldOf(o)) {
        if (o.generators)
            throw UsageError("--generators is not available with --field");
        printFieldComponents(o, header, label, *F, fieldPageDimension(C, *F, r, p, q));
        return 0;
    }
    const PageGroup g = spsqGroup(C, r, p, q);
    std::vector<std::string> gens;
    for (const auto& v : g.representatives)
        gens.push_back(formatChain(C, p + q, v));
    printComponents(o, header, label, g.divisors(), gens);
    return 0;
}

int runSpsqDffr(const Options& o, int r, int p, int q)
{
    disallow(o, "spsq-dffr", true, true, true);
    const auto C = load(o);
    const PageGroup src = spsqGroup(C, r, p, q);
    const PageGroup dst = spsqGroup(C, r, p - r, q + r - 1);
    const IntMatrix m = spsqDifferential(C, r, p, q);
    if (o.format == "tsv") {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::cout << (j ? "\t" : "") << m(i, j);
            std::cout << "\n";
        }
        return 0;
    }
    std::cout << "Spectral sequence differential d^" << r << "_{" << p << "," << q << "}\n"
              << "Source " << pageLabel(r, p, q) << " = " << groupLabel(src.divisors()) << "\n"
              << "Target " << pageLabel(r, p - r, q + r - 1) << " = " << groupLabel(dst.divisors()) << "\n"
              << "Matrix " << m.rows() << "x" << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            std::cout << (j ? " " : "") << m(i, j);
        std::cout << "\n";
    }
    return 0;
}

std::string queryLabel(const PersistenceQuery& q)
{
    const std::string n = "_" + std::to_string(q.n);
    switch (q.kind) {
    case QueryKind::BirthDeath:
        return "BD^{" + std::to_string(q.i) + "," + stageString(q.k) + "}" + n;
    case QueryKind::Total:
        return "H^{" + std::to_string(q.i) + "," + std::to_string(q.j) + "}" + n;
    case QueryKind::Triple:
        return "H^{" + std::to_string(q.i) + "," + std::to_string(q.j) + "," + stageString(q.k) + "}" + n;
    }
    return "";
}

int runPersistence(const Options& o, const PersistenceQuery& q)
{
    const auto C = load(o);
    const std::string label = queryLabel(q);
    const std::string header = "Persistent Homology " + label;
    if (auto F = fieldOf(o)) {
        if (o.generators || o.oracle)
            throw UsageError("--generators and --oracle are not available with --field");
        std::size_t dim = 0;
        switch (q.kind) {
        case QueryKind::BirthDeath:
            dim = fieldBdDimension(C, *F, q.i, q.k, q.n);
            break;
        case QueryKind::Total:
            dim = fieldTotalDimension(C, *F, q.i, q.j, q.n);
            break;
        case QueryKind::Triple:
            dim = fieldTripleDimension(C, *F, q.i, q.j, q.k, q.n);
            break;
        }
        printFieldComponents(o, header, label, *F, dim);
        return 0;
    }
    const PersistentGroup G = o.oracle ? oraclePersistence(C, q) : persistentGroup(C, q);
    std::vector<std::string> gens;
    if (o.generators)
        for (const auto& [d, v] : persistentGenerators(C, G))
            gens.push_back(formatChain(C, q.n, v));
    printComponents(o, header, label, G.divisors(), gens);
    return 0;
}

std::string joinDivisors(const std::vector<Integer>& d) { return groupLabel(d); }

int runFieldBarcode(const Options& o, const FilteredChainComplex& C, Field F, const std::vector<int>& degrees)
{
    const FieldBettiTable t = fieldBetti(C, F);
    const std::string name = F.isRational() ? "Q" : F.name();
    std::vector<int> ns = degrees;
    if (ns.empty())
        for (int n = C.minDegree(); n <= C.maxDegree(); ++n)
            ns.push_back(n);
    std::sort(ns.begin(), ns.end());
    const bool tsv = o.format == "tsv";
    if (tsv)
        std::cout << "id\tdegree\tbirth\tdeath\tfield\n";
    else
        std::cout << std::left << std::setw(4) << "id" << std::setw(8) << "degree" << std::setw(10) << "interval"
                  << "field\n";
    int id = 0;
    for (int n : ns)
        for (int i = C.filtrationStart(); i <= C.maxStage(); ++i)
            for (int k = i + 1; k <= C.maxStage() + 1; ++k) {
                const int death = k == C.maxStage() + 1 ? kInfinity : k;
                for (long long c = muCounts(t, i, death, n); c > 0; --c) {
                    ++id;
                    if (tsv)
                        std::cout << id << "\t" << n << "\t" << i << "\t" << stageString(death) << "\t" << name << "\n";
                    else
                        std::cout << std::setw(4) << id << std::setw(8) << n << std::setw(10)
                                  << intervalString(i, death) << name << "\n";
                }
            }
    return 0;
}

int runBarcode(const Options& o, const std::string& modeName, const std::string& svg, const std::vector<int>& degrees,
               std::optional<int> onlyJ)
{
    disallow(o, "barcode", false, true, true);
    if (modeName != "alt" && modeName != "stagewise")
        throw UsageError("--mode must be stagewise or alt");
    const auto C = load(o);
    if (auto F = fieldOf(o)) {
        if (!svg.empty() || onlyJ || modeName != "alt")
            throw UsageError("--field barcodes support neither --svg, --j nor --mode stagewise");
        return runFieldBarcode(o, C, *F, degrees);
    }
    const BarcodeMode mode = modeName == "alt" ? BarcodeMode::Alternative : BarcodeMode::Stagewise;
    if (onlyJ && mode != BarcodeMode::Stagewise)
        throw UsageError("--j only applies to --mode stagewise");
    const BarcodeDiagram d = buildBarcode(C, mode, degrees, onlyJ);
    if (o.format == "tsv") {
        std::cout << "id\tdegree\tbirth\tdeath\tj\tgroup\tcomponent\n";
        for (std::size_t b = 0; b < d.bars.size(); ++b) {
            const auto& bar = d.bars[b];
            std::cout << b + 1 << "\t" << bar.n << "\t" << bar.birth << "\t" << stageString(bar.death) << "\t"
                      << (bar.j >= 0 ? std::to_string(bar.j) : "-") << "\t" << joinDivisors(bar.group) << "\t"
                      << joinDivisors(bar.quotient) << "\n";
        }
        for (const auto& link : d.links) {
            std::cout << "link\t" << link.n << "\t" << link.from << "\t" << link.to << "\t-\t"
                      << joinDivisors(link.label) << "\t";
            for (std::size_t t = 0; t < link.bars.size(); ++t)
                std::cout << (t ? "," : "") << link.bars[t] + 1;
            std::cout << "\n";
        }
    } else {
        std::cout << renderText(d);
    }
    if (!svg.empty()) {
        std::ofstream out(svg, std::ios::binary);
        if (!out)
            throw Error("cannot write " + svg);
        out << renderSvg(d);
    }
    return 0;
}

int runInequality(const Options& o, int r, int n)
{
    disallow(o, "check-inequality", true, true, true);
    const auto C = load(o);
    const InequalityReport rep = checkInequality(C, r, n);
    const char* verdict = rep.lhs > rep.rhs ? "STRICT" : rep.lhs == rep.rhs ? "EQUAL" : "VIOLATED";
    if (o.format == "tsv")
        std::cout << "r\tn\tlhs\trhs\tverdict\n" << r << "\t" << n << "\t" << rep.lhs << "\t" << rep.rhs << "\t"
                  << verdict << "\n";
    else
        std::cout << "sum of ranks of E^" << r << "_{p," << n << "-p}: " << rep.lhs << "\n"
                  << "bars in degree " << n << " of length >= " << r << ": " << rep.rhs << "\n"
                  << "lhs=" << rep.lhs << " rhs=" << rep.rhs << " " << verdict << "\n";
    return rep.lhs >= rep.rhs ? 0 : 1;
}

void printReduction(const std::string& what, const ReductionReport& rep)
{
    std::cout << what << ": " << (rep.ok() ? "ok" : "FAILED") << "\n";
    for (const auto& v : rep.violations)
        std::cout << "  " << v.identity << " fails in degree " << v.degree << " at " << v.generator << "\n";
}

int runVerifyEquivalence(const Options& o, std::optional<int> level)
{
    disallow(o, "verify-equivalence", true, true, true);
    const Equivalence e = parseEquivalence(readFile(o.file), o.start);
    const EquivalenceReport rep = verifyEquivalence(e);
    printReduction("reduction D => C", rep.left);
    printReduction("reduction D => EC", rep.right);
    std::cout << "same top complex: " << (rep.sameTop ? "yes" : "no") << "\n"
              << "f and g filtered: " << (rep.filtered ? "yes" : "no") << "\n"
              << "homotopy order: " << rep.order() << " (left " << rep.leftOrder << ", right " << rep.rightOrder
              << ")\n";
    if (!rep.ok())
        return 1;
    if (!level)
        return 0;
    const auto& C = e.left.bottom;
    const auto& EC = e.right.bottom;
    const int lo = std::min(C.minDegree(), EC.minDegree()), hi = std::max(C.maxDegree(), EC.maxDegree());
    const int s = std::min(C.filtrationStart(), EC.filtrationStart());
    const int m = std::max(C.maxStage(), EC.maxStage());
    bool anyMismatchInRange = false;
    std::cout << "level " << *level << " pages, C versus EC:\n";
    for (int n = lo; n <= hi; ++n)
        for (int p = s; p <= m; ++p) {
            const TransferReport t = transferCheck(e, PageQuery{*level, p, n - p});
            if (t.left.empty() && t.right.empty())
                continue;
            std::cout << "  " << pageLabel(*level, p, n - p) << ": " << groupLabel(t.left) << " vs "
                      << groupLabel(t.right) << "  " << t.verdict() << "\n";
            anyMismatchInRange = anyMismatchInRange || (!t.match && t.hypothesis);
        }
    return anyMismatchInRange ? 1 : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Integer persistent homology and spectral sequences of filtered complexes"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--field", o.field, "Work over a prime field p or the rationals Q (dimensions only)");
    app.add_flag("--generators", o.generators, "Print a representing chain for every component");
    app.add_flag("--oracle", o.oracle, "Compute persistent groups through induced maps instead of the formulas");
    app.add_option("--start", o.start, "Filtration start (0 or 1)")->check(CLI::IsMember({0, 1}));
    app.add_option("--format", o.format, "text or tsv")->check(CLI::IsMember({"text", "tsv"}));

    std::string a, b, c, d;
    auto positional = [&](CLI::App* sub, std::vector<std::pair<const char*, std::string*>> names) {
        sub->add_option("file", o.file, "Complex file")->required();
        for (auto& [name, target] : names)
            sub->add_option(name, *target)->required()->allow_extra_args(false);
        sub->positionals_at_end(false);
    };

    auto* spsq = app.add_subcommand("spsq-group", "Spectral sequence group E^r_{p,q}");
    positional(spsq, {{"r", &a}, {"p", &b}, {"q", &c}});
    auto* dffr = app.add_subcommand("spsq-dffr", "Differential d^r_{p,q} as a matrix between page presentations");
    positional(dffr, {{"r", &a}, {"p", &b}, {"q", &c}});
    auto* bd = app.add_subcommand("prst-hmlg-group", "Birth-death group BD^{i,k}_n (k may be inf)");
    positional(bd, {{"i", &a}, {"k", &b}, {"n", &c}});
    auto* total = app.add_subcommand("total-prst-hmlg-group", "Persistent homology H^{i,j}_n");
    positional(total, {{"i", &a}, {"j", &b}, {"n", &c}});
    auto* triple = app.add_subcommand("triple-prst-hmlg-group", "Double-filtration group H^{i,j,k}_n");
    positional(triple, {{"i", &a}, {"j", &b}, {"k", &c}, {"n", &d}});

    auto* bar = app.add_subcommand("barcode", "Integer barcode diagram");
    bar->add_option("file", o.file, "Complex file")->required();
    std::string mode = "alt", svg;
    std::vector<int> degrees;
    std::optional<int> onlyJ;
    bar->add_option("--mode", mode, "stagewise or alt")->check(CLI::IsMember({"stagewise", "alt"}));
    bar->add_option("--svg", svg, "Also write an SVG drawing to this path");
    bar->add_option("--degree", degrees, "Restrict to these degrees");
    bar->add_option("--j", onlyJ, "Stagewise mode: only filter H_n(C^j)");

    auto* ineq = app.add_subcommand("check-inequality", "Compare page ranks with long bars");
    positional(ineq, {{"r", &a}, {"n", &b}});

    auto* equiv = app.add_subcommand("verify-equivalence", "Check a strong equivalence file");
    equiv->add_option("file", o.file, "Equivalence file")->required();
    std::optional<int> level;
    equiv->add_option("--level", level, "Also compare the pages of C and EC at this level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        checkFormat(o);
        if (spsq->parsed())
            return runSpsqGroup(o, parseStage(a, false), parseStage(b, false), parseStage(c, false));
        if (dffr->parsed())
            return runSpsqDffr(o, parseStage(a, false), parseStage(b, false), parseStage(c, false));
        if (bd->parsed())
            return runPersistence(
                o, PersistenceQuery::birthDeath(parseStage(a, false), parseStage(b, true), parseStage(c, false)));
        if (total->parsed())
            return runPersistence(
                o, PersistenceQuery::total(parseStage(a, false), parseStage(b, false), parseStage(c, false)));
        if (triple->parsed())
            return runPersistence(o, PersistenceQuery::triple(parseStage(a, false), parseStage(b, false),
                                                              parseStage(c, true), parseStage(d, false)));
        if (bar->parsed())
            return runBarcode(o, mode, svg, degrees, onlyJ);
        if (ineq->parsed())
            return runInequality(o, parseStage(a, false), parseStage(b, false));
        if (equiv->parsed())
            return runVerifyEquivalence(o, level);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << o.file << ":" << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
