#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace dga {

/// Degree interval on which a (possibly truncated) computation is certified
/// exact. Unbounded ends use the int min/max sentinels.
struct TrustWindow {
    int lo = std::numeric_limits<int>::min();
    int hi = std::numeric_limits<int>::max();

    static TrustWindow all() { return {}; }
    static TrustWindow at_least(int lo) { return {lo, std::numeric_limits<int>::max()}; }
    static TrustWindow at_most(int hi) { return {std::numeric_limits<int>::min(), hi}; }
    static TrustWindow empty() { return {1, 0}; }

    bool contains(int i) const { return lo <= i && i <= hi; }
    bool is_empty() const { return lo > hi; }
    TrustWindow intersect(const TrustWindow& o) const
    {
        return {std::max(lo, o.lo), std::min(hi, o.hi)};
    }
    bool operator==(const TrustWindow&) const = default;
};

enum class Verdict { Holds, Fails, Inconclusive };

inline const char* to_string(Verdict v)
{
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        default: return "inconclusive";
    }
}

/// Three-valued result of a check, with the certified window and whatever
/// witnessing data the check produced (failing degrees, homology dimension
/// tables, axiom names).
struct VerdictReport {
    Verdict verdict = Verdict::Inconclusive;
    TrustWindow window = TrustWindow::all();
    std::string check;                       // name of the predicate
    std::string detail;                      // human-readable witness summary
    std::map<std::string, std::map<int, long>> tables;  // named degree -> dim tables
    std::vector<int> failing_degrees;

    bool holds() const { return verdict == Verdict::Holds; }
    bool fails() const { return verdict == Verdict::Fails; }
    bool inconclusive() const { return verdict == Verdict::Inconclusive; }

    static VerdictReport pass(std::string check, TrustWindow w = TrustWindow::all(),
                              std::string detail = {})
    {
        return {Verdict::Holds, w, std::move(check), std::move(detail), {}, {}};
    }
    static VerdictReport fail(std::string check, std::string detail,
                              TrustWindow w = TrustWindow::all(), std::vector<int> degrees = {})
    {
        return {Verdict::Fails, w, std::move(check), std::move(detail), {}, std::move(degrees)};
    }
    static VerdictReport unknown(std::string check, std::string detail,
                                 TrustWindow w = TrustWindow::all())
    {
        return {Verdict::Inconclusive, w, std::move(check), std::move(detail), {}, {}};
    }
};

}  // namespace dga
