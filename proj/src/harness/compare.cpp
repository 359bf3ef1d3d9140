#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "sphull/error.hpp"
#include "sphull/harness.hpp"

namespace sphull::harness {

namespace {

double num(const std::string& s, const std::string& what) {
    double v;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
        fail(ErrorKind::Join, "corrupted " + what + " value '" + s + "'");
    return v;
}

// formulas a simulated quantity is compared against, in order of preference
std::vector<std::string> formulas_for(const std::string& q) {
    if (q == "v_n") return {"Vn2d", "Example1Vn", "Example2Vn"};
    if (q == "A_n") return {"An2d"};
    if (q == "l_n") return {"Ln2d"};
    return {};
}

using PointKey = std::tuple<std::string, std::string, std::string, double>;  // law, params, d, n

}  // namespace

CompareResult compare_report(const Table& sim, const Table& pred, const CompareOptions& o) {
    const std::size_t sq = sim.column("quantity"), sl = sim.column("law"), sp = sim.column("params"),
                      sd = sim.column("d"), sn = sim.column("n"), sm = sim.column("mean"), sc = sim.column("ci95");
    const std::size_t pf = pred.column("formula_id"), pl = pred.column("law"), pp = pred.column("params"),
                      pd = pred.column("d"), pn = pred.column("n"), pv = pred.column("value_or_lower");

    std::map<std::pair<std::string, PointKey>, double> preds;  // (formula, key) -> value
    std::set<PointKey> sim_points;
    for (const auto& r : sim.rows) sim_points.insert({r[sl], r[sp], r[sd], num(r[sn], "n")});
    std::vector<std::string> unmatched;
    for (const auto& r : pred.rows) {
        const PointKey k{r[pl], r[pp], r[pd], num(r[pn], "n")};
        if (!sim_points.count(k)) {
            unmatched.push_back(r[pf] + " " + r[pl] + ":" + r[pp] + " d=" + r[pd] + " n=" + r[pn]);
            continue;
        }
        preds[{r[pf], k}] = num(r[pv], "prediction");
    }
    if (!unmatched.empty()) {
        std::string msg = "prediction rows without a matching simulation row:";
        for (const auto& u : unmatched) msg += "\n  " + u;
        fail(ErrorKind::Join, msg);
    }

    // group simulation rows by (quantity, law, params, d), ordered by n
    struct Point {
        double n, mean, ci;
    };
    std::map<std::tuple<std::string, std::string, std::string, std::string>, std::vector<Point>> groups;
    for (const auto& r : sim.rows)
        groups[{r[sq], r[sl], r[sp], r[sd]}].push_back({num(r[sn], "n"), num(r[sm], "mean"), num(r[sc], "ci95")});

    CompareResult res;
    res.report.header = {"quantity", "law", "params", "d", "n", "mc_mean", "ci95", "prediction", "formula_id",
                         "ratio", "ratio_trend"};
    for (auto& [key, pts] : groups) {
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.n < b.n; });
        const auto& [q, law, params, d] = key;
        std::string formula;
        for (const auto& f : formulas_for(q)) {
            const bool all = std::all_of(pts.begin(), pts.end(), [&](const Point& p) {
                return preds.count({f, PointKey{law, params, d, p.n}}) > 0;
            });
            const bool any = std::any_of(pts.begin(), pts.end(), [&](const Point& p) {
                return preds.count({f, PointKey{law, params, d, p.n}}) > 0;
            });
            if (all) {
                formula = f;
                break;
            }
            if (any) fail(ErrorKind::Join, "predictions for " + f + " " + law + " cover only part of the n grid");
        }
        const std::string label = q + " " + law + ":" + params + " d=" + d;
        if (formula.empty()) {
            // no prediction: boundedness across n only
            double lo = HUGE_VAL, hi = -HUGE_VAL, ci = 0;
            for (const auto& p : pts) {
                lo = std::min(lo, p.mean);
                hi = std::max(hi, p.mean);
                ci = std::max(ci, p.ci);
            }
            const bool flat = hi - lo < 3.0 * ci || pts.size() < 2;
            for (const auto& p : pts)
                res.report.add({q, law, params, d, fmt(p.n), fmt(p.mean), fmt(p.ci), "", "", "",
                                flat ? "flat" : "not_flat"});
            if (!flat) {
                res.gate_passed = false;
                res.gate_notes.push_back(label + ": means vary by " + fmt(hi - lo) + " >= 3 CI half-widths");
            }
            continue;
        }
        std::vector<double> ratios;
        for (const auto& p : pts) ratios.push_back(p.mean / preds.at({formula, PointKey{law, params, d, p.n}}));
        bool improving = true;
        for (std::size_t i = 1; i < ratios.size(); ++i)
            if (std::fabs(ratios[i] - 1.0) > std::fabs(ratios[i - 1] - 1.0)) improving = false;
        for (std::size_t i = 0; i < pts.size(); ++i)
            res.report.add({q, law, params, d, fmt(pts[i].n), fmt(pts[i].mean), fmt(pts[i].ci),
                            fmt(preds.at({formula, PointKey{law, params, d, pts[i].n}})), formula, fmt(ratios[i]),
                            improving ? "improving" : "not_improving"});
        const double last = std::fabs(ratios.back() - 1.0);
        if (!improving) {
            res.gate_passed = false;
            res.gate_notes.push_back(label + ": |ratio-1| is not nonincreasing in n");
        }
        if (last > o.tol_rel) {
            res.gate_passed = false;
            res.gate_notes.push_back(label + ": |ratio-1| = " + fmt(last) + " > " + fmt(o.tol_rel) + " at n=" +
                                     fmt(pts.back().n));
        }
    }
    return res;
}

}  // namespace sphull::harness
