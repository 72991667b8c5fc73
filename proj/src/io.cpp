#include "hshift/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace hs {

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace {

json complex_json(cd z) { return json::array({round12(z.real()), round12(z.imag())}); }

json doubles(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(round12(x));
    return a;
}

}  // namespace

json to_json(const Window& w) { return {{"lo", w.lo}, {"hi", w.hi}}; }

json to_json(const WindowedOperator& t) {
    json rows = json::array();
    for (int r = 0; r < t.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < t.dim(); ++c) row.push_back(complex_json(t.m(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"window", to_json(t.window)}, {"lanes", t.lanes}, {"rows", rows}};
}

json to_json(const HomogeneityReport& r) {
    json samples = json::array();
    for (size_t i = 0; i < r.samples.size(); ++i)
        samples.push_back({{"g", to_string(r.samples[i])}, {"residual", round12(r.residuals[i])}});
    return {{"window", to_json(r.window)}, {"margin", r.margin},         {"samples", samples},
            {"max_residual", round12(r.max_residual)}, {"tol", r.tol}, {"pass", r.pass}};
}

json to_json(const IntertwinerReport& r, bool with_basis) {
    json j = {{"nullity", r.nullity},
              {"unknowns", r.unknowns},
              {"equations", r.equations},
              {"largest_null", round12(r.largest_null)},
              {"smallest_retained", round12(r.smallest_retained)},
              {"gap_ratio", round12(r.gap_ratio)},
              {"residuals", doubles(r.residuals)}};
    if (with_basis) {
        json b = json::array();
        for (const auto& s : r.basis) b.push_back(to_json(s));
        j["basis"] = b;
    }
    return j;
}

json to_json(const CaseOutcome& o) {
    return {{"label", o.label},
            {"upper", to_json(o.upper)},
            {"lower", to_json(o.lower)},
            {"reducible_upper", o.reducible_upper},
            {"reducible_lower", o.reducible_lower},
            {"certificate", o.certificate},
            {"ok", o.ok}};
}

json to_json(const Fingerprint& f) {
    json g = json::array();
    for (auto [n, v] : f.gamma) g.push_back({{"n", n}, {"gamma", round12(v)}});
    return {{"family", f.family}, {"lambda", round12(f.lambda)}, {"gamma", g}};
}

json to_json(const EquivalenceVerdict& v) {
    return {{"equivalent", v.equivalent},
            {"reason", to_string(v.reason)},
            {"fingerprints_agree", v.fingerprints_agree},
            {"top5_distance", round12(v.top5_distance)},
            {"consistent", v.consistent}};
}

json to_json(const CriterionResult& r) {
    return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}};
}

json envelope(const std::string& command, const json& config, const json& result) {
    return {{"schema", 1}, {"command", command}, {"config", config}, {"result", result}};
}

void write_band_csv(std::ostream& os, const WindowedOperator& s) {
    char buf[96];
    os << "n,lane_row,lane_col,re,im\n";
    for (int lr = 0; lr < s.lanes; ++lr)
        for (int lc = 0; lc < s.lanes; ++lc)
            for (int n = s.window.lo; n < s.window.hi; ++n) {
                cd v = s(lr, n + 1, lc, n);
                std::snprintf(buf, sizeof buf, "%d,%d,%d,%.12g,%.12g\n", n, lr, lc, v.real(), v.imag());
                os << buf;
            }
}

void write_fingerprint_csv(std::ostream& os, const Fingerprint& f) {
    char buf[64];
    os << "rank,n,gamma\n";
    for (size_t i = 0; i < f.gamma.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%d,%.12g\n", i + 1, f.gamma[i].first, f.gamma[i].second);
        os << buf;
    }
}

}  // namespace hs
