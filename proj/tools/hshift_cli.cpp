// hshift: command-line front end for the block-shift verification library.
//
// Exit codes: 0 pass, 1 fail, 2 invalid input.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hshift/io.hpp"

using namespace hs;

namespace {

struct RunConfig {
    int half = 60;
    int margin = 15;
    int samples = 12;
    unsigned long long seed = 7;
    std::string tier = "fast";
    std::string out;

    double tol() const { return tier == "strict" ? 1e-8 : 1e-6; }
    Window window() const { return symmetric_window(half); }
    json to_json() const {
        return {{"window", half}, {"margin", margin}, {"samples", samples}, {"seed", seed}, {"tier", tier},
                {"tol", tol()}};
    }
};

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void check(const RunConfig& c) {
    if (c.half < 4) throw InvalidInput("--window must be at least 4");
    if (c.margin < 0 || c.margin >= c.half) throw InvalidInput("--margin must lie in [0, window)");
    if (c.samples < 1) throw InvalidInput("--samples must be positive");
}

std::string out_dir(const RunConfig& c) {
    if (!c.out.empty()) return c.out;
    if (const char* env = std::getenv("HSHIFT_OUT_DIR")) return env;
    return {};
}

void emit(const RunConfig& c, const std::string& name, const std::string& text) {
    std::cout << text;
    const std::string dir = out_dir(c);
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream f(std::filesystem::path(dir) / name);
    if (!f) throw std::runtime_error("cannot write " + name + " in " + dir);
    f << text;
}

void emit_json(const RunConfig& c, const std::string& command, const json& config, const json& result) {
    emit(c, command + ".json", envelope(command, config, result).dump(2) + "\n");
}

// --family / --params for the block families
struct FamilyArgs {
    std::string family, params;
    double lambda = 0, s = 1, alpha = 1, a = 0.25, b = 0.75;

    BlockShiftParams get() const {
        if (!params.empty()) return parse_params(params);
        if (family == "C") return CParams{a, b, alpha};
        if (family == "P") return PParams{lambda, cd(0.0, s), alpha};
        if (family == "P0") return P0Params{lambda, alpha};
        throw InvalidInput("unknown family '" + family + "' (C, P or P0)");
    }
};

ReprSpec family_repr(const BlockShiftParams& p) {
    if (auto c = std::get_if<CParams>(&p)) {
        auto r = complementary(c->a + c->b - 1.0, 0.5 * (c->b - c->a));
        return direct_sum({r, r});
    }
    if (auto q = std::get_if<PParams>(&p)) {
        auto r = principal(q->lambda, q->s);
        return direct_sum({r, r});
    }
    auto r = principal(std::get<P0Params>(p).lambda, 0.0);
    return direct_sum({r, r});
}

int cmd_homogeneity(const RunConfig& c, const FamilyArgs& f, const std::string& shift, const std::string& repr,
                    double sigma, double perturb) {
    check(c);
    const Window w = c.window();
    WindowedOperator t;
    ReprSpec spec;
    json what;
    if (!shift.empty()) {
        if (shift == "B")
            t = make_B(w);
        else if (shift == "Bs")
            t = make_Bs(f.lambda, cd(0.0, f.s), w);
        else if (shift == "Tab")
            t = make_Tab(f.a, f.b, w);
        else
            throw InvalidInput("unknown shift '" + shift + "' (B, Bs or Tab)");
        if (repr == "principal")
            spec = principal(f.lambda, cd(0.0, f.s));
        else if (repr == "complementary")
            spec = shift == "Tab" ? complementary(f.a + f.b - 1.0, 0.5 * (f.b - f.a)) : complementary(f.lambda, sigma);
        else
            throw InvalidInput("unknown repr '" + repr + "' (principal or complementary)");
        what = {{"shift", shift}, {"repr", describe(spec)}};
    } else {
        auto p = f.get();
        validate(p);
        t = make_family(p, w);
        spec = family_repr(p);
        what = {{"params", to_string(p)}, {"repr", describe(spec)}};
    }
    validate(spec);
    if (perturb != 0.0) t.m(t.index(0, 1), t.index(0, 0)) += perturb;
    what["perturb"] = perturb;
    auto rep = verify_homogeneous(t, spec, c.samples, c.seed, c.tol(), c.margin);
    json cfg = c.to_json();
    cfg["operator"] = what;
    emit_json(c, "homogeneity", cfg, to_json(rep));
    return rep.pass ? 0 : 1;
}

struct IntertwineArgs {
    std::string kase, diag = "Bs,B", params, table, corner = "upper", ansatz = "band";
    double lambda = 0, s = 1, sigma = 0.2;
    int expect = -1, max_mk = 2;
    bool basis = false;
};

std::pair<std::string, std::string> split_pair(const std::string& text) {
    auto k = text.find(',');
    if (k == std::string::npos) throw InvalidInput("--diag expects two names, e.g. Bs,B");
    return {text.substr(0, k), text.substr(k + 1)};
}

std::vector<double> split_numbers(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw InvalidInput("bad number '" + item + "'");
        } catch (const std::logic_error&) {
            throw InvalidInput("bad number '" + item + "'");
        }
    }
    return v;
}

// Lane representation and diagonal for one letter of a --case pair.
std::pair<ReprSpec, WindowedOperator> lane_for(char family, const std::string& diag, const IntertwineArgs& a,
                                               const Window& w) {
    if (family == 'P') {
        const cd s(0.0, a.s);
        if (diag == "B") return {principal(a.lambda, s), make_B(w)};
        if (diag == "Bs") return {principal(a.lambda, s), make_Bs(a.lambda, s, w)};
        throw InvalidInput("P lanes take the diagonal B or Bs");
    }
    if (family == 'C') {
        if (diag != "T") throw InvalidInput("C lanes take the diagonal T");
        const double lo = 0.5 * (1.0 + a.lambda) - a.sigma, hi = 0.5 * (1.0 + a.lambda) + a.sigma;
        return {complementary(a.lambda, a.sigma), make_Tab(lo, hi, w)};
    }
    throw InvalidInput(std::string("unknown lane family '") + family + "'");
}

json table_json(const std::vector<CaseOutcome>& rows, bool& all_ok) {
    json out = json::array();
    for (const auto& o : rows) {
        all_ok = all_ok && o.ok;
        out.push_back({{"label", o.label},
                       {"upper", o.upper.nullity},
                       {"lower", o.lower.nullity},
                       {"certificate", o.certificate},
                       {"ok", o.ok}});
    }
    return out;
}

void print_matrix(const std::vector<CaseOutcome>& rows) {
    for (const auto& o : rows)
        std::fprintf(stderr, "%-28s upper %d  lower %d  %-14s %s\n", o.label.c_str(), o.upper.nullity,
                     o.lower.nullity, o.certificate.c_str(), o.ok ? "ok" : "MISMATCH");
}

int cmd_intertwine(const RunConfig& c, const IntertwineArgs& a) {
    check(c);
    const Window w = c.window();
    SolverConfig sc;
    sc.margin = c.margin;
    sc.samples = c.samples;
    sc.seed = c.seed;
    if (a.ansatz == "full")
        sc.ansatz = Ansatz::Full;
    else if (a.ansatz != "band")
        throw InvalidInput("--ansatz is band or full");
    if (a.corner != "upper" && a.corner != "lower") throw InvalidInput("--corner is upper or lower");
    json cfg = c.to_json();

    if (!a.table.empty()) {
        std::vector<CaseOutcome> rows;
        auto run = [&](const std::vector<CaseSpec>& cases) {
            for (const auto& cs : cases) rows.push_back(cross_family_nullity(cs, sc));
        };
        const bool all = a.table == "all";
        if (!all && a.table != "continuous" && a.table != "mixed" && a.table != "foursum")
            throw InvalidInput("--table is continuous, mixed, foursum or all");
        if (all || a.table == "continuous") {
            GridParams g;
            run(continuous_grid(g, w));
            g.s2 = -g.s1;
            auto ex = continuous_grid(g, w);
            for (auto& cs : ex) cs.label += " [s2=-s1]";
            run(ex);
        }
        if (all || a.table == "mixed") {
            run(mixed_cases(0.4, cd(0.0, 0.6), 0.2, 2, w));
            run(mixed_cases(1.0, 0.0, 0.0, 2, w));
        }
        if (all || a.table == "foursum") {
            for (double lam : {0.5, 1.0, 1.5}) run(foursum_table(lam, w));
            rows.push_back(cross_family_nullity(p10_case(w), sc));
        }
        bool ok = true;
        cfg["table"] = a.table;
        json result = table_json(rows, ok);
        print_matrix(rows);
        emit_json(c, "intertwine", cfg, {{"cases", result}, {"pass", ok}});
        return ok ? 0 : 1;
    }

    CaseSpec cs;
    if (a.kase == "foursum") {
        auto v = split_numbers(a.params);
        if (v.size() != 5) throw InvalidInput("foursum --params is lambda,a,b,m,p");
        cs = foursum_case(v[0], int(v[1]), int(v[2]), int(v[3]), int(v[4]), w);
    } else if (a.kase == "p10") {
        cs = p10_case(w);
    } else if (a.kase == "mixed") {
        std::vector<CaseOutcome> rows;
        for (const auto& m : mixed_cases(a.lambda, cd(0.0, a.s), a.sigma, a.max_mk, w))
            rows.push_back(cross_family_nullity(m, sc));
        bool ok = true;
        cfg["case"] = {{"kind", "mixed"}, {"lambda", a.lambda}, {"s", a.s}, {"sigma", a.sigma}};
        json result = table_json(rows, ok);
        print_matrix(rows);
        emit_json(c, "intertwine", cfg, {{"cases", result}, {"pass", ok}});
        return ok ? 0 : 1;
    } else if (a.kase.size() == 3 && a.kase[1] == '-') {
        auto [d1, d2] = split_pair(a.diag);
        auto [pi1, t1] = lane_for(a.kase[0], d1, a, w);
        auto [pi2, t2] = lane_for(a.kase[2], d2, a, w);
        cs = {a.kase + " " + a.diag, pi1, pi2, t1, t2};
    } else {
        throw InvalidInput("unknown --case '" + a.kase + "' (P-P, C-C, C-P, P-C, mixed, foursum, p10)");
    }
    if (a.expect >= 0) {
        (a.corner == "upper" ? cs.expect_upper : cs.expect_lower) = a.expect;
        cs.expect_reducible = false;
    }
    auto o = cross_family_nullity(cs, sc);
    const auto& rep = a.corner == "upper" ? o.upper : o.lower;
    const bool pass = a.expect >= 0 ? rep.nullity == a.expect : o.ok;
    cfg["case"] = {{"label", cs.label}, {"pi1", describe(cs.pi1)}, {"pi2", describe(cs.pi2)},
                   {"corner", a.corner}, {"ansatz", a.ansatz}, {"expect", a.expect}};
    json result = to_json(o);
    if (a.basis) result["basis"] = to_json(rep, true)["basis"];
    result["pass"] = pass;
    emit_json(c, "intertwine", cfg, result);
    const std::string dir = out_dir(c);
    if (!dir.empty() && rep.nullity > 0) {
        std::ofstream f(std::filesystem::path(dir) / "intertwine_band.csv");
        write_band_csv(f, rep.basis[0]);
    }
    return pass ? 0 : 1;
}

int cmd_classify(const RunConfig& c, const std::string& p1, const std::string& p2) {
    check(c);
    auto a = parse_params(p1), b = parse_params(p2);
    auto v = equivalent(a, b, c.window(), c.margin);
    json cfg = c.to_json();
    cfg["p1"] = to_string(a);
    cfg["p2"] = to_string(b);
    json result = to_json(v);
    result["verdict"] = v.equivalent ? "equivalent" : "inequivalent";
    emit_json(c, "classify", cfg, result);
    return v.consistent ? 0 : 1;
}

int cmd_fingerprint(const RunConfig& c, const std::string& p) {
    check(c);
    auto fp = fingerprint(parse_params(p), c.window(), c.margin);
    std::ostringstream os;
    write_fingerprint_csv(os, fp);
    emit(c, "fingerprint.csv", os.str());
    return 0;
}

int cmd_selftest(const RunConfig& c) {
    if (c.tier != "fast" && c.tier != "strict") throw InvalidInput("--tier is fast or strict");
    auto results = run_acceptance(c.tier == "strict" ? Tier::Strict : Tier::Fast, [](const CriterionResult& r) {
        std::fprintf(stderr, "%s [%d] %s: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                     r.detail.c_str(), r.seconds);
    });
    json arr = json::array();
    bool ok = true;
    for (const auto& r : results) {
        arr.push_back(to_json(r));
        ok = ok && r.pass;
    }
    emit_json(c, "selftest", c.to_json(), {{"criteria", arr}, {"pass", ok}});
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Homogeneous 2-by-2 block shifts: construction and numerical verification"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--window", cfg.half, "window half-width N, indices [-N, N]");
    app.add_option("--margin", cfg.margin, "interior margin for all checks");
    app.add_option("--samples", cfg.samples, "group samples for homogeneity and intertwiners");
    app.add_option("--seed", cfg.seed, "sample seed");
    app.add_option("--tier", cfg.tier, "tolerance tier: fast (1e-6) or strict (1e-8)");
    app.add_option("--out", cfg.out, "output directory (overrides HSHIFT_OUT_DIR)");

    FamilyArgs fam;
    std::string shift, repr = "principal";
    double sigma = 0.2, perturb = 0.0;
    auto* hom = app.add_subcommand("homogeneity", "check phi(T) = pi(phi)* T pi(phi) on sampled elements");
    hom->add_option("--family", fam.family, "C, P or P0");
    hom->add_option("--params", fam.params, "C:a,b,alpha | P:lambda,Im s,alpha | P0:lambda,alpha");
    hom->add_option("--shift", shift, "scalar shift: B, Bs or Tab");
    hom->add_option("--repr", repr, "principal or complementary (with --shift)");
    hom->add_option("--lambda", fam.lambda);
    hom->add_option("--s", fam.s, "imaginary part of s");
    hom->add_option("--sigma", sigma);
    hom->add_option("--alpha", fam.alpha);
    hom->add_option("--a", fam.a);
    hom->add_option("--b", fam.b);
    hom->add_option("--perturb", perturb, "add to the weight e_0 -> e_1 of lane 1");

    IntertwineArgs ia;
    auto* itw = app.add_subcommand("intertwine", "solve for the off-diagonal block of a homogeneous operator");
    itw->add_option("--case", ia.kase, "P-P, C-C, C-P, P-C, mixed, foursum or p10");
    itw->add_option("--diag", ia.diag, "diagonal shifts, e.g. Bs,B (P lanes) or T,T (C lanes)");
    itw->add_option("--params", ia.params, "foursum: lambda,a,b,m,p");
    itw->add_option("--table", ia.table, "continuous, mixed, foursum or all");
    itw->add_option("--lambda", ia.lambda);
    itw->add_option("--s", ia.s, "imaginary part of s");
    itw->add_option("--sigma", ia.sigma);
    itw->add_option("--max-mk", ia.max_mk, "mixed: largest m and k");
    itw->add_option("--expect", ia.expect, "expected nullity in the chosen corner");
    itw->add_option("--corner", ia.corner, "upper or lower");
    itw->add_option("--ansatz", ia.ansatz, "band or full");
    itw->add_flag("--basis", ia.basis, "include the null-space basis in the report");

    std::string p1, p2;
    auto* cls = app.add_subcommand("classify", "decide unitary equivalence of two family members");
    cls->add_option("p1", p1)->required();
    cls->add_option("p2", p2)->required();

    std::string fp;
    auto* fpc = app.add_subcommand("fingerprint", "gamma_n = tr(T_n* T_n) - 2 in descending order, as CSV");
    fpc->add_option("params", fp)->required();

    auto* st = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (hom->parsed()) {
            if (shift.empty() && fam.family.empty() && fam.params.empty())
                throw InvalidInput("homogeneity needs --family, --params or --shift");
            return cmd_homogeneity(cfg, fam, shift, repr, sigma, perturb);
        }
        if (itw->parsed()) {
            if (ia.kase.empty() && ia.table.empty()) throw InvalidInput("intertwine needs --case or --table");
            return cmd_intertwine(cfg, ia);
        }
        if (cls->parsed()) return cmd_classify(cfg, p1, p2);
        if (fpc->parsed()) return cmd_fingerprint(cfg, fp);
        if (st->parsed()) return cmd_selftest(cfg);
    } catch (const IllSeparated& e) {
        std::cerr << "hshift: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hshift: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "hshift: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "hshift: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hshift: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
