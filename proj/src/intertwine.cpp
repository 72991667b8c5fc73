#include "hshift/intertwine.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

namespace hs {

namespace {

constexpr double kLevelTol = 1e-9;

Lane single_lane(const ReprSpec& spec) {
    auto lanes = lanes_of(spec);
    if (lanes.size() != 1) throw std::invalid_argument("intertwiner: each side must be a single lane");
    return lanes.front();
}

bool in_band(const Lane& target, int t, const Lane& source, int n) {
    return lane_has_index(target, t) && lane_has_index(source, n) &&
           std::abs(rotation_level(target, t) - rotation_level(source, n) - 1.0) < kLevelTol;
}

// Sparse equation rows in compressed form.
struct Rows {
    std::vector<int> start{0};
    std::vector<int> col;
    std::vector<cd> val;

    void push(int c, cd v) {
        col.push_back(c);
        val.push_back(v);
    }
    void close() { start.push_back(static_cast<int>(col.size())); }
    long count() const { return static_cast<long>(start.size()) - 1; }
};

double row_residual(const Rows& rows, const Eigen::VectorXcd& v) {
    double acc = 0.0;
    for (long r = 0; r < rows.count(); ++r) {
        cd s = 0.0;
        for (int k = rows.start[r]; k < rows.start[r + 1]; ++k) s += rows.val[k] * v(rows.col[k]);
        acc += std::norm(s);
    }
    return std::sqrt(acc);
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void join(int x, int y) { parent[find(x)] = find(y); }
};

int part_of(const Lane& lane, int n) { return lane.kind == Lane::Kind::Pair && n < 0 ? 1 : 0; }

Eigen::Matrix2cd section(const WindowedOperator& t, int n) {
    Eigen::Matrix2cd s;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) s(r, c) = t(r, n + 1, c, n);
    return s;
}

bool orthogonal_columns(const Eigen::Matrix2cd& x) {
    double n0 = x.col(0).norm(), n1 = x.col(1).norm();
    if (n0 == 0.0 || n1 == 0.0) return false;
    return std::abs(x.col(0).dot(x.col(1))) <= 1e-9 * n0 * n1;
}

Eigen::Matrix2cd normalized(Eigen::Matrix2cd x) {
    x.col(0).normalize();
    x.col(1).normalize();
    return x;
}

std::string mk_label(const char* head, double lambda, int m, int k) {
    std::ostringstream os;
    os << head << " lambda=" << lambda << " m=" << m << " k=" << k;
    return os.str();
}

}  // namespace

std::vector<BandEntry> shift_structure(const ReprSpec& pi1, const ReprSpec& pi2, const Window& w) {
    Lane l1 = single_lane(pi1), l2 = single_lane(pi2);
    std::vector<BandEntry> out;
    for (int n = w.lo; n <= w.hi; ++n)
        for (int t = w.lo; t <= w.hi; ++t)
            if (in_band(l1, t, l2, n)) out.push_back({n, t});
    return out;
}

IntertwinerProblem make_problem(const ReprSpec& pi1, const ReprSpec& pi2, const WindowedOperator& t1,
                                const WindowedOperator& t2, const SolverConfig& cfg, Corner corner) {
    return {pi1, pi2, t1, t2, sample_group(cfg.samples, cfg.seed), cfg.margin, cfg.ansatz, corner};
}

namespace {

// Representation matrices of pi1 and pi2 at each sample.
struct SampleMatrices {
    std::vector<Mat> m1, m2;
};

SampleMatrices sample_matrices(const IntertwinerProblem& p) {
    SampleMatrices out;
    for (const auto& g : p.samples) {
        out.m1.push_back(repr_matrix(p.pi1, g, p.t1.window).m);
        out.m2.push_back(repr_matrix(p.pi2, g, p.t1.window).m);
    }
    return out;
}

IntertwinerReport solve_core(const IntertwinerProblem& p, const SampleMatrices& mats, double rank_threshold,
                             double min_gap) {
    const bool upper = p.corner == Corner::Upper;
    const ReprSpec& spec_a = upper ? p.pi1 : p.pi2;  // rows of S
    const ReprSpec& spec_b = upper ? p.pi2 : p.pi1;  // columns of S
    const WindowedOperator& ta = upper ? p.t1 : p.t2;
    const WindowedOperator& tb = upper ? p.t2 : p.t1;
    if (ta.lanes != 1 || tb.lanes != 1) throw std::invalid_argument("intertwiner: diagonal operators must be single-lane");
    const Window w = ta.window;
    if (tb.window.lo != w.lo || tb.window.hi != w.hi) throw std::invalid_argument("intertwiner: window mismatch");
    if (p.samples.empty()) throw std::invalid_argument("intertwiner: no samples");
    if (2 * p.margin >= w.size()) throw std::invalid_argument("intertwiner: margin too wide");
    const Lane la = single_lane(spec_a), lb = single_lane(spec_b);
    const int lo = w.lo, hi = w.hi, W = w.size();
    auto interior = [&](int n) { return n >= lo + p.margin && n <= hi - p.margin; };

    // unknown positions (t, n): S e_n has a component along e_t
    std::vector<std::pair<int, int>> unknowns;
    for (int t = lo; t <= hi; ++t)
        for (int n = lo; n <= hi; ++n) {
            bool keep = p.ansatz == Ansatz::Band
                            ? in_band(la, t, lb, n) && (interior(t) || interior(n))
                            : interior(t) && interior(n) && lane_has_index(la, t) && lane_has_index(lb, n);
            if (keep) unknowns.emplace_back(t, n);
        }
    const int U = static_cast<int>(unknowns.size());

    // band partners, searched well past the window so a missing one means none exists
    auto partner_row = [&](int i) -> std::optional<int> {
        for (int n = lo - W; n <= hi + W; ++n)
            if (in_band(la, i, lb, n)) return n;
        return std::nullopt;
    };
    auto partner_col = [&](int j) -> std::optional<int> {
        for (int t = lo - W; t <= hi + W; ++t)
            if (in_band(la, t, lb, j)) return t;
        return std::nullopt;
    };
    std::vector<char> row_exact(W, 1), col_exact(W, 1);
    if (p.ansatz == Ansatz::Full)
        for (int n = lo; n <= hi; ++n) {
            auto r = partner_row(n), c = partner_col(n);
            row_exact[w.pos(n)] = !r || interior(*r);
            col_exact[w.pos(n)] = !c || interior(*c);
        }

    std::vector<std::vector<int>> by_row(W), by_col(W);
    for (int u = 0; u < U; ++u) {
        by_row[w.pos(unknowns[u].first)].push_back(u);
        by_col[w.pos(unknowns[u].second)].push_back(u);
    }

    Rows rows;
    Mat gram = Mat::Zero(U, U);
    const Eigen::SparseMatrix<cd> tas = ta.m.sparseView(), tbs = tb.m.sparseView();
    for (size_t k = 0; k < p.samples.size(); ++k) {
        const Mobius& g = p.samples[k];
        const bool rot = is_rotation(g);
        const Mat& pa = upper ? mats.m1[k] : mats.m2[k];
        const Mat& pb = upper ? mats.m2[k] : mats.m1[k];
        // L(S) = S (pb - conj(a) pb tb) - (e^{i theta} pa + conj(a) ta pa) S
        Mat left = std::polar(1.0, g.theta) * pa + std::conj(g.a) * (tas * pa);
        Mat right = pb - std::conj(g.a) * (tbs.transpose() * pb.transpose()).transpose();
        for (int i = lo + p.margin; i <= hi - p.margin; ++i) {
            if (!lane_has_index(la, i) || (!rot && !row_exact[w.pos(i)])) continue;
            for (int j = lo + p.margin; j <= hi - p.margin; ++j) {
                if (!lane_has_index(lb, j) || (!rot && !col_exact[w.pos(j)])) continue;
                int begin = static_cast<int>(rows.col.size());
                for (int u : by_row[w.pos(i)]) rows.push(u, right(w.pos(unknowns[u].second), w.pos(j)));
                for (int u : by_col[w.pos(j)]) rows.push(u, -left(w.pos(i), w.pos(unknowns[u].first)));
                rows.close();
                int end = static_cast<int>(rows.col.size());
                for (int x = begin; x < end; ++x)
                    for (int y = begin; y < end; ++y)
                        gram(rows.col[x], rows.col[y]) += std::conj(rows.val[x]) * rows.val[y];
            }
        }
    }

    IntertwinerReport rep;
    rep.unknowns = U;
    rep.equations = rows.count();
    if (U == 0) {
        rep.gap_ratio = std::numeric_limits<double>::infinity();
        return rep;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double smax = std::sqrt(std::max(ev(U - 1), 0.0));
    if (smax == 0.0) throw IllSeparated("intertwiner: equations carry no information");
    for (int k = 0; k < U; ++k) rep.singular_values.push_back(std::sqrt(std::max(ev(k), 0.0)) / smax);
    while (rep.nullity < U && rep.singular_values[rep.nullity] <= rank_threshold) ++rep.nullity;

    for (int k = 0; k < rep.nullity; ++k) {
        Eigen::VectorXcd v = es.eigenvectors().col(k);
        double r = row_residual(rows, v) / smax;
        rep.singular_values[k] = r;
        rep.residuals.push_back(r);
        rep.largest_null = std::max(rep.largest_null, r);
        Eigen::Index big = 0;
        v.cwiseAbs().maxCoeff(&big);
        v *= std::conj(v(big)) / std::abs(v(big));
        WindowedOperator s{w, 1, Mat::Zero(W, W)};
        for (int u = 0; u < U; ++u) s.m(w.pos(unknowns[u].first), w.pos(unknowns[u].second)) = v(u);
        rep.basis.push_back(std::move(s));
    }
    if (rep.nullity < U) rep.smallest_retained = rep.singular_values[rep.nullity];
    if (rep.nullity == 0)
        rep.gap_ratio = rep.smallest_retained / rank_threshold;
    else if (rep.nullity == U)
        rep.gap_ratio = std::numeric_limits<double>::infinity();
    else
        rep.gap_ratio = rep.smallest_retained / std::max(rep.largest_null, std::numeric_limits<double>::min());
    if (rep.gap_ratio < min_gap) {
        std::ostringstream os;
        os << "intertwiner: ill-separated spectrum at nullity " << rep.nullity << " (gap " << rep.gap_ratio << ")";
        throw IllSeparated(os.str());
    }
    return rep;
}

}  // namespace

IntertwinerReport solve_intertwiner(const IntertwinerProblem& p, double rank_threshold, double min_gap) {
    return solve_core(p, sample_matrices(p), rank_threshold, min_gap);
}

std::vector<cd> recursion_weights(double lambda, cd s, cd alpha, const Window& w) {
    std::vector<cd> out;
    for (int n = w.lo; n <= w.hi; ++n) out.push_back(alpha * (weight_Bs(lambda, s, n) - 1.0));
    return out;
}

double band_cosine_distance(const WindowedOperator& s, const std::vector<cd>& weights, int lo, int hi) {
    cd dot = 0.0;
    double nx = 0.0, ny = 0.0;
    for (int n = lo; n <= hi; ++n) {
        cd x = s(0, n + 1, 0, n), y = weights.at(s.window.pos(n));
        dot += std::conj(x) * y;
        nx += std::norm(x);
        ny += std::norm(y);
    }
    if (nx == 0.0 || ny == 0.0) return 1.0;
    return 1.0 - std::abs(dot) / std::sqrt(nx * ny);
}

int part_components(const ReprSpec& pi1, const ReprSpec& pi2, const WindowedOperator& t1,
                    const WindowedOperator& t2, const WindowedOperator& s, Corner corner) {
    const Lane l1 = single_lane(pi1), l2 = single_lane(pi2);
    const Window& w = t1.window;
    DisjointSets ds(4);
    std::vector<char> used(4, 0);
    for (int n = w.lo; n <= w.hi; ++n) {
        if (lane_has_index(l1, n)) used[part_of(l1, n)] = 1;
        if (lane_has_index(l2, n)) used[2 + part_of(l2, n)] = 1;
    }
    auto scan = [&](const Mat& m, double rel, auto&& link) {
        double top = m.cwiseAbs().maxCoeff();
        if (top == 0.0) return;
        for (int i = w.lo; i <= w.hi; ++i)
            for (int j = w.lo; j <= w.hi; ++j)
                if (std::abs(m(w.pos(i), w.pos(j))) > rel * top) link(i, j);
    };
    scan(t1.m, 1e-12, [&](int i, int j) { ds.join(part_of(l1, i), part_of(l1, j)); });
    scan(t2.m, 1e-12, [&](int i, int j) { ds.join(2 + part_of(l2, i), 2 + part_of(l2, j)); });
    if (corner == Corner::Upper)
        scan(s.m, 1e-8, [&](int i, int j) { ds.join(part_of(l1, i), 2 + part_of(l2, j)); });
    else
        scan(s.m, 1e-8, [&](int i, int j) { ds.join(2 + part_of(l2, i), part_of(l1, j)); });
    int count = 0;
    for (int x = 0; x < 4; ++x)
        if (used[x] && ds.find(x) == x) ++count;
    return count;
}

bool sections_split(const WindowedOperator& t, int lo, int hi) {
    if (t.lanes != 2) throw std::invalid_argument("sections_split: expected a two-lane operator");
    if (lo >= hi) throw std::invalid_argument("sections_split: empty range");
    std::vector<Eigen::Matrix2cd> sec;
    int n0 = lo;
    double spread = -1.0;
    for (int n = lo; n < hi; ++n) {
        sec.push_back(section(t, n));
        const Eigen::Matrix2cd& x = sec.back();
        if (std::abs(x.determinant()) < 1e-12 * std::max(1.0, x.squaredNorm())) return false;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(x.adjoint() * x, Eigen::EigenvaluesOnly);
        double d = (es.eigenvalues()(1) - es.eigenvalues()(0)) / es.eigenvalues()(1);
        if (d > spread) spread = d, n0 = n;
    }
    Eigen::Matrix2cd start = Eigen::Matrix2cd::Identity();
    if (spread > 1e-10) {
        const Eigen::Matrix2cd& x = sec[n0 - lo];
        start = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(x.adjoint() * x).eigenvectors();
    }
    Eigen::Matrix2cd frame = start;
    for (int n = n0; n < hi; ++n) {
        Eigen::Matrix2cd x = sec[n - lo] * frame;
        if (!orthogonal_columns(x)) return false;
        frame = normalized(x);
    }
    frame = start;
    for (int n = n0 - 1; n >= lo; --n) {
        Eigen::Matrix2cd x = sec[n - lo].inverse() * frame;
        if (!orthogonal_columns(x)) return false;
        frame = normalized(x);
    }
    return true;
}

CaseOutcome cross_family_nullity(const CaseSpec& c, const SolverConfig& cfg) {
    CaseOutcome out;
    out.label = c.label;
    const Window& w = c.t1.window;
    std::vector<std::string> certs;
    auto corner_reducible = [&](const IntertwinerReport& rep, Corner corner) {
        WindowedOperator s{w, 1, Mat::Zero(w.size(), w.size())};
        for (size_t k = 0; k < rep.basis.size(); ++k) s.m += std::polar(1.0, 0.7 * (k + 1)) * rep.basis[k].m;
        if (part_components(c.pi1, c.pi2, c.t1, c.t2, s, corner) > 1) {
            certs.push_back("parts");
            return true;
        }
        int n = w.size();
        WindowedOperator t{w, 2, Mat::Zero(2 * n, 2 * n)};
        t.m.topLeftCorner(n, n) = c.t1.m;
        t.m.bottomRightCorner(n, n) = c.t2.m;
        if (corner == Corner::Upper)
            t.m.topRightCorner(n, n) = s.m;
        else
            t.m.bottomLeftCorner(n, n) = s.m;
        if (sections_split(t, w.lo + cfg.margin, w.hi - cfg.margin)) {
            certs.push_back("sections");
            return true;
        }
        certs.push_back("none");
        return false;
    };
    auto prob = make_problem(c.pi1, c.pi2, c.t1, c.t2, cfg);
    const SampleMatrices mats = sample_matrices(prob);
    for (Corner corner : {Corner::Upper, Corner::Lower}) {
        prob.corner = corner;
        auto rep = solve_core(prob, mats, cfg.threshold, cfg.min_gap);
        bool red = corner_reducible(rep, corner);
        if (corner == Corner::Upper) {
            out.upper = std::move(rep);
            out.reducible_upper = red;
        } else {
            out.lower = std::move(rep);
            out.reducible_lower = red;
        }
    }
    out.certificate = certs[0] + "/" + certs[1];
    out.ok = (c.expect_upper < 0 || c.expect_upper == out.upper.nullity) &&
             (c.expect_lower < 0 || c.expect_lower == out.lower.nullity) &&
             (!c.expect_reducible || (out.reducible_upper && out.reducible_lower));
    return out;
}

std::vector<CaseSpec> continuous_grid(const GridParams& g, const Window& w) {
    const double lam = g.lambda;
    auto c1 = complementary(lam, g.sigma1), c2 = complementary(lam, g.sigma2);
    auto p1 = principal(lam, g.s1), p2 = principal(lam, g.s2);
    auto fwd = [&](double sig) { return make_Tab(0.5 * (1 + lam) - sig, 0.5 * (1 + lam) + sig, w); };
    auto cmp = [&](double sig) { return make_Tab(0.5 * (1 + lam) + sig, 0.5 * (1 + lam) - sig, w); };
    auto b = make_B(w), bs1 = make_Bs(lam, g.s1, w), bs2 = make_Bs(lam, g.s2, w);
    const int exc = std::abs(g.s1 + g.s2) < 1e-12 ? 1 : 0;
    std::vector<CaseSpec> out = {
        {"C-C fwd,fwd", c1, c2, fwd(g.sigma1), fwd(g.sigma2), 0, 0},
        {"C-C cmp,fwd", c1, c2, cmp(g.sigma1), fwd(g.sigma2), 0, 0},
        {"C-C fwd,cmp", c1, c2, fwd(g.sigma1), cmp(g.sigma2), 0, 0},
        {"C-C cmp,cmp", c1, c2, cmp(g.sigma1), cmp(g.sigma2), 0, 0},
        {"C-P fwd,B", c1, p1, fwd(g.sigma1), b, 0, 0},
        {"C-P cmp,B", c1, p1, cmp(g.sigma1), b, 0, 0},
        {"C-P fwd,Bs", c1, p1, fwd(g.sigma1), bs1, 0, 0},
        {"C-P cmp,Bs", c1, p1, cmp(g.sigma1), bs1, 0, 0},
        {"P-P Bs,B", p1, p2, bs1, b, 0, 0},
        {"P-P B,Bs", p1, p2, b, bs2, 0, 0},
        {"P-P Bs,Bs", p1, p2, bs1, bs2, exc, exc},
        {"P-P B,B", p1, p2, b, b, exc, exc},
    };
    return out;
}

std::vector<CaseSpec> mixed_cases(double lambda, cd s, double sigma, int max_mk, const Window& w) {
    const bool at_one = std::abs(lambda - 1.0) < 1e-12;
    const int expect = at_one ? -1 : 0;
    std::vector<std::pair<std::string, std::pair<ReprSpec, WindowedOperator>>> conts;
    auto p = principal(lambda, s);
    conts.push_back({"P(B)", {p, make_B(w)}});
    if (s != cd(0.0)) conts.push_back({"P(Bs)", {p, make_Bs(lambda, s, w)}});
    if (sigma > 0 && sigma < 0.5 * (1 - std::abs(lambda))) {
        auto c = complementary(lambda, sigma);
        double a = 0.5 * (1 + lambda) - sigma, b = 0.5 * (1 + lambda) + sigma;
        conts.push_back({"C(fwd)", {c, make_Tab(a, b, w)}});
        conts.push_back({"C(cmp)", {c, make_Tab(b, a, w)}});
    }
    std::vector<CaseSpec> out;
    for (int m = 0; m <= max_mk; ++m)
        for (int k = 0; k <= max_mk; ++k) {
            double ph = lambda + 2 * m, pa = 2 - lambda + 2 * k;
            if (ph <= 0 || pa <= 0) continue;
            auto d = discrete_pair(lambda, m, k);
            auto td = make_discrete_shift(ph, pa, w);
            for (const auto& [name, ct] : conts)
                out.push_back({mk_label((name + "-D").c_str(), lambda, m, k), ct.first, d, ct.second, td, expect,
                               expect, true});
        }
    return out;
}

CaseSpec foursum_case(double lambda, int a, int b, int m, int p, const Window& w) {
    if (a < 0 || b < 0 || m < 0 || p < 0) throw std::invalid_argument("foursum: a, b, m, p must be non-negative");
    std::ostringstream os;
    os << "DD lambda=" << lambda << " a,b,m,p=" << a << "," << b << "," << m << "," << p;
    return {os.str(),
            discrete_pair(lambda, a, b),
            discrete_pair(lambda, m, p),
            make_discrete_shift(lambda + 2 * a, 2 - lambda + 2 * b, w),
            make_discrete_shift(lambda + 2 * m, 2 - lambda + 2 * p, w),
            -1,
            -1,
            true};
}

std::vector<CaseSpec> foursum_table(double lambda, const Window& w) {
    static constexpr int patterns[][4] = {{2, 1, 1, 2}, {0, 1, 0, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0},
                                          {0, 0, 1, 1}, {1, 1, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 0, 0}};
    std::vector<CaseSpec> out;
    for (const auto& q : patterns) out.push_back(foursum_case(lambda, q[0], q[1], q[2], q[3], w));
    return out;
}

CaseSpec p10_case(const Window& w) {
    auto p = principal(1.0, 0.0);
    return {"P10-P10 B,B", p, p, make_B(w), make_B(w), 1, 1, true};
}

}  // namespace hs
