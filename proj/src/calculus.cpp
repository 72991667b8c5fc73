#include "hshift/calculus.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hs {

WindowedOperator mobius_of_operator(const WindowedOperator& t, const Mobius& g) {
    const int d = t.dim();
    Mat id = Mat::Identity(d, d);
    Mat res = id - std::conj(g.a) * t.m;
    Eigen::VectorXd sv = res.bdcSvd().singularValues();
    if (sv(d - 1) < 1e-10 * std::max(1.0, spectral_norm(t.m)))
        throw std::domain_error("mobius_of_operator: singular resolvent");
    WindowedOperator out = t;
    out.m = std::polar(1.0, g.theta) * res.partialPivLu().solve(t.m - g.a * id);
    return out;
}

namespace {

double residual_with_norm(const WindowedOperator& t, const Eigen::SparseMatrix<cd>& ts, double t_norm,
                          const ReprSpec& spec, const Mobius& g, int margin) {
    if (2 * margin >= t.window.size()) throw std::invalid_argument("margin too wide for window");
    WindowedOperator p = repr_matrix(spec, g, t.window);
    if (p.lanes != t.lanes) throw std::invalid_argument("operator and representation lane counts differ");
    // e^{i theta} P (T - a) - T P (1 - conj(a) T), with T applied sparsely
    Mat pt = (ts.transpose() * p.m.transpose()).transpose();
    Mat r = std::polar(1.0, g.theta) * (pt - g.a * p.m) - ts * (p.m - std::conj(g.a) * pt);

    std::vector<int> keep;
    for (int l = 0; l < t.lanes; ++l)
        for (int n = t.window.lo + margin; n <= t.window.hi - margin; ++n) keep.push_back(t.index(l, n));
    Mat inner(keep.size(), keep.size());
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j) inner(i, j) = r(keep[i], keep[j]);
    return spectral_norm(inner) / (t_norm + 1.0);
}

}  // namespace

double homogeneity_residual(const WindowedOperator& t, const ReprSpec& spec, const Mobius& g, int margin) {
    return residual_with_norm(t, t.m.sparseView(), spectral_norm(t.m), spec, g, margin);
}

std::vector<Mobius> sample_group(int n, unsigned long long seed) {
    if (n < 1) throw std::invalid_argument("sample_group: need at least one sample");
    static constexpr double radii[] = {0.2, 0.35, 0.5};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<Mobius> out;
    int k = 0;
    for (int i = 0; i < n; ++i) {
        double theta = angle(rng);
        if (i % 3 == 0) {
            out.push_back(rotation(theta));
        } else {
            double phase = angle(rng);
            out.push_back(make_mobius(theta, std::polar(radii[k++ % 3], phase)));
        }
    }
    return out;
}

HomogeneityReport verify_homogeneous(const WindowedOperator& t, const ReprSpec& spec, int n_samples,
                                     unsigned long long seed, double tol, int margin) {
    HomogeneityReport rep;
    rep.window = t.window;
    rep.margin = margin;
    rep.tol = tol;
    rep.samples = sample_group(n_samples, seed);
    const Eigen::SparseMatrix<cd> ts = t.m.sparseView();
    const double t_norm = spectral_norm(t.m);
    for (const auto& g : rep.samples) rep.residuals.push_back(residual_with_norm(t, ts, t_norm, spec, g, margin));
    rep.max_residual = *std::max_element(rep.residuals.begin(), rep.residuals.end());
    rep.pass = rep.max_residual <= tol;
    return rep;
}

}  // namespace hs
