#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hshift/mobius.hpp"

namespace hs {

using Mat = Eigen::MatrixXcd;

double spectral_norm(const Mat& m);

struct Window {
    int lo = 0, hi = 0;
    int size() const { return hi - lo + 1; }
    int pos(int n) const { return n - lo; }
    bool contains(int n) const { return n >= lo && n <= hi; }
};

Window make_window(int lo, int hi);
inline Window symmetric_window(int half) { return make_window(-half, half); }

// Truncated operator on `lanes` stacked copies of l2(window); basis order is
// (e_lo^1 .. e_hi^1, e_lo^2 .. e_hi^2, ...).
struct WindowedOperator {
    Window window;
    int lanes = 1;
    Mat m;

    int dim() const { return lanes * window.size(); }
    int index(int lane, int n) const { return lane * window.size() + window.pos(n); }
    cd operator()(int lane_r, int n_r, int lane_c, int n_c) const {
        return m(index(lane_r, n_r), index(lane_c, n_c));
    }
};

using WeightFn = std::function<cd(int)>;

cd weight_Bs(double lambda, cd s, int n);
double weight_Tab(double a, double b, int n);
double weight_S(double lambda, int n);

WindowedOperator make_shift(const Window& w, const WeightFn& weight);
WindowedOperator make_B(const Window& w);
WindowedOperator make_Bs(double lambda, cd s, const Window& w);
WindowedOperator make_Tab(double a, double b, const Window& w);
WindowedOperator make_Slambda(double lambda, const Window& w);
WindowedOperator make_block(const WindowedOperator& t1, const WindowedOperator& s,
                            const WindowedOperator& t2);
WindowedOperator make_Ulambdas(double lambda, cd s, const Window& w);
// Multiplication by z on D+_{holo} (indices n >= 0) and D-_{anti} (n <= -1,
// standing for conj(z)^{-n-1}); `junction` is the weight e_{-1} -> e_0.
WindowedOperator make_discrete_shift(double holo, double anti, const Window& w, cd junction = 0.0);

// Weight of e_n -> e_{n+1} inside lane `lane` (n < hi).
cd shift_weight(const WindowedOperator& t, int n, int lane = 0);
std::vector<cd> band(const WindowedOperator& t, int lane_r = 0, int lane_c = 0);
bool is_weighted_shift(const WindowedOperator& t, double tol = 0.0);

struct CParams {
    double a, b, alpha;
};
struct PParams {
    double lambda;
    cd s;
    double alpha;
};
struct P0Params {
    double lambda, alpha;
};
using BlockShiftParams = std::variant<CParams, PParams, P0Params>;

void validate(const BlockShiftParams& p);
double multiplier_lambda(const BlockShiftParams& p);
std::string family_name(const BlockShiftParams& p);
std::string to_string(const BlockShiftParams& p);
// "C:a,b,alpha" | "P:lambda,Im s,alpha" | "P0:lambda,alpha"
BlockShiftParams parse_params(std::string_view text);

WindowedOperator make_family(const BlockShiftParams& p, const Window& w);

WindowedOperator scaled(const WindowedOperator& t, cd c);
WindowedOperator difference(const WindowedOperator& x, const WindowedOperator& y);

}  // namespace hs
