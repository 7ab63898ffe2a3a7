#include "evt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evt {

namespace {

// 15-point Lobatto rule on [-1,1]; exact through degree 27.
constexpr int kRuleSize = 15;
const double kNodes[kRuleSize] = {
    -1.0,
    -0.9652459265038385727959,
    -0.8850820442229762988254,
    -0.7635196899518152007041,
    -0.6062532054698457111235,
    -0.4206380547136724809219,
    -0.2153539553637942382257,
    0.0,
    0.2153539553637942382257,
    0.4206380547136724809219,
    0.6062532054698457111235,
    0.7635196899518152007041,
    0.8850820442229762988254,
    0.9652459265038385727959,
    1.0,
};
const double kWeights[kRuleSize] = {
    0.009523809523809523809524,
    0.05802989302860124909688,
    0.1016600703257180676037,
    0.1405116998024281094604,
    0.1727896472536009490521,
    0.1969872359646133560925,
    0.2119735859268209201274,
    0.217048116348815649515,
    0.2119735859268209201274,
    0.1969872359646133560925,
    0.1727896472536009490521,
    0.1405116998024281094604,
    0.1016600703257180676037,
    0.05802989302860124909688,
    0.009523809523809523809524,
};

double safe_eval(const Fn& f, double x) {
    if (!std::isfinite(x)) return 0.0;
    double v = f(x);
    return std::isfinite(v) ? v : 0.0;
}

double rule15(const Fn& f, double a, double b) {
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < kRuleSize; ++i)
        s += kWeights[i] * safe_eval(f, c + h * kNodes[i]);
    return s * h;
}

struct Panel {
    double a = 0.0, b = 0.0;
    double qL = 0.0, qR = 0.0; // rule on the two halves; qL+qR is the panel value
    double err = 0.0;          // |whole-panel rule - (qL+qR)|
    int depth = 0;
};

// Max-heap on err; leftmost panel wins ties so the refinement order is total.
struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;
    }
};

Panel make_panel(const Fn& f, double a, double b, double whole, int depth) {
    Panel p;
    p.a = a;
    p.b = b;
    p.depth = depth;
    double m = 0.5 * (a + b);
    if (!(m > a) || !(m < b)) {
        // interval no longer splittable in double precision
        p.qL = whole;
        p.qR = 0.0;
        p.err = 0.0;
        return p;
    }
    p.qL = rule15(f, a, m);
    p.qR = rule15(f, m, b);
    p.err = std::fabs(whole - (p.qL + p.qR));
    return p;
}

double fold_point(double x) { // x -> t on [-1,1]
    if (std::isinf(x)) return x > 0 ? 1.0 : -1.0;
    return x / (1.0 + std::fabs(x));
}

} // namespace

double integrate(const Fn& f, double lo, double hi, const QuadratureSpec& spec,
                 const std::vector<double>& breakpoints) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_depth < 1)
        throw DomainError("integrate: bad quadrature spec");
    if (!(lo < hi)) throw DomainError("integrate: lo >= hi");

    Fn g;
    double tlo, thi;
    std::vector<double> cuts;
    if (std::isinf(lo) || std::isinf(hi)) {
        // fold the line through t = x/(1+|x|)
        g = [&f](double t) {
            double at = std::fabs(t);
            if (at >= 1.0) return 0.0;
            double w = 1.0 - at;
            return f(t / w) / (w * w);
        };
        tlo = fold_point(lo);
        thi = fold_point(hi);
        for (double c : breakpoints)
            if (std::isfinite(c)) cuts.push_back(fold_point(c));
        if (tlo < 0.0 && thi > 0.0) cuts.push_back(0.0); // |t| kink
    } else {
        g = f;
        tlo = lo;
        thi = hi;
        cuts = breakpoints;
    }

    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> edges;
    edges.push_back(tlo);
    for (double c : cuts)
        if (c > tlo && c < thi) edges.push_back(c);
    edges.push_back(thi);

    std::vector<Panel> heap;
    heap.reserve(256);
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double whole = rule15(g, edges[i], edges[i + 1]);
        heap.push_back(make_panel(g, edges[i], edges[i + 1], whole, 0));
        std::push_heap(heap.begin(), heap.end(), PanelWorse());
    }

    double total = 0.0, errsum = 0.0;
    for (const Panel& p : heap) {
        total += p.qL + p.qR;
        errsum += p.err;
    }

    int splits = 0;
    for (;;) {
        double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
        if (errsum <= tol) break;
        std::pop_heap(heap.begin(), heap.end(), PanelWorse());
        Panel worst = heap.back();
        heap.pop_back();
        if (worst.err == 0.0) break; // nothing refinable left
        if (worst.depth >= spec.max_depth)
            throw NonConvergence("integrate: max_depth exhausted");
        if (heap.size() > 400000)
            throw NonConvergence("integrate: panel budget exhausted");

        double m = 0.5 * (worst.a + worst.b);
        Panel c1 = make_panel(g, worst.a, m, worst.qL, worst.depth + 1);
        Panel c2 = make_panel(g, m, worst.b, worst.qR, worst.depth + 1);
        total += (c1.qL + c1.qR + c2.qL + c2.qR) - (worst.qL + worst.qR);
        errsum += (c1.err + c2.err) - worst.err;
        heap.push_back(c1);
        std::push_heap(heap.begin(), heap.end(), PanelWorse());
        heap.push_back(c2);
        std::push_heap(heap.begin(), heap.end(), PanelWorse());

        if (++splits % 128 == 0) { // undo accumulation drift
            total = errsum = 0.0;
            for (const Panel& p : heap) {
                total += p.qL + p.qR;
                errsum += p.err;
            }
        }
    }
    return total;
}

double integrate(const Fn& f, double lo, double hi, const QuadratureSpec& spec) {
    return integrate(f, lo, hi, spec, {});
}

double find_root(const Fn& g, double lo, double hi, double tol) {
    if (!(tol >= 0.0)) throw DomainError("find_root: tol < 0");
    if (!(lo <= hi)) throw DomainError("find_root: lo > hi");
    double flo = g(lo);
    double fhi = g(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw BracketError("find_root: g(lo) and g(hi) have the same sign");
    for (int it = 0; it < 600 && (hi - lo) > tol; ++it) {
        double m = 0.5 * (lo + hi);
        if (!(m > lo) || !(m < hi)) break;
        double fm = g(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    return 0.5 * (lo + hi);
}

SupNormResult sup_norm(const Fn& d, double lo, double hi, int grid_points,
                       const Fn& quantile_map) {
    if (grid_points < 2) throw DomainError("sup_norm: grid too small");
    if (!(lo < hi)) throw DomainError("sup_norm: empty interval");

    Fn place = quantile_map;
    if (!place) {
        if (std::isfinite(lo) && std::isfinite(hi)) {
            place = [lo, hi](double p) { return lo + (hi - lo) * p; };
        } else if (!std::isfinite(lo) && !std::isfinite(hi)) {
            place = [](double p) { return std::tan(3.14159265358979323846 * (p - 0.5)); };
        } else if (std::isfinite(lo)) {
            place = [lo](double p) { return lo + p / (1.0 - p); };
        } else {
            place = [hi](double p) { return hi - (1.0 - p) / p; };
        }
    }

    auto mag = [&d](double x) { return std::fabs(safe_eval(d, x)); };

    std::vector<double> xs, vs;
    xs.reserve(grid_points);
    vs.reserve(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        double p = (i + 0.5) / grid_points;
        double x = place(p);
        if (!std::isfinite(x) || x < lo || x > hi) continue;
        xs.push_back(x);
        vs.push_back(mag(x));
    }
    if (xs.empty()) throw DomainError("sup_norm: grid missed the interval");

    // three best grid indices, earlier index winning ties
    const size_t none = static_cast<size_t>(-1);
    size_t top[3] = {0, none, none};
    for (size_t i = 1; i < vs.size(); ++i) {
        if (vs[i] > vs[top[0]]) {
            top[2] = top[1];
            top[1] = top[0];
            top[0] = i;
        } else if (top[1] == none || vs[i] > vs[top[1]]) {
            top[2] = top[1];
            top[1] = i;
        } else if (top[2] == none || vs[i] > vs[top[2]]) {
            top[2] = i;
        }
    }

    SupNormResult best{xs[top[0]], vs[top[0]]};

    const double gr = 0.6180339887498949;
    auto refine = [&](double a, double b) {
        if (!(a < b)) return;
        double c = b - gr * (b - a);
        double e = a + gr * (b - a);
        double fc = mag(c), fe = mag(e);
        for (int it = 0; it < 80; ++it) {
            if (fc < fe) {
                a = c;
                c = e;
                fc = fe;
                e = a + gr * (b - a);
                fe = mag(e);
            } else {
                b = e;
                e = c;
                fe = fc;
                c = b - gr * (b - a);
                fc = mag(c);
            }
            if (!(b - a > 0.0)) break;
        }
        if (fc > best.value) best = {c, fc};
        if (fe > best.value) best = {e, fe};
    };

    for (size_t k = 0; k < 3; ++k) {
        size_t i = top[k];
        if (i == none) continue;
        double a = (i > 0) ? xs[i - 1] : xs[i];
        double b = (i + 1 < xs.size()) ? xs[i + 1] : xs[i];
        refine(std::max(a, lo), std::min(b, hi));
    }
    return best;
}

FitResult fit_loglog(const std::vector<long long>& ns, const std::vector<double>& ys) {
    if (ns.size() != ys.size()) throw DomainError("fit_loglog: length mismatch");
    if (ns.size() < 3) throw DomainError("fit_loglog: need at least 3 points");
    size_t m = ns.size();
    std::vector<double> xs(m), ls(m);
    for (size_t i = 0; i < m; ++i) {
        if (ns[i] < 2) throw DomainError("fit_loglog: n < 2");
        if (!(ys[i] > 0.0)) throw DomainError("fit_loglog: nonpositive y");
        xs[i] = std::log(static_cast<double>(ns[i]));
        ls[i] = std::log(ys[i]);
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < m; ++i) {
        mx += xs[i];
        my += ls[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ls[i] - my);
    }
    if (sxx == 0.0) throw DomainError("fit_loglog: degenerate abscissa");
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ss = 0.0;
    for (size_t i = 0; i < m; ++i) {
        double res = ls[i] - (r.intercept + r.slope * xs[i]);
        ss += res * res;
    }
    r.rms_residual = std::sqrt(ss / m);
    return r;
}

} // namespace evt
