#include "evt/rates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

namespace evt {

namespace {

// measurement floor: exact parents compare quantities that are equal in
// real arithmetic, so raw margins sit at rounding noise of either sign
constexpr double kNoiseFloor = 1e-13;

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

FitResult fit_field(const std::vector<RateRow>& rows, double RateRow::*field) {
    std::vector<long long> ns;
    std::vector<double> ys;
    for (const auto& r : rows) {
        double v = r.*field;
        if (v > 0.0 && std::isfinite(v)) {
            ns.push_back(r.n);
            ys.push_back(v);
        }
    }
    if (ns.size() < 3) return {};
    return fit_loglog(ns, ys);
}

RateRow compute_row(const DistributionModel& model, double beta, long long n,
                    const RemainderEnvelope& env, const ExperimentOptions& opts) {
    NormalizedMaximum nm = make_normalized(model, n);
    RateRow row;
    row.n = n;
    row.a_n = nm.norming.a;
    row.b_n = nm.norming.b;
    row.h_env = env.env(model.domain == Domain::Frechet ? nm.norming.a : nm.norming.b);
    row.predicted = predicted_envelope(model, n);

    EntropyMeasurement em = entropy_gap(nm, beta, opts.quad, opts.sup_grid_points);
    row.supnorm = em.supnorm;
    row.entropy_diff = em.diff;
    row.H_gn = em.H_gn;
    row.H_limit = em.H_limit;
    row.lp_integral = em.lp_integral;
    row.hypothesis_ratio = em.hypothesis_ratio;
    row.hypothesis_ok = em.hypothesis_ok;
    row.m_constant = em.m_constant;

    double target = 1.0 / std::sqrt(static_cast<double>(n));
    double lo = model.quantile(std::exp(-2.0 * target));
    double hi = model.quantile(std::exp(-0.5 * target));
    row.xi_n = find_root([&](double t) { return neg_log_cdf(model, t) - target; }, lo, hi,
                         1e-12 * (1.0 + std::fabs(lo) + std::fabs(hi)));
    row.t_n = (row.xi_n - row.b_n) / row.a_n;
    return row;
}

} // namespace

double predicted_envelope(const DistributionModel& model, long long n) {
    auto env = envelope_for(model);
    double tail = static_cast<double>(n) * std::exp(-std::sqrt(static_cast<double>(n)));
    if (model.domain == Domain::Frechet) {
        NormingPair p = norming_frechet(model, n);
        return env->env(p.a) + tail;
    }
    if (model.domain == Domain::Gumbel) {
        NormingPair p = norming_gumbel(model, n);
        double h = env->env(p.b);
        return h + std::log1p(h) + tail;
    }
    throw DomainMismatch("predicted_envelope: model '" + model.name +
                         "' carries no Frechet/Gumbel tag");
}

RateReport run_rate_experiment(const DistributionModel& model, double beta,
                               const std::vector<long long>& n_grid,
                               const ExperimentOptions& opts) {
    if (n_grid.size() < 5) throw ParamError("n_grid needs at least 5 points");
    for (size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 2 || n_grid[i] > 1000000)
            throw ParamError("n_grid entries must lie in [2, 1e6]");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            throw ParamError("n_grid must be strictly increasing");
    }
    double r0 = static_cast<double>(n_grid[1]) / static_cast<double>(n_grid[0]);
    for (size_t i = 1; i + 1 < n_grid.size(); ++i) {
        double r = static_cast<double>(n_grid[i + 1]) / static_cast<double>(n_grid[i]);
        if (r > 2.0 * r0 || r < 0.5 * r0) throw ParamError("n_grid is not geometric");
    }

    // built before any worker starts; shared read-only afterwards
    auto env = envelope_for(model);

    RateReport rep;
    rep.model_name = model.name;
    rep.beta = beta;
    rep.rows.resize(n_grid.size());

    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n_grid.size()) return;
            try {
                rep.rows[i] = compute_row(model, beta, n_grid[i], *env, opts);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    int nw = std::max(1, std::min<int>(opts.workers, static_cast<int>(n_grid.size())));
    if (nw == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int k = 0; k < nw; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    rep.degenerate = std::all_of(rep.rows.begin(), rep.rows.end(),
                                 [](const RateRow& r) { return r.supnorm <= 1e-8; });
    if (rep.degenerate) {
        rep.note = "degenerate: exact max-stability";
    } else {
        rep.fitted_supnorm = fit_field(rep.rows, &RateRow::supnorm);
        rep.fitted_entropy = fit_field(rep.rows, &RateRow::entropy_diff);
        // the n e^{-sqrt n} truncation term is below 1e-12 from n = 1600 on;
        // the envelope slope is read off that clean region when it is long
        // enough, so small-n truncation never leaks into the fitted exponent
        std::vector<RateRow> clean;
        for (const auto& r : rep.rows) {
            double t = static_cast<double>(r.n) * std::exp(-std::sqrt(static_cast<double>(r.n)));
            if (t <= 1e-12) clean.push_back(r);
        }
        rep.predicted_slope =
            fit_field(clean.size() >= 3 ? clean : rep.rows, &RateRow::predicted).slope;
    }
    rep.bound_checks = verify_all_bounds(model, {1000, 10000});
    return rep;
}

std::vector<BoundCheck> verify_all_bounds(const DistributionModel& model,
                                          const std::vector<long long>& ns) {
    std::vector<BoundCheck> out;
    MaxStableLaw lam = gumbel_law();
    // x-range where the Gumbel cdf is strictly inside (0, 1) at double precision
    double gx_lo = -std::log(-std::log(1e-300));
    double gx_hi = -std::log(-std::log(1.0 - 1e-16));

    for (double z : {0.01, 0.05, 0.1, 0.3, 0.9}) {
        double worst = 0.0;
        for (double s : {z, -z}) {
            auto r = sup_norm([&](double x) { return penultimate_cdf(s, x) - lam.cdf(x); },
                              gx_lo, gx_hi, 2048);
            worst = std::max(worst, r.value);
        }
        double bound = z * std::exp(-1.0);
        BoundCheck c;
        c.name = "penultimate_uniform_z=" + fmt_g(z);
        c.pass = worst <= bound + kNoiseFloor;
        c.margin = bound - worst;
        out.push_back(c);
    }

    if (model.domain == Domain::Gumbel) {
        auto env = envelope_for(model);
        for (long long n : ns) {
            NormingPair p = theorem_norming(model, n);
            double h = env->env(p.b);
            NormalizedMaximum nm{model, n, p};

            auto s = sup_norm([&](double x) { return gn_cdf(nm, x) - lam.cdf(x); }, 0.0,
                              gx_hi, 2048);
            BoundCheck c;
            c.name = "uniform_gumbel_n=" + std::to_string(n);
            c.pass = s.value <= std::exp(-1.0) * h + kNoiseFloor;
            c.margin = std::exp(-1.0) * h - s.value;
            c.note = "sup over x >= 0";
            out.push_back(c);

            for (double x : {-1.0, 0.5, 1.0, 2.0}) {
                SandwichReport sr = sandwich_check(nm, x);
                BoundCheck sc;
                sc.name = "sandwich_n=" + std::to_string(n) + "_x=" + fmt_g(x);
                if (!sr.in_support) {
                    sc.pass = true;
                    sc.note = "outside bound support";
                } else {
                    sc.margin = std::min(sr.lower_margin, sr.upper_margin);
                    sc.pass = sc.margin >= -kNoiseFloor;
                }
                out.push_back(sc);
            }

            for (double x : {0.5, 1.0, 2.0}) {
                BoundCheck uc;
                uc.name = "u_ratio_n=" + std::to_string(n) + "_x=" + fmt_g(x);
                double hx = h * x;
                if (hx >= 1.0) {
                    uc.pass = true;
                    uc.note = "outside bound support";
                } else {
                    double r = p.a / vonmises_u(model, p.a * x + p.b);
                    double lob = 1.0 / (1.0 + hx);
                    double upb = 1.0 / (1.0 - hx);
                    uc.margin = std::min(r - lob, upb - r);
                    uc.pass = uc.margin >= -kNoiseFloor;
                }
                out.push_back(uc);
            }
        }
    }

    if (model.domain == Domain::Frechet) {
        auto env = envelope_for(model);
        const double delta = 10.0;
        const double rho = 1.0;
        double hd = env->env(delta);
        BoundCheck c;
        c.name = "frechet_tail_constant_delta=10";
        if (!(hd < model.alpha)) {
            c.pass = false;
            c.margin = model.alpha - hd;
            c.note = "envelope not below alpha at delta";
        } else {
            double theta = rho / (model.alpha - hd);
            auto s = sup_norm(
                [theta](double y) {
                    return std::pow(y, -1.0 - theta) * std::fabs(std::log(y)) *
                           std::exp(-1.0 / y);
                },
                0.0, 1.0, 2048);
            double cval = theta / rho * s.value;
            c.pass = std::isfinite(cval) && cval > 0.0;
            c.margin = cval;
            c.note = "reported constant";
        }
        out.push_back(c);
    }
    return out;
}

} // namespace evt
