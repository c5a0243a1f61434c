#include "gle/msd.hpp"
#include "gle/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gle {

namespace {

constexpr double kPi = std::numbers::pi;

Moment spectral_integral(const SpectralDensityCtx& ctx, const Integrand& f, std::optional<double> hint) {
    const double s = ctx.omega_scale();
    std::vector<double> pts;
    for (int d = -4; d <= 4; ++d) pts.push_back(s * std::pow(10.0, d));
    Moment m;
    auto add = [&m](const QuadResult& r) {
        m.value += r.value;
        m.error += r.error;
    };
    add(integrate_adaptive(f, 0.0, pts.front(), ctx.quad, hint));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) add(integrate_adaptive(f, pts[i], pts[i + 1], ctx.quad));
    add(integrate_to_infinity(f, pts.back(), ctx.quad));
    return m;
}

// \int_lo^hi in half-period panels; the panel starting at 0 is cut geometrically and carries the hint.
double panel_sum(const Integrand& f, double lo, double hi, const QuadConfig& cfg, std::optional<double> hint) {
    double s = 0.0;
    for (double a = lo; a < hi; a += kPi) {
        const double b = std::min(hi, a + kPi);
        if (a == 0.0) {
            double left = 0.0;
            for (int d = 6; d >= 0; --d) {
                const double right = b * std::pow(10.0, -d);
                s += integrate_adaptive(f, left, right, cfg, left == 0.0 ? hint : std::nullopt).value;
                left = right;
            }
        } else {
            s += integrate_adaptive(f, a, b, cfg).value;
        }
    }
    return s;
}

double inv_pow(double u, int p) { return p == 0 ? 1.0 : (p == 1 ? 1.0 / u : 1.0 / (u * u)); }

// \int_0^\infty (1 - cos u) u^{-p} R(u) du. The oscillatory tail starts at U, moved out until
// the envelope is monotone over the acceleration window.
double one_minus_cos(const Integrand& R, int p, std::optional<double> hint, const QuadConfig& cfg) {
    Integrand head = [&R, p](double u) {
        const double s = std::sin(0.5 * u);
        return 2.0 * s * s * inv_pow(u, p) * R(u);
    };
    Integrand env = [&R, p](double u) { return inv_pow(u, p) * R(u); };
    std::optional<double> h;
    if (hint && *hint + 2.0 - p < 0.0) h = *hint + 2.0 - p;

    double U = 8.0 * kPi;
    double acc = panel_sum(head, 0.0, U, cfg, h);
    for (;;) {
        try {
            const double mono = integrate_to_infinity(env, U, cfg).value;
            const double osc = integrate_oscillatory(env, 1.0, Phase::cos, U, cfg).value;
            return acc + mono - osc;
        } catch (const OscillatoryPreconditionFailed&) {
            if (U > 1e6) throw;
            acc += panel_sum(head, U, 4.0 * U, cfg, std::nullopt);
            U *= 4.0;
        }
    }
}

// \int_0^\infty cos(u) R(u) du with the same retry strategy.
double cos_transform(const Integrand& R, std::optional<double> hint, const QuadConfig& cfg) {
    Integrand head = [&R](double u) { return std::cos(u) * R(u); };
    try {
        return integrate_oscillatory(R, 1.0, Phase::cos, 0.0, cfg, hint).value;
    } catch (const OscillatoryPreconditionFailed&) {
    }
    double U = 32.0 * kPi;
    double acc = panel_sum(head, 0.0, U, cfg, hint);
    for (;;) {
        try {
            return acc + integrate_oscillatory(R, 1.0, Phase::cos, U, cfg).value;
        } catch (const OscillatoryPreconditionFailed&) {
            if (U > 1e6) throw;
            acc += panel_sum(head, U, 4.0 * U, cfg, std::nullopt);
            U *= 4.0;
        }
    }
}

void require_trapped(const SpectralDensityCtx& ctx) {
    if (ctx.params.free_particle()) throw FreeParticlePosition();
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and non-negative");
}

}  // namespace

Moment var_x0(const SpectralDensityCtx& ctx) {
    require_trapped(ctx);
    Moment m = spectral_integral(ctx, [&ctx](double w) { return r11(ctx, w); }, origin_exponent(ctx));
    const double f = ctx.params.kbt / kPi;
    return {f * m.value, f * m.error};
}

Moment var_v0(const SpectralDensityCtx& ctx) {
    Moment m = spectral_integral(ctx, [&ctx](double w) { return r22(ctx, w); }, std::nullopt);
    const double f = ctx.params.kbt / kPi;
    return {f * m.value, f * m.error};
}

double msd_x(const SpectralDensityCtx& ctx, double t) {
    require_trapped(ctx);
    require_time(t);
    if (t == 0.0) return 0.0;
    Integrand R = [&ctx, t](double u) { return r11(ctx, u / t); };
    const double I = one_minus_cos(R, 2, origin_exponent(ctx), ctx.quad);
    return 2.0 * ctx.params.kbt / kPi * t * I;
}

double msd_v(const SpectralDensityCtx& ctx, double t) {
    require_trapped(ctx);
    require_time(t);
    if (t == 0.0) return 0.0;
    Integrand R = [&ctx, t](double u) { return r11(ctx, u / t); };
    const double I = one_minus_cos(R, 0, origin_exponent(ctx), ctx.quad);
    return 2.0 * ctx.params.kbt / kPi * I / t;
}

double cos_correlation(const SpectralDensityCtx& ctx, double t) {
    require_trapped(ctx);
    require_time(t);
    const double vx = var_x0(ctx).value;
    if (t == 0.0) return 2.0 * vx;
    Integrand R = [&ctx, t](double u) { return r11(ctx, u / t); };
    // the transform decays far below the integrand's mass; the error is measured against that mass
    QuadConfig cfg = ctx.quad;
    const double mass = t * kPi * vx / ctx.params.kbt;
    cfg.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * mass);
    return 2.0 * ctx.params.kbt / kPi * cos_transform(R, origin_exponent(ctx), cfg) / t;
}

double cross_cov(const SpectralDensityCtx& ctx, double t, bool diagnostic) {
    require_trapped(ctx);
    require_time(t);
    if (!diagnostic || t == 0.0) return 0.0;
    // odd integrand (k_BT/pi)(1 - cos t w)/w r11(w), integrated over w > 0 and w < 0 separately
    Integrand Rp = [&ctx, t](double u) { return r11(ctx, u / t); };
    Integrand Rm = [&ctx, t](double u) { return r11(ctx, -u / t); };
    const auto hint = origin_exponent(ctx);
    const double plus = one_minus_cos(Rp, 1, hint, ctx.quad);
    const double minus = -one_minus_cos(Rm, 1, hint, ctx.quad);
    return ctx.params.kbt / kPi * (plus + minus);
}

std::vector<double> log_grid(double a, double b, int n) {
    if (!(a > 0.0) || !(b > a) || n < 2) throw std::invalid_argument("log grid needs 0 < a < b and n >= 2");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    g.back() = b;
    return g;
}

MsdCurve msd_curve(const SpectralDensityCtx& ctx, const std::vector<double>& times, MsdQuantity q) {
    MsdCurve c;
    c.quantity = q;
    c.times = times;
    c.values.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        c.values[i] = q == MsdQuantity::position_integral ? msd_x(ctx, times[i]) : msd_v(ctx, times[i]);
    });
    return c;
}

EquipartitionReport equipartition_report(const SpectralDensityCtx& ctx) {
    EquipartitionReport rep;
    const auto& p = ctx.params;
    if (p.kbt == 0.0) {
        rep.failures.push_back("ratios undefined at zero temperature");
        return rep;
    }
    if (!p.free_particle()) {
        try {
            const auto vx = var_x0(ctx);
            rep.gamma_x_ratio = p.gamma * vx.value / p.kbt;
            rep.err_x = p.gamma * vx.error / p.kbt;
        } catch (const QuadratureError& e) {
            rep.gamma_x_ratio = p.gamma * (p.kbt / kPi) * e.best.value / p.kbt;
            rep.err_x = p.gamma * (p.kbt / kPi) * e.best.error / p.kbt;
            rep.failures.push_back(std::string("var_x0: ") + e.what());
        }
    }
    try {
        const auto vv = var_v0(ctx);
        rep.m_v_ratio = p.m * vv.value / p.kbt;
        rep.err_v = p.m * vv.error / p.kbt;
    } catch (const QuadratureError& e) {
        rep.m_v_ratio = p.m * (p.kbt / kPi) * e.best.value / p.kbt;
        rep.err_v = p.m * (p.kbt / kPi) * e.best.error / p.kbt;
        rep.failures.push_back(std::string("var_v0: ") + e.what());
    }
    return rep;
}

Saturation velocity_saturation(const SpectralDensityCtx& ctx, const std::vector<double>& times, double band) {
    Saturation s;
    const double target = 2.0 * var_x0(ctx).value;
    const auto curve = msd_curve(ctx, times, MsdQuantity::velocity_integral);
    for (double v : curve.values) s.ratios.push_back(v / target);
    for (std::size_t i = times.size(); i-- > 0;) {
        if (std::fabs(s.ratios[i] - 1.0) > band) break;
        s.t_star = times[i];
    }
    return s;
}

GrowthFit fit_growth_exponent(const MsdCurve& curve, double t_min, double t_max, GrowthModel model) {
    if (curve.times.size() != curve.values.size()) throw std::invalid_argument("curve times and values differ in length");
    std::vector<double> ts, vs;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        if (curve.times[i] >= t_min * (1.0 - 1e-12) && curve.times[i] <= t_max * (1.0 + 1e-12)) {
            ts.push_back(curve.times[i]);
            vs.push_back(curve.values[i]);
        }
    }
    if (ts.size() < 10) throw FitRejected("fewer than 10 points in window");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(vs[i] > 0.0) || !std::isfinite(vs[i])) throw FitRejected("non-positive value in window");
        if (i > 0 && (ts[i] <= ts[i - 1] || vs[i] < vs[i - 1])) throw FitRejected("non-monotone data in window");
    }

    GrowthFit fit;
    fit.model = model;
    fit.points = static_cast<int>(ts.size());
    const double n = static_cast<double>(ts.size());
    if (model == GrowthModel::pure_power) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double x = std::log(ts[i]), y = std::log(vs[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double icpt = (sy - slope * sx) / n;
        double ss_res = 0, ss_tot = 0;
        const double ybar = sy / n;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double y = std::log(vs[i]);
            const double r = y - (icpt + slope * std::log(ts[i]));
            ss_res += r * r;
            ss_tot += (y - ybar) * (y - ybar);
        }
        fit.value = slope;
        fit.prefactor = std::exp(icpt);
        fit.goodness = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
        // local slope over the last decade, for comparison with the global fit
        const double t_ref = ts.back() / 10.0;
        std::size_t j = 0;
        while (j + 1 < ts.size() && ts[j + 1] <= t_ref * (1.0 + 1e-12)) ++j;
        fit.drift = std::log(vs.back() / vs[j]) / std::log(ts.back() / ts[j]) - slope;
        return fit;
    }
    std::vector<double> ratio;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(ts[i] > 1.0)) throw FitRejected("t log t model needs t > 1");
        ratio.push_back(vs[i] / (ts[i] * std::log(ts[i])));
    }
    double mean = 0.0;
    for (double r : ratio) mean += r;
    mean /= n;
    const double t_ref = ts.back() / 10.0;
    std::size_t j = 0;
    while (j + 1 < ts.size() && ts[j + 1] <= t_ref * (1.0 + 1e-12)) ++j;
    fit.value = mean;
    fit.drift = std::fabs(ratio.back() - ratio[j]) / ratio.back();
    fit.goodness = fit.drift;
    return fit;
}

}  // namespace gle
