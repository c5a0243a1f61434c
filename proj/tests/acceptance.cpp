#include "gle/msd.hpp"
#include "gle/simulate.hpp"
#include "gle/spectra.hpp"
#include "gle/transforms.hpp"
#include "mp_oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace gle;

namespace {

// Pinned tolerances and budgets.
constexpr double equipartition_tol = 1e-3;
constexpr double equipartition_seconds_per_kernel = 10.0;
constexpr double free_equipartition_seconds = 10.0;
constexpr double exponent_tol_rouse = 0.03;
constexpr double exponent_tol_powerlaw = 0.05;
constexpr double tlogt_drift_max = 0.10;
constexpr double exponent_seconds = 60.0;
constexpr double saturation_band = 0.01;
constexpr double cross_cov_max = 1e-10;
constexpr double abelian_rel_tol = 0.01;
constexpr double route_rel_tol = 1e-6;
constexpr double faddeeva_rel_tol = 1e-10;
constexpr double mc_se_multiple = 3.0;
constexpr double mc_msd_rel_tol = 0.05;
constexpr double mc_seconds = 300.0;

const std::vector<std::string> criterion_kernels = {"powerlaw:0.3", "powerlaw:0.5", "powerlaw:0.7",
                                                    "rouse:1,2,4",  "gaussian:1",   "cauchy:1,1"};
const std::vector<std::string> trapped_presets = {"powerlaw:0.3", "powerlaw:0.5", "powerlaw:0.7", "rouse:1,2,4",
                                                  "gaussian:1",   "cauchy:1,1",   "one-plus-t-inverse"};

GleParams defaults(double gamma = 2.0, double m = 1.0) {
    GleParams p;
    p.m = m;
    p.lambda = 1.0;
    p.beta = 1.0;
    p.gamma = gamma;
    p.kbt = 1.0;
    return p;
}

SpectralDensityCtx ctx_for(const std::string& spec, double gamma = 2.0, double m = 1.0) {
    return SpectralDensityCtx(defaults(gamma, m), parse_kernel_spec(spec), QuadConfig{});
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

// ---- criteria -----------------------------------------------------------------

void equipartition_trapped(Outcome& o) {
    double worst = 0.0, slowest = 0.0;
    for (const auto& spec : criterion_kernels) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rep = equipartition_report(ctx_for(spec));
        const double secs = seconds_since(t0);
        slowest = std::max(slowest, secs);
        const double ex = std::fabs(rep.gamma_x_ratio.value_or(NAN) - 1.0), ev = std::fabs(rep.m_v_ratio - 1.0);
        worst = std::max({worst, ex, ev});
        o.require(ex <= equipartition_tol && ev <= equipartition_tol, spec + " ratios");
        o.require(rep.failures.empty(), spec + " quadrature");
        o.require(secs < equipartition_seconds_per_kernel, spec + " runtime " + fmt(secs) + " s");
    }
    o.detail << "max |ratio-1| = " << fmt(worst) << " (tol " << equipartition_tol << "), slowest kernel " << fmt(slowest, 3)
             << " s";
}

void equipartition_free(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double m : {1.0, 2.0})
        for (const auto& spec : criterion_kernels) {
            const auto rep = equipartition_report(ctx_for(spec, 0.0, m));
            const double ev = std::fabs(rep.m_v_ratio - 1.0);
            worst = std::max(worst, ev);
            o.require(ev <= equipartition_tol, spec + " m=" + fmt(m));
            o.require(!rep.gamma_x_ratio.has_value(), spec + " reported a position ratio");
        }
    const double secs = seconds_since(t0);
    o.require(secs < free_equipartition_seconds, "runtime " + fmt(secs) + " s");
    o.detail << "max |m E[v^2]/kT - 1| = " << fmt(worst) << " over 12 cases, " << fmt(secs, 3) << " s";
}

void growth_exponents(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = log_grid(1e2, 1e4, 41);
    struct Target {
        std::string spec;
        double expected, tol;
    };
    for (const auto& [spec, expected, tol] : {Target{"rouse:1,2", 1.0, exponent_tol_rouse},
                                               Target{"powerlaw:0.5", 1.5, exponent_tol_powerlaw},
                                               Target{"powerlaw:0.3", 1.7, exponent_tol_powerlaw}}) {
        const auto curve = msd_curve(ctx_for(spec), grid, MsdQuantity::position_integral);
        const auto fit = fit_growth_exponent(curve, 1e2, 1e4, GrowthModel::pure_power);
        o.require(std::fabs(fit.value - expected) <= tol, spec);
        o.detail << spec << " " << fmt(fit.value, 5) << " (" << expected << "+-" << tol << "); ";
    }
    const auto curve = msd_curve(ctx_for("one-plus-t-inverse"), grid, MsdQuantity::position_integral);
    const auto fit = fit_growth_exponent(curve, 1e2, 1e4, GrowthModel::t_log_t);
    o.require(fit.drift < tlogt_drift_max, "t log t drift");
    const double secs = seconds_since(t0);
    o.require(secs < exponent_seconds, "runtime");
    o.detail << "one-plus-t-inverse t log t drift " << fmt(fit.drift, 3) << " (< " << tlogt_drift_max << "); "
             << fmt(secs, 3) << " s";
}

void velocity_saturation_all(Outcome& o) {
    const auto grid = log_grid(1e-1, 1e9, 73);
    for (const auto& spec : trapped_presets) {
        const auto s = velocity_saturation(ctx_for(spec), grid, saturation_band);
        o.require(s.t_star.has_value(), spec + " never saturates on the grid");
        if (!s.t_star) continue;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (grid[i] >= *s.t_star) o.require(std::fabs(s.ratios[i] - 1.0) <= saturation_band, spec + " ratio at t=" + fmt(grid[i]));
        o.detail << spec << " T*=" << fmt(*s.t_star, 3) << "; ";
    }
}

void orthogonality(Outcome& o) {
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<std::size_t> pick(0, trapped_presets.size() - 1);
    std::uniform_real_distribution<double> log_t(-2.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto& spec = trapped_presets[pick(rng)];
        const double t = std::pow(10.0, log_t(rng));
        const double c = cross_cov(ctx_for(spec), t, true);
        worst = std::max(worst, std::fabs(c));
        o.require(std::fabs(c) < cross_cov_max, spec + " t=" + fmt(t));
    }
    o.detail << "max |cross_cov| = " << fmt(worst) << " (< " << cross_cov_max << ") over 10 cases";
}

void abelian(Outcome& o) {
    const double w = 1e-4;
    bool seen[3] = {false, false, false};
    for (const auto& spec : trapped_presets) {
        const auto k = parse_kernel_spec(spec);
        const auto lim = abelian_limits(k);
        const auto got = transform(k, w);
        const auto want = lim.predict(w);
        seen[static_cast<int>(lim.tail.kind)] = true;
        const double ec = std::fabs(got.kcos / want.kcos - 1.0);
        const double es = lim.tail.kind == TailClass::Kind::integrable ? std::fabs(got.ksin) / got.kcos
                                                                        : std::fabs(got.ksin / want.ksin - 1.0);
        o.require(ec < abelian_rel_tol && es < abelian_rel_tol, spec);
        o.detail << spec << " " << fmt(std::max(ec, es), 2) << "; ";
    }
    o.require(seen[0] && seen[1] && seen[2], "all three tail classes covered");
    const double ksin0 = transform(parse_kernel_spec("one-plus-t-inverse"), w).ksin;
    const double e = std::fabs(ksin0 / (std::numbers::pi / 2.0) - 1.0);
    o.require(e < abelian_rel_tol, "one-plus-t-inverse Ksin(0+)");
    o.detail << "Ksin(0+)/(pi/2) - 1 = " << fmt(e, 3);
}

void route_equivalence(Outcome& o) {
    const auto grid = log_grid(1e-3, 1e3, 31);
    double worst = 0.0;
    for (const auto& spec : trapped_presets) {
        const auto k = parse_kernel_spec(spec);
        const Route measure = k.family() == KernelFamily::completely_monotone ? Route::cm_measure : Route::phi_t2_faddeeva;
        double kernel_worst = 0.0;
        for (double w : grid) {
            const auto a = transform(k, w, measure);
            const auto b = transform(k, w, Route::numeric);
            kernel_worst = std::max(kernel_worst, std::hypot(a.kcos - b.kcos, a.ksin - b.ksin) / std::hypot(a.kcos, a.ksin));
        }
        o.require(kernel_worst < route_rel_tol, spec + " via " + route_name(measure));
        worst = std::max(worst, kernel_worst);
    }
    o.detail << "max relative route gap " << fmt(worst, 3) << " (< " << route_rel_tol << ") on 31 frequencies x 7 kernels";
}

void special_functions(Outcome& o) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst = 0.0;
    int n = 0;
    while (n < 1000) {
        const cplx z(u(rng), u(rng));
        if (std::abs(z) > 5.0) continue;
        ++n;
        const auto ref = oracle::faddeeva_series(z);
        worst = std::max(worst, std::abs(faddeeva(z) - ref) / std::abs(ref));
    }
    o.require(worst < faddeeva_rel_tol, "faddeeva accuracy");
    const double pi = std::numbers::pi;
    double prev = 0.0;
    o.detail << "max rel error " << fmt(worst, 3) << " (< " << faddeeva_rel_tol << "); sup |z||w|:";
    for (double r : {10.0, 100.0, 1000.0}) {
        double sup = 0.0;
        for (int k = 1; k < 2000; ++k) {
            const double th = -pi / 8.0 + (10.0 * pi / 8.0) * k / 2000.0;
            sup = std::max(sup, r * std::abs(faddeeva(std::polar(r, th))));
        }
        o.require(std::isfinite(sup), "sector sup finite at r=" + fmt(r));
        if (prev > 0.0) o.require(sup <= prev * (1.0 + 1e-6), "sector sup grows at r=" + fmt(r));
        prev = sup;
        o.detail << " r=" << fmt(r) << " " << fmt(sup, 5);
    }
}

struct SampleStats {
    double mean, se;
};

// Mean of f over paths, with standard error.
SampleStats path_mean(const Ensemble& e, const std::function<double(int)>& f) {
    double s = 0.0, s2 = 0.0;
    for (int q = 0; q < e.n_paths; ++q) {
        const double v = f(q);
        s += v;
        s2 += v * v;
    }
    const double n = e.n_paths, mean = s / n;
    return {mean, std::sqrt(std::max(0.0, s2 / n - mean * mean) / (n - 1.0))};
}

void monte_carlo(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = defaults();
    const auto sde = markovian_embedding(p, bernstein_of(parse_kernel_spec("rouse:1")));
    const auto sigma = lyapunov_stationary_cov(sde);
    SimulationOptions opt;
    opt.dt = 0.05;
    opt.t_max = 100.0;
    opt.n_paths = 10000;
    opt.seed = 2026;
    opt.scheme = Scheme::exact_ou_exponential;
    const auto ens = simulate_paths(sde, opt);
    const int cv = ens.component("v");
    const int last = ens.n_times() - 1;
    const auto var_v = path_mean(ens, [&](int q) { return ens.at(q, last, cv) * ens.at(q, last, cv); });
    const double lyap = sigma(sde.index("v"), sde.index("v"));
    o.require(std::fabs(var_v.mean - p.kbt / p.m) < mc_se_multiple * var_v.se, "Var(v) vs kT/m");
    o.require(std::fabs(var_v.mean - lyap) < mc_se_multiple * var_v.se, "Var(v) vs Lyapunov");

    const auto mc = ensemble_msd(ens, IntegralQuantity::x_integral);
    const auto ctx = ctx_for("rouse:1");
    double worst = 0.0;
    for (std::size_t i = 0; i < mc.times.size(); ++i) {
        const double t = mc.times[i];
        if (t < 1.0 - 1e-9 || t > 100.0 + 1e-9) continue;
        worst = std::max(worst, std::fabs(mc.values[i] / msd_x(ctx, t) - 1.0));
    }
    o.require(worst <= mc_msd_rel_tol, "ensemble msd");
    const double secs = seconds_since(t0);
    o.require(secs < mc_seconds, "runtime");
    o.detail << "Var(v) at t=100: " << fmt(var_v.mean) << " +- " << fmt(var_v.se, 2) << " (kT/m 1, Lyapunov " << fmt(lyap, 10)
             << "); max msd rel gap " << fmt(worst, 3) << " (<= " << mc_msd_rel_tol << "); " << fmt(secs, 3) << " s";
}

void spectral_sampler(Outcome& o) {
    for (const std::string spec : {"rouse:1,2,4", "powerlaw:0.5"}) {
        const auto ctx = ctx_for(spec);
        const auto ens = spectral_sample(ctx, log_grid(1e-4, 1e2, 150), {0.0, 0.01, 0.02}, 10000, 77);
        const int cx = ens.component("x"), cv = ens.component("v");
        const auto vx = path_mean(ens, [&](int q) { return ens.at(q, 0, cx) * ens.at(q, 0, cx); });
        const auto cxv = path_mean(ens, [&](int q) { return ens.at(q, 0, cx) * ens.at(q, 0, cv); });
        const double ref = var_x0(ctx).value;
        o.require(std::fabs(vx.mean - ref) < mc_se_multiple * vx.se, spec + " Var(x0)");
        o.require(std::fabs(cxv.mean) < mc_se_multiple * cxv.se, spec + " Cov(x0,v0)");
        o.detail << spec << ": Var(x0) " << fmt(vx.mean) << " vs " << fmt(ref) << " (se " << fmt(vx.se, 2) << "), Cov "
                 << fmt(cxv.mean, 3) << " (se " << fmt(cxv.se, 2) << "); ";
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        void (*run)(Outcome&);
    };
    const Criterion criteria[] = {
        {"equipartition, trapped", equipartition_trapped},
        {"equipartition, free particle", equipartition_free},
        {"anomalous diffusion exponents", growth_exponents},
        {"velocity-integral saturation", velocity_saturation_all},
        {"orthogonality of x and v integrals", orthogonality},
        {"abelian limits", abelian},
        {"transform route equivalence", route_equivalence},
        {"special functions", special_functions},
        {"monte carlo consistency", monte_carlo},
        {"spectral sampler", spectral_sampler},
    };
    int failed = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = seconds_since(t0);
        if (!o.pass) ++failed;
        std::printf("%s  %2d  %-36s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", index, c.name, secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
