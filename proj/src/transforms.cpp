#include "gle/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace gle {

namespace {

constexpr double kSqrtPi = 1.77245385090551602730;

QuadConfig measure_cfg() {
    QuadConfig c;
    c.rel_tol = 1e-12;
    c.abs_tol = 1e-300;
    c.max_subdivisions = 4000;
    return c;
}

QuadConfig numeric_cfg() {
    QuadConfig c;
    c.rel_tol = 1e-11;
    c.abs_tol = 1e-15;
    c.max_subdivisions = 4000;
    return c;
}

// \int_0^\infty g(x) d(x) dx with panel breaks at the integrand's natural scales and every decade between them.
double density_integral(const GammaDensity& d, const Integrand& g, std::vector<double> scales, const QuadConfig& cfg) {
    if (d.rate > 0.0) scales.push_back(1.0 / d.rate);
    scales.push_back(1.0);
    std::erase_if(scales, [](double s) { return !(s > 0.0) || !std::isfinite(s); });
    std::sort(scales.begin(), scales.end());
    const double lo = scales.front(), hi = scales.back();
    std::vector<double> pts{lo};
    for (double p = lo * 10.0; p < hi; p *= 10.0) pts.push_back(p);
    pts.push_back(hi);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Integrand f = [&](double x) { return g(x) * d(x); };
    double s = integrate_adaptive(f, 0.0, pts.front(), cfg, d.origin_exponent()).value;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += integrate_adaptive(f, pts[i], pts[i + 1], cfg).value;
    s += integrate_to_infinity(f, pts.back(), cfg).value;
    return s;
}

bool has_closed_form(const MemoryKernel& k) {
    return std::holds_alternative<PowerLaw>(k.v) || std::holds_alternative<GeneralizedRouse>(k.v) ||
           std::holds_alternative<ExpMixture>(k.v) || std::holds_alternative<Gaussian>(k.v);
}

bool is_integrable(const MemoryKernel& k) {
    return kernel_tail_class(k).kind == TailClass::Kind::integrable;
}

TransformPair closed_form(const MemoryKernel& k, double omega) {
    const double w = std::fabs(omega);
    const double sgn = omega < 0.0 ? -1.0 : 1.0;
    TransformPair out{0.0, 0.0, Route::closed_form};
    if (const auto* p = std::get_if<PowerLaw>(&k.v)) {
        const double g = std::tgamma(1.0 - p->alpha) * std::pow(w, p->alpha - 1.0);
        out.kcos = g * std::sin(0.5 * std::numbers::pi * p->alpha);
        out.ksin = sgn * g * std::cos(0.5 * std::numbers::pi * p->alpha);
    } else if (const auto* g = std::get_if<Gaussian>(&k.v)) {
        const double l = g->scale;
        out.kcos = 0.5 * kSqrtPi * l * std::exp(-0.25 * w * w * l * l);
        out.ksin = sgn * l * dawson(0.5 * w * l);
    } else {
        for (const auto& a : bernstein_of(k).atoms) {
            const double den = a.x * a.x + omega * omega;
            out.kcos += a.w * a.x / den;
            out.ksin += a.w * omega / den;
        }
    }
    return out;
}

TransformPair cm_measure(const MemoryKernel& k, double omega) {
    const auto mu = bernstein_of(k);
    const double w2 = omega * omega;
    TransformPair out{0.0, 0.0, Route::cm_measure};
    for (const auto& a : mu.atoms) {
        const double den = a.x * a.x + w2;
        out.kcos += a.w * a.x / den;
        out.ksin += a.w * omega / den;
    }
    if (mu.density) {
        const auto cfg = measure_cfg();
        const double w = std::fabs(omega);
        const std::vector<double> scales{w};
        // scaled by max(x, w) so that x^2 + w^2 cannot underflow for tiny arguments
        auto kc = [w](double x) {
            const double r = std::max(x, w), a = x / r, b = w / r;
            return a / (r * (a * a + b * b));
        };
        auto ks = [w](double x) {
            const double r = std::max(x, w), a = x / r, b = w / r;
            return b / (r * (a * a + b * b));
        };
        out.kcos += density_integral(*mu.density, kc, scales, cfg);
        out.ksin += std::copysign(density_integral(*mu.density, ks, scales, cfg), omega);
    }
    return out;
}

TransformPair phi_t2(const MemoryKernel& k, double omega) {
    const auto mu = bernstein_of(k);
    TransformPair out{0.0, 0.0, Route::phi_t2_faddeeva};
    auto term = [omega](double x) {
        const double z = omega / (2.0 * std::sqrt(x));
        // w(z) = i / (sqrt(pi) z) to double precision once |z| > 1e8
        if (std::fabs(z) > 1e8) return cplx(0.0, 2.0 / (kSqrtPi * omega));
        return faddeeva(cplx(z, 0.0)) / std::sqrt(x);
    };
    cplx acc(0.0, 0.0);
    for (const auto& a : mu.atoms) acc += a.w * term(a.x);
    if (mu.density) {
        const auto cfg = measure_cfg();
        const double w = std::fabs(omega);
        const std::vector<double> scales{0.25 * w * w, 0.5 * w};
        const double re = density_integral(*mu.density, [&](double x) { return term(x).real(); }, scales, cfg);
        const double im = density_integral(*mu.density, [&](double x) { return term(x).imag(); }, scales, cfg);
        acc += cplx(re, im);
    }
    acc *= 0.5 * kSqrtPi;
    out.kcos = acc.real();
    out.ksin = acc.imag();
    return out;
}

TransformPair numeric(const MemoryKernel& k, double omega) {
    const auto cfg = numeric_cfg();
    std::optional<double> hint;
    if (const auto* p = std::get_if<PowerLaw>(&k.v)) hint = -p->alpha;
    Integrand K = [&k](double t) { return kernel_eval(k, t); };
    TransformPair out{0.0, 0.0, Route::numeric};
    out.kcos = integrate_oscillatory(K, omega, Phase::cos, 0.0, cfg, hint).value;
    out.ksin = integrate_oscillatory(K, omega, Phase::sin, 0.0, cfg, hint).value;
    return out;
}

}  // namespace

const char* route_name(Route r) {
    switch (r) {
        case Route::closed_form: return "closed_form";
        case Route::cm_measure: return "cm_measure";
        case Route::phi_t2_faddeeva: return "phi_t2_faddeeva";
        case Route::numeric: return "numeric";
    }
    return "unknown";
}

bool route_available(const MemoryKernel& k, Route r) {
    switch (r) {
        case Route::closed_form: return has_closed_form(k);
        case Route::cm_measure: return k.family() == KernelFamily::completely_monotone;
        case Route::phi_t2_faddeeva: return k.family() == KernelFamily::phi_of_t_squared;
        case Route::numeric: return true;
    }
    return false;
}

double kernel_integral(const MemoryKernel& k) {
    if (const auto* r = std::get_if<GeneralizedRouse>(&k.v)) {
        double s = 0.0;
        for (double t : r->taus) s += t;
        return s / static_cast<double>(r->taus.size());
    }
    if (const auto* e = std::get_if<ExpMixture>(&k.v)) {
        double s = 0.0;
        for (const auto& a : e->measure.atoms) s += a.w / a.x;
        return s;
    }
    if (const auto* g = std::get_if<Gaussian>(&k.v)) return 0.5 * kSqrtPi * g->scale;
    if (const auto* c = std::get_if<Cauchy>(&k.v); c && 2.0 * c->alpha > 1.0)
        return c->scale * 0.5 * kSqrtPi * std::exp(std::lgamma(c->alpha - 0.5) - std::lgamma(c->alpha));
    throw std::domain_error("kernel is not integrable");
}

TransformPair transform(const MemoryKernel& k, double omega, std::optional<Route> route) {
    if (!std::isfinite(omega)) throw std::invalid_argument("transform: omega must be finite");
    if (omega == 0.0) {
        if (!is_integrable(k)) throw std::domain_error("transform undefined at origin");
        return {kernel_integral(k), 0.0, Route::closed_form};
    }
    Route r;
    if (route) {
        r = *route;
        if (!route_available(k, r))
            throw std::invalid_argument(std::string("route ") + route_name(r) + " not available for " + k.name());
    } else if (has_closed_form(k)) {
        r = Route::closed_form;
    } else {
        r = k.family() == KernelFamily::completely_monotone ? Route::cm_measure : Route::phi_t2_faddeeva;
    }
    switch (r) {
        case Route::closed_form: return closed_form(k, omega);
        case Route::cm_measure: return cm_measure(k, omega);
        case Route::phi_t2_faddeeva: return phi_t2(k, omega);
        case Route::numeric: return numeric(k, omega);
    }
    return {};
}

cplx transform_complex(const MemoryKernel& k, cplx z, ExtensionSign sign) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("transform_complex: z must be finite");
    if (z == cplx(0.0, 0.0)) throw std::domain_error("transform undefined at origin");
    const bool minus = sign == ExtensionSign::minus;
    if ((minus && z.imag() > 0.0) || (!minus && z.imag() < 0.0))
        throw std::domain_error("analytic extension not defined here");

    const auto mu = bernstein_of(k);
    QuadConfig cfg = measure_cfg();
    cfg.abs_tol = 1e-15;
    const double scale = std::abs(z);
    cplx acc(0.0, 0.0);

    if (k.family() == KernelFamily::completely_monotone) {
        // minus: \int 1/(x + iz) mu(dx); plus: \int 1/(x - iz) mu(dx)
        const cplx iz = minus ? cplx(-z.imag(), z.real()) : cplx(z.imag(), -z.real());
        auto g = [iz](double x) { return 1.0 / (x + iz); };
        for (const auto& a : mu.atoms) acc += a.w * g(a.x);
        if (mu.density) {
            const std::vector<double> scales{scale};
            acc += cplx(density_integral(*mu.density, [&](double x) { return g(x).real(); }, scales, cfg),
                        density_integral(*mu.density, [&](double x) { return g(x).imag(); }, scales, cfg));
        }
        return acc;
    }
    const cplx zz = minus ? -z : z;
    auto g = [zz](double x) { return faddeeva(zz / (2.0 * std::sqrt(x))) / std::sqrt(x); };
    for (const auto& a : mu.atoms) acc += a.w * g(a.x);
    if (mu.density) {
        const std::vector<double> scales{0.25 * scale * scale, 0.5 * scale};
        acc += cplx(density_integral(*mu.density, [&](double x) { return g(x).real(); }, scales, cfg),
                    density_integral(*mu.density, [&](double x) { return g(x).imag(); }, scales, cfg));
    }
    return 0.5 * kSqrtPi * acc;
}

AbelianLimit abelian_limits(const MemoryKernel& k) {
    AbelianLimit out;
    out.tail = kernel_tail_class(k);
    switch (out.tail.kind) {
        case TailClass::Kind::integrable:
            out.kcos = kernel_integral(k);
            out.ksin = 0.0;
            break;
        case TailClass::Kind::critical_one_over_t:
            out.kcos = out.tail.c;
            out.ksin = out.tail.c * 0.5 * std::numbers::pi;
            break;
        case TailClass::Kind::power_law: {
            const double a = out.tail.alpha;
            Integrand env = [a](double u) { return std::pow(u, -a); };
            QuadConfig cfg = numeric_cfg();
            out.kcos = out.tail.c * integrate_oscillatory(env, 1.0, Phase::cos, 0.0, cfg, -a).value;
            out.ksin = out.tail.c * integrate_oscillatory(env, 1.0, Phase::sin, 0.0, cfg, -a).value;
            break;
        }
    }
    return out;
}

TransformPair AbelianLimit::predict_leading(double omega) const {
    const double w = std::fabs(omega);
    const double sgn = omega < 0.0 ? -1.0 : 1.0;
    switch (tail.kind) {
        case TailClass::Kind::integrable: return {kcos, 0.0, Route::closed_form};
        case TailClass::Kind::critical_one_over_t: return {kcos * std::fabs(std::log(w)), sgn * ksin, Route::closed_form};
        case TailClass::Kind::power_law: {
            const double f = std::pow(w, tail.alpha - 1.0);
            return {kcos * f, sgn * ksin * f, Route::closed_form};
        }
    }
    return {};
}

TransformPair AbelianLimit::predict(double omega) const {
    TransformPair p = predict_leading(omega);
    p.kcos += tail.kcos_offset;
    return p;
}

}  // namespace gle
