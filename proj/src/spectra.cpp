#include "gle/spectra.hpp"

#include <cmath>

namespace gle {

SpectralDensityCtx::SpectralDensityCtx(GleParams p, MemoryKernel k, QuadConfig q)
    : params(p), kernel(std::move(k)), quad(q) {
    params.validate(true);
    validate_params(kernel);
    quad.validate();
}

double SpectralDensityCtx::omega_scale() const {
    if (params.gamma > 0.0) return std::sqrt(params.gamma / params.m);
    return (params.lambda + params.beta) / params.m;
}

namespace {

struct Parts {
    double num;   // 2(lambda + beta Kcos)
    double damp;  // lambda + beta Kcos
    double ksin;
};

Parts parts(const SpectralDensityCtx& ctx, double omega) {
    const auto t = transform(ctx.kernel, omega);
    const double damp = ctx.params.lambda + ctx.params.beta * t.kcos;
    return {2.0 * damp, damp, t.ksin};
}

bool integrable(const SpectralDensityCtx& ctx) {
    return kernel_tail_class(ctx.kernel).kind == TailClass::Kind::integrable;
}

}  // namespace

double r11(const SpectralDensityCtx& ctx, double omega) {
    const auto& p = ctx.params;
    if (p.free_particle()) throw FreeParticlePosition();
    if (omega == 0.0) {
        if (!integrable(ctx)) throw std::domain_error("transform undefined at origin");
        return 2.0 * (p.lambda + p.beta * kernel_integral(ctx.kernel)) / (p.gamma * p.gamma);
    }
    const auto q = parts(ctx, omega);
    const double re = p.gamma - p.m * omega * omega + p.beta * omega * q.ksin;
    const double im = omega * q.damp;
    return q.num / (re * re + im * im);
}

double r22(const SpectralDensityCtx& ctx, double omega) {
    const auto& p = ctx.params;
    if (omega == 0.0) {
        if (!integrable(ctx)) throw std::domain_error("transform undefined at origin");
        if (!p.free_particle()) return 0.0;
        return 2.0 / (p.lambda + p.beta * kernel_integral(ctx.kernel));
    }
    // omega^2 r11 with the omega^2 divided into the denominator so gamma = 0 needs no special case
    const auto q = parts(ctx, omega);
    const double re = p.gamma / omega - p.m * omega + p.beta * q.ksin;
    return q.num / (re * re + q.damp * q.damp);
}

cplx r12(const SpectralDensityCtx& ctx, double omega) {
    if (omega == 0.0) {
        r11(ctx, omega);
        return {0.0, 0.0};
    }
    return {0.0, omega * r11(ctx, omega)};
}

double NearZeroAsymptote::shape(double omega) const {
    switch (kind) {
        case Kind::constant: return 1.0;
        case Kind::log_divergent: return std::fabs(std::log(std::fabs(omega)));
        case Kind::power_divergent: return std::pow(std::fabs(omega), exponent);
    }
    return 1.0;
}

const char* asymptote_name(NearZeroAsymptote::Kind k) {
    switch (k) {
        case NearZeroAsymptote::Kind::constant: return "Const";
        case NearZeroAsymptote::Kind::log_divergent: return "LogDivergent";
        case NearZeroAsymptote::Kind::power_divergent: return "PowerDivergent";
    }
    return "?";
}

NearZeroAsymptote near_zero_asymptote(const SpectralDensityCtx& ctx) {
    const auto& p = ctx.params;
    if (p.free_particle()) throw FreeParticlePosition();
    const auto lim = abelian_limits(ctx.kernel);
    const double g2 = p.gamma * p.gamma;
    NearZeroAsymptote out;
    switch (lim.tail.kind) {
        case TailClass::Kind::integrable:
            out.kind = NearZeroAsymptote::Kind::constant;
            out.value = 2.0 * (p.lambda + p.beta * lim.kcos) / g2;
            break;
        case TailClass::Kind::critical_one_over_t:
            out.kind = NearZeroAsymptote::Kind::log_divergent;
            out.value = 2.0 * p.beta * lim.kcos / g2;
            break;
        case TailClass::Kind::power_law:
            out.kind = NearZeroAsymptote::Kind::power_divergent;
            out.exponent = lim.tail.alpha - 1.0;
            out.value = 2.0 * p.beta * lim.kcos / g2;
            break;
    }
    out.rate = r11(ctx, 1e-4) / out.shape(1e-4);
    out.rate_half = r11(ctx, 5e-5) / out.shape(5e-5);
    return out;
}

std::optional<double> origin_exponent(const SpectralDensityCtx& ctx) {
    const auto tc = kernel_tail_class(ctx.kernel);
    if (tc.kind == TailClass::Kind::power_law && !ctx.params.free_particle()) return tc.alpha - 1.0;
    return std::nullopt;
}

}  // namespace gle
