#pragma once

#include "gle/kernel.hpp"
#include "gle/quadrature.hpp"
#include "gle/special.hpp"
#include "gle/transforms.hpp"

namespace gle {

struct SpectralDensityCtx {
    GleParams params;
    MemoryKernel kernel;
    QuadConfig quad;

    SpectralDensityCtx(GleParams p, MemoryKernel k, QuadConfig q = {});
    // Frequency scale used to place quadrature panels.
    double omega_scale() const;
};

class FreeParticlePosition : public std::domain_error {
public:
    FreeParticlePosition() : std::domain_error("position spectral density undefined for free particle") {}
};

double r11(const SpectralDensityCtx& ctx, double omega);
double r22(const SpectralDensityCtx& ctx, double omega);
cplx r12(const SpectralDensityCtx& ctx, double omega);

struct NearZeroAsymptote {
    enum class Kind { constant, log_divergent, power_divergent };
    Kind kind = Kind::constant;
    // constant: r11(0+); log: coefficient of |log omega|; power: coefficient of omega^{exponent}
    double value = 0.0;
    double exponent = 0.0;
    // r11 / shape at omega = 1e-4 and 5e-5; shape is 1, |log omega| or omega^{exponent}
    double rate = 0.0;
    double rate_half = 0.0;

    double shape(double omega) const;
};

const char* asymptote_name(NearZeroAsymptote::Kind k);

NearZeroAsymptote near_zero_asymptote(const SpectralDensityCtx& ctx);

// Exponent hint for quadrature at omega = 0 implied by the asymptote (none for bounded densities).
std::optional<double> origin_exponent(const SpectralDensityCtx& ctx);

}  // namespace gle
