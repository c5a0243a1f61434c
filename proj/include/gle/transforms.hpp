#pragma once

#include "gle/kernel.hpp"
#include "gle/quadrature.hpp"
#include "gle/special.hpp"

#include <optional>

namespace gle {

enum class Route { closed_form, cm_measure, phi_t2_faddeeva, numeric };

const char* route_name(Route r);

struct TransformPair {
    double kcos = 0.0;
    double ksin = 0.0;
    Route route = Route::closed_form;
};

// Route priority when none is requested: closed form, then the measure formula, then quadrature.
TransformPair transform(const MemoryKernel& k, double omega, std::optional<Route> route = std::nullopt);

bool route_available(const MemoryKernel& k, Route r);

enum class ExtensionSign {
    minus,  // Kcos(z) - i Ksin(z), closed lower half-plane
    plus    // Kcos(z) + i Ksin(z), closed upper half-plane
};

cplx transform_complex(const MemoryKernel& k, cplx z, ExtensionSign sign = ExtensionSign::minus);

// \int_0^\infty K(t) dt; throws for non-integrable kernels.
double kernel_integral(const MemoryKernel& k);

struct AbelianLimit {
    TailClass tail;
    // integrable: limits of (Kcos, Ksin); power law: limits of omega^{1-alpha} (Kcos, Ksin);
    // critical: kcos holds c1 (rate of |log omega|), ksin the limit c1*pi/2
    double kcos = 0.0;
    double ksin = 0.0;

    // Leading asymptote at small omega > 0; the critical class includes the constant offset.
    TransformPair predict(double omega) const;
    TransformPair predict_leading(double omega) const;
};

AbelianLimit abelian_limits(const MemoryKernel& k);

}  // namespace gle
