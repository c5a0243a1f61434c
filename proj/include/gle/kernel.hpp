#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gle {

struct GleParams {
    double m = 1.0;
    double lambda = 1.0;
    double beta = 1.0;
    double gamma = 2.0;
    double kbt = 1.0;

    bool free_particle() const { return gamma == 0.0; }
    // Throws FieldError naming the offending field. Simulation accepts the zero-temperature limit.
    void validate(bool allow_zero_temperature = false) const;
};

class FieldError : public std::invalid_argument {
public:
    FieldError(std::string field, const std::string& msg)
        : std::invalid_argument(field + ": " + msg), field(std::move(field)) {}
    std::string field;
};

struct Atom {
    double x;
    double w;
};

// Density coef * x^{shape-1} * exp(-rate x) on (0, inf).
struct GammaDensity {
    double coef;
    double shape;
    double rate;

    double operator()(double x) const;
    double origin_exponent() const { return shape - 1.0; }
};

// mu = sum of atoms + optional absolutely continuous part.
struct BernsteinMeasure {
    std::vector<Atom> atoms;
    std::optional<GammaDensity> density;

    // \int e^{-t x} mu(dx)
    double laplace(double t) const;
    // Throws std::invalid_argument when an atom sits at x <= 0 or has w <= 0.
    void validate() const;
};

struct PowerLaw { double alpha; };
struct GeneralizedRouse { std::vector<double> taus; };
struct ExpMixture { BernsteinMeasure measure; std::string source; };
struct Gaussian { double scale; };
struct Cauchy { double alpha; double scale; };
struct OnePlusTInverse {};

using KernelVariant = std::variant<PowerLaw, GeneralizedRouse, ExpMixture, Gaussian, Cauchy, OnePlusTInverse>;

enum class KernelFamily { completely_monotone, phi_of_t_squared };

struct MemoryKernel {
    KernelVariant v;

    KernelFamily family() const;
    std::string spec() const;
    std::string name() const;
};

struct TailClass {
    enum class Kind { integrable, critical_one_over_t, power_law };
    Kind kind = Kind::integrable;
    double alpha = 0.0;
    // c_alpha, or c1 for the critical class
    double c = 0.0;
    // Constant term of Kcos at small omega after the divergent leading term.
    // critical: \int_0^1 K + \int_1^\infty (K - c1/t) - c1*gamma_E; power law: \int_0^\infty (K - c t^{-alpha})
    double kcos_offset = 0.0;
};

class SingularAtOrigin : public std::domain_error {
public:
    SingularAtOrigin() : std::domain_error("singular at origin") {}
};

double kernel_eval(const MemoryKernel& k, double t);
TailClass kernel_tail_class(const MemoryKernel& k);
// For phi(t^2) kernels the measure is that of phi.
BernsteinMeasure bernstein_of(const MemoryKernel& k);

MemoryKernel parse_kernel_spec(const std::string& spec);
void validate_params(const MemoryKernel& k);

struct KernelValidation {
    bool symmetric = true;
    bool positive = true;
    bool monotone_tail = true;
    bool kcos_positive = true;
    std::vector<std::string> failures;

    bool ok() const { return symmetric && positive && monotone_tail && kcos_positive; }
};

using KernelFn = std::function<double(double)>;

KernelValidation validate_kernel(const MemoryKernel& k, const std::vector<double>& probe_grid);
// Same checks for an arbitrary callable; kcos via oscillatory quadrature.
KernelValidation validate_kernel(const KernelFn& k, const std::vector<double>& probe_grid);

}  // namespace gle
