#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace gle {

enum class OscillationMode { none, split_at_zeros };

struct QuadConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    OscillationMode oscillation = OscillationMode::none;
    // Period of the oscillating factor, used by integrate_to_infinity in split_at_zeros mode.
    double oscillation_period = 0.0;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    int intervals = 0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadResult best)
        : std::runtime_error(what), best(best) {}
    QuadResult best;
};

class DivergentTail : public QuadratureError {
public:
    explicit DivergentTail(QuadResult best) : QuadratureError("divergent tail", best) {}
};

class OscillatoryPreconditionFailed : public std::runtime_error {
public:
    explicit OscillatoryPreconditionFailed(const std::string& detail)
        : std::runtime_error("oscillatory quadrature precondition failed: " + detail) {}
};

using Integrand = std::function<double(double)>;

enum class Phase { cos, sin };

// f may behave like (x - a)^h near a; pass h > -1 as left_exponent to regularize.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadConfig& cfg = {},
                              std::optional<double> left_exponent = std::nullopt);

QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadConfig& cfg = {},
                                 std::optional<double> left_exponent = std::nullopt);

// \int_a^\infty f(t) cos(freq t) dt (or sin) for an eventually decreasing envelope f.
QuadResult integrate_oscillatory(const Integrand& f, double freq, Phase phase, double a,
                                 const QuadConfig& cfg = {},
                                 std::optional<double> left_exponent = std::nullopt);

// Iterated averaging of the trailing `levels + 1` partial sums.
double euler_average(const double* sums, int count, int levels);

// Levin u-transform of partial sums S[0..] with terms a[0..].
double levin_u(const double* sums, const double* terms, int n, int k);

}  // namespace gle
