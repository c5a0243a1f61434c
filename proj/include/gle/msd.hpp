#pragma once

#include "gle/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gle {

struct Moment {
    double value = 0.0;
    double error = 0.0;
};

Moment var_x0(const SpectralDensityCtx& ctx);
Moment var_v0(const SpectralDensityCtx& ctx);

double msd_x(const SpectralDensityCtx& ctx, double t);
double msd_v(const SpectralDensityCtx& ctx, double t);

// (k_BT/pi) \int_R cos(t w) r11(w) dw, the term that separates msd_v from 2 var_x0.
double cos_correlation(const SpectralDensityCtx& ctx, double t);

// Analytic zero, or with diagnostic = true the sum of the two mirrored half-line integrals of the odd integrand.
double cross_cov(const SpectralDensityCtx& ctx, double t, bool diagnostic = false);

enum class MsdQuantity { position_integral, velocity_integral };

struct MsdCurve {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> stderrs;  // empty for quadrature curves
    MsdQuantity quantity = MsdQuantity::position_integral;
};

MsdCurve msd_curve(const SpectralDensityCtx& ctx, const std::vector<double>& times, MsdQuantity q);

std::vector<double> log_grid(double a, double b, int n);

struct EquipartitionReport {
    std::optional<double> gamma_x_ratio;
    double m_v_ratio = 0.0;
    double err_x = 0.0;
    double err_v = 0.0;
    std::vector<std::string> failures;
};

EquipartitionReport equipartition_report(const SpectralDensityCtx& ctx);

// Smallest grid time from which msd_v / (2 var_x0) stays inside [1 - band, 1 + band].
struct Saturation {
    std::optional<double> t_star;
    std::vector<double> ratios;
};

Saturation velocity_saturation(const SpectralDensityCtx& ctx, const std::vector<double>& times, double band = 0.01);

enum class GrowthModel { pure_power, t_log_t };

struct GrowthFit {
    GrowthModel model = GrowthModel::pure_power;
    // pure_power: fitted exponent; t_log_t: mean of v / (t log t)
    double value = 0.0;
    // pure_power: prefactor exp(intercept); t_log_t: unused
    double prefactor = 0.0;
    // pure_power: coefficient of determination; t_log_t: relative drift over the last decade
    double goodness = 0.0;
    double drift = 0.0;
    int points = 0;
};

class FitRejected : public std::runtime_error {
public:
    explicit FitRejected(const std::string& why) : std::runtime_error("fit rejected: " + why) {}
};

GrowthFit fit_growth_exponent(const MsdCurve& curve, double t_min, double t_max, GrowthModel model);

}  // namespace gle
