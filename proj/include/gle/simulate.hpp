#pragma once

#include "gle/msd.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gle {

// ---- Prony surrogate -------------------------------------------------------

struct PronyFit {
    BernsteinMeasure measure;  // atoms only
    double sup_rel_error = 0.0;
    bool exact = false;  // the kernel already is a finite exponential sum
};

class PronyAccuracyNotMet : public std::runtime_error {
public:
    PronyAccuracyNotMet(double achieved, PronyFit fit)
        : std::runtime_error("prony accuracy not met (achieved sup-rel error " + std::to_string(achieved) + ")"),
          best(std::move(fit)) {}
    PronyFit best;
};

// Rates are fixed log-spaced over [0.3 / t_b, 1 / t_a]; weights are fitted by nonnegative least squares and
// refined toward the minimax relative error. The error is measured on 400 log-spaced points of [t_a, t_b].
PronyFit prony_fit(const MemoryKernel& kernel, int n_modes, double t_a, double t_b,
                   std::optional<double> max_error = std::nullopt);

// min ||A w - b||_2 subject to w >= 0 (Lawson-Hanson active set).
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

// ---- Markovian embedding ----------------------------------------------------

class InvalidEmbedding : public std::invalid_argument {
public:
    explicit InvalidEmbedding(const std::string& why) : std::invalid_argument("invalid embedding: " + why) {}
};

class NoStationaryCovariance : public std::domain_error {
public:
    NoStationaryCovariance() : std::domain_error("no stationary covariance") {}
};

// dY = A Y dt + B dW. State (x, v, z_1..z_N, f_1..f_N), or (v, z, f) for gamma = 0, where
// z_n = \int e^{-x_n (t-s)} v(s) ds and sum_n f_n = sqrt(beta k_BT) F(t).
struct LinearSde {
    Eigen::MatrixXd drift;
    Eigen::MatrixXd noise;
    std::vector<std::string> labels;
    GleParams params;
    std::vector<Atom> atoms;

    int dim() const { return static_cast<int>(drift.rows()); }
    // index of a label, or -1
    int index(const std::string& label) const;
};

LinearSde markovian_embedding(const GleParams& params, const BernsteinMeasure& atoms);

// Bartels-Stewart on the complex Schur form of the drift; throws NoStationaryCovariance for unstable drift.
Eigen::MatrixXd lyapunov_stationary_cov(const LinearSde& sde);

// ---- Ensembles --------------------------------------------------------------

enum class Scheme { exact_ou_exponential, euler_maruyama, spectral };

const char* scheme_name(Scheme s);

struct Ensemble {
    Scheme scheme = Scheme::exact_ou_exponential;
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> times;        // recorded times
    std::vector<std::string> labels;  // recorded state components
    int n_paths = 0;
    // state[(p * times.size() + k) * labels.size() + c]
    std::vector<double> state;
    // cumulative trapezoid integrals of x and v on the integration step, at the recorded times
    std::vector<double> x_integral;
    std::vector<double> v_integral;
    std::vector<std::string> warnings;

    std::size_t n_times() const { return times.size(); }
    double at(int path, std::size_t k, int component) const {
        return state[(static_cast<std::size_t>(path) * times.size() + k) * labels.size() + component];
    }
    int component(const std::string& label) const;
};

struct SimulationOptions {
    double dt = 0.01;
    double t_max = 100.0;
    int n_paths = 1000;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::exact_ou_exponential;
    int record_stride = 0;  // 0: chosen so that at most 1000 intervals are recorded
};

// Stationary initial draw from the Lyapunov covariance, then stepping with the chosen scheme.
Ensemble simulate_paths(const LinearSde& sde, const SimulationOptions& opt);

// Independent per-path stream: mt19937_64 seeded by splitmix64 of (seed, path).
std::uint64_t path_seed(std::uint64_t seed, std::uint64_t path);

enum class IntegralQuantity { x_integral, v_integral };

MsdCurve ensemble_msd(const Ensemble& ens, IntegralQuantity q);

class SpectralGridRejected : public std::invalid_argument {
public:
    explicit SpectralGridRejected(const std::string& why) : std::invalid_argument("spectral grid rejected: " + why) {}
};

// Stationary (x, v) paths as sums over frequency cells [omega_grid[k], omega_grid[k+1]] plus the cell
// [0, omega_grid[0]], each carrying exactly its quadrature mass of r11 and r22.
Ensemble spectral_sample(const SpectralDensityCtx& ctx, const std::vector<double>& omega_grid,
                         const std::vector<double>& t_grid, int n_paths, std::uint64_t seed);

}  // namespace gle
