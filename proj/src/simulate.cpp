#include "gle/simulate.hpp"
#include "gle/parallel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace gle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// ---- NNLS / Prony -------------------------------------------------------------

VectorXd nnls(const MatrixXd& A, const VectorXd& b) {
    const int n = static_cast<int>(A.cols());
    VectorXd w = VectorXd::Zero(n);
    std::vector<bool> passive(n, false);
    const double tol = 10.0 * std::numeric_limits<double>::epsilon() * A.cwiseAbs().colwise().sum().maxCoeff() *
                       std::max(A.rows(), A.cols());

    auto solve_passive = [&](VectorXd& s) {
        std::vector<int> idx;
        for (int j = 0; j < n; ++j)
            if (passive[j]) idx.push_back(j);
        MatrixXd Ap(A.rows(), idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(k) = A.col(idx[k]);
        const VectorXd sp = Ap.colPivHouseholderQr().solve(b);
        s.setZero(n);
        for (std::size_t k = 0; k < idx.size(); ++k) s[idx[k]] = sp[k];
    };

    for (int outer = 0; outer < 3 * n + 10; ++outer) {
        const VectorXd g = A.transpose() * (b - A * w);
        int j_max = -1;
        double g_max = tol;
        for (int j = 0; j < n; ++j)
            if (!passive[j] && g[j] > g_max) {
                g_max = g[j];
                j_max = j;
            }
        if (j_max < 0) break;
        passive[j_max] = true;

        VectorXd s;
        for (int inner = 0; inner < 3 * n + 10; ++inner) {
            solve_passive(s);
            bool feasible = true;
            for (int j = 0; j < n; ++j)
                if (passive[j] && s[j] <= 0.0) feasible = false;
            if (feasible) break;
            double alpha = 1.0;
            for (int j = 0; j < n; ++j)
                if (passive[j] && s[j] <= 0.0) alpha = std::min(alpha, w[j] / (w[j] - s[j]));
            w += alpha * (s - w);
            for (int j = 0; j < n; ++j)
                if (passive[j] && w[j] <= tol) {
                    passive[j] = false;
                    w[j] = 0.0;
                }
        }
        for (int j = 0; j < n; ++j) w[j] = passive[j] ? s[j] : 0.0;
    }
    return w;
}

namespace {

std::vector<double> log_points(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = n == 1 ? std::sqrt(a * b) : a * std::pow(b / a, double(i) / (n - 1));
    return g;
}

double sup_rel_error(const BernsteinMeasure& mu, const MemoryKernel& k, const std::vector<double>& ts) {
    double e = 0.0;
    for (double t : ts) e = std::max(e, std::fabs(mu.laplace(t) / kernel_eval(k, t) - 1.0));
    return e;
}

}  // namespace

PronyFit prony_fit(const MemoryKernel& kernel, int n_modes, double t_a, double t_b, std::optional<double> max_error) {
    if (n_modes < 1) throw std::invalid_argument("prony needs at least one mode");
    if (!(t_a > 0.0) || !(t_b > t_a) || !std::isfinite(t_b)) throw std::invalid_argument("prony needs 0 < t_a < t_b");
    const auto ts = log_points(t_a, t_b, 400);
    for (double t : ts)
        if (!(kernel_eval(kernel, t) > 0.0)) throw std::invalid_argument("kernel not positive on the prony range");

    PronyFit fit;
    if (std::holds_alternative<GeneralizedRouse>(kernel.v) || std::holds_alternative<ExpMixture>(kernel.v)) {
        std::map<double, double> merged;
        for (const auto& a : bernstein_of(kernel).atoms) merged[a.x] += a.w;
        if (static_cast<int>(merged.size()) <= n_modes) {
            for (auto it = merged.rbegin(); it != merged.rend(); ++it) fit.measure.atoms.push_back({it->first, it->second});
            fit.exact = true;
            fit.sup_rel_error = sup_rel_error(fit.measure, kernel, ts);
            return fit;
        }
    }

    const auto rates = log_points(0.3 / t_b, 1.0 / t_a, n_modes);
    const int M = static_cast<int>(ts.size());
    MatrixXd A(M, n_modes);
    for (int i = 0; i < M; ++i) {
        const double k = kernel_eval(kernel, ts[i]);
        for (int j = 0; j < n_modes; ++j) A(i, j) = std::exp(-rates[j] * ts[i]) / k;
    }
    const VectorXd ones = VectorXd::Ones(M);

    auto measure_of = [&](const VectorXd& w) {
        BernsteinMeasure mu;
        for (int j = 0; j < n_modes; ++j)
            if (w[j] > 0.0) mu.atoms.push_back({rates[j], w[j]});
        return mu;
    };
    auto sup_err = [&](const VectorXd& w) { return ((A * w) - ones).cwiseAbs().maxCoeff(); };

    // Lawson's iteration: reweight the least-squares rows by the current residual to approach the minimax fit.
    VectorXd u = VectorXd::Constant(M, 1.0 / M);
    VectorXd best = nnls(A, ones);
    double best_err = sup_err(best);
    for (int it = 0; it < 200; ++it) {
        const VectorXd s = u.cwiseSqrt();
        const VectorXd w = nnls(s.asDiagonal() * A, s.cwiseProduct(ones));
        const double e = sup_err(w);
        if (e < best_err) {
            best_err = e;
            best = w;
        }
        const VectorXd r = ((A * w) - ones).cwiseAbs();
        u = u.cwiseProduct(r);
        const double total = u.sum();
        if (!(total > 0.0)) break;
        u /= total;
    }
    fit.measure = measure_of(best);
    fit.sup_rel_error = sup_rel_error(fit.measure, kernel, ts);
    if (max_error && fit.sup_rel_error > *max_error) throw PronyAccuracyNotMet(fit.sup_rel_error, fit);
    return fit;
}

// ---- embedding / Lyapunov -----------------------------------------------------

int LinearSde::index(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    return -1;
}

LinearSde markovian_embedding(const GleParams& params, const BernsteinMeasure& atoms) {
    params.validate(true);
    if (atoms.density) throw InvalidEmbedding("measure has a continuous part; fit a Prony surrogate first");
    for (const auto& a : atoms.atoms) {
        if (!(a.x > 0.0) || !std::isfinite(a.x)) throw InvalidEmbedding("rate must be positive");
        if (!(a.w > 0.0) || !std::isfinite(a.w)) throw InvalidEmbedding("weight must be positive");
    }
    const int N = static_cast<int>(atoms.atoms.size());
    const bool trapped = !params.free_particle();
    const int off = trapped ? 1 : 0;
    const int dim = off + 1 + 2 * N;
    const int iv = off;

    LinearSde sde;
    sde.params = params;
    sde.atoms = atoms.atoms;
    sde.drift = MatrixXd::Zero(dim, dim);
    sde.noise = MatrixXd::Zero(dim, N + 1);
    const double m = params.m;
    if (trapped) {
        sde.labels.push_back("x");
        sde.drift(0, iv) = 1.0;
        sde.drift(iv, 0) = -params.gamma / m;
    }
    sde.labels.push_back("v");
    sde.drift(iv, iv) = -params.lambda / m;
    sde.noise(iv, 0) = std::sqrt(2.0 * params.lambda * params.kbt) / m;
    for (int n = 0; n < N; ++n) sde.labels.push_back("z" + std::to_string(n + 1));
    for (int n = 0; n < N; ++n) sde.labels.push_back("f" + std::to_string(n + 1));
    for (int n = 0; n < N; ++n) {
        const auto [x, w] = atoms.atoms[n];
        const int iz = iv + 1 + n, jf = iv + 1 + N + n;
        sde.drift(iv, iz) = -params.beta * w / m;
        sde.drift(iv, jf) = 1.0 / m;
        sde.drift(iz, iv) = 1.0;
        sde.drift(iz, iz) = -x;
        sde.drift(jf, jf) = -x;
        sde.noise(jf, n + 1) = std::sqrt(2.0 * x * params.beta * params.kbt * w);
    }
    return sde;
}

MatrixXd lyapunov_stationary_cov(const LinearSde& sde) {
    using CM = Eigen::MatrixXcd;
    const MatrixXd& A = sde.drift;
    const int n = static_cast<int>(A.rows());
    Eigen::ComplexSchur<MatrixXd> cs(A);
    const CM& U = cs.matrixU();
    const CM& T = cs.matrixT();
    for (int i = 0; i < n; ++i)
        if (!(T(i, i).real() < 0.0)) throw NoStationaryCovariance();

    const MatrixXd C = sde.noise * sde.noise.transpose();
    const CM Ct = U.adjoint() * C.cast<std::complex<double>>() * U;
    CM Y = CM::Zero(n, n);
    for (int j = n - 1; j >= 0; --j) {
        Eigen::VectorXcd rhs = -Ct.col(j);
        for (int k = j + 1; k < n; ++k) rhs -= std::conj(T(j, k)) * Y.col(k);
        CM M = T;
        M.diagonal().array() += std::conj(T(j, j));
        Y.col(j) = M.triangularView<Eigen::Upper>().solve(rhs);
    }
    MatrixXd S = (U * Y * U.adjoint()).real();
    return 0.5 * (S + S.transpose());
}

// ---- path simulation ----------------------------------------------------------

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::exact_ou_exponential: return "exact";
        case Scheme::euler_maruyama: return "euler";
        case Scheme::spectral: return "spectral";
    }
    return "?";
}

int Ensemble::component(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    return -1;
}

std::uint64_t path_seed(std::uint64_t seed, std::uint64_t path) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(seed) ^ path);
}

namespace {

// Symmetric PSD square root factor L with L L^T = S (negative eigenvalues from roundoff clipped).
MatrixXd psd_factor(const MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
    const VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * d.asDiagonal();
}

}  // namespace

Ensemble simulate_paths(const LinearSde& sde, const SimulationOptions& opt) {
    if (!(opt.dt > 0.0) || !std::isfinite(opt.dt)) throw std::invalid_argument("dt must be positive");
    if (!(opt.t_max > 0.0) || !std::isfinite(opt.t_max)) throw std::invalid_argument("t_max must be positive");
    if (opt.n_paths < 0) throw std::invalid_argument("n_paths must be non-negative");
    if (opt.scheme == Scheme::spectral) throw std::invalid_argument("spectral scheme is produced by spectral_sample");

    const long n_steps = std::max(1L, std::lround(opt.t_max / opt.dt));
    const long stride = opt.record_stride > 0 ? opt.record_stride : std::max(1L, (n_steps + 999) / 1000);
    const int dim = sde.dim();
    const int ix = sde.index("x"), iv = sde.index("v");

    Ensemble ens;
    ens.scheme = opt.scheme;
    ens.dt = opt.dt;
    ens.seed = opt.seed;
    ens.labels = sde.labels;
    ens.n_paths = opt.n_paths;
    for (long k = 0; k <= n_steps; k += stride) ens.times.push_back(k * opt.dt);
    const std::size_t R = ens.times.size();

    const MatrixXd Sigma = lyapunov_stationary_cov(sde);
    const MatrixXd L0 = psd_factor(Sigma);
    MatrixXd Phi, Lq;
    if (opt.scheme == Scheme::exact_ou_exponential) {
        Phi = (sde.drift * opt.dt).exp();
        Lq = psd_factor(Sigma - Phi * Sigma * Phi.transpose());
    } else {
        Phi = MatrixXd::Identity(dim, dim) + sde.drift * opt.dt;
        Lq = sde.noise * std::sqrt(opt.dt);
        const auto ev = Phi.eigenvalues();
        const double rho = ev.cwiseAbs().maxCoeff();
        if (rho >= 1.0) {
            double dt_max = std::numeric_limits<double>::infinity();
            for (const auto& l : sde.drift.eigenvalues()) dt_max = std::min(dt_max, -2.0 * l.real() / std::norm(l));
            std::ostringstream os;
            os << "euler step unstable: spectral radius " << rho << " >= 1; use dt < " << dt_max
               << " or the exact scheme";
            ens.warnings.push_back(os.str());
        }
    }

    ens.state.assign(static_cast<std::size_t>(opt.n_paths) * R * dim, 0.0);
    if (ix >= 0) ens.x_integral.assign(static_cast<std::size_t>(opt.n_paths) * R, 0.0);
    ens.v_integral.assign(static_cast<std::size_t>(opt.n_paths) * R, 0.0);

    const int q = static_cast<int>(Lq.cols());
    parallel_for(static_cast<std::size_t>(opt.n_paths), [&](std::size_t p) {
        std::mt19937_64 rng(path_seed(opt.seed, p));
        std::normal_distribution<double> normal;
        VectorXd xi(std::max<int>(dim, q));
        auto draw = [&](int k) {
            for (int i = 0; i < k; ++i) xi[i] = normal(rng);
            return xi.head(k);
        };
        VectorXd y = L0 * draw(dim);
        VectorXd next(dim);
        double Ix = 0.0, Iv = 0.0;
        std::size_t rec = 0;
        auto record = [&] {
            double* dst = &ens.state[(p * R + rec) * dim];
            for (int c = 0; c < dim; ++c) dst[c] = y[c];
            if (ix >= 0) ens.x_integral[p * R + rec] = Ix;
            ens.v_integral[p * R + rec] = Iv;
            ++rec;
        };
        record();
        for (long k = 1; k <= n_steps; ++k) {
            next.noalias() = Phi * y;
            next.noalias() += Lq * draw(q);
            if (ix >= 0) Ix += 0.5 * opt.dt * (y[ix] + next[ix]);
            Iv += 0.5 * opt.dt * (y[iv] + next[iv]);
            y.swap(next);
            if (k % stride == 0) record();
        }
    });
    return ens;
}

MsdCurve ensemble_msd(const Ensemble& ens, IntegralQuantity q) {
    if (ens.n_paths <= 0) throw std::invalid_argument("ensemble is empty");
    const auto& I = q == IntegralQuantity::x_integral ? ens.x_integral : ens.v_integral;
    if (I.empty()) throw std::invalid_argument("ensemble has no position component");
    const std::size_t R = ens.n_times();
    MsdCurve c;
    c.quantity = q == IntegralQuantity::x_integral ? MsdQuantity::position_integral : MsdQuantity::velocity_integral;
    const double n = ens.n_paths;
    for (std::size_t k = 0; k < R; ++k) {
        if (!(ens.times[k] > 0.0)) continue;
        double s = 0.0, s2 = 0.0;
        for (int p = 0; p < ens.n_paths; ++p) {
            const double v = I[p * R + k] * I[p * R + k];
            s += v;
            s2 += v * v;
        }
        const double mean = s / n;
        const double var = n > 1 ? std::max(0.0, (s2 - n * mean * mean) / (n - 1)) : 0.0;
        c.times.push_back(ens.times[k]);
        c.values.push_back(mean);
        c.stderrs.push_back(std::sqrt(var / n));
    }
    return c;
}

// ---- spectral sampler ---------------------------------------------------------

Ensemble spectral_sample(const SpectralDensityCtx& ctx, const std::vector<double>& omega_grid,
                         const std::vector<double>& t_grid, int n_paths, std::uint64_t seed) {
    if (ctx.params.free_particle()) throw FreeParticlePosition();
    if (n_paths < 0) throw std::invalid_argument("n_paths must be non-negative");
    if (omega_grid.size() < 2) throw SpectralGridRejected("need at least two frequencies");
    for (std::size_t i = 0; i < omega_grid.size(); ++i)
        if (!(omega_grid[i] > 0.0) || (i > 0 && !(omega_grid[i] > omega_grid[i - 1])))
            throw SpectralGridRejected("frequencies must be positive and increasing");
    if (t_grid.empty() || !(t_grid.front() >= 0.0)) throw SpectralGridRejected("time grid must start at t >= 0");
    double dt_max = 0.0;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) throw SpectralGridRejected("times must be increasing");
        dt_max = std::max(dt_max, t_grid[i] - t_grid[i - 1]);
    }
    const double t_span = t_grid.back();
    const double pi = std::numbers::pi;
    if (omega_grid.back() * dt_max > pi) {
        std::ostringstream os;
        os << "Nyquist violation: omega_max * dt = " << omega_grid.back() * dt_max << " > pi";
        throw SpectralGridRejected(os.str());
    }

    std::vector<double> edges{0.0};
    edges.insert(edges.end(), omega_grid.begin(), omega_grid.end());
    const std::size_t K = edges.size() - 1;
    std::vector<double> m11(K), m22(K), freq(K);
    const double f = ctx.params.kbt / pi;
    const auto hint = origin_exponent(ctx);
    parallel_for(K, [&](std::size_t k) {
        auto g11 = [&](double w) { return r11(ctx, w); };
        auto g22 = [&](double w) { return r22(ctx, w); };
        const auto h = k == 0 ? hint : std::nullopt;
        m11[k] = f * integrate_adaptive(g11, edges[k], edges[k + 1], ctx.quad, h).value;
        m22[k] = f * integrate_adaptive(g22, edges[k], edges[k + 1], ctx.quad).value;
        freq[k] = m11[k] > 0.0 ? std::sqrt(m22[k] / m11[k]) : 0.5 * (edges[k] + edges[k + 1]);
    });
    double total = 0.0;
    for (double v : m11) total += v;
    for (std::size_t k = 0; k < K; ++k) {
        if (total > 0.0 && m11[k] > 1e-4 * total && (edges[k + 1] - edges[k]) * t_span > pi) {
            std::ostringstream os;
            os << "cell [" << edges[k] << ", " << edges[k + 1] << "] too wide for t_max = " << t_span;
            throw SpectralGridRejected(os.str());
        }
    }

    Ensemble ens;
    ens.scheme = Scheme::spectral;
    ens.dt = dt_max;
    ens.seed = seed;
    ens.times = t_grid;
    ens.labels = {"x", "v"};
    ens.n_paths = n_paths;
    const std::size_t R = t_grid.size();
    ens.state.assign(static_cast<std::size_t>(n_paths) * R * 2, 0.0);
    ens.x_integral.assign(static_cast<std::size_t>(n_paths) * R, 0.0);
    ens.v_integral.assign(static_cast<std::size_t>(n_paths) * R, 0.0);

    parallel_for(static_cast<std::size_t>(n_paths), [&](std::size_t p) {
        std::mt19937_64 rng(path_seed(seed, p));
        std::normal_distribution<double> normal;
        std::vector<double> a(K), b(K);
        for (std::size_t k = 0; k < K; ++k) {
            const double s = std::sqrt(m11[k]);
            a[k] = s * normal(rng);
            b[k] = s * normal(rng);
        }
        for (std::size_t r = 0; r < R; ++r) {
            double x = 0.0, v = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                const double c = std::cos(freq[k] * t_grid[r]), s = std::sin(freq[k] * t_grid[r]);
                x += a[k] * c + b[k] * s;
                v += freq[k] * (b[k] * c - a[k] * s);
            }
            ens.state[(p * R + r) * 2] = x;
            ens.state[(p * R + r) * 2 + 1] = v;
            if (r > 0) {
                const double h = t_grid[r] - t_grid[r - 1];
                ens.x_integral[p * R + r] = ens.x_integral[p * R + r - 1] + 0.5 * h * (x + ens.state[(p * R + r - 1) * 2]);
                ens.v_integral[p * R + r] = ens.v_integral[p * R + r - 1] + 0.5 * h * (v + ens.state[(p * R + r - 1) * 2 + 1]);
            }
        }
    });
    return ens;
}

}  // namespace gle
