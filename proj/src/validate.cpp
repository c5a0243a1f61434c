#include "gle/kernel.hpp"
#include "gle/transforms.hpp"

#include <cmath>
#include <sstream>

namespace gle {

namespace {

constexpr double kProbeOmegas[] = {0.1, 1.0, 10.0};

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("validate_kernel: probe grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
            throw std::invalid_argument("validate_kernel: probe times must be positive and finite");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("validate_kernel: probe grid must be strictly increasing");
    }
}

std::string at(const char* what, double t) {
    std::ostringstream os;
    os << what << " at t = " << t;
    return os.str();
}

template <class Eval, class Kcos>
KernelValidation run_checks(Eval K, Kcos kcos, const std::vector<double>& grid) {
    check_grid(grid);
    KernelValidation rep;
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double a = K(t), b = K(-t);
        vals[i] = a;
        if (!(std::fabs(a - b) <= 1e-14 * std::fabs(a))) {
            if (rep.symmetric) rep.failures.push_back(at("asymmetric", t));
            rep.symmetric = false;
        }
        if (!(a > 0.0) || !std::isfinite(a)) {
            if (rep.positive) rep.failures.push_back(at("non-positive value", t));
            rep.positive = false;
        }
    }
    for (std::size_t i = grid.size() / 2 + 1; i < grid.size(); ++i) {
        if (vals[i] > vals[i - 1]) {
            if (rep.monotone_tail) rep.failures.push_back(at("tail increases", grid[i]));
            rep.monotone_tail = false;
        }
    }
    for (double w : kProbeOmegas) {
        double v = 0.0;
        try {
            v = kcos(w);
        } catch (const std::exception& e) {
            rep.failures.push_back("kcos evaluation failed at omega = " + std::to_string(w) + ": " + e.what());
            rep.kcos_positive = false;
            continue;
        }
        if (!(v > 0.0)) {
            rep.failures.push_back("kcos not positive at omega = " + std::to_string(w));
            rep.kcos_positive = false;
        }
    }
    return rep;
}

}  // namespace

KernelValidation validate_kernel(const MemoryKernel& k, const std::vector<double>& probe_grid) {
    return run_checks([&k](double t) { return kernel_eval(k, t); },
                      [&k](double w) { return transform(k, w).kcos; }, probe_grid);
}

KernelValidation validate_kernel(const KernelFn& k, const std::vector<double>& probe_grid) {
    QuadConfig cfg;
    cfg.rel_tol = 1e-8;
    return run_checks(k, [&](double w) { return integrate_oscillatory(k, w, Phase::cos, 0.0, cfg).value; },
                      probe_grid);
}

}  // namespace gle
