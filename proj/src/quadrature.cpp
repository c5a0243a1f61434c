#include "gle/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace gle {

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("QuadConfig: tolerances must be positive");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadConfig: max_subdivisions must be at least 1");
    if (oscillation == OscillationMode::split_at_zeros && !(oscillation_period > 0.0))
        throw std::invalid_argument("QuadConfig: split_at_zeros needs a positive oscillation_period");
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 15-point abscissae and weights on [-1,1]; odd entries carry the Gauss 7-point rule.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error, resabs;
    bool operator<(const Segment& o) const { return error < o.error; }
};

double checked(const Integrand& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        QuadResult r;
        throw QuadratureError("integrand not finite at x = " + std::to_string(x), r);
    }
    return y;
}

Segment gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = checked(f, c);
    double resk = fc * wgk[7];
    double resg = fc * wg[3];
    double resabs = std::fabs(resk);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        f1[j] = checked(f, c - dx);
        f2[j] = checked(f, c + dx);
        const double s = f1[j] + f2[j];
        resk += wgk[j] * s;
        resabs += wgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
        if (j % 2 == 1) resg += wg[j / 2] * s;
    }
    const double mean = 0.5 * resk;
    double resasc = wgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));

    const double value = resk * h;
    resabs *= std::fabs(h);
    resasc *= std::fabs(h);
    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    return {a, b, value, err, resabs};
}

QuadResult adaptive_core(const Integrand& f, double a, double b, const QuadConfig& cfg) {
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    heap.push(first);
    double total = first.value, err = first.error, resabs = first.resabs;
    double frozen_value = 0.0, frozen_error = 0.0;
    int intervals = 1, evals = 15;

    auto done = [&] {
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total));
        return err <= tol || err <= 100.0 * kEps * resabs;
    };

    while (!done()) {
        if (heap.empty() || intervals >= cfg.max_subdivisions) {
            QuadResult best{total, err, evals, intervals};
            throw QuadratureError("tolerance not met", best);
        }
        Segment s = heap.top();
        heap.pop();
        const double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b) || (s.b - s.a) < 1e3 * kEps * std::max(std::fabs(s.a), std::fabs(s.b))) {
            frozen_value += s.value;
            frozen_error += s.error;
            continue;
        }
        Segment l = gk15(f, s.a, mid);
        Segment r = gk15(f, mid, s.b);
        evals += 30;
        ++intervals;
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        resabs += l.resabs + r.resabs - s.resabs;
        heap.push(l);
        heap.push(r);
    }
    // Recompute sums from the segments to shed accumulated update roundoff.
    double v = frozen_value, e = frozen_error;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    return {v, e, evals, intervals};
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadConfig& cfg,
                              std::optional<double> left_exponent) {
    cfg.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        if (a == b) return {};
        throw std::invalid_argument("integrate_adaptive: need finite a < b");
    }
    if (left_exponent && *left_exponent != 0.0) {
        const double h = *left_exponent;
        if (!(h > -1.0)) throw std::invalid_argument("integrate_adaptive: singularity exponent must exceed -1");
        // x = a + u^p maps (x-a)^h to a bounded integrand in u.
        const double p = 1.0 / (1.0 + h);
        Integrand g = [&f, a, p](double u) {
            if (u <= 0.0) return 0.0;
            const double up = std::pow(u, p);
            // below the resolution of a the mapped point carries no measure
            if (a + up == a) return 0.0;
            return p * (up / u) * f(a + up);
        };
        return adaptive_core(g, 0.0, std::pow(b - a, 1.0 + h), cfg);
    }
    return adaptive_core(f, a, b, cfg);
}

double euler_average(const double* sums, int count, int levels) {
    levels = std::min(levels, count - 1);
    std::vector<double> s(sums + (count - levels - 1), sums + count);
    for (int l = 0; l < levels; ++l)
        for (std::size_t j = 0; j + 1 < s.size() - l; ++j) s[j] = 0.5 * (s[j] + s[j + 1]);
    return s[0];
}

double levin_u(const double* sums, const double* terms, int n, int k) {
    const double beta = 1.0;
    double num = 0.0, den = 0.0, binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        const double ratio = std::pow((beta + n + j) / (beta + n + k), k - 1);
        const double c = ((j % 2) ? -1.0 : 1.0) * binom * ratio;
        const double om = (beta + n + j) * terms[n + j];
        num += c * sums[n + j] / om;
        den += c / om;
        binom = binom * (k - j) / (j + 1);
    }
    return num / den;
}

namespace {

QuadResult periodic_tail(const Integrand& f, double a, const QuadConfig& cfg, std::optional<double> left_exponent) {
    constexpr int kChunks = 16;
    const double P = cfg.oscillation_period;
    QuadConfig piece = cfg;
    piece.abs_tol = cfg.abs_tol / kChunks;
    std::array<double, kChunks> terms{}, sums{};
    QuadResult out;
    double acc = 0.0, errsum = 0.0;
    for (int k = 0; k < kChunks; ++k) {
        const auto r = integrate_adaptive(f, a + k * P, a + (k + 1) * P, piece,
                                          k == 0 ? left_exponent : std::nullopt);
        terms[k] = r.value;
        acc += r.value;
        sums[k] = acc;
        errsum += r.error;
        out.evaluations += r.evaluations;
        out.intervals += r.intervals;
    }
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(acc));
    bool tiny = false;
    for (int k = 1; k < kChunks; ++k) tiny = tiny || terms[k] == 0.0;
    if (tiny || std::fabs(terms[kChunks - 1]) < 0.01 * tol) {
        out.value = acc;
        out.error = errsum + std::fabs(terms[kChunks - 1]);
        return out;
    }
    const double lo = levin_u(sums.data(), terms.data(), 1, 8);
    const double hi = levin_u(sums.data(), terms.data(), 2, 10);
    out.value = hi;
    out.error = errsum + std::fabs(hi - lo);
    if (std::fabs(sums[kChunks - 1]) > 1e3 * std::fabs(sums[kChunks / 2]) + tol)
        throw DivergentTail(out);
    if (out.error > 10.0 * tol) throw QuadratureError("tolerance not met", out);
    return out;
}

}  // namespace

QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadConfig& cfg,
                                 std::optional<double> left_exponent) {
    cfg.validate();
    if (!std::isfinite(a)) throw std::invalid_argument("integrate_to_infinity: a must be finite");
    if (cfg.oscillation == OscillationMode::split_at_zeros) return periodic_tail(f, a, cfg, left_exponent);

    const double b = a < 1.0 ? 1.0 : 2.0 * a;
    QuadConfig half = cfg;
    half.abs_tol = 0.5 * cfg.abs_tol;

    // Tail x = b e^s, s = v/(1-v): algebraic decay becomes exponential decay in s.
    Integrand g = [&f, b](double v) {
        const double s = v / (1.0 - v);
        if (s > 700.0) return 0.0;
        const double x = b * std::exp(s);
        if (!std::isfinite(x)) return 0.0;
        const double jac = 1.0 / ((1.0 - v) * (1.0 - v));
        return f(x) * x * jac;
    };
    const double x1 = b * std::exp(20.0), x2 = b * std::exp(40.0);
    if (std::isfinite(x2)) {
        const double m1 = std::fabs(f(x1) * x1), m2 = std::fabs(f(x2) * x2);
        if (!std::isfinite(m1) || !std::isfinite(m2) || (m2 > 0.5 * m1 && m2 > cfg.abs_tol))
            throw DivergentTail(QuadResult{});
    }

    QuadResult head{};
    if (a < b) head = integrate_adaptive(f, a, b, half, left_exponent);
    QuadResult tail;
    try {
        tail = adaptive_core(g, 0.0, 1.0, half);
    } catch (const QuadratureError& e) {
        QuadResult best{head.value + e.best.value, head.error + e.best.error,
                        head.evaluations + e.best.evaluations, head.intervals + e.best.intervals};
        throw QuadratureError(e.what(), best);
    }
    return {head.value + tail.value, head.error + tail.error, head.evaluations + tail.evaluations,
            head.intervals + tail.intervals};
}

QuadResult integrate_oscillatory(const Integrand& f, double freq, Phase phase, double a,
                                 const QuadConfig& cfg, std::optional<double> left_exponent) {
    cfg.validate();
    if (!(freq != 0.0) || !std::isfinite(freq))
        throw std::invalid_argument("integrate_oscillatory: frequency must be finite and nonzero");
    if (!std::isfinite(a)) throw std::invalid_argument("integrate_oscillatory: a must be finite");

    constexpr int kPieces = 50;
    constexpr int kShortPieces = 30;
    const double w = std::fabs(freq);
    const double sign = (phase == Phase::sin && freq < 0.0) ? -1.0 : 1.0;
    const double half = std::numbers::pi / w;
    const double offset = phase == Phase::cos ? 0.5 : 0.0;

    auto zero = [&](long k) { return (k + offset) * half; };
    long k0 = static_cast<long>(std::floor(a / half - offset)) + 1;
    while (zero(k0) <= a + 1e-9 * half) ++k0;

    Integrand g = [&f, w, phase](double t) {
        return f(t) * (phase == Phase::cos ? std::cos(w * t) : std::sin(w * t));
    };

    QuadConfig piece = cfg;
    piece.abs_tol = cfg.abs_tol / (kPieces + 1);
    std::vector<double> sums(kPieces + 1);
    QuadResult out;
    double acc = 0.0, errsum = 0.0;
    for (int j = 0; j <= kPieces; ++j) {
        const double lo = j == 0 ? a : zero(k0 + j - 1);
        const double hi = zero(k0 + j);
        if (j == 0) {
            // A long first piece at low frequency hides envelope structure near a; cut it geometrically.
            const double len = hi - lo;
            double left = lo;
            for (int d = 6; d >= 0; --d) {
                const double right = d == 0 ? hi : lo + len * std::pow(10.0, -d);
                const auto r = integrate_adaptive(g, left, right, piece,
                                                  left == lo ? left_exponent : std::nullopt);
                acc += r.value;
                errsum += r.error;
                out.evaluations += r.evaluations;
                out.intervals += r.intervals;
                left = right;
            }
            sums[j] = acc;
            continue;
        }
        const auto r = integrate_adaptive(g, lo, hi, piece);
        acc += r.value;
        sums[j] = acc;
        errsum += r.error;
        out.evaluations += r.evaluations;
        out.intervals += r.intervals;
    }

    double prev = std::fabs(f(zero(k0 + kPieces - 25)));
    for (int j = kPieces - 24; j <= kPieces; ++j) {
        const double cur = std::fabs(f(zero(k0 + j)));
        if (cur > prev * (1.0 + 1e-10) + std::numeric_limits<double>::min())
            throw OscillatoryPreconditionFailed("envelope increases near t = " + std::to_string(zero(k0 + j)));
        prev = cur;
    }

    const double coarse = euler_average(sums.data(), kShortPieces + 1, 15);
    const double fine = euler_average(sums.data(), kPieces + 1, 25);
    out.value = sign * fine;
    out.error = errsum + std::fabs(fine - coarse);
    if (out.error > 100.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(fine)))
        throw QuadratureError("tolerance not met", out);
    return out;
}

}  // namespace gle
