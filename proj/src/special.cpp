#include "gle/special.hpp"

#include <cmath>
#include <limits>

namespace gle {

namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257388;
constexpr double kSqrtPi = 1.77245385090551602730;

void require_finite(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("faddeeva: argument must be finite");
}

// Poppe & Wijers, ACM TOMS 16 (1990), algorithm 680.
cplx wofz(double xi, double yi) {
    const double rmaxexp = std::log(std::numeric_limits<double>::max()) - 0.7;
    const double xabs = std::fabs(xi);
    const double yabs = std::fabs(yi);
    const double x = xabs / 6.3;
    const double y = yabs / 4.4;

    double qrho = x * x + y * y;
    const double xquad = xabs * xabs - yabs * yabs;
    const double yquad = 2.0 * xabs * yabs;

    const bool inner = qrho < 0.085264;
    double u = 0.0, v = 0.0, u2 = 0.0, v2 = 0.0;

    if (inner) {
        // Power series of erf around the origin, then multiply by e^{-z^2}.
        qrho = (1.0 - 0.85 * y) * std::sqrt(qrho);
        const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
        int j = 2 * n + 1;
        double xsum = 1.0 / j;
        double ysum = 0.0;
        for (int i = n; i >= 1; --i) {
            j -= 2;
            const double xaux = (xsum * xquad - ysum * yquad) / i;
            ysum = (xsum * yquad + ysum * xquad) / i;
            xsum = xaux + 1.0 / j;
        }
        const double u1 = -kTwoOverSqrtPi * (xsum * yabs + ysum * xabs) + 1.0;
        const double v1 = kTwoOverSqrtPi * (xsum * xabs - ysum * yabs);
        const double daux = std::exp(-xquad);
        u2 = daux * std::cos(yquad);
        v2 = -daux * std::sin(yquad);
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        double h, h2 = 0.0, qlam = 0.0;
        int kapn, nu;
        if (qrho > 1.0) {
            h = 0.0;
            kapn = 0;
            qrho = std::sqrt(qrho);
            nu = static_cast<int>(3.0 + 1442.0 / (26.0 * qrho + 77.0));
        } else {
            qrho = (1.0 - y) * std::sqrt(1.0 - qrho);
            h = 1.88 * qrho;
            h2 = 2.0 * h;
            kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
            nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
        }
        const bool truncated = h > 0.0;
        if (truncated) qlam = std::pow(h2, kapn);

        double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
        for (int n = nu; n >= 0; --n) {
            const double np1 = n + 1.0;
            double tx = yabs + h + np1 * rx;
            const double ty = xabs - np1 * ry;
            const double c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if (truncated && n <= kapn) {
                tx = qlam + sx;
                sx = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                qlam /= h2;
            }
        }
        if (h == 0.0) {
            u = kTwoOverSqrtPi * rx;
            v = kTwoOverSqrtPi * ry;
        } else {
            u = kTwoOverSqrtPi * sx;
            v = kTwoOverSqrtPi * sy;
        }
        if (yabs == 0.0) u = std::exp(-xabs * xabs);
    }

    if (yi < 0.0) {
        // w(z) = 2 e^{-z^2} - w(-z) for the lower half-plane.
        if (inner) {
            u2 *= 2.0;
            v2 *= 2.0;
        } else {
            if (-xquad > rmaxexp)
                throw Unrepresentable("faddeeva: e^{-z^2} overflows (unrepresentable)");
            const double w1 = 2.0 * std::exp(-xquad);
            u2 = w1 * std::cos(yquad);
            v2 = -w1 * std::sin(yquad);
        }
        u = u2 - u;
        v = v2 - v;
        if (xi > 0.0) v = -v;
    } else if (xi < 0.0) {
        v = -v;
    }
    return {u, v};
}

}  // namespace

cplx faddeeva(cplx z) {
    require_finite(z);
    cplx w = wofz(z.real(), z.imag());
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw Unrepresentable("faddeeva: result not representable");
    return w;
}

double dawson(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("dawson: argument must be finite");
    return 0.5 * kSqrtPi * wofz(x, 0.0).imag();
}

cplx erfc_complex(cplx z) {
    require_finite(z);
    // erfc(z) = e^{-z^2} w(iz)
    const cplx iz(-z.imag(), z.real());
    if (iz.imag() >= 0.0) {
        const cplx w = faddeeva(iz);
        const cplx z2 = z * z;
        if (-z2.real() > std::log(std::numeric_limits<double>::max()) - 0.7) {
            if (std::abs(w) == 0.0) return {0.0, 0.0};
            throw Unrepresentable("erfc_complex: e^{-z^2} overflows (unrepresentable)");
        }
        return std::exp(-z2) * w;
    }
    // Re z < 0: erfc(z) = 2 - erfc(-z), which keeps the Faddeeva argument in the upper half-plane.
    const cplx mz = -z;
    const cplx w = faddeeva(cplx(-mz.imag(), mz.real()));
    return 2.0 - std::exp(-(mz * mz)) * w;
}

}  // namespace gle
