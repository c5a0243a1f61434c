#include "gle/msd.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace gle;

namespace {

const double pi = std::numbers::pi;

SpectralDensityCtx ctx(const std::string& spec, double gamma = 2.0, double m = 1.0, double kbt = 1.0) {
    GleParams p;
    p.m = m;
    p.lambda = 1.0;
    p.beta = 1.0;
    p.gamma = gamma;
    p.kbt = kbt;
    return SpectralDensityCtx(p, parse_kernel_spec(spec), QuadConfig{});
}

// (2 kbt / pi) \int_0^W (1 - cos t w)/w^2 r11(w) dw by 61-point Gauss-Kronrod on quarter periods;
// the remainder beyond W is below 4 \int_W^\infty r11 / w^2 ~ 1.6 / W^5, about 5e-12 for W = 200.
double msd_x_oracle(const SpectralDensityCtx& c, double t) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    auto f = [&](double w) {
        const double q = std::sin(0.5 * t * w) / w;
        return 2.0 * q * q * r11(c, w);
    };
    const double step = 0.5 * pi / t;
    // w = v^5 on the first panel turns an integrable power singularity of r11 into a smooth factor
    auto g = [&](double v) { return 5.0 * v * v * v * v * f(v * v * v * v * v); };
    double sum = GK::integrate(g, 0.0, std::pow(step, 0.2), 15, 1e-13);
    for (double a = step; a < 200.0; a += step) sum += GK::integrate(f, a, a + step, 0, 0);
    return 2.0 * c.params.kbt / pi * sum;
}

}  // namespace

TEST_CASE("stationary variances") {
    for (const char* spec : {"powerlaw:0.3", "powerlaw:0.5", "powerlaw:0.7", "rouse:[1,2,4]", "one-plus-t-inverse"}) {
        const auto c = ctx(spec);
        CHECK(var_x0(c).value == Catch::Approx(0.5).epsilon(1e-6));
        CHECK(var_v0(c).value == Catch::Approx(1.0).epsilon(1e-6));
    }
    CHECK(var_x0(ctx("rouse:[1,2]", 2.0, 1.0, 2.0)).value == Catch::Approx(2.0 * var_x0(ctx("rouse:[1,2]")).value).epsilon(1e-9));
    CHECK(var_x0(ctx("powerlaw:0.5", 1.0)).value == Catch::Approx(1.0).epsilon(1e-6));
    CHECK(var_v0(ctx("powerlaw:0.5", 0.0, 2.0)).value == Catch::Approx(0.5).epsilon(1e-6));
    CHECK(var_v0(ctx("gaussian:1")).value == Catch::Approx(1.0).epsilon(1e-6));
    const double v1 = var_v0(ctx("cauchy:1,1", 2.0, 1.0)).value;
    const double v4 = var_v0(ctx("cauchy:1,1", 2.0, 4.0)).value;
    CHECK(v4 * 4.0 == Catch::Approx(v1).epsilon(1e-6));
    CHECK_THROWS_AS(var_x0(ctx("rouse:[1]", 0.0)), FreeParticlePosition);
    const auto m = var_x0(ctx("rouse:[1,2]"));
    CHECK(m.error >= 0.0);
    CHECK(m.error < 1e-6);
}

TEST_CASE("equipartition report") {
    const auto a = equipartition_report(ctx("powerlaw:0.3", 1.0));
    REQUIRE(a.gamma_x_ratio);
    CHECK(*a.gamma_x_ratio == Catch::Approx(1.0).epsilon(1e-3));
    CHECK(a.m_v_ratio == Catch::Approx(1.0).epsilon(1e-3));
    CHECK(a.failures.empty());

    const auto b = equipartition_report(ctx("cauchy:1,1", 1.0));
    REQUIRE(b.gamma_x_ratio);
    CHECK(*b.gamma_x_ratio == Catch::Approx(1.0).epsilon(1e-3));
    CHECK(b.m_v_ratio == Catch::Approx(1.0).epsilon(1e-3));

    const auto f = equipartition_report(ctx("rouse:[1,2,4]", 0.0));
    CHECK_FALSE(f.gamma_x_ratio);
    CHECK(f.m_v_ratio == Catch::Approx(1.0).epsilon(1e-3));
    CHECK(std::isfinite(f.err_v));
}

TEST_CASE("msd_x matches a direct frequency-domain quadrature") {
    for (const char* spec : {"rouse:[1,2]", "gaussian:1", "cauchy:0.3,2"}) {
        const auto c = ctx(spec);
        for (double t : {0.3, 1.0, 4.0}) CHECK(msd_x(c, t) == Catch::Approx(msd_x_oracle(c, t)).epsilon(1e-7));
    }
}

TEST_CASE("short-time behaviour") {
    for (const char* spec : {"rouse:[1,2]", "powerlaw:0.5", "cauchy:1,1"}) {
        const auto c = ctx(spec);
        const double vx = var_x0(c).value, vv = var_v0(c).value;
        CHECK(msd_x(c, 0.0) == 0.0);
        CHECK(msd_v(c, 0.0) == 0.0);
        // both integrands behave like t^2/2 times the stationary density
        CHECK(msd_x(c, 1e-3) / (1e-6 * vx) == Catch::Approx(1.0).epsilon(1e-4));
        CHECK(msd_v(c, 1e-3) / (1e-6 * vv) == Catch::Approx(1.0).epsilon(1e-2));
    }
    CHECK_THROWS_AS(msd_x(ctx("rouse:[1]"), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(msd_x(ctx("rouse:[1]", 0.0), 1.0), FreeParticlePosition);
}

TEST_CASE("long-time growth of msd_x") {
    const auto r = ctx("rouse:[1,2]");
    const double a = msd_x(r, 1e3) / 1e3, b = msd_x(r, 1e4) / 1e4;
    CHECK(std::fabs(b - a) / b < 0.03);

    const auto p = ctx("powerlaw:0.5");
    CHECK(msd_x(p, 1e4) / msd_x(p, 1e3) == Catch::Approx(std::pow(10.0, 1.5)).epsilon(0.05));
}

TEST_CASE("msd_v saturates at twice the position variance") {
    for (const char* spec : {"rouse:[1,2,4]", "powerlaw:0.7", "gaussian:1", "cauchy:1,1"}) {
        const auto c = ctx(spec);
        const double target = 2.0 * var_x0(c).value;
        CHECK(msd_v(c, 1e4) == Catch::Approx(target).epsilon(0.01));
        for (double t : log_grid(1e-2, 1e3, 16)) CHECK(msd_v(c, t) <= 2.0 * target);
    }
    const auto s = velocity_saturation(ctx("rouse:[1,2]"), log_grid(1e-1, 1e3, 17));
    REQUIRE(s.t_star);
    CHECK(s.ratios.size() == 17);
    CHECK(std::fabs(s.ratios.back() - 1.0) <= 0.01);
    CHECK(*s.t_star > 0.1);
}

TEST_CASE("msd_v plus the cosine correlation is constant") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lt(-1.0, 3.0);
    for (const char* spec : {"rouse:[1,2]", "powerlaw:0.3", "cauchy:1,1", "one-plus-t-inverse"}) {
        const auto c = ctx(spec);
        const double vx = var_x0(c).value;
        for (int i = 0; i < 4; ++i) {
            const double t = std::pow(10.0, lt(rng));
            CHECK(msd_v(c, t) + cos_correlation(c, t) == Catch::Approx(2.0 * vx).epsilon(1e-7));
        }
    }
}

TEST_CASE("cross covariance") {
    CHECK(cross_cov(ctx("rouse:[1]"), 5.0) == 0.0);
    CHECK(cross_cov(ctx("rouse:[1]"), 0.0, true) == 0.0);
    const std::vector<std::string> specs = {"rouse:[1,2]", "powerlaw:0.5", "gaussian:1", "cauchy:0.3,2", "one-plus-t-inverse"};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lt(-1.0, 2.0);
    for (int i = 0; i < 10; ++i) {
        const auto c = ctx(specs[i % specs.size()], 1.0 + i % 3);
        const double t = i == 0 ? 5.0 : std::pow(10.0, lt(rng));
        CHECK(std::fabs(cross_cov(c, t, true)) < 1e-10);
    }
}

TEST_CASE("msd curves") {
    const auto c = ctx("powerlaw:0.5");
    const auto g = log_grid(1e-1, 1e3, 20);
    CHECK(g.front() == 1e-1);
    CHECK(g.back() == 1e3);
    const auto cur = msd_curve(c, g, MsdQuantity::position_integral);
    REQUIRE(cur.values.size() == g.size());
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(cur.values[i] >= cur.values[i - 1]);
    for (std::size_t i = 0; i < g.size(); i += 5) CHECK(cur.values[i] == msd_x(c, g[i]));
    const auto v = msd_curve(c, g, MsdQuantity::velocity_integral);
    CHECK(v.values[7] == msd_v(c, g[7]));
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_grid(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("growth exponent fits") {
    MsdCurve syn;
    syn.times = log_grid(1.0, 100.0, 30);
    for (double t : syn.times) syn.values.push_back(t * t);
    const auto f = fit_growth_exponent(syn, 1.0, 100.0, GrowthModel::pure_power);
    CHECK(f.value == Catch::Approx(2.0).margin(1e-6));
    CHECK(f.prefactor == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(f.goodness == Catch::Approx(1.0).margin(1e-12));
    CHECK(f.points == 30);

    MsdCurve bad = syn;
    bad.values[12] = bad.values[11] * 0.5;
    CHECK_THROWS_WITH(fit_growth_exponent(bad, 1.0, 100.0, GrowthModel::pure_power), Catch::Matchers::StartsWith("fit rejected"));
    CHECK_THROWS_AS(fit_growth_exponent(syn, 1.0, 2.0, GrowthModel::pure_power), FitRejected);

    const auto grid = log_grid(1e2, 1e4, 25);
    double prev = 3.0;
    for (double alpha : {0.3, 0.5, 0.7}) {
        const auto c = ctx("powerlaw:" + std::to_string(alpha));
        const auto e = fit_growth_exponent(msd_curve(c, grid, MsdQuantity::position_integral), 1e2, 1e4, GrowthModel::pure_power);
        CHECK(e.value == Catch::Approx(2.0 - alpha).margin(0.05));
        CHECK(e.value < prev);
        prev = e.value;
    }

    const auto lc = msd_curve(ctx("one-plus-t-inverse"), grid, MsdQuantity::position_integral);
    const auto l = fit_growth_exponent(lc, 1e2, 1e4, GrowthModel::t_log_t);
    CHECK(l.drift < 0.10);
    CHECK(l.value > 0.0);
}
