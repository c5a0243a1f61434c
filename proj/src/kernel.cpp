#include "gle/kernel.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gle {

namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };

std::string fmt(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void require(bool ok, const std::string& field, const std::string& msg) {
    if (!ok) throw FieldError(field, msg);
}

}  // namespace

void GleParams::validate(bool allow_zero_temperature) const {
    require(std::isfinite(m) && m > 0.0, "m", "mass must be positive");
    require(std::isfinite(lambda) && lambda >= 0.0, "lambda", "viscous drag must be non-negative");
    require(std::isfinite(beta) && beta > 0.0, "beta", "memory coupling must be positive");
    require(std::isfinite(gamma) && gamma >= 0.0, "gamma", "harmonic stiffness must be non-negative");
    if (allow_zero_temperature && kbt == 0.0) return;
    require(std::isfinite(kbt) && kbt > 0.0, "kbt", "thermal energy must be positive");
}

double GammaDensity::operator()(double x) const {
    if (x <= 0.0) return 0.0;
    return coef * std::exp((shape - 1.0) * std::log(x) - rate * x);
}

double BernsteinMeasure::laplace(double t) const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.w * std::exp(-t * a.x);
    if (density) {
        const double r = density->rate + t;
        if (!(r > 0.0)) throw std::domain_error("laplace transform diverges at this t");
        s += density->coef * std::exp(std::lgamma(density->shape) - density->shape * std::log(r));
    }
    return s;
}

void BernsteinMeasure::validate() const {
    for (const auto& a : atoms) {
        if (!(a.x > 0.0) || !std::isfinite(a.x))
            throw std::invalid_argument("Bernstein atom location must be positive and finite");
        if (!(a.w > 0.0) || !std::isfinite(a.w))
            throw std::invalid_argument("Bernstein atom weight must be positive and finite");
    }
    if (density) {
        if (!(density->coef > 0.0) || !(density->shape > 0.0) || !(density->rate >= 0.0))
            throw std::invalid_argument("Bernstein density parameters out of range");
    }
    if (atoms.empty() && !density) throw std::invalid_argument("Bernstein measure is empty");
}

KernelFamily MemoryKernel::family() const {
    if (std::holds_alternative<Gaussian>(v) || std::holds_alternative<Cauchy>(v))
        return KernelFamily::phi_of_t_squared;
    return KernelFamily::completely_monotone;
}

std::string MemoryKernel::spec() const {
    return std::visit(overloaded{
        [](const PowerLaw& k) { return "powerlaw:" + fmt(k.alpha); },
        [](const GeneralizedRouse& k) {
            std::string s = "rouse:[";
            for (std::size_t i = 0; i < k.taus.size(); ++i) s += (i ? "," : "") + fmt(k.taus[i]);
            return s + "]";
        },
        [](const ExpMixture& k) { return "expmix:@" + k.source; },
        [](const Gaussian& k) { return "gaussian:" + fmt(k.scale); },
        [](const Cauchy& k) { return "cauchy:" + fmt(k.alpha) + "," + fmt(k.scale); },
        [](const OnePlusTInverse&) { return std::string("one-plus-t-inverse"); },
    }, v);
}

std::string MemoryKernel::name() const {
    static const char* names[] = {"powerlaw", "rouse", "expmix", "gaussian", "cauchy", "one-plus-t-inverse"};
    return names[v.index()];
}

void validate_params(const MemoryKernel& k) {
    std::visit(overloaded{
        [](const PowerLaw& p) {
            if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw std::invalid_argument("powerlaw alpha must lie in (0,1)");
        },
        [](const GeneralizedRouse& p) {
            if (p.taus.empty()) throw std::invalid_argument("rouse needs at least one relaxation time");
            for (double t : p.taus)
                if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("rouse relaxation times must be positive");
        },
        [](const ExpMixture& p) {
            p.measure.validate();
            if (p.measure.density) throw std::invalid_argument("expmix takes atoms only");
        },
        [](const Gaussian& p) {
            if (!(p.scale > 0.0) || !std::isfinite(p.scale)) throw std::invalid_argument("gaussian scale must be positive");
        },
        [](const Cauchy& p) {
            if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) throw std::invalid_argument("cauchy alpha must be positive");
            if (!(p.scale > 0.0) || !std::isfinite(p.scale)) throw std::invalid_argument("cauchy scale must be positive");
        },
        [](const OnePlusTInverse&) {},
    }, k.v);
}

double kernel_eval(const MemoryKernel& k, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("kernel_eval: t must be finite");
    const double a = std::fabs(t);
    return std::visit(overloaded{
        [a](const PowerLaw& p) {
            if (a == 0.0) throw SingularAtOrigin();
            return std::pow(a, -p.alpha);
        },
        [a](const GeneralizedRouse& p) {
            double s = 0.0;
            for (double tau : p.taus) s += std::exp(-a / tau);
            return s / static_cast<double>(p.taus.size());
        },
        [a](const ExpMixture& p) { return p.measure.laplace(a); },
        [a](const Gaussian& p) {
            const double u = a / p.scale;
            return std::exp(-u * u);
        },
        [a](const Cauchy& p) {
            const double u = a / p.scale;
            return std::pow(1.0 + u * u, -p.alpha);
        },
        [a](const OnePlusTInverse&) { return 1.0 / (1.0 + a); },
    }, k.v);
}

TailClass kernel_tail_class(const MemoryKernel& k) {
    using Kind = TailClass::Kind;
    return std::visit(overloaded{
        [](const PowerLaw& p) { return TailClass{Kind::power_law, p.alpha, 1.0, 0.0}; },
        [](const GeneralizedRouse&) { return TailClass{}; },
        [](const ExpMixture&) { return TailClass{}; },
        [](const Gaussian&) { return TailClass{}; },
        [](const Cauchy& p) {
            const double two_a = 2.0 * p.alpha;
            if (two_a > 1.0) return TailClass{};
            if (two_a < 1.0) {
                // \int_0^\infty [(1+u^2)^{-a} - u^{-2a}] du continues (sqrt(pi)/2) Gamma(a-1/2)/Gamma(a)
                const double off = p.scale * 0.5 * std::sqrt(std::numbers::pi) * std::tgamma(p.alpha - 0.5) /
                                   std::tgamma(p.alpha);
                return TailClass{Kind::power_law, two_a, std::pow(p.scale, two_a), off};
            }
            // (1 + (t/l)^2)^{-1/2}: \int_0^T K = l asinh(T/l) ~ l log(2T/l)
            const double l = p.scale;
            return TailClass{Kind::critical_one_over_t, 0.0, l, l * std::log(2.0 / l) - l * std::numbers::egamma};
        },
        [](const OnePlusTInverse&) {
            // \int_0^1 K = log 2 and \int_1^\infty (K - 1/t) = -log 2
            return TailClass{Kind::critical_one_over_t, 0.0, 1.0, -std::numbers::egamma};
        },
    }, k.v);
}

BernsteinMeasure bernstein_of(const MemoryKernel& k) {
    return std::visit(overloaded{
        [](const PowerLaw& p) {
            return BernsteinMeasure{{}, GammaDensity{1.0 / std::tgamma(p.alpha), p.alpha, 0.0}};
        },
        [](const GeneralizedRouse& p) {
            BernsteinMeasure m;
            const double w = 1.0 / static_cast<double>(p.taus.size());
            for (double tau : p.taus) m.atoms.push_back({1.0 / tau, w});
            return m;
        },
        [](const ExpMixture& p) { return p.measure; },
        [](const Gaussian& p) {
            return BernsteinMeasure{{{1.0 / (p.scale * p.scale), 1.0}}, std::nullopt};
        },
        [](const Cauchy& p) {
            // (1 + s/l^2)^{-alpha} = \int e^{-s x} l^{2 alpha} x^{alpha-1} e^{-l^2 x} / Gamma(alpha) dx
            const double l2 = p.scale * p.scale;
            return BernsteinMeasure{{}, GammaDensity{std::pow(l2, p.alpha) / std::tgamma(p.alpha), p.alpha, l2}};
        },
        [](const OnePlusTInverse&) { return BernsteinMeasure{{}, GammaDensity{1.0, 1.0, 1.0}}; },
    }, k.v);
}

namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\n\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\n\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& spec) {
    const std::string t = trim(text);
    double x = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw std::invalid_argument("kernel spec '" + spec + "': cannot parse number '" + t + "'");
    return x;
}

std::vector<double> parse_list(std::string body, const std::string& spec) {
    body = trim(body);
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') throw std::invalid_argument("kernel spec '" + spec + "': unbalanced brackets");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<double> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, spec));
    return out;
}

}  // namespace

MemoryKernel parse_kernel_spec(const std::string& raw) {
    const std::string spec = trim(raw);
    if (spec == "one-plus-t-inverse") return {OnePlusTInverse{}};
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("unknown kernel spec '" + spec + "'");
    const std::string head = spec.substr(0, colon);
    const std::string body = spec.substr(colon + 1);

    MemoryKernel k;
    if (head == "powerlaw") {
        k.v = PowerLaw{parse_number(body, spec)};
    } else if (head == "rouse") {
        k.v = GeneralizedRouse{parse_list(body, spec)};
    } else if (head == "gaussian") {
        k.v = Gaussian{parse_number(body, spec)};
    } else if (head == "cauchy") {
        const auto xs = parse_list(body, spec);
        if (xs.size() != 2) throw std::invalid_argument("kernel spec '" + spec + "': cauchy needs <alpha>,<scale>");
        k.v = Cauchy{xs[0], xs[1]};
    } else if (head == "expmix") {
        if (body.empty() || body.front() != '@')
            throw std::invalid_argument("kernel spec '" + spec + "': expmix expects @<file.json>");
        const std::string path = body.substr(1);
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("kernel spec '" + spec + "': cannot open " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("kernel spec '" + spec + "': " + e.what());
        }
        ExpMixture mix;
        mix.source = path;
        if (!j.is_array()) throw std::invalid_argument("expmix file must hold [[x,w],...]");
        for (const auto& a : j) {
            if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
                throw std::invalid_argument("expmix file must hold [[x,w],...]");
            mix.measure.atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        }
        k.v = std::move(mix);
    } else {
        throw std::invalid_argument("unknown kernel spec '" + spec + "'");
    }
    validate_params(k);
    return k;
}

}  // namespace gle
