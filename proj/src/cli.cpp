#include "gle/cli.hpp"
#include "gle/parallel.hpp"
#include "gle/simulate.hpp"
#include "gle/transforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace gle::cli {

using nlohmann::json;

// ---- config -------------------------------------------------------------------

namespace {

double number_field(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw ConfigError(path, "missing required field");
    if (!j.at(key).is_number()) throw ConfigError(path, "must be a number");
    return j.at(key).get<double>();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
    static const std::vector<std::string> known = {"m", "lambda", "beta", "gamma", "kbt", "kernel", "quad", "output"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError(key, "unknown field");

    RunConfig c;
    c.params.m = number_field(j, "m", "m");
    c.params.lambda = number_field(j, "lambda", "lambda");
    c.params.beta = number_field(j, "beta", "beta");
    c.params.gamma = number_field(j, "gamma", "gamma");
    c.params.kbt = number_field(j, "kbt", "kbt");
    try {
        c.params.validate();
    } catch (const FieldError& e) {
        throw ConfigError(e.field, std::string(e.what()).substr(e.field.size() + 2));
    }

    if (!j.contains("kernel")) throw ConfigError("kernel", "missing required field");
    if (!j.at("kernel").is_string()) throw ConfigError("kernel", "must be a kernel spec string");
    c.kernel = j.at("kernel").get<std::string>();
    try {
        validate_params(parse_kernel_spec(c.kernel));
    } catch (const std::exception& e) {
        throw ConfigError("kernel", e.what());
    }

    if (j.contains("quad")) {
        const auto& q = j.at("quad");
        if (!q.is_object()) throw ConfigError("quad", "must be an object");
        for (const auto& [key, _] : q.items()) {
            if (key == "rel_tol") c.quad.rel_tol = number_field(q, key, "quad.rel_tol");
            else if (key == "abs_tol") c.quad.abs_tol = number_field(q, key, "quad.abs_tol");
            else if (key == "max_subdivisions") {
                if (!q.at(key).is_number_integer()) throw ConfigError("quad.max_subdivisions", "must be an integer");
                c.quad.max_subdivisions = q.at(key).get<int>();
            } else throw ConfigError("quad." + key, "unknown field");
        }
        try {
            c.quad.validate();
        } catch (const std::exception& e) {
            throw ConfigError("quad", e.what());
        }
    }

    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (!o.is_object()) throw ConfigError("output", "must be an object");
        for (const auto& [key, v] : o.items()) {
            if (key == "path") {
                if (!v.is_string()) throw ConfigError("output.path", "must be a string");
                c.output.path = v.get<std::string>();
            } else if (key == "format") {
                const auto f = v.is_string() ? v.get<std::string>() : "";
                if (f == "csv") c.output.format = OutputFormat::csv;
                else if (f == "json") c.output.format = OutputFormat::json;
                else throw ConfigError("output.format", "must be \"csv\" or \"json\"");
            } else throw ConfigError("output." + key, "unknown field");
        }
    }
    return c;
}

std::string serialize_config(const RunConfig& c) {
    json j = {{"m", c.params.m},           {"lambda", c.params.lambda}, {"beta", c.params.beta},
              {"gamma", c.params.gamma},   {"kbt", c.params.kbt},       {"kernel", c.kernel},
              {"quad", {{"rel_tol", c.quad.rel_tol}, {"abs_tol", c.quad.abs_tol}, {"max_subdivisions", c.quad.max_subdivisions}}},
              {"output", {{"path", c.output.path}, {"format", c.output.format == OutputFormat::csv ? "csv" : "json"}}}};
    return j.dump(2);
}

// ---- formatting ---------------------------------------------------------------

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

namespace {

double parse_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc() || r.ptr != last) throw std::invalid_argument(what + ": not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 4 && (parts[0] == "log" || parts[0] == "lin")) {
        const double a = parse_double(parts[1], "grid start"), b = parse_double(parts[2], "grid end");
        const double n = parse_double(parts[3], "grid count");
        if (n != std::floor(n) || n < 2) throw std::invalid_argument("grid count must be an integer >= 2");
        if (parts[0] == "log") return log_grid(a, b, static_cast<int>(n));
        if (!(b > a)) throw std::invalid_argument("lin grid needs a < b");
        std::vector<double> g;
        for (int i = 0; i < static_cast<int>(n); ++i) g.push_back(a + (b - a) * i / (n - 1));
        return g;
    }
    if (parts.size() != 1) throw std::invalid_argument("grid must be log:a:b:n, lin:a:b:n or a comma list");
    std::vector<double> g;
    for (const auto& s : split(text, ',')) g.push_back(parse_double(s, "grid value"));
    if (g.empty()) throw std::invalid_argument("empty grid");
    return g;
}

// ---- subcommands --------------------------------------------------------------

namespace {

enum class Exit { ok = 0, computation = 1, usage = 2 };

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    // raw numbers for json output; strings for non-numeric cells
    std::vector<std::vector<json>> cells;

    void add(std::vector<json> row) {
        std::vector<std::string> r;
        for (const auto& c : row) r.push_back(c.is_number() ? format_number(c.get<double>()) : c.get<std::string>());
        rows.push_back(std::move(r));
        cells.push_back(std::move(row));
    }
};

void write_table(const Table& t, OutputFormat fmt, std::ostream& os) {
    if (fmt == OutputFormat::json) {
        json j = {{"columns", t.columns}, {"rows", t.cells}};
        os << j.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig load_config(const std::string& path) {
    if (path.empty()) throw UsageError("--config is required");
    return parse_config(read_file(path));
}

struct Sink {
    std::ostream& out;
    std::ofstream file;
    std::ostream& stream() { return file.is_open() ? file : out; }

    Sink(std::ostream& o, const std::string& path) : out(o) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw UsageError("cannot write '" + path + "'");
        }
    }
};

struct Common {
    std::string config;
    std::string output;
};

SpectralDensityCtx context(const RunConfig& c) { return SpectralDensityCtx(c.params, parse_kernel_spec(c.kernel), c.quad); }

MemoryKernel kernel_from(const std::string& spec, const std::string& config, std::optional<RunConfig>* loaded) {
    if (!spec.empty()) return parse_kernel_spec(spec);
    if (config.empty()) throw UsageError("either --kernel or --config is required");
    *loaded = load_config(config);
    return parse_kernel_spec((*loaded)->kernel);
}

OutputFormat format_of(const std::optional<RunConfig>& c) { return c ? c->output.format : OutputFormat::csv; }

std::string output_path(const Common& common, const std::optional<RunConfig>& c) {
    if (!common.output.empty()) return common.output;
    return c ? c->output.path : std::string();
}

json fit_json(const GrowthFit& f) {
    if (f.model == GrowthModel::pure_power)
        return {{"model", "power"}, {"exponent", f.value}, {"prefactor", f.prefactor}, {"r_squared", f.goodness},
                {"drift", f.drift}, {"points", f.points}};
    return {{"model", "tlogt"}, {"constant", f.value}, {"drift", f.drift}, {"points", f.points}};
}

MsdCurve read_curve(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw UsageError("'" + path + "' is empty");
    const auto header = split(line, ',');
    int it = -1, iv = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "t") it = static_cast<int>(i);
        if (header[i] == "msd") iv = static_cast<int>(i);
    }
    if (it < 0 || iv < 0) throw UsageError("'" + path + "' needs columns t and msd");
    MsdCurve c;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (static_cast<int>(f.size()) <= std::max(it, iv)) throw UsageError("short row in '" + path + "'");
        c.times.push_back(parse_double(f[it], "t"));
        c.values.push_back(parse_double(f[iv], "msd"));
    }
    return c;
}

std::pair<double, double> parse_window(const std::string& w) {
    const auto p = split(w, ':');
    if (p.size() != 2) throw UsageError("--window must be a:b");
    return {parse_double(p[0], "window start"), parse_double(p[1], "window end")};
}

Exit error_envelope(std::ostream& err, Exit code, const std::string& kind, const std::string& msg,
                    const std::string& field = "") {
    json e = {{"kind", kind}, {"message", msg}, {"exit_code", static_cast<int>(code)}};
    if (!field.empty()) e["field"] = field;
    err << json{{"error", e}}.dump() << "\n";
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"GLE spectral densities, mean squared displacements and equipartition checks", "gle_spectra"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* s, bool config_required) {
        auto* opt = s->add_option("--config", common.config, "JSON run configuration");
        if (config_required) opt->required();
        s->add_option("-o,--output", common.output, "output file (default: stdout or config output.path)");
    };

    std::string kernel_spec, grid = "log:1e-2:1e2:41", route_name_opt, quantity = "x", window, model = "power";
    std::string input, method = "markovian", scheme = "exact", summary, omega_grid;
    bool validate = false;
    int n_paths = 1000, prony_modes = 8, record_stride = 0;
    double dt = 0.01, t_max = 100.0;
    std::uint64_t seed = 0;

    auto* kernel = app.add_subcommand("kernel", "tabulate K(t), or run the kernel checks with --validate");
    add_common(kernel, false);
    kernel->add_option("--kernel", kernel_spec, "kernel spec, e.g. powerlaw:0.5");
    kernel->add_option("--grid", grid, "t grid: log:a:b:n, lin:a:b:n or a comma list");
    kernel->add_flag("--validate", validate, "symmetry, positivity, monotone tail and K_cos > 0 checks as JSON");

    auto* transform_cmd = app.add_subcommand("transform", "cosine and sine transforms K_cos, K_sin");
    add_common(transform_cmd, false);
    transform_cmd->add_option("--kernel", kernel_spec, "kernel spec");
    transform_cmd->add_option("--omega", grid, "frequency grid")->required();
    transform_cmd->add_option("--route", route_name_opt, "closed_form | cm_measure | phi_t2_faddeeva | numeric");

    auto* spectrum = app.add_subcommand("spectrum", "spectral densities r11, r22 and Im r12");
    add_common(spectrum, true);
    spectrum->add_option("--grid", grid, "frequency grid")->required();

    auto* msd = app.add_subcommand("msd", "E|int_0^t x|^2 (quantity x) or E|int_0^t v|^2 (quantity v) by quadrature");
    add_common(msd, true);
    msd->add_option("--quantity", quantity, "x or v")->check(CLI::IsMember({"x", "v"}));
    msd->add_option("--t-grid", grid, "time grid")->required();

    auto* equi = app.add_subcommand("equipartition", "gamma E[x(0)^2]/k_BT and m E[v(0)^2]/k_BT");
    add_common(equi, true);

    auto* fit = app.add_subcommand("fit-exponent", "growth exponent or t log t constant of an msd curve");
    fit->add_option("--input", input, "CSV with columns t,msd")->required();
    fit->add_option("--window", window, "a:b")->required();
    fit->add_option("--model", model, "power or tlogt")->check(CLI::IsMember({"power", "tlogt"}));
    fit->add_option("-o,--output", common.output, "output file");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo msd from the Markovian embedding or the spectral sampler");
    add_common(sim, true);
    sim->add_option("--method", method, "markovian or spectral")->check(CLI::IsMember({"markovian", "spectral"}));
    sim->add_option("--n-paths", n_paths, "number of paths")->check(CLI::NonNegativeNumber);
    sim->add_option("--dt", dt, "time step")->check(CLI::PositiveNumber);
    sim->add_option("--t-max", t_max, "horizon")->check(CLI::PositiveNumber);
    sim->add_option("--seed", seed, "master RNG seed")->required();
    sim->add_option("--prony-modes", prony_modes, "modes of the exponential-sum surrogate")->check(CLI::PositiveNumber);
    sim->add_option("--scheme", scheme, "exact or euler")->check(CLI::IsMember({"exact", "euler"}));
    sim->add_option("--quantity", quantity, "x or v")->check(CLI::IsMember({"x", "v"}));
    sim->add_option("--record-stride", record_stride, "record every k-th step (0: automatic)");
    sim->add_option("--omega-grid", omega_grid, "spectral method frequency grid");
    sim->add_option("--summary", summary, "JSON summary file (default: next to --output, else stderr)");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    if (!argv_rev.empty()) argv_rev.pop_back();  // program name
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << app.help();
        std::string msg = e.what();
        if (args.size() > 1 && !args[1].empty() && args[1][0] != '-' && app.get_subcommand_no_throw(args[1]) == nullptr)
            msg = "unknown subcommand '" + args[1] + "'";
        return static_cast<int>(error_envelope(err, Exit::usage, "usage", msg));
    }

    try {
        std::optional<RunConfig> cfg;
        if (kernel->parsed()) {
            const auto k = kernel_from(kernel_spec, common.config, &cfg);
            const auto ts = parse_grid(grid);
            Sink sink(out, output_path(common, cfg));
            if (validate) {
                const auto v = validate_kernel(k, ts);
                json j = {{"kernel", k.spec()}, {"symmetric", v.symmetric}, {"positive", v.positive},
                          {"monotone_tail", v.monotone_tail}, {"kcos_positive", v.kcos_positive},
                          {"failures", v.failures}, {"ok", v.ok()}};
                sink.stream() << j.dump(2) << "\n";
                return v.ok() ? 0 : 1;
            }
            Table t{{"t", "K"}, {}, {}};
            for (double x : ts) t.add({x, kernel_eval(k, x)});
            write_table(t, format_of(cfg), sink.stream());
        } else if (transform_cmd->parsed()) {
            const auto k = kernel_from(kernel_spec, common.config, &cfg);
            std::optional<Route> route;
            if (!route_name_opt.empty()) {
                for (Route r : {Route::closed_form, Route::cm_measure, Route::phi_t2_faddeeva, Route::numeric})
                    if (route_name_opt == route_name(r)) route = r;
                if (!route) throw UsageError("unknown route '" + route_name_opt + "'");
            }
            const auto ws = parse_grid(grid);
            std::vector<TransformPair> res(ws.size());
            parallel_for(ws.size(), [&](std::size_t i) { res[i] = transform(k, ws[i], route); });
            Table t{{"omega", "kcos", "ksin", "route"}, {}, {}};
            for (std::size_t i = 0; i < ws.size(); ++i) t.add({ws[i], res[i].kcos, res[i].ksin, route_name(res[i].route)});
            Sink sink(out, output_path(common, cfg));
            write_table(t, format_of(cfg), sink.stream());
        } else if (spectrum->parsed()) {
            cfg = load_config(common.config);
            const auto ctx = context(*cfg);
            const auto ws = parse_grid(grid);
            const bool free = ctx.params.free_particle();
            std::vector<std::array<double, 3>> res(ws.size());
            parallel_for(ws.size(), [&](std::size_t i) {
                res[i][1] = r22(ctx, ws[i]);
                if (!free) {
                    res[i][0] = r11(ctx, ws[i]);
                    res[i][2] = r12(ctx, ws[i]).imag();
                }
            });
            Table t;
            t.columns = free ? std::vector<std::string>{"omega", "r22"} : std::vector<std::string>{"omega", "r11", "r22", "im_r12"};
            for (std::size_t i = 0; i < ws.size(); ++i) {
                if (free) t.add({ws[i], res[i][1]});
                else t.add({ws[i], res[i][0], res[i][1], res[i][2]});
            }
            Sink sink(out, output_path(common, cfg));
            write_table(t, cfg->output.format, sink.stream());
        } else if (msd->parsed()) {
            cfg = load_config(common.config);
            if (cfg->params.free_particle()) {
                if (quantity == "x") throw ConfigError("gamma", "free particle has no stationary position");
                throw ConfigError("gamma", "velocity-integral msd needs a trapped particle (gamma > 0)");
            }
            const auto ctx = context(*cfg);
            const auto ts = parse_grid(grid);
            for (double t : ts)
                if (!(t > 0.0)) throw UsageError("times must be positive");
            const auto c = msd_curve(ctx, ts, quantity == "x" ? MsdQuantity::position_integral : MsdQuantity::velocity_integral);
            Table t{{"t", "msd"}, {}, {}};
            for (std::size_t i = 0; i < ts.size(); ++i) t.add({c.times[i], c.values[i]});
            Sink sink(out, output_path(common, cfg));
            write_table(t, cfg->output.format, sink.stream());
        } else if (equi->parsed()) {
            cfg = load_config(common.config);
            const auto rep = equipartition_report(context(*cfg));
            json j = {{"gamma_x_ratio", rep.gamma_x_ratio ? json(*rep.gamma_x_ratio) : json(nullptr)},
                      {"m_v_ratio", rep.m_v_ratio},
                      {"err_x", rep.gamma_x_ratio ? json(rep.err_x) : json(nullptr)},
                      {"err_v", rep.err_v},
                      {"failures", rep.failures}};
            Sink sink(out, output_path(common, cfg));
            sink.stream() << j.dump(2) << "\n";
            return rep.failures.empty() ? 0 : 1;
        } else if (fit->parsed()) {
            const auto curve = read_curve(input);
            const auto [a, b] = parse_window(window);
            const auto f = fit_growth_exponent(curve, a, b, model == "power" ? GrowthModel::pure_power : GrowthModel::t_log_t);
            Sink sink(out, common.output);
            sink.stream() << fit_json(f).dump(2) << "\n";
        } else if (sim->parsed()) {
            cfg = load_config(common.config);
            const auto k = parse_kernel_spec(cfg->kernel);
            const auto& p = cfg->params;
            json sum;
            Ensemble ens;
            if (method == "markovian") {
                const auto pf = prony_fit(k, prony_modes, std::min(dt, 1e-2), std::max(t_max, 10.0));
                const auto sde = markovian_embedding(p, pf.measure);
                SimulationOptions o;
                o.dt = dt;
                o.t_max = t_max;
                o.n_paths = n_paths;
                o.seed = seed;
                o.scheme = scheme == "exact" ? Scheme::exact_ou_exponential : Scheme::euler_maruyama;
                o.record_stride = record_stride;
                ens = simulate_paths(sde, o);
                const auto S = lyapunov_stationary_cov(sde);
                json atoms = json::array();
                for (const auto& at : pf.measure.atoms) atoms.push_back({at.x, at.w});
                sum["surrogate"] = {{"exact", pf.exact}, {"sup_rel_error", pf.sup_rel_error}, {"atoms", atoms}};
                sum["lyapunov"] = {{"var_v", S(sde.index("v"), sde.index("v"))}};
                if (sde.index("x") >= 0) sum["lyapunov"]["var_x"] = S(0, 0);
            } else {
                if (p.free_particle()) throw ConfigError("gamma", "free particle has no stationary position");
                const auto ctx = context(*cfg);
                const double s = ctx.omega_scale();
                const double hi = std::min(1e3 * s, 0.99 * std::numbers::pi / dt);
                const auto wg = omega_grid.empty() ? log_grid(1e-4 * s, hi, 400) : parse_grid(omega_grid);
                std::vector<double> ts;
                const long n = std::max(1L, std::lround(t_max / dt));
                for (long i = 0; i <= n; ++i) ts.push_back(i * dt);
                ens = spectral_sample(ctx, wg, ts, n_paths, seed);
            }
            const auto curve = ensemble_msd(ens, quantity == "x" ? IntegralQuantity::x_integral : IntegralQuantity::v_integral);
            Table t{{"t", "msd", "stderr"}, {}, {}};
            for (std::size_t i = 0; i < curve.times.size(); ++i) t.add({curve.times[i], curve.values[i], curve.stderrs[i]});
            const std::string path = output_path(common, cfg);
            {
                Sink sink(out, path);
                write_table(t, cfg->output.format, sink.stream());
            }

            auto var_of = [&](const std::string& label) -> json {
                const int c = ens.component(label);
                if (c < 0 || ens.n_paths == 0) return nullptr;
                double acc = 0.0;
                for (int q = 0; q < ens.n_paths; ++q) acc += ens.at(q, 0, c) * ens.at(q, 0, c);
                return acc / ens.n_paths;
            };
            sum["method"] = method;
            sum["scheme"] = scheme_name(ens.scheme);
            sum["seed"] = seed;
            sum["n_paths"] = ens.n_paths;
            sum["var_v"] = var_of("v");
            sum["var_x"] = var_of("x");
            json ratios = {{"m_v", sum["var_v"].is_null() ? json(nullptr) : json(p.m * sum["var_v"].get<double>() / p.kbt)}};
            ratios["gamma_x"] = sum["var_x"].is_null() ? json(nullptr) : json(p.gamma * sum["var_x"].get<double>() / p.kbt);
            sum["equipartition_ratios"] = ratios;
            sum["warnings"] = ens.warnings;
            const std::string sp = !summary.empty() ? summary : (!path.empty() ? path + ".summary.json" : "");
            if (sp.empty()) {
                err << sum.dump(2) << "\n";
            } else {
                std::ofstream f(sp);
                if (!f) throw UsageError("cannot write '" + sp + "'");
                f << sum.dump(2) << "\n";
            }
        }
        return 0;
    } catch (const ConfigError& e) {
        return static_cast<int>(error_envelope(err, Exit::usage, "config", e.what(), e.field()));
    } catch (const FieldError& e) {
        return static_cast<int>(error_envelope(err, Exit::usage, "config", e.what(), e.field));
    } catch (const UsageError& e) {
        return static_cast<int>(error_envelope(err, Exit::usage, "usage", e.what()));
    } catch (const std::invalid_argument& e) {
        return static_cast<int>(error_envelope(err, Exit::usage, "usage", e.what()));
    } catch (const std::exception& e) {
        return static_cast<int>(error_envelope(err, Exit::computation, "computation", e.what()));
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace gle::cli
