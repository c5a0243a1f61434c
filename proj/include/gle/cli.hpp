#pragma once

#include "gle/kernel.hpp"
#include "gle/quadrature.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gle::cli {

enum class OutputFormat { csv, json };

struct OutputSpec {
    std::string path;  // empty: stdout
    OutputFormat format = OutputFormat::csv;
};

struct RunConfig {
    GleParams params;
    std::string kernel;
    QuadConfig quad;
    OutputSpec output;
};

// Field-level configuration error; field is a dotted path such as "quad.rel_tol".
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& msg)
        : std::invalid_argument(field.empty() ? msg : field + ": " + msg), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);

// "log:a:b:n", "lin:a:b:n" or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

// 17 significant digits, independent of the locale.
std::string format_number(double v);

// Full command-line entry point. Exit codes: 0 ok, 1 computational failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gle::cli
