#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace radsle::cli {

/// Parameters of one run. Every field is serialized, so a stored config
/// re-executes to the same data files.
struct RunConfig {
    int schema_version = 1;
    std::string subcommand;
    double kappa = 2.0;
    double mu = 0.0;
    double rho = 2.0;
    std::optional<double> alpha;
    double theta1 = 0.0;
    std::optional<double> theta2;
    double theta = 3.141592653589793;
    double T = 1.0;
    double dt = 1e-3;
    double eps_step = 0.01;
    double total_cap = 1.0;
    std::uint64_t n = 10000;
    std::uint64_t n_points = 201;
    std::uint64_t grid = 256;
    std::uint64_t seed = 1;
    std::optional<double> t_fixed;
    double eps_abs = 1e-5;
    double bound = 1e-4;
    bool bpz = false;
    bool bracket = false;
    bool zero = false;
    std::string out_dir;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig config_from_json(const nlohmann::json& j);

/// Parses an angle such as "1.25", "pi", "-pi/2", "3pi/4" or "2*pi/3".
double parse_angle(const std::string& text);

/// Runs the tool on argv-style arguments (without the program name).
/// Returns 0 on success, 2 for invalid parameters and 3 for a numerical
/// abort.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace radsle::cli
