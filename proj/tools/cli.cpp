#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <openssl/evp.h>
#include <unistd.h>

#include "radsle/radsle.hpp"

#ifndef RADSLE_VERSION
#define RADSLE_VERSION "unknown"
#endif

namespace radsle::cli {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Config serialization

json to_json(const RunConfig& c) {
    json j = {{"schema_version", c.schema_version},
              {"subcommand", c.subcommand},
              {"kappa", c.kappa},
              {"mu", c.mu},
              {"rho", c.rho},
              {"alpha", c.alpha ? json(*c.alpha) : json(nullptr)},
              {"theta1", c.theta1},
              {"theta2", c.theta2 ? json(*c.theta2) : json(nullptr)},
              {"theta", c.theta},
              {"T", c.T},
              {"dt", c.dt},
              {"eps_step", c.eps_step},
              {"total_cap", c.total_cap},
              {"n", c.n},
              {"n_points", c.n_points},
              {"grid", c.grid},
              {"seed", c.seed},
              {"t_fixed", c.t_fixed ? json(*c.t_fixed) : json(nullptr)},
              {"eps_abs", c.eps_abs},
              {"bound", c.bound},
              {"bpz", c.bpz},
              {"bracket", c.bracket},
              {"zero", c.zero},
              {"out_dir", c.out_dir}};
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    if (!j.is_object()) fail(ErrorKind::Domain, "config must be a JSON object");
    const int version = j.value("schema_version", 1);
    if (version != 1) fail(ErrorKind::Domain, "unsupported config schema_version " + std::to_string(version));
    auto opt_double = [&](const char* key, std::optional<double>& dst) {
        if (j.contains(key) && !j[key].is_null()) dst = j[key].get<double>();
    };
    try {
        c.subcommand = j.value("subcommand", std::string{});
        c.kappa = j.value("kappa", c.kappa);
        c.mu = j.value("mu", c.mu);
        c.rho = j.value("rho", c.rho);
        opt_double("alpha", c.alpha);
        c.theta1 = j.value("theta1", c.theta1);
        opt_double("theta2", c.theta2);
        c.theta = j.value("theta", c.theta);
        c.T = j.value("T", c.T);
        c.dt = j.value("dt", c.dt);
        c.eps_step = j.value("eps_step", c.eps_step);
        c.total_cap = j.value("total_cap", c.total_cap);
        c.n = j.value("n", c.n);
        c.n_points = j.value("n_points", c.n_points);
        c.grid = j.value("grid", c.grid);
        c.seed = j.value("seed", c.seed);
        opt_double("t_fixed", c.t_fixed);
        c.eps_abs = j.value("eps_abs", c.eps_abs);
        c.bound = j.value("bound", c.bound);
        c.bpz = j.value("bpz", c.bpz);
        c.bracket = j.value("bracket", c.bracket);
        c.zero = j.value("zero", c.zero);
        c.out_dir = j.value("out_dir", c.out_dir);
    } catch (const json::exception& e) {
        fail(ErrorKind::Domain, std::string("malformed config: ") + e.what());
    }
    return c;
}

// ---------------------------------------------------------------------------
// Argument parsing helpers

namespace {

double parse_number(const std::string& text, const std::string& name) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        fail(ErrorKind::Domain, name + ": not a number: '" + text + "'");
    }
    if (used != text.size()) fail(ErrorKind::Domain, name + ": not a number: '" + text + "'");
    return v;
}

std::uint64_t parse_count(const std::string& text, const std::string& name) {
    const double v = parse_number(text, name);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e18) fail(ErrorKind::Domain, name + " must be a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

} // namespace

double parse_angle(const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (ch != ' ') text += ch;
    const auto at = text.find("pi");
    if (at == std::string::npos) return parse_number(text, "angle");
    std::string head = text.substr(0, at);
    std::string tail = text.substr(at + 2);
    if (!head.empty() && head.back() == '*') head.pop_back();
    double coef = 1.0;
    if (head == "-")
        coef = -1.0;
    else if (head == "+" || head.empty())
        coef = 1.0;
    else
        coef = parse_number(head, "angle");
    double value = coef * pi;
    if (!tail.empty()) {
        if (tail.size() < 2 || (tail[0] != '/' && tail[0] != '*'))
            fail(ErrorKind::Domain, "angle: cannot parse '" + raw + "'");
        const double d = parse_number(tail.substr(1), "angle");
        if (tail[0] == '/') {
            if (d == 0.0) fail(ErrorKind::Domain, "angle: division by zero");
            value /= d;
        } else {
            value *= d;
        }
    }
    return value;
}

namespace {

// ---------------------------------------------------------------------------
// Output handling

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA-256 computation failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

// Writes to a temporary file in the target directory, then renames it.
void atomic_write(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.parent_path() / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void write(const std::string& name, const std::string& content) {
        atomic_write(dir_ / name, content);
        files_.push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
    }

    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

    void write_manifest(const RunConfig& cfg, double wall_seconds) {
        const json manifest = {{"schema_version", 1},
                               {"tool", "radsle"},
                               {"version", RADSLE_VERSION},
                               {"subcommand", cfg.subcommand},
                               {"config", to_json(cfg)},
                               {"wall_time_seconds", wall_seconds},
                               {"outputs", files_}};
        atomic_write(dir_ / "manifest.json", manifest.dump(2) + "\n");
    }

    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    json files_ = json::array();
};

json provenance(const RunConfig& c) {
    return {{"version", RADSLE_VERSION}, {"seed", c.seed}, {"dt", c.dt}, {"eps_abs", c.eps_abs}};
}

// ---------------------------------------------------------------------------
// Subcommands

void validate_kappa(double kappa, double lo_open_at_zero, double hi) {
    const bool ok = std::isfinite(kappa) && (lo_open_at_zero > 0.0 ? kappa > 0.0 : kappa >= 0.0) && kappa < hi;
    if (!ok) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "kappa must lie in %s0, %g)", lo_open_at_zero > 0.0 ? "(" : "[", hi);
        fail(ErrorKind::Domain, buf);
    }
}

void cmd_trace(const RunConfig& c, OutputSet& out) {
    validate_kappa(c.kappa, 0.0, 8.0);
    if (c.theta2 && !(c.rho > -2.0)) fail(ErrorKind::Domain, "rho must exceed -2");
    if (c.n_points < 1) fail(ErrorKind::Domain, "n_points must be at least 1");
    const RadialSample s = sample_radial_sle(SleParams(c.kappa, c.mu, c.rho), c.theta1, c.theta2, c.T, c.dt,
                                             static_cast<std::size_t>(c.n_points), RngSpec{c.seed, 0});
    out.write("trace.csv", io::trace_csv(s.trace));
    out.write("driver.csv", io::driver_csv(s.driver));
    out.write_json("summary.json", {{"points", s.trace.size()},
                                    {"chain_steps", s.chain.size()},
                                    {"total_capacity", s.chain.total_capacity()},
                                    {"conformal_radius", conformal_radius(s.chain)},
                                    {"provenance", provenance(c)}});
}

void cmd_pair(const RunConfig& c, OutputSet& out) {
    if (!(c.kappa >= 0.0 && c.kappa <= 4.0)) fail(ErrorKind::Domain, "kappa must lie in [0, 4] for the pair sampler");
    const double th2 = c.theta2.value_or(c.theta1 + c.theta);
    const PairSample s =
        sample_two_sided_pair(c.kappa, c.mu, c.theta1, th2, c.total_cap, c.eps_step, RngSpec{c.seed, 0});
    out.write("curve1.csv", io::trace_csv(s.curve1));
    out.write("curve2.csv", io::trace_csv(s.curve2));
    out.write("turns.csv", io::turns_csv(s.turns));
    json state = io::to_json(s.state);
    state["provenance"] = provenance(c);
    state["eps_step"] = c.eps_step;
    out.write_json("state.json", state);
}

void cmd_partition(const RunConfig& c, OutputSet& out) {
    if (c.grid < 2) fail(ErrorKind::Domain, "grid must be at least 2");
    io::Csv table{"theta", "Z", "log_Z"};
    json summary;
    std::optional<PartitionFn> pf;
    if (c.alpha) {
        validate_kappa(c.kappa, 1.0, 8.0);
        pf = PartitionFn::cr_weighted(c.kappa, *c.alpha);
        out.write("phi.csv", io::hyp_csv(pf->hyp()));
        summary["solution"] = io::to_json(pf->hyp());
        summary["family"] = "cr_weighted";
    } else {
        validate_kappa(c.kappa, 1.0, INFINITY);
        pf = PartitionFn::spiral(c.kappa, c.mu);
        summary["family"] = "spiral";
    }
    for (std::uint64_t k = 1; k < c.grid; ++k) {
        const double th = two_pi * static_cast<double>(k) / static_cast<double>(c.grid);
        const double lz = log_Z(*pf, 0.0, th);
        table.row({th, eval_Z(*pf, 0.0, th), lz});
    }
    out.write("partition.csv", table.str());
    summary["kappa"] = c.kappa;
    summary["interchange_constant"] = interchange_constant(*pf);
    summary["F"] = expected_F(*pf);
    summary["version"] = RADSLE_VERSION;
    out.write_json("summary.json", summary);
}

std::vector<std::pair<double, double>> check_points() {
    std::vector<std::pair<double, double>> pts;
    for (double th1 : {0.0, 1.0, -2.5})
        for (double gap : {pi / 3.0, pi / 2.0, 2.0 * pi / 3.0, pi, 4.0 * pi / 3.0, 3.0 * pi / 2.0, 5.0 * pi / 3.0})
            pts.emplace_back(th1, th1 + gap);
    return pts;
}

void cmd_check(const RunConfig& c, OutputSet& out) {
    const bool all = !(c.bpz || c.bracket || c.zero);
    json report = {{"bound", c.bound}, {"version", RADSLE_VERSION}};
    bool pass = true;
    const auto pts = check_points();
    std::optional<PartitionFn> pf;
    if (c.bpz || c.bracket || all) {
        validate_kappa(c.kappa, 1.0, 8.0);
        pf = c.alpha ? PartitionFn::cr_weighted(c.kappa, *c.alpha) : PartitionFn::spiral(c.kappa, c.mu);
        report["family"] = c.alpha ? "cr_weighted" : "spiral";
        report["kappa"] = c.kappa;
        if (c.alpha)
            report["alpha"] = *c.alpha;
        else
            report["mu"] = c.mu;
    }
    if (c.bpz || all) {
        json rows = json::array();
        double worst = 0.0, worst_f = 0.0;
        for (const auto& [a, b] : pts) {
            const ResidualReport r1 = bpz_residual(*pf, a, b, 1);
            const ResidualReport r2 = bpz_residual(*pf, a, b, 2);
            worst = std::max({worst, std::fabs(r1.residual()), std::fabs(r2.residual())});
            worst_f = std::max(worst_f, std::fabs(r1.value - r2.value));
            rows.push_back({{"bpz1", io::to_json(r1)}, {"bpz2", io::to_json(r2)}});
        }
        const bool ok = worst < c.bound;
        pass = pass && ok;
        report["bpz"] = {{"F", expected_F(*pf)}, {"max_residual", worst}, {"max_F1_minus_F2", worst_f},
                         {"pass", ok}, {"points", rows}};
    }
    if (c.bracket || all) {
        const GeneratorSpec spec = GeneratorSpec::from_partition(*pf);
        json rows = json::array();
        double worst = 0.0;
        bool conv = true;
        for (const auto& tf : test_function_battery()) {
            for (const auto& [a, b] : pts) {
                const ResidualReport r = commutation_bracket_residual(spec, tf.f, a, b);
                worst = std::max(worst, std::fabs(r.residual()));
                conv = conv && converges_at_order(r, 2.0);
                json row = io::to_json(r);
                row["function"] = tf.name;
                rows.push_back(row);
            }
        }
        const bool ok = worst < c.bound && conv;
        pass = pass && ok;
        report["bracket"] = {{"max_residual", worst}, {"order_at_least_2", conv}, {"pass", ok}, {"points", rows}};
    }
    if (c.zero || all) {
        json rows = json::array();
        for (const ZeroKappaVariant& v : {ZeroKappaVariant::umu(c.mu), ZeroKappaVariant::chordal()}) {
            const ConstancyReport r = zero_kappa_constancy(v, pts);
            const bool ok = r.max_deviation < 1e-9;
            pass = pass && ok;
            json row = io::to_json(r);
            row["variant"] = v.name();
            row["constant"] = v.constant();
            row["pass"] = ok;
            rows.push_back(row);
        }
        report["zero_kappa"] = rows;
    }
    report["pass"] = pass;
    out.write_json("check.json", report);
}

void cmd_crmoment(const RunConfig& c, OutputSet& out, unsigned workers) {
    validate_kappa(c.kappa, 1.0, 8.0);
    if (!c.alpha) fail(ErrorKind::Domain, "crmoment needs --alpha");
    const double alpha = *c.alpha;
    if (!(c.theta > 0.0 && c.theta < two_pi)) fail(ErrorKind::Domain, "theta must lie in (0, 2pi)");
    if (c.n < 2) fail(ErrorKind::Domain, "n must be at least 2");
    McOptions mc;
    mc.workers = workers;
    mc.eps_abs = c.eps_abs;
    const RngSpec rng{c.seed, 0};
    const double u = std::pow(std::sin(0.25 * c.theta), 2);
    const double exact = cr_moment_exact(c.kappa, alpha, u);
    json report = {{"kappa", c.kappa}, {"alpha", alpha}, {"theta", c.theta}, {"u", u},
                   {"exact", exact},   {"provenance", provenance(c)}};
    if (c.t_fixed) {
        const McEstimate m = martingale_check(c.kappa, alpha, c.theta, *c.t_fixed, c.n, c.dt, rng, mc);
        const double z = joint_z(m.mean, m.std_error, exact, 0.0);
        report["martingale"] = {{"t", *c.t_fixed}, {"estimate", io::to_json(m)}, {"z", z}, {"within_3sigma", z <= 3.0}};
    } else {
        const SidedEstimate s = estimate_cr_moment_sided(c.kappa, alpha, c.theta, c.n, c.dt, rng, mc);
        const double z = joint_z(s.total.mean, s.total.std_error, exact, 0.0);
        report["estimate"] = io::to_json(s.total);
        report["left"] = io::to_json(s.left);
        report["right"] = io::to_json(s.right);
        report["side_convention"] = "left means absorption at 2pi";
        report["z"] = z;
        report["within_3sigma"] = z <= 3.0;
    }
    out.write_json("report.json", report);
}

// ---------------------------------------------------------------------------
// Option table: each option is captured as text and applied over the config.

struct Binding {
    std::string flag;
    std::string help;
    std::function<void(RunConfig&, const std::string&)> apply;
};

std::vector<Binding> bindings_for(const std::string& sub) {
    auto num = [](double RunConfig::*field, const char* name) {
        return [field, name](RunConfig& c, const std::string& s) { c.*field = parse_number(s, name); };
    };
    auto cnt = [](std::uint64_t RunConfig::*field, const char* name) {
        return [field, name](RunConfig& c, const std::string& s) { c.*field = parse_count(s, name); };
    };
    std::vector<Binding> b = {
        {"--kappa", "SLE parameter kappa", num(&RunConfig::kappa, "kappa")},
        {"--mu", "spiraling rate mu", num(&RunConfig::mu, "mu")},
        {"--seed", "base random seed", cnt(&RunConfig::seed, "seed")},
    };
    auto add = [&](Binding x) { b.push_back(std::move(x)); };
    auto alpha = Binding{"--alpha", "conformal-radius exponent alpha",
                         [](RunConfig& c, const std::string& s) { c.alpha = parse_number(s, "alpha"); }};
    auto theta1 = Binding{"--theta1", "first boundary angle (accepts pi expressions)",
                          [](RunConfig& c, const std::string& s) { c.theta1 = parse_angle(s); }};
    auto theta2 = Binding{"--theta2", "second boundary angle / force point",
                          [](RunConfig& c, const std::string& s) { c.theta2 = parse_angle(s); }};
    auto theta = Binding{"--theta", "gap angle theta2 - theta1",
                         [](RunConfig& c, const std::string& s) { c.theta = parse_angle(s); }};
    auto dt = Binding{"--dt", "time step", num(&RunConfig::dt, "dt")};
    if (sub == "trace") {
        add({"--rho", "force-point weight rho", num(&RunConfig::rho, "rho")});
        add(theta1);
        add(theta2);
        add({"--T", "total capacity", num(&RunConfig::T, "T")});
        add(dt);
        add({"--n-points", "number of traced points", cnt(&RunConfig::n_points, "n-points")});
    } else if (sub == "pair") {
        add(theta1);
        add(theta2);
        add(theta);
        add({"--total-cap", "capacity grown by each curve", num(&RunConfig::total_cap, "total-cap")});
        add({"--eps-step", "capacity per growth turn", num(&RunConfig::eps_step, "eps-step")});
    } else if (sub == "partition") {
        add(alpha);
        add({"--grid", "number of theta intervals on (0, 2pi)", cnt(&RunConfig::grid, "grid")});
    } else if (sub == "check") {
        add(alpha);
        add({"--bound", "pass bound for residual magnitudes", num(&RunConfig::bound, "bound")});
    } else if (sub == "crmoment") {
        add(alpha);
        add(theta);
        add(dt);
        add({"--n", "number of Monte Carlo paths", cnt(&RunConfig::n, "n")});
        add({"--eps-abs", "boundary layer width of the gap process", num(&RunConfig::eps_abs, "eps-abs")});
        add({"--t-fixed", "run the stopped martingale check at this time",
             [](RunConfig& c, const std::string& s) { c.t_fixed = parse_number(s, "t-fixed"); }});
    }
    return b;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::Domain, "cannot read config file " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        fail(ErrorKind::Domain, "config file is not valid JSON: " + std::string(e.what()));
    }
    return config_from_json(j);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulation and verification tools for 2-radial SLE", "radsle"};
    app.require_subcommand(1);
    app.set_version_flag("--version", RADSLE_VERSION);

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"trace", "trace one radial SLE curve (kappa = 0 gives the deterministic flow)"},
        {"pair", "sample the two-sided radial SLE pair with spiral"},
        {"partition", "tabulate a partition function over the gap angle"},
        {"check", "BPZ, commutation and kappa = 0 residual reports"},
        {"crmoment", "Monte Carlo conformal-radius moment against the exact value"},
    };
    struct SubState {
        CLI::App* app = nullptr;
        std::vector<Binding> bindings;
        std::vector<std::string> values;
        std::vector<CLI::Option*> options;
        std::string config_path;
        std::string out_dir;
        unsigned workers = 1;
        bool bpz = false, bracket = false, zero = false;
    };
    std::map<std::string, SubState> state;
    for (const auto& [name, help] : subs) {
        SubState& s = state[name];
        s.app = app.add_subcommand(name, help);
        s.bindings = bindings_for(name);
        s.values.resize(s.bindings.size());
        for (std::size_t i = 0; i < s.bindings.size(); ++i)
            s.options.push_back(s.app->add_option(s.bindings[i].flag, s.values[i], s.bindings[i].help));
        s.app->add_option("--config", s.config_path, "RunConfig JSON file; flags override its fields");
        s.app->add_option("--out-dir", s.out_dir, "output directory (default: $RADSLE_OUT_DIR or ./radsle_out)");
        s.app->add_option("--workers", s.workers, "worker threads for Monte Carlo runs")->check(CLI::Range(1u, 1024u));
        if (name == "check") {
            s.app->add_flag("--bpz", s.bpz, "radial BPZ residuals");
            s.app->add_flag("--bracket", s.bracket, "commutation bracket residuals");
            s.app->add_flag("--zero", s.zero, "kappa = 0 residual constancy");
        }
    }

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << RADSLE_VERSION << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        std::string sub;
        for (auto& [name, s] : state)
            if (s.app->parsed()) sub = name;
        SubState& s = state.at(sub);
        RunConfig cfg;
        if (!s.config_path.empty()) {
            cfg = load_config_file(s.config_path);
            if (!cfg.subcommand.empty() && cfg.subcommand != sub)
                fail(ErrorKind::Domain, "config is for subcommand '" + cfg.subcommand + "', not '" + sub + "'");
        }
        cfg.subcommand = sub;
        for (std::size_t i = 0; i < s.bindings.size(); ++i)
            if (s.options[i]->count() > 0) s.bindings[i].apply(cfg, s.values[i]);
        if (sub == "check") {
            cfg.bpz = cfg.bpz || s.bpz;
            cfg.bracket = cfg.bracket || s.bracket;
            cfg.zero = cfg.zero || s.zero;
        }
        if (!s.out_dir.empty()) {
            cfg.out_dir = s.out_dir;
        } else if (cfg.out_dir.empty()) {
            const char* env = std::getenv("RADSLE_OUT_DIR");
            cfg.out_dir = (env != nullptr && *env != '\0') ? env : "radsle_out";
        }

        const auto t0 = std::chrono::steady_clock::now();
        OutputSet outputs{fs::path(cfg.out_dir)};
        outputs.write_json("config.json", to_json(cfg));
        if (sub == "trace")
            cmd_trace(cfg, outputs);
        else if (sub == "pair")
            cmd_pair(cfg, outputs);
        else if (sub == "partition")
            cmd_partition(cfg, outputs);
        else if (sub == "check")
            cmd_check(cfg, outputs);
        else
            cmd_crmoment(cfg, outputs, s.workers);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        outputs.write_manifest(cfg, wall);
        out << "wrote " << (outputs.dir() / "manifest.json").string() << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_domain_error(e.kind()) ? 2 : 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace radsle::cli
