#pragma once

// CSV and JSON serialization. Doubles in CSV are written with %.17g so that
// every value round-trips exactly.

#include <cstdio>
#include <initializer_list>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radsle/conformal_core.hpp"
#include "radsle/drivers.hpp"
#include "radsle/hypergeometric_ivp.hpp"
#include "radsle/samplers.hpp"
#include "radsle/semiclassical.hpp"
#include "radsle/verify.hpp"

namespace radsle::io {

using json = nlohmann::json;

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Builds CSV text row by row.
class Csv {
public:
    explicit Csv(std::initializer_list<const char*> header) {
        bool first = true;
        for (const char* h : header) {
            if (!first) text_ += ',';
            text_ += h;
            first = false;
        }
        text_ += '\n';
    }

    Csv& row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) text_ += ',';
            text_ += fmt17(v);
            first = false;
        }
        text_ += '\n';
        return *this;
    }

    const std::string& str() const noexcept { return text_; }

private:
    std::string text_;
};

inline std::string trace_csv(const CurveTrace& tr) {
    Csv csv{"t", "x", "y"};
    for (std::size_t k = 0; k < tr.size(); ++k) csv.row({tr.times[k], tr.points[k].real(), tr.points[k].imag()});
    return csv.str();
}

inline std::string chain_csv(const LoewnerChain& chain) {
    Csv csv{"dt", "xi"};
    for (const auto& s : chain.steps()) csv.row({s.dt, s.xi});
    return csv.str();
}

inline std::string driver_csv(const DrivingPath& path) {
    if (path.has_v()) {
        Csv csv{"t", "xi", "v"};
        for (std::size_t k = 0; k < path.size(); ++k) csv.row({path.times[k], path.xi[k], path.v[k]});
        return csv.str();
    }
    Csv csv{"t", "xi"};
    for (std::size_t k = 0; k < path.size(); ++k) csv.row({path.times[k], path.xi[k]});
    return csv.str();
}

inline std::string gap_run_csv(const GapRun& run) {
    Csv csv{"t", "theta"};
    for (std::size_t k = 0; k < run.times.size(); ++k) csv.row({run.times[k], run.theta[k]});
    return csv.str();
}

inline std::string hyp_csv(const HypSolution& h) {
    Csv csv{"u", "phi", "dphi"};
    for (std::size_t k = 0; k < h.u_grid.size(); ++k) csv.row({h.u_grid[k], h.phi[k], h.dphi[k]});
    return csv.str();
}

inline std::string turns_csv(const std::vector<PairTurn>& turns) {
    Csv csv{"curve", "theta1", "theta2"};
    for (const auto& t : turns) csv.row({static_cast<double>(t.curve), t.theta1, t.theta2});
    return csv.str();
}

inline std::string trend_csv(const TrendTable& t) {
    Csv csv{"kappa", "kappa_log_Z", "error"};
    for (const auto& r : t.rows) csv.row({r.kappa, r.value, r.error});
    return csv.str();
}

inline json to_json(const RngSpec& s) { return {{"seed", s.seed}, {"stream", s.stream}}; }

inline json to_json(const McEstimate& e) {
    return {{"mean", e.mean},   {"stderr", e.std_error},         {"n", e.n},
            {"seed", to_json(e.seed)}, {"dt", e.dt}, {"eps_abs", e.eps_abs},
            {"variance_warning", e.variance_warning}};
}

inline json to_json(const ResidualReport& r) {
    return {{"th1", r.th1},           {"th2", r.th2},       {"value", r.value},
            {"expected", r.expected}, {"residual", r.residual()}, {"fd_step", r.fd_step},
            {"estimated_order", r.estimated_order}, {"sweep", r.sweep}};
}

inline json to_json(const ConstancyReport& c) {
    json pts = json::array();
    for (const auto& r : c.points) pts.push_back(to_json(r));
    return {{"mean", c.mean}, {"max_deviation", c.max_deviation}, {"points", pts}};
}

inline json to_json(const PairState& s) {
    return {{"theta1_t", s.theta1_t}, {"theta2_t", s.theta2_t}, {"cap1", s.cap1}, {"cap2", s.cap2},
            {"chain_steps", s.chain.size()}, {"total_capacity", s.chain.total_capacity()}};
}

inline json to_json(const HypSolution& h) {
    json j = {{"kappa", h.kappa}, {"alpha", h.alpha}, {"u_min", h.u_min}, {"u_max", h.u_max},
              {"nodes", h.u_grid.size()}, {"min_phi", h.min_phi},
              {"endpoint", {{"limit", h.endpoint.limit}, {"slope", h.endpoint.slope},
                            {"exponent", h.endpoint.exponent}}}};
    if (h.sign_change)
        j["sign_change"] = {{"u", h.sign_change->u}, {"beyond_grid", h.sign_change->beyond_grid}};
    else
        j["sign_change"] = nullptr;
    return j;
}

inline json to_json(const TrendTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back({{"kappa", r.kappa}, {"value", r.value}, {"error", r.error}});
    return {{"alpha", t.alpha}, {"theta", t.theta}, {"rows", rows},
            {"non_increasing", t.non_increasing}, {"strictly_decreasing", t.strictly_decreasing}};
}

} // namespace radsle::io
