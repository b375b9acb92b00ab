// Command-line front end: single scenario runs, batch comparisons and
// delay-margin reports, emitting CSV traces and JSON metrics.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sbw/analysis.hpp"
#include "sbw/config.hpp"
#include "sbw/csv.hpp"
#include "sbw/metrics.hpp"
#include "sbw/scenario.hpp"

namespace fs = std::filesystem;
using sbw::json;

namespace {

json mat2_json(const sbw::Mat2& m) {
    return json::array({json::array({m.a11, m.a12}), json::array({m.a21, m.a22})});
}

json metrics_json(const sbw::Metrics& m, const sbw::Trace& trace) {
    json g_min = json::array(), g_max = json::array();
    for (double v : m.gain_min) g_min.push_back(v);
    for (double v : m.gain_max) g_max.push_back(v);
    json names = json::array();
    for (const std::string& n : trace.gain_names) names.push_back(n);
    return {{"controller", trace.controller},
            {"rms_error_deg", m.rms_error_deg},
            {"rms_torque", m.rms_torque},
            {"gain_names", names},
            {"gain_min", g_min},
            {"gain_max", g_max},
            {"gain_ceiling_hit", m.gain_ceiling_hit},
            {"samples", trace.samples.size()},
            {"dt", trace.dt},
            {"duration", trace.duration}};
}

json trace_json(const sbw::Trace& trace, std::size_t every) {
    json cols = json::array({"t", "theta", "theta_dot", "theta_d", "e", "e_dot", "tau_cmd",
                             "tau_applied"});
    for (std::size_t i = 0; i < trace.gain_count(); ++i)
        cols.push_back("gain_" + std::to_string(i));
    json rows = json::array();
    for (std::size_t k = 0; k < trace.samples.size(); k += every) {
        const sbw::TraceSample& s = trace.samples[k];
        json row = json::array({s.t, s.theta, s.theta_dot, s.theta_d, s.e, s.e_dot, s.tau_cmd,
                                s.tau_applied});
        for (std::size_t i = 0; i < trace.gain_count(); ++i) row.push_back(s.gains[i]);
        rows.push_back(std::move(row));
    }
    return {{"columns", cols}, {"samples", rows}};
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sbw::ValidationError("cannot write '" + path.string() + "'");
    out << body;
}

void write_trace(const fs::path& dir, const std::string& stem, const sbw::Trace& trace,
                 std::size_t every, const std::string& format) {
    if (format == "json") {
        write_file(dir / (stem + ".json"), trace_json(trace, every).dump(2) + "\n");
    } else {
        std::ofstream out(dir / (stem + ".csv"), std::ios::binary);
        if (!out) throw sbw::ValidationError("cannot write trace in '" + dir.string() + "'");
        sbw::write_trace_csv(out, trace, every);
    }
}

int cmd_simulate(const std::string& config_path, const fs::path& out_dir, std::size_t every,
                 const std::string& format) {
    const sbw::ScenarioConfig cfg = sbw::load_scenario(sbw::load_json_file(config_path));
    const sbw::Trace trace = sbw::run_scenario(cfg);
    const sbw::Metrics metrics = sbw::compute_metrics(trace);

    fs::create_directories(out_dir);
    write_trace(out_dir, "trace", trace, every, format);
    const json mj = metrics_json(metrics, trace);
    write_file(out_dir / "metrics.json", mj.dump(2) + "\n");
    std::cout << mj.dump(2) << '\n';
    return 0;
}

int cmd_compare(const std::string& config_path, const fs::path& out_dir, std::size_t every,
                const std::string& format) {
    const sbw::CompareConfig cmp = sbw::load_compare(sbw::load_json_file(config_path));
    fs::create_directories(out_dir);

    struct Entry {
        std::string name;
        bool failed = false;
        std::string error;
        sbw::Metrics metrics;
    };
    std::vector<Entry> entries;
    bool any_failed = false;
    for (const sbw::CompareVariant& var : cmp.variants) {
        Entry e;
        e.name = var.name;
        try {
            const sbw::Trace trace = sbw::run_scenario(var.cfg);
            e.metrics = sbw::compute_metrics(trace);
            write_trace(out_dir, var.name, trace, every, format);
        } catch (const sbw::InstabilityError& err) {
            e.failed = true;
            e.error = err.what();
            any_failed = true;
        }
        entries.push_back(std::move(e));
    }

    const Entry& base = entries[cmp.baseline];
    json results = json::array();
    for (const Entry& e : entries) {
        json r{{"name", e.name}, {"failed", e.failed}};
        if (e.failed) {
            r["error"] = e.error;
        } else {
            r["rms_error_deg"] = e.metrics.rms_error_deg;
            r["rms_torque"] = e.metrics.rms_torque;
            r["gain_ceiling_hit"] = e.metrics.gain_ceiling_hit;
            if (!base.failed && e.name != base.name) {
                r["improvement_error_pct"] =
                    sbw::improvement_pct(e.metrics.rms_error_deg, base.metrics.rms_error_deg);
                r["improvement_torque_pct"] =
                    sbw::improvement_pct(e.metrics.rms_torque, base.metrics.rms_torque);
            }
        }
        results.push_back(std::move(r));
    }
    const json report{{"baseline", base.name}, {"partial", any_failed}, {"results", results}};
    write_file(out_dir / "compare.json", report.dump(2) + "\n");
    std::cout << report.dump(2) << '\n';
    return any_failed ? 2 : 0;
}

int cmd_delay_bound(const std::string& config_path, const fs::path& out_dir, bool have_out) {
    const sbw::DelayBoundConfig cfg = sbw::load_delay_bound(sbw::load_json_file(config_path));
    const sbw::LyapunovPair pair = sbw::make_lyapunov_pair(cfg.K, cfg.Omega, cfg.Q);
    const sbw::DelayBoundInputs inputs{pair, cfg.razumikhin_r, cfg.eta};
    const double k1 = cfg.arolc_k1.value_or(cfg.K);
    const double k2 = cfg.arolc_k2.value_or(2.0 * cfg.Omega);

    const sbw::DelayMargin ours = sbw::delay_margin(inputs);
    const sbw::DelayMargin theirs = sbw::arolc_margin(inputs, k1, k2);
    const sbw::MarginGainCheck gate = sbw::margin_gain_check(pair.P, cfg.K, cfg.Omega);

    const json report{
        {"inputs",
         {{"K", cfg.K},
          {"Omega", cfg.Omega},
          {"Q", mat2_json(cfg.Q)},
          {"razumikhin_r", cfg.razumikhin_r},
          {"eta", cfg.eta},
          {"arolc_k1", k1},
          {"arolc_k2", k2}}},
        {"P", mat2_json(pair.P)},
        {"P_inv", mat2_json(pair.P.inverse())},
        {"G", mat2_json(ours.G)},
        {"G1", mat2_json(theirs.G)},
        {"max_delay", ours.bound},
        {"max_delay_arolc", theirs.bound},
        {"gain_conditions",
         {{"cross_condition", gate.cross_condition},
          {"diagonal_condition", gate.diagonal_condition},
          {"pass", gate.pass},
          {"P_inv_entries", json::array({gate.pbar1, gate.pbar2, gate.pbar3})}}}};

    std::cout << report.dump(2) << '\n';
    if (have_out) {
        fs::create_directories(out_dir);
        write_file(out_dir / "delay_bound.json", report.dump(2) + "\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steer-by-wire tracking control simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::size_t every = 1;
    std::string format = "csv";
    bool out_given = false;

    const auto add_common = [&](CLI::App* sub, bool with_format) {
        sub->add_option("config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory")
            ->each([&](const std::string&) { out_given = true; });
        if (with_format) {
            sub->add_option("--every", every, "keep every Nth trace row")->check(CLI::PositiveNumber);
            sub->add_option("--format", format, "trace format")
                ->check(CLI::IsMember({"csv", "json"}));
        }
    };

    CLI::App* sim = app.add_subcommand("simulate", "run one scenario, write trace + metrics");
    add_common(sim, true);
    CLI::App* cmp = app.add_subcommand("compare", "run controller variants on identical inputs");
    add_common(cmp, true);
    CLI::App* dly = app.add_subcommand("delay-bound", "maximum-allowable-delay report");
    add_common(dly, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_dir, every, format);
        if (cmp->parsed()) return cmd_compare(config_path, out_dir, every, format);
        return cmd_delay_bound(config_path, out_dir, out_given);
    } catch (const sbw::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const sbw::InstabilityError& e) {
        std::cerr << "instability: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
