#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <thread>

#include "catqed/checks.hpp"
#include "catqed/entanglement.hpp"
#include "catqed/io.hpp"
#include "catqed/wigner.hpp"

namespace fs = std::filesystem;
using namespace catqed;
using catqed::io::json;

namespace {

struct GlobalOpts {
    std::string out_dir = ".";
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    unsigned seed = 0;  // reserved; nothing is randomized yet
    std::string format = "csv";
};

json manifest_base(const char* command) {
    return json{{"tool_version", io::kToolVersion},
                {"command", command},
                {"convention", io::convention_to_json(WignerConvention{})},
                {"outputs", json::array()}};
}

fs::path ensure_out_dir(const GlobalOpts& g) {
    fs::path dir(g.out_dir);
    fs::create_directories(dir);
    return dir;
}

int cmd_run(const std::string& config_path, const std::string& outcome_arg,
            const GlobalOpts& g) {
    ProtocolConfig cfg = io::parse_protocol_config(io::read_json_file(config_path));
    fs::path dir = ensure_out_dir(g);

    std::vector<MeasurementOutcome> outcomes;
    if (outcome_arg == "all") {
        outcomes.assign(MeasurementOutcome::all().begin(), MeasurementOutcome::all().end());
    } else {
        outcomes.push_back(MeasurementOutcome::from_label(outcome_arg));
    }

    SuperState final_state = run_protocol(cfg);
    json manifest = manifest_base("run");
    manifest["config"] = io::protocol_config_to_json(cfg);
    manifest["outcome"] = outcome_arg;
    json results = json::object();
    for (const MeasurementOutcome& o : outcomes) {
        json entry;
        try {
            ConditionalResult cond = project_atoms(final_state, o);
            double e = entropy_gram(cond.state, 1).entropy;
            entry["probability"] = cond.probability;
            entry["entropy"] = e;
            entry["product_state"] = e <= 1e-8;
            std::string fname = "state_" + o.label() + ".json";
            json state_doc{{"outcome", o.label()},
                           {"probability", cond.probability},
                           {"state", io::superstate_to_json(cond.state)}};
            io::write_text(dir / fname, state_doc.dump(2) + "\n");
            entry["file"] = fname;
            manifest["outputs"].push_back(fname);
        } catch (const DegenerateStateError&) {
            entry["probability"] = 0.0;
            entry["degenerate"] = true;
        }
        results[o.label()] = std::move(entry);
    }
    manifest["results"] = std::move(results);
    io::write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    std::printf("wrote %zu state file(s) to %s\n", manifest["outputs"].size(),
                dir.string().c_str());
    return 0;
}

int cmd_entropy_sweep(const std::string& spec_path, std::string out_name, const GlobalOpts& g) {
    SweepSpec spec = io::parse_sweep_spec(io::read_json_file(spec_path));
    std::vector<SweepRow> rows = entropy_sweep(spec, g.threads);
    fs::path dir = ensure_out_dir(g);
    if (out_name.empty()) out_name = g.format == "json" ? "sweep.json" : "sweep.csv";
    fs::path out = dir / out_name;
    if (g.format == "json") {
        io::write_text(out, io::sweep_json(rows).dump(2) + "\n");
    } else {
        io::write_text(out, io::sweep_csv(rows));
    }
    json manifest = manifest_base("entropy-sweep");
    manifest["spec_file"] = spec_path;
    manifest["rows"] = rows.size();
    manifest["outputs"].push_back(out_name);
    io::write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    std::printf("%zu rows -> %s\n", rows.size(), out.string().c_str());
    return 0;
}

PhaseSpaceGrid parse_grid(const std::string& arg, double alpha_mag) {
    if (arg == "auto") return PhaseSpaceGrid::wide(alpha_mag);
    // "min:max:n" applied to both quadratures
    double lo, hi;
    int n;
    if (std::sscanf(arg.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 2 || hi <= lo) {
        throw std::invalid_argument("grid must be \"auto\" or \"min:max:n\"");
    }
    return PhaseSpaceGrid{lo, hi, lo, hi, n, n};
}

json field_sidecar(const WignerField& f, const json& descriptor) {
    const auto lobes = lobe_positions(f);
    json jl = json::array();
    for (const auto& [x, p] : lobes) jl.push_back(json::array({x, p}));
    return json{{"grid",
                 {{"x_min", f.grid.x_min},
                  {"x_max", f.grid.x_max},
                  {"p_min", f.grid.p_min},
                  {"p_max", f.grid.p_max},
                  {"nx", f.grid.nx},
                  {"np", f.grid.np}}},
                {"convention", io::convention_to_json(f.convention)},
                {"state", descriptor},
                {"min_value", field_min(f)},
                {"max_value", field_max(f)},
                {"integral", field_integral(f)},
                {"negativity_volume", negativity_volume(f)},
                {"lobes", jl}};
}

int cmd_wigner(const std::string& config_path, const std::string& outcome_arg, int mode,
               const std::string& grid_arg, bool zoom, bool heatmap, std::string out_base,
               const GlobalOpts& g) {
    ProtocolConfig cfg = io::parse_protocol_config(io::read_json_file(config_path));
    MeasurementOutcome o = MeasurementOutcome::from_label(outcome_arg);
    ConditionalResult cond = project_atoms(run_protocol(cfg), o);
    const double amag = std::abs(mode == 1 ? cfg.alpha1 : cfg.alpha2);
    fs::path dir = ensure_out_dir(g);
    if (out_base.empty()) out_base = "wigner_" + o.label() + "_mode" + std::to_string(mode);

    json manifest = manifest_base("wigner");
    manifest["config"] = io::protocol_config_to_json(cfg);
    manifest["outcome"] = o.label();
    manifest["mode"] = mode;
    json descriptor{{"outcome", o.label()},
                    {"mode", mode},
                    {"config", io::protocol_config_to_json(cfg)}};

    auto emit = [&](const PhaseSpaceGrid& grid, const std::string& suffix) {
        WignerField f = reduced_wigner(cond.state, mode, grid, g.threads);
        json sidecar = field_sidecar(f, descriptor);
        if (g.format == "json") {
            sidecar["values"] = f.values;
            io::write_text(dir / (out_base + suffix + ".json"), sidecar.dump() + "\n");
            manifest["outputs"].push_back(out_base + suffix + ".json");
        } else {
            io::write_text(dir / (out_base + suffix + ".csv"), io::wigner_csv(f));
            io::write_text(dir / (out_base + suffix + ".json"), sidecar.dump(2) + "\n");
            manifest["outputs"].push_back(out_base + suffix + ".csv");
            manifest["outputs"].push_back(out_base + suffix + ".json");
        }
        if (heatmap) {
            io::write_ppm(f, dir / (out_base + suffix + ".ppm"));
            manifest["outputs"].push_back(out_base + suffix + ".ppm");
        }
    };

    emit(parse_grid(grid_arg, amag), "");
    if (zoom) emit(PhaseSpaceGrid::zoom(), "_zoom");
    io::write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    std::printf("wrote %zu file(s) to %s\n", manifest["outputs"].size(), dir.string().c_str());
    return 0;
}

int cmd_validate(const std::string& level_arg, const GlobalOpts& g) {
    CheckLevel level = level_arg == "full" ? CheckLevel::full : CheckLevel::fast;
    std::vector<CheckResult> checks = run_checks(level, g.threads);
    bool all_pass = true;
    for (const CheckResult& c : checks) {
        std::printf("[%s] %-34s %s = %.3e (bound %.3e)\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.note.c_str(), c.worst, c.bound);
        if (!c.pass && all_pass) {
            all_pass = false;
            std::printf("first failing tolerance: %s at %.3e > %.3e\n", c.name.c_str(), c.worst,
                        c.bound);
        }
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-cavity conditional cat-state simulator"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--out-dir", g.out_dir, "output directory");
    app.add_option("--threads", g.threads, "worker threads for grids and sweeps");
    app.add_option("--seed", g.seed, "reserved; no randomness currently");
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    std::string config_path, outcome = "all", spec_path, out_name, grid_arg = "auto";
    std::string level = "fast", wigner_outcome = "g1g2g3";
    int mode = 1;
    bool zoom = false, heatmap = false;

    CLI::App* run = app.add_subcommand("run", "run the circuit and write conditional states");
    run->add_option("config", config_path, "protocol config JSON")->required();
    run->add_option("--outcome", outcome, "outcome label or \"all\"");

    CLI::App* sweep = app.add_subcommand("entropy-sweep", "entropy over a parameter grid");
    sweep->add_option("spec", spec_path, "sweep spec JSON")->required();
    sweep->add_option("--out", out_name, "output file name");

    CLI::App* wig = app.add_subcommand("wigner", "reduced Wigner field of a conditional state");
    wig->add_option("config", config_path, "protocol config JSON")->required();
    wig->add_option("--outcome", wigner_outcome, "outcome label");
    wig->add_option("--mode", mode, "cavity mode, 1 or 2")->check(CLI::IsMember({1, 2}));
    wig->add_option("--grid", grid_arg, "\"auto\" or \"min:max:n\"");
    wig->add_flag("--zoom", zoom, "also write the central +-1.5 zoom field");
    wig->add_flag("--heatmap", heatmap, "also write a PPM heatmap");
    wig->add_option("--out", out_name, "output file base name");

    CLI::App* val = app.add_subcommand("validate", "run the cross-module oracle suite");
    val->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (g.threads < 1) g.threads = 1;
    try {
        if (run->parsed()) return cmd_run(config_path, outcome, g);
        if (sweep->parsed()) return cmd_entropy_sweep(spec_path, out_name, g);
        if (wig->parsed())
            return cmd_wigner(config_path, wigner_outcome, mode, grid_arg, zoom, heatmap,
                              out_name, g);
        if (val->parsed()) return cmd_validate(level, g);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
