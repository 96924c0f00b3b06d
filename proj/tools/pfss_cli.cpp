/**
 * Command-line front end for the periodic-system analyzer.
 *
 * Commands:
 *   analyze <system.json>                 full structural report
 *   orbit <system.json> --x0 ...          orbit length of one initial condition
 *   orbits <system.json>                  whole-space orbit census
 *   find-init <system.json> <L>           initial condition with a prescribed period
 *   root <matrix.json> <N>                N-th root decision for one matrix
 *   fsr emit-pfss <pfsr.json>             expand a register spec into a periodic system
 *   fsr keystream <pfsr.json> --x0 ... --steps S [--tap t]
 *   simulate <system.json> --x0 ... [--steps S]
 *
 * Output goes to stdout (--format text|json); failures print a
 * machine-readable error document to stderr and exit nonzero.  Identical
 * invocations are byte-identical.
 */
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pfss/json_io.hpp"

namespace {

using namespace pfss;

struct Config {
    std::string path;
    std::string x0;
    std::string format = "text";
    u64 seed = 0;
    u64 cap_states = u64(1) << 24;
    u64 cap_extension = 0;
    u64 steps = 0;
    u64 length = 0;
    u64 nth = 0;
    u32 tap = 0;
};

void add_common(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", cfg.seed, "seed for randomized subroutines");
    cmd->add_option("--cap-states", cfg.cap_states, "exhaustive-enumeration state cap");
    cmd->add_option("--cap-extension", cfg.cap_extension,
                    "largest allowed extension degree for root searches (0 = default)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::ParseError, "cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json load_json(const std::string& path) { return parse_json(read_file(path)); }

/// Comma-separated canonical element indices -> state vector.
std::vector<FE> parse_state(const std::string& csv, const FieldCtxPtr& ctx) {
    if (csv.empty()) raise(ErrorKind::ParseError, "state vector must not be empty");
    std::vector<FE> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        u64 v = 0;
        try {
            size_t pos = 0;
            v = std::stoull(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            raise(ErrorKind::ParseError, "state entry is not a non-negative integer: " + tok);
        }
        out.push_back(FE::from_index(ctx, v));
    }
    return out;
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

std::string vec_text(const std::vector<FE>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].to_string();
    }
    return out + "]";
}

void print_matrix(std::ostream& os, const Mat& m, const char* indent = "  ") {
    for (u32 r = 0; r < m.rows(); ++r) {
        std::vector<FE> row;
        for (u32 c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        os << indent << vec_text(row) << "\n";
    }
}

std::string cycles_text(const CycleSet& cs) {
    if (cs.entries.empty()) return "(empty)";
    std::string out;
    for (size_t i = 0; i < cs.entries.size(); ++i) {
        if (i) out += " + ";
        out += std::to_string(static_cast<u64>(cs.entries[i].count)) + "[" +
               std::to_string(cs.entries[i].length) + "]";
    }
    return out;
}

std::string hist_text(const std::map<u64, u128>& hist) {
    std::string out = "{";
    bool first = true;
    for (const auto& [period, count] : hist) {
        if (!first) out += ", ";
        first = false;
        out += std::to_string(period) + ": " + std::to_string(static_cast<u64>(count));
    }
    return out + "}";
}

void print_root_text(std::ostream& os, const RootResult& rr, u64 N) {
    switch (rr.status) {
        case RootStatus::Root:
            os << "order-" << N << " root: found over " << rr.ctx->description() << "\n";
            print_matrix(os, rr.root);
            break;
        case RootStatus::NoRoot:
            os << "order-" << N << " root: none exists (" << rr.reason << ")\n";
            if (rr.certificate) {
                os << "  characteristic polynomial: "
                   << rr.certificate->characteristic.to_string() << "\n";
                os << "  minimal polynomial: " << rr.certificate->minimal.to_string() << "\n";
            }
            break;
        case RootStatus::Undetermined:
            os << "order-" << N << " root: undetermined (" << rr.reason << ")\n";
            break;
    }
}

void print_report_text(std::ostream& os, const AnalysisReport& rep, const Pfss& sys) {
    os << "system over " << sys.ctx()->description() << ", dimension " << sys.dim()
       << ", period " << sys.period() << "\n";
    os << "nonsingular: " << (rep.nonsingular ? "yes" : "no") << "\n";
    os << "monodromy:\n";
    print_matrix(os, rep.monodromy);
    os << "classification subspace dimension: " << rep.subspace_basis.size() << "\n";
    for (const auto& v : rep.subspace_basis) os << "  " << vec_text(v) << "\n";
    os << "rank condition: " << (rep.van_dooren ? "holds" : "fails") << "\n";
    if (rep.root) print_root_text(os, *rep.root, sys.period());
    if (rep.floquet) {
        os << "shift-invariant form over " << rep.floquet->ctx->description() << ":\n";
        print_matrix(os, rep.floquet->A_tilde);
    }
    if (rep.shift_cycles) os << "shift-invariant cycle set: " << cycles_text(*rep.shift_cycles) << "\n";
    if (rep.histogram) os << "period histogram: " << hist_text(*rep.histogram) << "\n";
    if (rep.closed_orbits) os << "closed orbits: " << cycles_text(*rep.closed_orbits) << "\n";
    if (rep.theorem) {
        os << "coprime theorem: " << (rep.theorem->pass ? "pass" : "FAIL");
        if (!rep.theorem->pass)
            os << " (" << rep.theorem->violated << " at " << vec_text(rep.theorem->witness) << ")";
        os << "\n";
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// Shift-invariant data for a system, when a root exists.
std::optional<FloquetData> try_transform(const Pfss& sys, const Config& cfg) {
    RootResult rr = matrix_nth_root(monodromy(sys), sys.period(), cfg.seed, false,
                                    cfg.cap_states, cfg.cap_extension);
    if (rr.status != RootStatus::Root) return std::nullopt;
    return floquet_transform(sys, rr.root);
}

int cmd_analyze(const Config& cfg) {
    Pfss sys = system_from_json(load_json(cfg.path));
    AnalysisReport rep = analyze(sys, cfg.cap_states, cfg.seed, cfg.cap_extension);
    if (cfg.format == "json")
        emit(analysis_report_to_json(rep));
    else
        print_report_text(std::cout, rep, sys);
    return 0;
}

int cmd_orbit(const Config& cfg) {
    Pfss sys = system_from_json(load_json(cfg.path));
    std::vector<FE> x0 = parse_state(cfg.x0, sys.ctx());
    std::optional<FloquetData> fd = try_transform(sys, cfg);
    Json out;
    std::string note;
    if (fd) {
        OrbitLength ol = orbit_length(sys, x0, fd);
        const bool exact = ol.classification == OrbitClassification::Exact;
        out = Json{{"length", ol.length},
                   {"classification", exact ? "exact" : "resolved-by-oracle"},
                   {"shift_period", ol.shift_period},
                   {"bound", ol.bound}};
        note = (exact ? std::string(" (exact; shift period ") : std::string(" (simulated; shift period ")) +
               std::to_string(ol.shift_period) + ", bound " + std::to_string(ol.bound) + ")";
    } else {
        u64 length = simulate_orbit(sys, x0).period;
        out = Json{{"length", length}, {"classification", "resolved-by-oracle"}};
        note = " (simulated; no shift-invariant form)";
    }
    if (cfg.format == "json") {
        emit(out);
    } else {
        std::cout << "field: " << sys.ctx()->description() << "\n"
                  << "x0: " << vec_text(x0) << "\n"
                  << "orbit length: " << out.at("length").get<u64>() << note << "\n";
    }
    return 0;
}

int cmd_orbits(const Config& cfg) {
    Pfss sys = system_from_json(load_json(cfg.path));
    OrbitCensus census = all_orbits(sys, try_transform(sys, cfg), cfg.cap_states);
    if (cfg.format == "json") {
        Json out{{"closed_orbits", cycle_set_to_json(census.closed_orbits)},
                 {"histogram", histogram_to_json(census.histogram)}};
        if (census.derived_from_lfss) {
            out["derived_from_lfss"] = cycle_set_to_json(*census.derived_from_lfss);
            out["derived_matches"] = census.derived_matches;
        }
        emit(out);
    } else {
        std::cout << "field: " << sys.ctx()->description() << "\n"
                  << "period histogram: " << hist_text(census.histogram) << "\n"
                  << "closed orbits: " << cycles_text(census.closed_orbits) << "\n";
        if (census.derived_from_lfss)
            std::cout << "prime-period shortcut: " << cycles_text(*census.derived_from_lfss)
                      << (census.derived_matches ? " (matches)" : " (DISAGREES)") << "\n";
    }
    return 0;
}

int cmd_find_init(const Config& cfg) {
    Pfss sys = system_from_json(load_json(cfg.path));
    std::optional<FloquetData> fd = try_transform(sys, cfg);
    std::optional<std::vector<FE>> x0 = find_initial_condition(sys, fd, cfg.length, cfg.seed);
    // The vector lives over the shift-invariant form's field, which may
    // extend the system's own; name it in the output.
    if (cfg.format == "json") {
        Json out{{"found", x0.has_value()}, {"length", cfg.length}};
        if (x0) {
            out["field"] = field_to_json(x0->front().ctx());
            out["x0"] = vector_to_json(*x0);
        }
        emit(out);
    } else if (x0) {
        std::cout << "field: " << x0->front().ctx()->description() << "\n"
                  << "initial condition with orbit length " << cfg.length << ": " << vec_text(*x0)
                  << "\n";
    } else {
        std::cout << "no initial condition has orbit length " << cfg.length << "\n";
    }
    return 0;
}

int cmd_root(const Config& cfg) {
    Mat m = matrix_file_from_json(load_json(cfg.path));
    RootResult rr =
        matrix_nth_root(m, cfg.nth, cfg.seed, false, cfg.cap_states, cfg.cap_extension);
    if (cfg.format == "json")
        emit(root_result_to_json(rr));
    else
        print_root_text(std::cout, rr, cfg.nth);
    return 0;
}

int cmd_fsr_emit(const Config& cfg) {
    PfsrSpec spec = pfsr_from_json(load_json(cfg.path));
    Pfss sys = build_pfss(spec);
    if (cfg.format == "json") {
        emit(system_to_json(sys));
    } else {
        std::cout << "system over " << sys.ctx()->description() << ", dimension " << sys.dim()
                  << ", period " << sys.period() << "\n";
        for (u64 k = 0; k < sys.period(); ++k) {
            std::cout << "A(" << k << "):\n";
            print_matrix(std::cout, sys.matrix(k));
        }
    }
    return 0;
}

int cmd_fsr_keystream(const Config& cfg) {
    PfsrSpec spec = pfsr_from_json(load_json(cfg.path));
    Pfss sys = build_pfss(spec);
    std::vector<FE> x0 = parse_state(cfg.x0, sys.ctx());
    std::vector<FE> ks = keystream(spec, x0, cfg.steps, cfg.tap);
    if (cfg.format == "json") {
        emit(vector_to_json(ks));
    } else {
        for (const FE& e : ks) std::cout << e.to_string() << "\n";
    }
    return 0;
}

int cmd_simulate(const Config& cfg) {
    Pfss sys = system_from_json(load_json(cfg.path));
    std::vector<FE> x0 = parse_state(cfg.x0, sys.ctx());
    std::vector<std::vector<FE>> states;
    std::optional<u64> period;
    if (cfg.steps > 0) {
        if (x0.size() != sys.dim())
            raise(ErrorKind::BadRange, "initial condition has the wrong dimension");
        states.push_back(x0);
        for (u64 k = 0; k + 1 < cfg.steps; ++k)
            states.push_back(sys.matrix(k).apply(states.back()));
    } else {
        Trajectory t = simulate_orbit(sys, x0);
        states = std::move(t.states);
        period = t.period;
    }
    if (cfg.format == "json") {
        Json out;
        if (period) out["period"] = *period;
        Json arr = Json::array();
        for (const auto& s : states) arr.push_back(vector_to_json(s));
        out["states"] = std::move(arr);
        emit(out);
    } else {
        std::cout << "field: " << sys.ctx()->description() << "\n";
        if (period) std::cout << "period: " << *period << "\n";
        for (const auto& s : states) std::cout << vec_text(s) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analyzer for periodic linear systems over finite fields"};
    app.require_subcommand(1);
    Config cfg;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "full structural report for a system");
    analyze_cmd->add_option("file", cfg.path, "system JSON file")->required();
    add_common(analyze_cmd, cfg);

    CLI::App* orbit_cmd = app.add_subcommand("orbit", "orbit length of one initial condition");
    orbit_cmd->add_option("file", cfg.path, "system JSON file")->required();
    orbit_cmd->add_option("--x0", cfg.x0, "initial condition (comma-separated indices)")->required();
    add_common(orbit_cmd, cfg);

    CLI::App* orbits_cmd = app.add_subcommand("orbits", "whole-space orbit census");
    orbits_cmd->add_option("file", cfg.path, "system JSON file")->required();
    add_common(orbits_cmd, cfg);

    CLI::App* find_cmd = app.add_subcommand("find-init", "initial condition with a prescribed orbit length");
    find_cmd->add_option("file", cfg.path, "system JSON file")->required();
    find_cmd->add_option("length", cfg.length, "prescribed orbit length")->required();
    add_common(find_cmd, cfg);

    CLI::App* root_cmd = app.add_subcommand("root", "N-th root decision for a matrix");
    root_cmd->add_option("file", cfg.path, "matrix JSON file")->required();
    root_cmd->add_option("N", cfg.nth, "root order")->required();
    add_common(root_cmd, cfg);

    CLI::App* fsr_cmd = app.add_subcommand("fsr", "periodic feedback register tools");
    fsr_cmd->require_subcommand(1);
    CLI::App* emit_cmd = fsr_cmd->add_subcommand("emit-pfss", "expand a register spec into a periodic system");
    emit_cmd->add_option("file", cfg.path, "register spec JSON file")->required();
    add_common(emit_cmd, cfg);
    CLI::App* ks_cmd = fsr_cmd->add_subcommand("keystream", "run a register spec and tap one coordinate");
    ks_cmd->add_option("file", cfg.path, "register spec JSON file")->required();
    ks_cmd->add_option("--x0", cfg.x0, "slave initial state (comma-separated indices)")->required();
    ks_cmd->add_option("--steps", cfg.steps, "number of output symbols")->required();
    ks_cmd->add_option("--tap", cfg.tap, "tapped coordinate (default 0)");
    add_common(ks_cmd, cfg);

    CLI::App* sim_cmd = app.add_subcommand("simulate", "trajectory of one initial condition");
    sim_cmd->add_option("file", cfg.path, "system JSON file")->required();
    sim_cmd->add_option("--x0", cfg.x0, "initial condition (comma-separated indices)")->required();
    sim_cmd->add_option("--steps", cfg.steps, "emit exactly this many states (default: one full period)");
    add_common(sim_cmd, cfg);

    try {
        app.parse(argc, argv);
        if (analyze_cmd->parsed()) return cmd_analyze(cfg);
        if (orbit_cmd->parsed()) return cmd_orbit(cfg);
        if (orbits_cmd->parsed()) return cmd_orbits(cfg);
        if (find_cmd->parsed()) return cmd_find_init(cfg);
        if (root_cmd->parsed()) return cmd_root(cfg);
        if (fsr_cmd->parsed()) {
            if (emit_cmd->parsed()) return cmd_fsr_emit(cfg);
            return cmd_fsr_keystream(cfg);
        }
        return cmd_simulate(cfg);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << error_to_json(Error(ErrorKind::ParseError, e.what())).dump(2) << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << error_to_json(e).dump(2) << "\n";
        return 1;
    }
}
