#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qotp/cli.hpp"

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QOTP_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring malformed QOTP_SEED\n";
        }
    }
    return 0;
}

// Loads a JSON config into the experiment defaults; explicit flags override.
void load_config_file(const std::string& path, qotp::cli::ExperimentConfig& config) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
    nlohmann::json j;
    f >> j;
    if (j.contains("protocol")) config.protocol = j["protocol"].get<std::string>();
    if (j.contains("m")) config.m_values = qotp::cli::parse_range(j["m"].is_string()
                                                                      ? j["m"].get<std::string>()
                                                                      : std::to_string(j["m"].get<int>()));
    if (j.contains("s")) config.s_values = qotp::cli::parse_range(j["s"].is_string()
                                                                      ? j["s"].get<std::string>()
                                                                      : std::to_string(j["s"].get<int>()));
    if (j.contains("attack")) config.attack = j["attack"].get<std::string>();
    if (j.contains("trials")) config.trials = j["trials"].get<int>();
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("backend")) config.backend = j["backend"].get<std::string>();
    if (j.contains("input")) config.input_state = j["input"].get<std::string>();
    if (j.contains("out")) config.output_path = j["out"].get<std::string>();
    if (j.contains("ledger")) config.ledger_path = j["ledger"].get<std::string>();
    if (j.contains("summary")) config.summary_path = j["summary"].get<std::string>();
    if (j.contains("jobs")) config.jobs = j["jobs"].get<int>();
}

struct ExperimentFlags {
    std::string config_path, m_text, s_text;
    std::string protocol, attack, backend, input, out, ledger, summary;
    int trials = -1;
    int jobs = -1;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
    cmd->add_option("--protocol", f.protocol,
                    "sqas | modified_qas | interactive | teleport | secret_sharing | "
                    "protect_entanglement");
    cmd->add_option("--m", f.m_text, "message qubits, e.g. 2 or 1..3");
    cmd->add_option("--s", f.s_text, "security qubits, e.g. 4 or 2..6");
    cmd->add_option("--attack", f.attack, "attack spec, e.g. none or fixed_pauli:X0");
    cmd->add_option("--trials", f.trials, "Monte Carlo trials per point");
    cmd->add_option("--seed", f.seed, "base seed (default: QOTP_SEED or 0)")
        ->each([&f](const std::string&) { f.seed_given = true; });
    cmd->add_option("--backend", f.backend, "dense | stabilizer");
    cmd->add_option("--input", f.input, "random | zero | plus");
    cmd->add_option("--out", f.out, "records (run) / rows (sweep) path; stdout if omitted");
    cmd->add_option("--ledger", f.ledger, "ledger CSV export path");
    cmd->add_option("--summary", f.summary, "summary JSON path; stdout if omitted");
    cmd->add_option("--jobs", f.jobs, "parallel trial workers");
}

qotp::cli::ExperimentConfig merge_flags(const ExperimentFlags& f) {
    qotp::cli::ExperimentConfig config;
    config.seed = default_seed();
    if (!f.config_path.empty()) load_config_file(f.config_path, config);
    if (!f.protocol.empty()) config.protocol = f.protocol;
    if (!f.m_text.empty()) config.m_values = qotp::cli::parse_range(f.m_text);
    if (!f.s_text.empty()) config.s_values = qotp::cli::parse_range(f.s_text);
    if (!f.attack.empty()) config.attack = f.attack;
    if (f.trials >= 0) config.trials = f.trials;
    if (f.seed_given) config.seed = f.seed;
    if (!f.backend.empty()) config.backend = f.backend;
    if (!f.input.empty()) config.input_state = f.input;
    if (!f.out.empty()) config.output_path = f.out;
    if (!f.ledger.empty()) config.ledger_path = f.ledger;
    if (!f.summary.empty()) config.summary_path = f.summary;
    if (f.jobs >= 0) config.jobs = f.jobs;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum one-time-pad protocol simulator and analyzer"};
    app.require_subcommand(1);

    ExperimentFlags run_flags, sweep_flags;
    CLI::App* run = app.add_subcommand("run", "run one experiment point");
    add_experiment_flags(run, run_flags);
    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid, one CSV row per point");
    add_experiment_flags(sweep, sweep_flags);

    std::string audit_path;
    CLI::App* audit = app.add_subcommand("audit", "check a ledger CSV against the resource law");
    audit->add_option("ledger", audit_path, "ledger CSV path")->required();

    qotp::cli::AnalyzeConfig analyze_config;
    analyze_config.seed = default_seed();
    CLI::App* analyze = app.add_subcommand("analyze", "standalone diagnostics, JSON to stdout");
    analyze->add_option("--what", analyze_config.what, "transpose_identity | protect | holevo | leftover");
    analyze->add_option("--m", analyze_config.m, "qubits / singlet count");
    analyze->add_option("--samples", analyze_config.samples, "sample count");
    analyze->add_option("--bias", analyze_config.bias, "pad bit bias for protect");
    analyze->add_option("--j", analyze_config.j, "hash input length");
    analyze->add_option("--e", analyze_config.e, "adversary side-information bits");
    analyze->add_option("--t", analyze_config.t, "hash output length");
    analyze->add_option("--seed", analyze_config.seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : qotp::cli::kExitConfig;
    }

    try {
        if (run->parsed()) return qotp::cli::cmd_run(merge_flags(run_flags));
        if (sweep->parsed()) return qotp::cli::cmd_sweep(merge_flags(sweep_flags));
        if (audit->parsed()) return qotp::cli::cmd_audit(audit_path);
        if (analyze->parsed()) return qotp::cli::cmd_analyze(analyze_config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qotp::cli::kExitConfig;
    }
    return qotp::cli::kExitConfig;
}
