#ifndef QOTP_CLI_HPP
#define QOTP_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qotp/protocols.hpp"

namespace qotp::cli {

// Exit codes are part of the interface: 0 success, 2 bad configuration or
// malformed input, 3 resource-law violation.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitLawViolation = 3;

struct ExperimentConfig {
    std::string protocol = "sqas";
    std::vector<int> m_values = {2};
    std::vector<int> s_values = {4};
    std::string attack = "none";
    int trials = 100;
    std::uint64_t seed = 0;
    std::string backend = "dense";
    std::string input_state = "random";  // random | zero | plus
    std::string output_path;             // records (run) / csv rows (sweep); stdout if empty
    std::string ledger_path;             // optional ledger csv export
    std::string summary_path;            // summary JSON; stdout if empty
    int jobs = 1;
};

struct AnalyzeConfig {
    std::string what = "transpose_identity";  // transpose_identity | protect | holevo | leftover
    int m = 1;
    int samples = 200;
    double bias = 0.5;
    int j = 6;
    int e = 2;
    int t = 2;
    std::uint64_t seed = 0;
};

int cmd_run(const ExperimentConfig& config);
int cmd_sweep(const ExperimentConfig& config);
int cmd_audit(const std::string& ledger_csv_path);
int cmd_analyze(const AnalyzeConfig& config);

// "none" | "fixed_pauli:X0[,Z2...]" | "random_pauli:p" | "steal_replace:0,1"
// | "measure_resend[:x|:z]" | "entangling_probe:q"
AttackModel parse_attack(const std::string& spec, int n_channel);

// "3" or "2..6" (inclusive).
std::vector<int> parse_range(const std::string& text);

// Per-trial seed derivation; independent of --jobs.
std::uint64_t trial_seed(std::uint64_t base_seed, int trial_index);

}  // namespace qotp::cli

#endif
