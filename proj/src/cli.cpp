#include "qotp/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "qotp/analysis.hpp"

namespace qotp::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kZ95 = 1.959963984540054;

struct TrialResult {
    RunRecord record;
};

struct ProtocolLimits {
    int max_m;
    int max_s;
};

ProtocolLimits limits_for(Protocol proto, Backend backend) {
    switch (proto) {
        case Protocol::modified_qas: return {2, 2};
        case Protocol::teleport: return {2, 6};
        case Protocol::protect_entanglement: return {3, 6};
        default:
            if (backend == Backend::stabilizer) return {1 << 20, 1 << 20};
            return {3, 4};
    }
}

void validate_point(Protocol proto, Backend backend, int m, int s) {
    ProtocolLimits lim = limits_for(proto, backend);
    if (m < 1 || s < 1) {
        throw std::invalid_argument("m and s must be at least 1");
    }
    if (m > lim.max_m) {
        throw std::invalid_argument("cap exceeded for " + std::string(protocol_name(proto)) +
                                    " on the " + backend_name(backend) + " backend: m <= " +
                                    std::to_string(lim.max_m) + " (got m=" + std::to_string(m) +
                                    ")");
    }
    if (s > lim.max_s) {
        throw std::invalid_argument("cap exceeded for " + std::string(protocol_name(proto)) +
                                    " on the " + backend_name(backend) + " backend: s <= " +
                                    std::to_string(lim.max_s) + " (got s=" + std::to_string(s) +
                                    ")");
    }
}

int channel_width(Protocol proto, int m, int s) {
    if (proto == Protocol::teleport) return m + s;
    if (proto == Protocol::protect_entanglement) return m;
    return m + s;
}

StateVector make_input(const std::string& kind, int m, Rng& rng) {
    SubsystemLayout l = SubsystemLayout::single("P", m);
    if (kind == "zero") return StateVector::basis_state(l, std::uint64_t(0));
    if (kind == "plus") {
        StateVector sv = StateVector::basis_state(l, std::uint64_t(0));
        for (int q = 0; q < m; ++q) sv.apply_h(q);
        return sv;
    }
    if (kind == "random") return StateVector::random(l, rng);
    throw std::invalid_argument("unknown input state '" + kind + "'");
}

RunRecord run_trial(Protocol proto, Backend backend, int m, int s, const std::string& attack_spec,
                    const std::string& input_kind, std::uint64_t seed) {
    SimulationParams params;
    params.m = m;
    params.s = s;
    params.backend = backend;
    params.seed = seed;

    AttackModel attack = parse_attack(attack_spec, channel_width(proto, m, s));
    Rng key_rng(derive_seed(seed, 100));
    Rng input_rng(derive_seed(seed, 101));

    switch (proto) {
        case Protocol::sqas: {
            KeyString key = KeyString::random(m, s, key_rng);
            if (backend == Backend::stabilizer) {
                return run_sqas_stabilizer(params, BitVec(std::size_t(m)), key, attack);
            }
            return run_sqas(params, make_input(input_kind, m, input_rng), key, attack);
        }
        case Protocol::modified_qas:
            return run_modified_qas(params, make_input(input_kind, m, input_rng),
                                    key_rng.bits(std::size_t(2 * s)), attack);
        case Protocol::interactive:
            return run_interactive(params, make_input(input_kind, m, input_rng), attack);
        case Protocol::teleport:
            return run_teleport_baseline(params, make_input(input_kind, m, input_rng), attack);
        case Protocol::secret_sharing:
            return run_secret_sharing(params, make_input(input_kind, m, input_rng),
                                      key_rng.bits(std::size_t(2 * m)),
                                      key_rng.bits(std::size_t(2 * s)), attack)
                .record;
        case Protocol::protect_entanglement:
            if (attack.kind != AttackModel::Kind::none) {
                throw std::invalid_argument("protect_entanglement runs locally; use --attack none");
            }
            return run_protect_entanglement(params);
    }
    throw std::logic_error("run_trial: unreachable");
}

struct PointSummary {
    int m = 0, s = 0;
    int trials = 0;
    double accept_rate = 0.0;
    double ci95_half = 0.0;
    double mean_fidelity = 0.0;
    double mean_fidelity_accepted = 1.0;
    double p_accept_and_damaged = 0.0;
    long long delta_q = 0, delta_m = 0, delta_k = 0;
};

PointSummary summarize(const std::vector<RunRecord>& records, const Ledger& ledger,
                       std::size_t first_entry) {
    PointSummary p;
    p.trials = int(records.size());
    int accepted = 0, accepted_damaged = 0;
    double fid_sum = 0.0, fid_acc_sum = 0.0;
    for (const auto& r : records) {
        fid_sum += r.fidelity_out;
        if (r.accepted) {
            ++accepted;
            fid_acc_sum += r.fidelity_out;
            if (r.fidelity_out < 0.99) ++accepted_damaged;
        }
    }
    p.accept_rate = records.empty() ? 0.0 : double(accepted) / records.size();
    p.ci95_half = records.empty()
                      ? 0.0
                      : kZ95 * std::sqrt(std::max(p.accept_rate * (1 - p.accept_rate), 0.0) /
                                         records.size());
    p.mean_fidelity = records.empty() ? 0.0 : fid_sum / records.size();
    p.mean_fidelity_accepted = accepted ? fid_acc_sum / accepted : 1.0;
    p.p_accept_and_damaged = records.empty() ? 0.0 : double(accepted_damaged) / records.size();
    for (std::size_t i = first_entry; i < ledger.entries().size(); ++i) {
        p.delta_q += ledger.entries()[i].delta_q;
        p.delta_m += ledger.entries()[i].delta_m;
        p.delta_k += ledger.entries()[i].delta_k;
    }
    return p;
}

std::vector<RunRecord> run_point(const ExperimentConfig& config, Protocol proto, Backend backend,
                                 int m, int s) {
    std::vector<RunRecord> records(std::size_t(config.trials));
    const int jobs = std::max(1, config.jobs);
    auto worker = [&](int w) {
        for (int i = w; i < config.trials; i += jobs) {
            records[std::size_t(i)] = run_trial(proto, backend, m, s, config.attack,
                                                config.input_state, trial_seed(config.seed, i));
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(jobs));
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    return records;
}

ordered_json summary_json(const ExperimentConfig& config, Protocol proto, int m, int s,
                          const PointSummary& p, const AuditReport& audit) {
    ordered_json j;
    j["protocol"] = protocol_name(proto);
    j["m"] = m;
    j["s"] = s;
    j["backend"] = config.backend;
    j["attack"] = config.attack;
    j["trials"] = p.trials;
    j["seed"] = config.seed;
    j["accept_rate"] = p.accept_rate;
    j["accept_ci95_half"] = p.ci95_half;
    j["mean_fidelity"] = p.mean_fidelity;
    j["mean_fidelity_accepted"] = p.mean_fidelity_accepted;
    j["p_accept_and_damaged"] = p.p_accept_and_damaged;
    j["totals"] = ordered_json{{"delta_q", p.delta_q}, {"delta_m", p.delta_m},
                               {"delta_k", p.delta_k}};
    j["audit"] = ordered_json{{"ok", audit.ok}, {"violations", audit.violations}};
    return j;
}

// Key-averaged diagnostics for the bit-flip protection scheme: the state an
// adversary would hold if she stole the padded halves.
ordered_json protect_diagnostics(int n, double bias) {
    SubsystemLayout layout{{"A", n}, {"C", n}};
    StateVector pairs = StateVector::basis_state(layout, std::uint64_t(0));
    for (int i = 0; i < n; ++i) {
        pairs.apply_h(i);
        pairs.apply_cx(i, n + i);
        pairs.apply_z(i);
        pairs.apply_x(i);
    }
    DensityMatrix pure = pairs.to_density();

    ComplexMatrix acc(pure.dim());
    for (std::uint64_t key = 0; key < (std::uint64_t(1) << n); ++key) {
        double w = 1.0;
        PauliString flips(n);
        for (int i = 0; i < n; ++i) {
            bool bit = (key >> (n - 1 - i)) & 1;
            flips.set_x(i, bit);
            w *= bit ? bias : 1.0 - bias;
        }
        if (w <= 0.0) continue;
        DensityMatrix padded = pure;
        apply_pauli(padded, flips, 0);
        ComplexMatrix term = padded.mat();
        term *= cx(w);
        acc += term;
    }
    DensityMatrix averaged(layout, std::move(acc));

    ordered_json out;
    out["singlets"] = n;
    out["bias"] = bias;
    out["ppt_min_eigenvalue"] = ppt_min_eigenvalue(averaged, {"A"});
    out["entropy_joint_bits"] = vn_entropy(averaged);
    out["entropy_a_bits"] = vn_entropy(partial_trace(averaged, {"A"}));
    out["entropy_separability_ok"] = entropy_separability_check(averaged, {"A"});
    if (n == 1) out["rel_entropy_ub_bits"] = rel_entropy_ub(averaged, 20, 500, 17);
    return out;
}

class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void write_ledger_if_requested(const ExperimentConfig& config, const Ledger& ledger) {
    if (config.ledger_path.empty()) return;
    std::ofstream f(config.ledger_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("cannot open ledger file '" + config.ledger_path + "'");
    f << ledger.to_csv();
}

void validate_common(const ExperimentConfig& config) {
    protocol_from_name(config.protocol);
    backend_from_name(config.backend);
    if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (config.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
    if (config.m_values.empty() || config.s_values.empty()) {
        throw std::invalid_argument("empty parameter range");
    }
    if (config.input_state != "random" && config.input_state != "zero" &&
        config.input_state != "plus") {
        throw std::invalid_argument("unknown input state '" + config.input_state + "'");
    }
    if (backend_from_name(config.backend) == Backend::stabilizer &&
        config.input_state != "zero") {
        throw std::invalid_argument("stabilizer backend requires --input zero");
    }
    // Attack grammar check against the first grid point.
    parse_attack(config.attack,
                 channel_width(protocol_from_name(config.protocol), config.m_values.front(),
                               config.s_values.front()));
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, int trial_index) {
    return derive_seed(base_seed ^ std::uint64_t(trial_index), 0x545249414cULL);
}

std::vector<int> parse_range(const std::string& text) {
    auto pos = text.find("..");
    try {
        if (pos == std::string::npos) return {std::stoi(text)};
        int lo = std::stoi(text.substr(0, pos));
        int hi = std::stoi(text.substr(pos + 2));
        std::vector<int> out;
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad range '" + text + "'");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("bad range '" + text + "'");
    }
}

AttackModel parse_attack(const std::string& spec, int n_channel) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto parse_int_list = [](const std::string& text) {
        std::vector<int> out;
        std::istringstream is(text);
        std::string item;
        while (std::getline(is, item, ',')) out.push_back(std::stoi(item));
        return out;
    };

    try {
        if (head == "none") return AttackModel::make_none();
        if (head == "fixed_pauli") {
            if (arg.empty()) throw std::invalid_argument("fixed_pauli needs letters");
            PauliString p(n_channel);
            std::istringstream is(arg);
            std::string item;
            while (std::getline(is, item, ',')) {
                if (item.size() < 2) throw std::invalid_argument("bad pauli item '" + item + "'");
                char letter = item[0];
                int q = std::stoi(item.substr(1));
                if (q < 0 || q >= n_channel) {
                    throw std::invalid_argument("pauli qubit outside the channel");
                }
                p = p * PauliString::single(n_channel, q, letter);
            }
            return AttackModel::make_fixed(std::move(p));
        }
        if (head == "random_pauli") return AttackModel::make_random_pauli(std::stod(arg));
        if (head == "steal_replace") return AttackModel::make_steal(parse_int_list(arg));
        if (head == "measure_resend") {
            if (arg.empty() || arg == "z") {
                return AttackModel::make_measure(AttackModel::Basis::computational);
            }
            if (arg == "x") return AttackModel::make_measure(AttackModel::Basis::hadamard);
            throw std::invalid_argument("measure_resend basis must be x or z");
        }
        if (head == "entangling_probe") {
            int q = arg.empty() ? 0 : std::stoi(arg);
            if (q < 0 || q >= n_channel) {
                throw std::invalid_argument("probe qubit outside the channel");
            }
            return AttackModel::make_cnot_probe(q);
        }
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("bad attack spec '" + spec + "': " + e.what());
    }
    throw std::invalid_argument("unknown attack '" + spec + "'");
}

int cmd_run(const ExperimentConfig& config) {
    try {
        validate_common(config);
        if (config.m_values.size() != 1 || config.s_values.size() != 1) {
            throw std::invalid_argument("run takes single m and s values; use sweep for ranges");
        }
        Protocol proto = protocol_from_name(config.protocol);
        Backend backend = backend_from_name(config.backend);
        const int m = config.m_values.front(), s = config.s_values.front();
        validate_point(proto, backend, m, s);

        OutputTarget records_out(config.output_path);
        OutputTarget summary_out(config.summary_path);

        std::cerr << "running " << config.trials << " trials of " << config.protocol << " (m="
                  << m << ", s=" << s << ")\n";
        std::vector<RunRecord> records = run_point(config, proto, backend, m, s);

        Ledger ledger;
        for (const auto& r : records) {
            records_out.stream() << r.to_json_line() << "\n";
            ledger.record(r);
        }
        write_ledger_if_requested(config, ledger);

        AuditReport audit = audit_law(ledger);
        PointSummary p = summarize(records, ledger, 0);
        ordered_json j = summary_json(config, proto, m, s, p, audit);
        if (proto == Protocol::protect_entanglement) {
            j["analysis"] = protect_diagnostics(m, 0.5);
        }
        summary_out.stream() << j.dump() << "\n";
        return audit.ok ? kExitOk : kExitLawViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_sweep(const ExperimentConfig& config) {
    try {
        validate_common(config);
        Protocol proto = protocol_from_name(config.protocol);
        Backend backend = backend_from_name(config.backend);
        for (int m : config.m_values)
            for (int s : config.s_values) validate_point(proto, backend, m, s);

        OutputTarget rows_out(config.output_path);
        OutputTarget summary_out(config.summary_path);
        rows_out.stream() << "protocol,m,s,backend,attack,trials,seed,accept_rate,ci95_half,"
                             "mean_fidelity,p_accept_and_damaged,delta_q,delta_m,delta_k\n";

        Ledger ledger;
        bool all_ok = true;
        for (int m : config.m_values) {
            for (int s : config.s_values) {
                std::cerr << "sweep point m=" << m << " s=" << s << "\n";
                std::size_t first_entry = ledger.size();
                std::vector<RunRecord> records = run_point(config, proto, backend, m, s);
                for (const auto& r : records) ledger.record(r);
                PointSummary p = summarize(records, ledger, first_entry);
                rows_out.stream() << config.protocol << ',' << m << ',' << s << ','
                                  << config.backend << ',' << config.attack << ',' << p.trials
                                  << ',' << config.seed << ',' << p.accept_rate << ','
                                  << p.ci95_half << ',' << p.mean_fidelity << ','
                                  << p.p_accept_and_damaged << ',' << p.delta_q << ','
                                  << p.delta_m << ',' << p.delta_k << "\n";
            }
        }
        write_ledger_if_requested(config, ledger);
        AuditReport audit = audit_law(ledger);
        all_ok = audit.ok;
        summary_out.stream() << ordered_json{{"audit", ordered_json{{"ok", audit.ok},
                                                                    {"violations",
                                                                     audit.violations}}}}
                                    .dump()
                             << "\n";
        return all_ok ? kExitOk : kExitLawViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_audit(const std::string& ledger_csv_path) {
    Ledger ledger;
    try {
        std::ifstream f(ledger_csv_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open '" + ledger_csv_path + "'");
        ledger = Ledger::from_csv(f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    AuditReport report = audit_law(ledger);
    std::cout << report.to_json() << "\n";
    return report.ok ? kExitOk : kExitLawViolation;
}

namespace {

// Exhaustive classical check of the hashed-key product distance: average
// over every Toeplitz seed of the L1 distance between the joint (hash
// output, adversary view) distribution and the product of its marginals.
double leftover_exact_l1(int j, int e, int t) {
    if (e < 0 || e > j) throw std::invalid_argument("leftover: need 0 <= e <= j");
    if (t < 1 || t > j) throw std::invalid_argument("leftover: need 1 <= t <= j");
    const std::uint64_t seeds = std::uint64_t(1) << (j + t - 1);
    const std::uint64_t keys = std::uint64_t(1) << j;
    const std::uint64_t touts = std::uint64_t(1) << t;
    const std::uint64_t eouts = std::uint64_t(1) << e;

    double total = 0.0;
    std::vector<double> joint(touts * eouts);
    std::vector<double> pt(touts), pe(eouts);
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        std::fill(joint.begin(), joint.end(), 0.0);
        std::fill(pt.begin(), pt.end(), 0.0);
        std::fill(pe.begin(), pe.end(), 0.0);
        for (std::uint64_t key = 0; key < keys; ++key) {
            std::uint64_t out = 0;
            for (int i = 0; i < t; ++i) {
                std::uint64_t window = (seed >> i) & (keys - 1);
                out |= std::uint64_t(std::popcount(window & key) & 1) << i;
            }
            std::uint64_t view = key & (eouts - 1);  // adversary sees e low bits
            joint[out * eouts + view] += 1.0 / double(keys);
            pt[out] += 1.0 / double(keys);
            pe[view] += 1.0 / double(keys);
        }
        double l1 = 0.0;
        for (std::uint64_t a = 0; a < touts; ++a)
            for (std::uint64_t b = 0; b < eouts; ++b)
                l1 += std::abs(joint[a * eouts + b] - pt[a] * pe[b]);
        total += l1;
    }
    return total / double(seeds);
}

}  // namespace

int cmd_analyze(const AnalyzeConfig& config) {
    try {
        ordered_json j;
        j["what"] = config.what;
        if (config.what == "transpose_identity") {
            Rng rng(derive_seed(config.seed, 0x54524E53));
            double worst = 0.0;
            for (int i = 0; i < config.samples; ++i) {
                worst = std::max(worst, transpose_identity_residual(random_unitary(1 << config.m, rng)));
            }
            j["m"] = config.m;
            j["samples"] = config.samples;
            j["max_residual"] = worst;
        } else if (config.what == "protect") {
            j = protect_diagnostics(config.m, config.bias);
            j["what"] = "protect";
        } else if (config.what == "holevo") {
            // The canonical skewed qubit and its four pad images.
            double c = std::cos(std::atan(1.0) / 2.0), sn = std::sin(std::atan(1.0) / 2.0);
            StateVector psi(SubsystemLayout::single("P", 1), {c, sn});
            std::vector<DensityMatrix> states;
            std::vector<double> probs(4, 0.25);
            for (std::uint64_t k = 0; k < 4; ++k) {
                BitVec pad(2);
                pad.set(0, k & 1);
                pad.set(1, (k >> 1) & 1);
                states.push_back(qotp_encrypt(psi, pad).to_density());
            }
            Ensemble e(probs, states);
            j["holevo_bits"] = holevo(e);
            Rng rng(derive_seed(config.seed, 0x484F4C56));
            double worst = 0.0;
            for (int i = 0; i < config.samples; ++i) {
                Povm povm = Povm::projective(random_unitary(2, rng));
                worst = std::max(worst, mutual_info_measurement(e, povm));
            }
            j["samples"] = config.samples;
            j["max_mutual_info_bits"] = worst;
        } else if (config.what == "leftover") {
            j["j"] = config.j;
            j["e"] = config.e;
            j["t"] = config.t;
            // Both numbers use the full trace-norm convention (no 1/2 factor),
            // unlike trace_distance elsewhere in the library.
            j["norm_convention"] = "full_trace_norm";
            j["exact_l1_average"] = leftover_exact_l1(config.j, config.e, config.t);
            j["bound"] = leftover_hash_bound(std::exp2(-config.j), 1 << config.e, config.t, 0.0);
        } else {
            throw std::invalid_argument("unknown analysis '" + config.what + "'");
        }
        std::cout << j.dump() << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace qotp::cli
