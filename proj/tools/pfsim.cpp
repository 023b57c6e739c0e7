// Copyright 2026 The pfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitCheckFailed = 4;

void add_common(CLI::App *sub, pfsim::cli::ExperimentConfig &cfg, bool &verbose) {
    sub->add_option("--qubits", cfg.qubits, "Number of |0> qubits (iqp/pbc: total qubits)");
    sub->add_option("--magic-count", cfg.magic_count, "Number of nonstabilizer input qubits");
    sub->add_option("--input", cfg.inputs,
                    "Input state spec: zero|one|plus|minus|mixed|T|H|magicT(eps)|bloch(x,y,z)|angles(theta,phi); "
                    "repeat once per input or give one for all");
    sub->add_option("--epsilon", cfg.epsilon, "Depolarizing strength applied to the inputs");
    sub->add_option("--delta", cfg.delta, "Target l1 error");
    sub->add_option("--alpha", cfg.alpha, "Markov parameter (> 2)");
    sub->add_option("--level", cfg.level, "Override the truncation level");
    sub->add_option("--measured", cfg.measured, "all | none | first:K | comma-separated qubit list");
    sub->add_option("--trials", cfg.trials, "Number of sampled circuits");
    sub->add_option("--seed", cfg.seed, "Master seed (required for stochastic runs)");
    sub->add_option("--out", cfg.out, "Output path (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", cfg.jobs, "Worker threads");
    sub->add_flag("--force", cfg.force, "Run configurations outside the measured-qubit cap");
    sub->add_flag("--sweep", cfg.sweep, "Report errors for every level 0..m");
    sub->add_flag("--verbose", verbose, "Log dense-oracle memory estimates to stderr");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fourier-truncation simulator for Clifford circuits with nonstabilizer inputs"};
    app.set_version_flag("--version", std::string(pfsim::kVersion));
    app.require_subcommand(1);
    pfsim::cli::ExperimentConfig cfg;
    bool verbose = false;

    auto *noisy = app.add_subcommand("noisy-clifford", "Random Clifford circuits with mixed inputs");
    auto *pure = app.add_subcommand("pure-magic", "Random Clifford circuits with pure magic inputs");
    auto *iqp = app.add_subcommand("iqp", "IQP circuits with depolarized inputs");
    auto *pbc = app.add_subcommand("pbc", "Pauli-based computation on product magic states");
    auto *check = app.add_subcommand("oracle-check", "Compare every evaluator with the dense oracle");
    for (auto *sub : {noisy, pure, iqp, pbc, check}) {
        add_common(sub, cfg, verbose);
    }
    for (auto *sub : {noisy, pure}) {
        sub->add_option("--instance", cfg.instance_file, "Evaluate one instance file instead of sampling");
    }
    iqp->add_flag("--moments", cfg.moments, "Second-moment formulas and the random-circuit average");
    pbc->add_option("--steps", cfg.steps, "Number of commuting Pauli measurements");
    pbc->add_option("--paulis", cfg.paulis_file, "File with one Pauli per line (fixes the generators)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    for (auto *sub : app.get_subcommands()) {
        cfg.subcommand = sub->get_name();
    }
    if (verbose) {
        pfsim::dense_limits().memory_log = &std::cerr;
    }

    try {
        pfsim::cli::Report report = pfsim::cli::run_experiment(cfg);
        std::string text = pfsim::cli::render(report, cfg.format);
        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cfg.out, std::ios::binary);
            if (!out || !(out << text)) {
                std::cerr << "error: cannot write " << cfg.out << "\n";
                return 1;
            }
        }
        std::cerr << "summary: " << report.summary.dump() << "\n";
        if (report.check_failed) {
            return kExitCheckFailed;
        }
        return 0;
    } catch (const pfsim::CapacityError &e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const pfsim::InternalConsistencyError &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
