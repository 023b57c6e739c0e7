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

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pfsim/pfsim.hpp"

namespace pfsim::cli {

using ordered_json = nlohmann::ordered_json;

/// Invalid or inconsistent run parameters (exit code 2).
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Largest n + m compared against the dense oracle in Clifford runs.
inline constexpr std::size_t kOracleMaxQubits = 8;

/// Acceptance thresholds sit this far below the guaranteed Markov fraction.
inline constexpr double kThresholdSlack = 0.05;

struct ExperimentConfig {
    std::string subcommand;
    std::size_t qubits = 2;
    std::size_t magic_count = 4;
    std::vector<std::string> inputs;
    std::optional<double> epsilon;
    double delta = 0.1;
    double alpha = 8.0;
    std::optional<std::size_t> level;
    std::string measured = "all";
    std::size_t trials = 100;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
    std::size_t jobs = 1;
    bool force = false;
    bool sweep = false;
    bool moments = false;
    std::size_t steps = 1;
    std::string paulis_file;
    std::string instance_file;

    ordered_json to_json() const {
        ordered_json j;
        j["subcommand"] = subcommand;
        j["qubits"] = qubits;
        j["magic_count"] = magic_count;
        j["inputs"] = inputs;
        j["epsilon"] = epsilon ? ordered_json(*epsilon) : ordered_json(nullptr);
        j["delta"] = delta;
        j["alpha"] = alpha;
        j["level"] = level ? ordered_json(*level) : ordered_json(nullptr);
        j["measured"] = measured;
        j["trials"] = trials;
        j["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
        j["format"] = format;
        j["jobs"] = jobs;
        j["force"] = force;
        j["sweep"] = sweep;
        j["moments"] = moments;
        j["steps"] = steps;
        j["paulis"] = paulis_file;
        j["instance"] = instance_file;
        return j;
    }
};

struct Report {
    std::string subcommand;
    ordered_json config;
    std::vector<std::string> columns;
    std::vector<std::vector<ordered_json>> rows;
    ordered_json summary = ordered_json::object();
    bool check_failed = false;
};

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_cell(const ordered_json &v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_number_float()) {
        return format_double(v.get<double>());
    }
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string q = "\"";
        for (char c : s) {
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        }
        return q + "\"";
    }
    return v.dump();
}

/// FNV-1a over the report with the wall-clock column removed.
inline std::string determinism_hash(const Report &r) {
    ordered_json j;
    j["version"] = kVersion;
    j["config"] = r.config;
    ordered_json rows = ordered_json::array();
    for (const auto &row : r.rows) {
        ordered_json cells = ordered_json::array();
        for (std::size_t c = 0; c < row.size(); c++) {
            if (r.columns[c] != "wall_ms") {
                cells.push_back(row[c]);
            }
        }
        rows.push_back(cells);
    }
    j["rows"] = rows;
    j["summary"] = r.summary;
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string render_csv(const Report &r) {
    std::ostringstream out;
    out << "# version: " << kVersion << "\n";
    out << "# config: " << r.config.dump() << "\n";
    out << "# seed: " << (r.config["seed"].is_null() ? std::string("none") : r.config["seed"].dump()) << "\n";
    for (std::size_t c = 0; c < r.columns.size(); c++) {
        out << (c ? "," : "") << r.columns[c];
    }
    out << "\n";
    for (const auto &row : r.rows) {
        for (std::size_t c = 0; c < row.size(); c++) {
            out << (c ? "," : "") << csv_cell(row[c]);
        }
        out << "\n";
    }
    out << "# summary: " << r.summary.dump() << "\n";
    out << "# determinism_hash: " << determinism_hash(r) << "\n";
    return out.str();
}

inline std::string render_json(const Report &r) {
    ordered_json j;
    j["version"] = kVersion;
    j["subcommand"] = r.subcommand;
    j["config"] = r.config;
    j["seed"] = r.config["seed"];
    ordered_json rows = ordered_json::array();
    for (const auto &row : r.rows) {
        ordered_json obj;
        for (std::size_t c = 0; c < row.size(); c++) {
            obj[r.columns[c]] = row[c];
        }
        rows.push_back(obj);
    }
    j["rows"] = rows;
    j["summary"] = r.summary;
    j["determinism_hash"] = determinism_hash(r);
    return j.dump(2) + "\n";
}

inline std::string render(const Report &r, const std::string &format) {
    return format == "json" ? render_json(r) : render_csv(r);
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

inline void validate_common(const ExperimentConfig &cfg, bool stochastic) {
    if (cfg.format != "csv" && cfg.format != "json") {
        throw ConfigError("--format must be csv or json");
    }
    if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta)) {
        throw ConfigError("--delta must be positive");
    }
    if (!(cfg.alpha > 2.0) || !std::isfinite(cfg.alpha)) {
        throw ConfigError("--alpha must exceed 2");
    }
    if (cfg.jobs == 0) {
        throw ConfigError("--jobs must be at least 1");
    }
    if (cfg.trials == 0) {
        throw ConfigError("--trials must be at least 1");
    }
    if (stochastic && !cfg.seed) {
        throw ConfigError("--seed is required for stochastic runs");
    }
}

inline std::vector<QubitInput> resolve_inputs(const ExperimentConfig &cfg, std::size_t m) {
    std::vector<std::string> specs = cfg.inputs.empty() ? std::vector<std::string>{"T"} : cfg.inputs;
    if (specs.size() != 1 && specs.size() != m) {
        throw ConfigError("give one --input for all qubits or exactly one per nonstabilizer input (" +
                          std::to_string(m) + ")");
    }
    std::vector<QubitInput> out;
    for (std::size_t i = 0; i < m; i++) {
        QubitInput q = parse_input_spec(specs.size() == 1 ? specs[0] : specs[i]);
        if (cfg.epsilon) {
            if (!(*cfg.epsilon >= 0.0 && *cfg.epsilon <= 1.0)) {
                throw ConfigError("--epsilon must lie in [0, 1]");
            }
            q = q.depolarized(*cfg.epsilon);
        }
        out.push_back(q);
    }
    return out;
}

/// "all", "none", "first:K" or a comma-separated qubit list.
inline std::vector<std::size_t> parse_measured(const std::string &spec, std::size_t total) {
    std::vector<std::size_t> out;
    auto number = [&](const std::string &tok) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
            throw ConfigError("bad --measured value '" + spec + "'");
        }
        return static_cast<std::size_t>(std::stoul(tok));
    };
    if (spec == "all") {
        for (std::size_t q = 0; q < total; q++) {
            out.push_back(q);
        }
    } else if (spec == "none") {
    } else if (spec.rfind("first:", 0) == 0) {
        std::size_t k = number(spec.substr(6));
        if (k > total) {
            throw ConfigError("--measured first:" + std::to_string(k) + " exceeds " + std::to_string(total) +
                              " qubits");
        }
        for (std::size_t q = 0; q < k; q++) {
            out.push_back(q);
        }
    } else {
        std::stringstream ss(spec);
        std::string tok;
        std::vector<bool> seen(total, false);
        while (std::getline(ss, tok, ',')) {
            std::size_t q = number(tok);
            if (q >= total) {
                throw ConfigError("measured qubit " + tok + " out of range");
            }
            if (seen[q]) {
                throw ConfigError("measured qubit " + tok + " listed twice");
            }
            seen[q] = true;
            out.push_back(q);
        }
    }
    return out;
}

struct LevelChoice {
    std::size_t level = 0;
    std::size_t unclamped = 0;
    std::string source;
};

inline LevelChoice resolve_level(const ExperimentConfig &cfg, double rate, std::size_t max_level) {
    LevelChoice c;
    c.unclamped = truncation_level(cfg.delta, cfg.alpha, rate);
    if (cfg.level) {
        if (*cfg.level > max_level) {
            throw ConfigError("--level " + std::to_string(*cfg.level) + " exceeds " + std::to_string(max_level));
        }
        c.level = *cfg.level;
        c.source = "override";
    } else {
        c.level = std::min(c.unclamped, max_level);
        c.source = c.unclamped > max_level ? "truncation_level (clamped)" : "truncation_level";
    }
    return c;
}

/// Per-level l1 errors and dropped-coefficient energy for one circuit.
struct LevelErrors {
    std::vector<double> l1;
    std::vector<double> tail;
    double wall_ms = 0.0;
};

inline void add_sweep_summary(Report &r, const std::vector<LevelErrors> &trials, double alpha, double rate,
                              std::size_t max_level) {
    ordered_json levels = ordered_json::array();
    bool l1_monotone = true, tail_monotone = true;
    double prev_l1 = std::numeric_limits<double>::infinity(), prev_tail = prev_l1;
    for (std::size_t l = 0; l <= max_level; l++) {
        RunningStats l1, tail;
        double worst = 0.0;
        for (const auto &t : trials) {
            l1.add(t.l1[l]);
            tail.add(t.tail[l]);
            worst = std::max(worst, t.l1[l]);
        }
        // Tiny slack absorbs rounding once the error reaches the floating-point floor.
        l1_monotone = l1_monotone && l1.mean() <= prev_l1 + 1e-12;
        tail_monotone = tail_monotone && tail.mean() <= prev_tail + 1e-15;
        prev_l1 = l1.mean();
        prev_tail = tail.mean();
        ordered_json e;
        e["level"] = l;
        e["mean_l1_error"] = l1.mean();
        e["max_l1_error"] = worst;
        e["mean_tail_energy"] = tail.mean();
        e["bound"] = truncation_bound(alpha, rate, l);
        levels.push_back(e);
    }
    r.summary["sweep"] = levels;
    r.summary["sweep_l1_monotone"] = l1_monotone;
    r.summary["sweep_tail_monotone"] = tail_monotone;
}

inline void add_fraction_summary(Report &r, std::size_t within, std::size_t trials, double alpha) {
    double fraction = static_cast<double>(within) / static_cast<double>(trials);
    double guaranteed = 1.0 - 2.0 / alpha;
    r.summary["trials"] = trials;
    r.summary["within_bound"] = within;
    r.summary["fraction_within_bound"] = fraction;
    r.summary["guaranteed_fraction"] = guaranteed;
    r.summary["threshold"] = guaranteed - kThresholdSlack;
    r.summary["meets_threshold"] = fraction >= guaranteed - kThresholdSlack;
}

/// One random Clifford circuit: l1 error of q'_l against the dense oracle for l = 0..max_level.
inline LevelErrors clifford_trial(std::size_t n, const std::vector<QubitInput> &inputs,
                                  const std::vector<std::size_t> &measured, std::size_t max_level,
                                  std::uint64_t seed, std::size_t index) {
    auto t0 = Clock::now();
    Rng rng = stream_rng(seed, index);
    SimInstance inst(n, inputs, random_clifford(n + inputs.size(), rng), measured);
    LevelErrors r{std::vector<double>(max_level + 1, 0.0), std::vector<double>(max_level + 1, 0.0), 0.0};
    FourierEvaluator ev(inst);
    for (const auto &[y, p] : exact_distribution(inst)) {
        std::vector<FourierTerm> terms = fourier_terms(ev, y, max_level);
        std::vector<double> sums = level_sums(terms, max_level);
        for (std::size_t l = 0; l <= max_level; l++) {
            r.l1[l] += std::abs(sums[l] - p);
        }
        for (const auto &t : terms) {
            for (std::size_t l = 0; l < t.weight; l++) {
                r.tail[l] += t.value * t.value;
            }
        }
    }
    r.wall_ms = ms_since(t0);
    return r;
}

inline Report run_instance_file(const ExperimentConfig &cfg) {
    std::ifstream in(cfg.instance_file);
    if (!in) {
        throw ConfigError("cannot read instance file " + cfg.instance_file);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    SimInstance inst = parse_instance(buf.str());
    Report r;
    r.subcommand = cfg.subcommand;
    r.config = cfg.to_json();
    r.columns = {"y", "l", "q_approx", "coeff_count", "wall_ms"};
    std::size_t level = inst.m();
    TruncationRate rate = truncation_rate(inst.inputs);
    if (cfg.level) {
        if (*cfg.level > inst.m()) {
            throw ConfigError("--level exceeds m");
        }
        level = *cfg.level;
    } else if (rate.rate > 0.0) {
        level = truncation_level(cfg.delta, cfg.alpha, rate.rate, inst.m());
    }
    FourierEvaluator ev(inst);
    std::uint64_t budget = coefficient_budget(inst.m(), level);
    for (const BitVec &y : all_outcomes(inst.measured.size())) {
        auto t0 = Clock::now();
        double q = sum_terms(fourier_terms(ev, y, level, cfg.jobs), level);
        r.rows.push_back({y.str(), level, q, budget, ms_since(t0)});
    }
    r.summary["n"] = inst.n;
    r.summary["m"] = inst.m();
    r.summary["k"] = inst.measured.size();
    r.summary["rate_pathway"] = pathway_name(rate.pathway);
    r.summary["rate"] = rate.rate;
    r.summary["level"] = level;
    return r;
}

inline Report run_clifford(const ExperimentConfig &cfg, bool pure_pathway) {
    if (!cfg.instance_file.empty()) {
        return run_instance_file(cfg);
    }
    validate_common(cfg, true);
    std::size_t n = cfg.qubits, m = cfg.magic_count, total = n + m;
    if (m == 0) {
        throw ConfigError("--magic-count must be at least 1");
    }
    if (total > kOracleMaxQubits) {
        throw CapacityError("oracle comparison limited to n + m <= " + std::to_string(kOracleMaxQubits));
    }
    if (pure_pathway && cfg.epsilon) {
        throw ConfigError("--epsilon does not apply to pure-magic runs");
    }
    std::vector<QubitInput> inputs = resolve_inputs(cfg, m);
    std::vector<std::size_t> measured = parse_measured(cfg.measured, total);
    std::vector<std::string> labels;
    double rate;
    ordered_json extra;
    if (pure_pathway) {
        for (const auto &q : inputs) {
            if (!q.is_pure()) {
                throw ConfigError("pure-magic needs pure inputs; got " + q.str());
            }
        }
        rate = truncation_rate(inputs).rate;
        if (!(rate > 0.0)) {
            throw ConfigError("decay rate mu = " + format_double(rate) +
                              ": a stabilizer input makes the truncation bound vacuous");
        }
        std::int64_t cap = measured_cap(inputs, n);
        extra["measured_cap"] = cap;
        if (static_cast<std::int64_t>(measured.size()) > cap) {
            if (!cfg.force) {
                throw ConfigError("measuring " + std::to_string(measured.size()) + " qubits exceeds the cap of " +
                                  std::to_string(cap) + "; pass --force to run anyway");
            }
            labels.push_back("outside the measured-qubit cap");
        }
    } else {
        for (const auto &q : inputs) {
            if (q.is_pure()) {
                throw ConfigError("noisy-clifford needs mixed inputs; got pure input " + q.str() +
                                  " (use pure-magic)");
            }
        }
        rate = truncation_rate(inputs).rate;
        if (measured.size() != total) {
            labels.push_back("bound not guaranteed");
        }
    }
    LevelChoice lc = resolve_level(cfg, rate, m);
    std::size_t max_level = cfg.sweep ? m : lc.level;
    double bound = truncation_bound(cfg.alpha, rate, lc.level);
    std::uint64_t budget = coefficient_budget(m, lc.level);

    std::vector<LevelErrors> trials(cfg.trials);
    parallel_for(cfg.trials, cfg.jobs,
                 [&](std::size_t k) { trials[k] = clifford_trial(n, inputs, measured, max_level, *cfg.seed, k); });

    Report r;
    r.subcommand = cfg.subcommand;
    r.config = cfg.to_json();
    r.columns = {"seed",  "circuit_index", "n",     "m",     "k",     "lambda_or_mu", "level", "coeff_count",
                 "l1_error", "bound",      "within_bound", "wall_ms"};
    std::size_t within = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < trials.size(); k++) {
        double l1 = trials[k].l1[lc.level];
        bool ok = l1 <= bound;
        within += ok;
        worst = std::max(worst, l1);
        r.rows.push_back({*cfg.seed, k, n, m, measured.size(), rate, lc.level, budget, l1, bound, ok,
                          trials[k].wall_ms});
    }
    add_fraction_summary(r, within, cfg.trials, cfg.alpha);
    r.summary["max_l1_error"] = worst;
    r.summary["rate_pathway"] = pure_pathway ? "pure" : "mixed";
    r.summary["rate"] = rate;
    r.summary["level"] = lc.level;
    r.summary["level_source"] = lc.source;
    r.summary["unclamped_level"] = lc.unclamped;
    r.summary["coeff_count_per_outcome"] = budget;
    for (auto it = extra.begin(); it != extra.end(); ++it) {
        r.summary[it.key()] = it.value();
    }
    r.summary["labels"] = labels;
    if (cfg.sweep) {
        add_sweep_summary(r, trials, cfg.alpha, rate, max_level);
    }
    return r;
}

inline std::uint64_t binomial_budget(std::size_t n, std::size_t l) {
    std::uint64_t total = 0, c = 1;
    for (std::size_t i = 0; i <= l; i++) {
        if (i > 0) {
            c = c * (n - i + 1) / i;
        }
        total += c;
    }
    return total;
}

inline Report run_iqp_moments(const ExperimentConfig &cfg) {
    validate_common(cfg, true);
    std::size_t n = cfg.qubits;
    if (n == 0) {
        throw ConfigError("--qubits must be at least 1");
    }
    if (n > kIqpMaxBruteQubits) {
        throw CapacityError("IQP moments limited to " + std::to_string(kIqpMaxBruteQubits) + " qubits");
    }
    struct Row {
        IqpCircuit c;
        double collision;
        double wall_ms;
    };
    std::vector<Row> rows(cfg.trials);
    parallel_for(cfg.trials, cfg.jobs, [&](std::size_t k) {
        auto t0 = Clock::now();
        Rng rng = stream_rng(*cfg.seed, k);
        IqpCircuit c = random_iqp(n, rng);
        double coll = iqp_collision_probability(c);
        rows[k] = {std::move(c), coll, ms_since(t0)};
    });
    Report r;
    r.subcommand = cfg.subcommand;
    r.config = cfg.to_json();
    r.columns = {"seed",     "circuit_index", "n",           "t_weight",     "rank_a",      "rank_a_t",
                 "collision", "bound",        "exact_no_t", "within_bound", "exact_match", "wall_ms"};
    RunningStats stats;
    std::size_t violations = 0, mismatches = 0, no_t = 0;
    for (std::size_t k = 0; k < rows.size(); k++) {
        const IqpCircuit &c = rows[k].c;
        double coll = rows[k].collision;
        stats.add(coll);
        double bound = second_moment_bound(c);
        bool within = coll <= bound + 1e-12;
        violations += !within;
        ordered_json exact = nullptr;
        bool match = true;
        if (c.t.none()) {
            no_t++;
            double e = second_moment_exact_no_T(c);
            exact = e;
            match = std::abs(e - coll) <= 1e-12;
            mismatches += !match;
        }
        r.rows.push_back({*cfg.seed, k, n, c.t.popcount(), f2_rank(c.a), f2_rank(c.a.without_indices(c.t)), coll,
                          bound, exact, within, match, rows[k].wall_ms});
    }
    double target = average_second_moment_formula(n);
    double se = stats.std_error();
    double z = se > 0 ? (stats.mean() - target) / se : 0.0;
    r.summary["trials"] = cfg.trials;
    r.summary["mean_collision"] = stats.mean();
    r.summary["std_error"] = se;
    r.summary["average_formula"] = target;
    r.summary["z_score"] = z;
    r.summary["within_4_std_errors"] = std::abs(stats.mean() - target) <= 4 * se;
    if (3 * n + n * (n - 1) / 2 <= 20) {
        r.summary["exhaustive_average"] = average_second_moment_exhaustive(n);
    }
    r.summary["bound_violations"] = violations;
    r.summary["circuits_without_t"] = no_t;
    r.summary["exact_mismatches"] = mismatches;
    return r;
}

inline Report run_iqp(const ExperimentConfig &cfg) {
    if (cfg.moments) {
        return run_iqp_moments(cfg);
    }
    validate_common(cfg, true);
    std::size_t n = cfg.qubits;
    if (n == 0) {
        throw ConfigError("--qubits must be at least 1");
    }
    if (n > dense_limits().max_mixed_qubits) {
        throw CapacityError("IQP oracle comparison limited to " + std::to_string(dense_limits().max_mixed_qubits) +
                            " qubits");
    }
    if (!cfg.epsilon) {
        throw ConfigError("iqp needs --epsilon");
    }
    double eps = *cfg.epsilon;
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw ConfigError("--epsilon must lie in (0, 1] for iqp runs");
    }
    LevelChoice lc = resolve_level(cfg, eps, n);
    std::size_t max_level = cfg.sweep ? n : lc.level;
    double bound = truncation_bound(cfg.alpha, eps, lc.level);

    std::vector<LevelErrors> trials(cfg.trials);
    parallel_for(cfg.trials, cfg.jobs, [&](std::size_t k) {
        auto t0 = Clock::now();
        Rng rng = stream_rng(*cfg.seed, k);
        IqpCircuit c = random_iqp(n, rng);
        std::vector<double> exact = iqp_dense_noisy_distribution(c, eps);
        LevelErrors e{std::vector<double>(max_level + 1, 0.0), std::vector<double>(max_level + 1, 0.0), 0.0};
        for (std::size_t yv = 0; yv < exact.size(); yv++) {
            BitVec y = BitVec::from_uint(yv, n);
            std::vector<CompensatedSum> sums(max_level + 1);
            for_each_low_weight(n, max_level, [&](const BitVec &s) {
                double v = iqp_fourier_coefficient(c, y, s, eps);
                std::size_t w = s.popcount();
                for (std::size_t l = w; l <= max_level; l++) {
                    sums[l].add(v);
                }
                for (std::size_t l = 0; l < w; l++) {
                    e.tail[l] += v * v;
                }
            });
            for (std::size_t l = 0; l <= max_level; l++) {
                e.l1[l] += std::abs(sums[l].value() - exact[yv]);
            }
        }
        e.wall_ms = ms_since(t0);
        trials[k] = std::move(e);
    });

    Report r;
    r.subcommand = cfg.subcommand;
    r.config = cfg.to_json();
    r.columns = {"seed",     "circuit_index", "n",     "eps",          "level",  "coeff_count",
                 "l1_error", "bound",         "within_bound", "wall_ms"};
    std::size_t within = 0;
    double worst = 0.0;
    std::uint64_t budget = binomial_budget(n, lc.level);
    for (std::size_t k = 0; k < trials.size(); k++) {
        double l1 = trials[k].l1[lc.level];
        bool ok = l1 <= bound;
        within += ok;
        worst = std::max(worst, l1);
        r.rows.push_back({*cfg.seed, k, n, eps, lc.level, budget, l1, bound, ok, trials[k].wall_ms});
    }
    add_fraction_summary(r, within, cfg.trials, cfg.alpha);
    r.summary["max_l1_error"] = worst;
    r.summary["rate"] = eps;
    r.summary["level"] = lc.level;
    r.summary["level_source"] = lc.source;
    r.summary["unclamped_level"] = lc.unclamped;
    r.summary["coeff_count_per_outcome"] = budget;
    if (cfg.sweep) {
        add_sweep_summary(r, trials, cfg.alpha, eps, max_level);
    }
    return r;
}

inline std::vector<SignedPauli> read_pauli_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read Pauli file " + path);
    }
    std::vector<SignedPauli> out;
    std::string line;
    while (std::getline(in, line)) {
        auto tok = pfsim::detail::split_ws(pfsim::detail::strip_comment(line));
        if (tok.empty()) {
            continue;
        }
        if (tok.size() != 1) {
            throw ConfigError("one Pauli per line expected in " + path);
        }
        out.push_back(SignedPauli::parse(tok[0]));
    }
    if (out.empty()) {
        throw ConfigError("Pauli file " + path + " is empty");
    }
    return out;
}

inline Report run_pbc(const ExperimentConfig &cfg) {
    bool from_file = !cfg.paulis_file.empty();
    validate_common(cfg, !from_file);
    if (cfg.sweep) {
        throw ConfigError("--sweep is not supported for pbc");
    }
    std::vector<SignedPauli> fixed;
    std::size_t n = cfg.qubits, k = cfg.steps, trials = cfg.trials;
    if (from_file) {
        fixed = read_pauli_file(cfg.paulis_file);
        n = fixed.front().n_qubits();
        k = fixed.size();
        trials = 1;
    }
    if (n == 0 || k == 0) {
        throw ConfigError("pbc needs at least one qubit and one measurement step");
    }
    if (k > n) {
        throw ConfigError("--steps exceeds the qubit count");
    }
    if (n > 10) {
        throw CapacityError("PBC oracle comparison limited to 10 qubits");
    }
    if (cfg.inputs.size() > 1) {
        throw ConfigError("pbc uses a single --input applied to every qubit");
    }
    QubitInput input = resolve_inputs(cfg, 1).front();
    TruncationRate tr = truncation_rate({input});
    if (!(tr.rate > 0.0)) {
        throw ConfigError("decay rate is 0 for input " + input.str() + ": the truncation bound is vacuous");
    }
    std::vector<std::string> labels;
    ordered_json cap_json = nullptr;
    if (input.is_pure()) {
        std::int64_t cap = measured_cap(std::vector<QubitInput>(n, input), 0);
        cap_json = cap;
        if (static_cast<std::int64_t>(k) > cap) {
            if (!cfg.force) {
                throw ConfigError(std::to_string(k) + " measurement steps exceed the cap of " + std::to_string(cap) +
                                  "; pass --force to run anyway");
            }
            labels.push_back("outside the measured-qubit cap");
        }
    }
    LevelChoice lc = resolve_level(cfg, tr.rate, n);
    double bound = truncation_bound(cfg.alpha, tr.rate, lc.level);

    std::vector<double> l1s(trials), walls(trials);
    parallel_for(trials, cfg.jobs, [&](std::size_t t) {
        auto t0 = Clock::now();
        std::vector<SignedPauli> gens = fixed;
        if (!from_file) {
            Rng rng = stream_rng(*cfg.seed, t);
            CliffordTableau u = random_clifford(n, rng);
            for (std::size_t i = 0; i < k; i++) {
                gens.push_back(conjugate(u, SignedPauli::z_on(n, i)));
            }
        }
        double l1 = 0.0;
        for (const BitVec &sigma : all_outcomes(k)) {
            l1 += std::abs(pbc_probability(n, gens, sigma, input, lc.level) -
                           dense_pbc_probability(n, gens, sigma, input));
        }
        l1s[t] = l1;
        walls[t] = ms_since(t0);
    });

    Report r;
    r.subcommand = cfg.subcommand;
    r.config = cfg.to_json();
    r.columns = {"seed",        "circuit_index", "n",     "k",     "rate",         "level",
                 "coeff_count", "l1_error",      "bound", "within_bound", "wall_ms"};
    std::uint64_t budget = coefficient_budget(n, lc.level);
    std::size_t within = 0;
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; t++) {
        bool ok = l1s[t] <= bound;
        within += ok;
        worst = std::max(worst, l1s[t]);
        r.rows.push_back({cfg.seed ? ordered_json(*cfg.seed) : ordered_json(nullptr), t, n, k, tr.rate, lc.level,
                          budget, l1s[t], bound, ok, walls[t]});
    }
    add_fraction_summary(r, within, trials, cfg.alpha);
    r.summary["max_l1_error"] = worst;
    r.summary["rate_pathway"] = pathway_name(tr.pathway);
    r.summary["rate"] = tr.rate;
    r.summary["level"] = lc.level;
    r.summary["level_source"] = lc.source;
    r.summary["unclamped_level"] = lc.unclamped;
    r.summary["measured_cap"] = cap_json;
    r.summary["labels"] = labels;
    return r;
}

inline QubitInput random_input(Rng &rng) {
    return coin(rng) ? haar_random_input(rng) : random_mixed_input(rng);
}

/// Random instance on 1..max_total qubits with 1..max_m nonstabilizer inputs (when room allows).
inline SimInstance random_instance(Rng &rng, std::size_t max_total, std::size_t max_m) {
    std::size_t total = 1 + uniform_below(rng, max_total);
    std::size_t m = uniform_below(rng, std::min(total, max_m) + 1);
    std::vector<QubitInput> inputs;
    for (std::size_t i = 0; i < m; i++) {
        inputs.push_back(random_input(rng));
    }
    std::vector<std::size_t> measured;
    for (std::size_t q = 0; q < total; q++) {
        if (coin(rng)) {
            measured.push_back(q);
        }
    }
    return SimInstance(total - m, std::move(inputs), random_clifford(total, rng), std::move(measured));
}

inline Report run_oracle_check(const ExperimentConfig &cfg) {
    validate_common(cfg, true);
    std::size_t trials = cfg.trials;
    std::uint64_t seed = *cfg.seed;
    Report r;
    r.subcommand = cfg.subcommand;
    r.config = cfg.to_json();
    r.columns = {"check", "instances", "max_deviation", "tolerance", "pass", "wall_ms"};
    auto record = [&](const std::string &name, double tol, auto &&one) {
        auto t0 = Clock::now();
        std::vector<double> dev(trials);
        parallel_for(trials, cfg.jobs, [&](std::size_t k) {
            Rng rng = stream_rng(seed, k);
            dev[k] = one(rng);
        });
        double worst = 0.0;
        for (double d : dev) {
            worst = std::max(worst, d);
        }
        bool pass = worst <= tol;
        r.check_failed = r.check_failed || !pass;
        r.rows.push_back({name, trials, worst, tol, pass, ms_since(t0)});
    };

    record("fourier_exactness", 1e-10, [](Rng &rng) {
        SimInstance inst = random_instance(rng, 6, 6);
        FourierEvaluator ev(inst);
        double worst = 0.0;
        for (const auto &[y, p] : exact_distribution(inst)) {
            worst = std::max(worst, std::abs(sum_terms(fourier_terms(ev, y, inst.m()), inst.m()) - p));
        }
        return worst;
    });
    record("projector_trace", 1e-12, [](Rng &rng) {
        std::size_t nq = 1 + uniform_below(rng, 5);
        std::size_t r = uniform_below(rng, nq + 1);
        CliffordTableau u = random_clifford(nq, rng);
        std::vector<SignedPauli> gens;
        for (std::size_t i = 0; i < r; i++) {
            SignedPauli g = conjugate(u, SignedPauli::z_on(nq, i));
            if (coin(rng)) {
                g.add_phase(2);
            }
            gens.push_back(g);
        }
        SignedPauli p(nq);
        for (std::size_t q = 0; q < nq; q++) {
            p.set_x(q, q >= r && coin(rng));
            p.set_z(q, coin(rng));
        }
        p.set_phase(static_cast<int>(uniform_below(rng, 4)));
        SignedPauli q = conjugate(u, p);
        std::vector<std::size_t> measured;
        for (std::size_t k = 0; k < nq; k++) {
            if (coin(rng)) {
                measured.push_back(k);
            }
        }
        BitVec y = random_bits(rng, measured.size());
        return std::abs(projector_expectation(gens, q, measured, y) - dense_projector_expectation(gens, q, measured, y));
    });
    record("twirl_identity", 1e-10, [](Rng &rng) {
        SimInstance inst = random_instance(rng, 5, 3);
        BitVec a = random_bits(rng, inst.m()), b = random_bits(rng, inst.m());
        return twirl_identity_check(inst, a, b).max_deviation;
    });
    record("iqp_exactness", 1e-10, [](Rng &rng) {
        std::size_t n = 1 + uniform_below(rng, 6);
        IqpCircuit c = random_iqp(n, rng);
        double eps = uniform01(rng);
        std::vector<double> exact = iqp_dense_noisy_distribution(c, eps);
        double worst = 0.0;
        for (std::size_t y = 0; y < exact.size(); y++) {
            worst = std::max(worst, std::abs(iqp_approx_probability(c, eps, BitVec::from_uint(y, n), n) - exact[y]));
        }
        return worst;
    });
    record("pbc_exactness", 1e-10, [](Rng &rng) {
        std::size_t n = 1 + uniform_below(rng, 5);
        std::size_t k = 1 + uniform_below(rng, n);
        CliffordTableau u = random_clifford(n, rng);
        std::vector<SignedPauli> gens;
        for (std::size_t i = 0; i < k; i++) {
            gens.push_back(conjugate(u, SignedPauli::z_on(n, i)));
        }
        BitVec sigma = random_bits(rng, k);
        QubitInput in = QubitInput::t_state();
        return std::abs(pbc_probability(n, gens, sigma, in, n) - dense_pbc_probability(n, gens, sigma, in));
    });
    r.summary["all_passed"] = !r.check_failed;
    return r;
}

inline Report run_experiment(const ExperimentConfig &cfg) {
    if (cfg.subcommand == "noisy-clifford") {
        return run_clifford(cfg, false);
    }
    if (cfg.subcommand == "pure-magic") {
        return run_clifford(cfg, true);
    }
    if (cfg.subcommand == "iqp") {
        return run_iqp(cfg);
    }
    if (cfg.subcommand == "pbc") {
        return run_pbc(cfg);
    }
    if (cfg.subcommand == "oracle-check") {
        return run_oracle_check(cfg);
    }
    throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");
}

}  // namespace detail

using detail::run_experiment;

}  // namespace pfsim::cli
