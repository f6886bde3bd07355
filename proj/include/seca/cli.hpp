#pragma once

/**
 * @file
 * Batch experiment harness behind the `seca` executable.
 *
 *   seca metrics|vqe|cut-verify|plot --config <path> [--out <dir>] [--seed <u64>] [--threads <n>]
 *
 * Exit codes: 0 success, 2 configuration error, 3 numerical failure,
 * 4 verification failure. Every output is a deterministic function of the
 * configuration and seed.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ansatz.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "gatecut.hpp"
#include "metrics.hpp"
#include "plot.hpp"
#include "problems.hpp"
#include "rng.hpp"
#include "serialize.hpp"
#include "statevec.hpp"
#include "vqe.hpp"

namespace seca::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerify = 4;
inline constexpr int kConfigVersion = 1;
inline constexpr double kCutTolerance = 1e-9;

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct Options {
    std::filesystem::path out = ".";
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

// ---------------------------------------------------------------------------
// Config helpers

namespace detail {

inline void check_version(const json& cfg) {
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    if (!cfg.contains("version")) throw ConfigError("config is missing \"version\"");
    if (cfg.at("version") != kConfigVersion) {
        throw ConfigError("unsupported config version " + cfg.at("version").dump());
    }
}

inline std::uint64_t seed_of(const json& cfg, const Options& opt) {
    if (opt.seed) return *opt.seed;
    if (!cfg.contains("seed")) throw ConfigError("config needs a \"seed\" (or pass --seed)");
    return cfg.at("seed").get<std::uint64_t>();
}

/// Accepts [a, b, ...] or {"from": a, "to": b}.
inline std::vector<std::size_t> int_range(const json& cfg, const std::string& key) {
    if (!cfg.contains(key)) throw ConfigError("config is missing \"" + key + "\"");
    const json& v = cfg.at(key);
    std::vector<std::size_t> out;
    if (v.is_array()) {
        for (const auto& x : v) out.push_back(x.get<std::size_t>());
    } else if (v.is_object()) {
        const auto from = v.at("from").get<std::size_t>();
        const auto to = v.at("to").get<std::size_t>();
        for (std::size_t i = from; i <= to; ++i) out.push_back(i);
    } else if (v.is_number_unsigned()) {
        out.push_back(v.get<std::size_t>());
    } else {
        throw ConfigError("\"" + key + "\" must be a list or {\"from\", \"to\"} range");
    }
    if (out.empty()) throw ConfigError("range \"" + key + "\" is empty");
    return out;
}

inline std::vector<double> real_list(const json& cfg, const std::string& key) {
    if (!cfg.contains(key)) throw ConfigError("config is missing \"" + key + "\"");
    const json& v = cfg.at(key);
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& x : v) out.push_back(x.get<double>());
    } else {
        out.push_back(v.get<double>());
    }
    if (out.empty()) throw ConfigError("list \"" + key + "\" is empty");
    return out;
}

inline std::vector<std::string> string_list(const json& cfg, const std::string& key,
                                            std::vector<std::string> fallback = {}) {
    if (!cfg.contains(key)) {
        if (fallback.empty()) throw ConfigError("config is missing \"" + key + "\"");
        return fallback;
    }
    auto out = cfg.at(key).get<std::vector<std::string>>();
    if (out.empty()) throw ConfigError("list \"" + key + "\" is empty");
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open " + path.string() + " for writing");
    f << content;
}

inline std::string label(double v) {
    std::string s = csv::format_double(v);
    std::replace(s.begin(), s.end(), '.', 'p');
    std::replace(s.begin(), s.end(), '-', 'm');
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// metrics

/// Sweeps architectures over L, N_CZ or L_CZ and writes one CSV row per
/// (seed, sweep point, metric):
///   arch,n,L,n_cz,l_cz,seed,metric,value,samples
inline int cmd_metrics(const json& cfg, const Options& opt, std::ostream& log) {
    detail::check_version(cfg);
    const std::uint64_t seed = detail::seed_of(cfg, opt);
    const auto n = cfg.at("n_qubits").get<std::size_t>();
    const std::string sweep = cfg.value("sweep", std::string("layers"));
    const auto metrics = detail::string_list(cfg, "metrics", {"exp_kl", "ent", "grad_var"});
    const auto n_seeds = cfg.value("n_seeds", std::size_t{1});
    const auto bins = cfg.value("bins", kDefaultBins);
    const json samples = cfg.value("samples", json::object());
    const auto exp_pairs = samples.value("exp_pairs", kDefaultExpPairs);
    const auto ent_samples = samples.value("ent", kDefaultEntSamples);
    const auto grad_samples = samples.value("grad", kDefaultGradSamples);
    const auto grad_param = cfg.value("grad_param", std::size_t{0});
    const std::string output = cfg.value("output", std::string("metrics.csv"));
    if (n_seeds < 1) throw ConfigError("n_seeds must be at least 1");
    for (const auto& m : metrics) {
        if (m != "exp_kl" && m != "ent" && m != "grad_var") throw ConfigError("unknown metric '" + m + "'");
    }

    struct Point {
        std::string arch;
        AnsatzSpec spec;
    };
    std::vector<Point> points;
    if (sweep == "layers") {
        const auto archs = detail::string_list(cfg, "architectures", {"FECA", "SECA", "NoCZ"});
        const auto layers = detail::int_range(cfg, "layers");
        for (const auto& a : archs) {
            ConnectionScheme scheme = ConnectionScheme::nocz();
            try {
                scheme = ConnectionScheme::parse(a);
            } catch (const ArgumentError& e) {
                throw ConfigError(e.what());
            }
            for (std::size_t l : layers) points.push_back({scheme.name(), AnsatzSpec{n, l, scheme}});
        }
    } else if (sweep == "ncz" || sweep == "lcz") {
        const auto layers = cfg.at("layers").get<std::size_t>();
        const auto values = detail::int_range(cfg, sweep);
        for (std::size_t v : values) {
            if (sweep == "ncz") {
                if (v > layers) throw ConfigError("n_cz " + std::to_string(v) + " exceeds L");
                points.push_back({"NCZ", AnsatzSpec{n, layers, ncz_sweep_scheme(layers, v)}});
            } else {
                if (v < 1 || v > layers) throw ConfigError("l_cz " + std::to_string(v) + " outside 1..L");
                points.push_back({"LCZ", AnsatzSpec{n, layers, ConnectionScheme::custom({v})}});
            }
        }
    } else {
        throw ConfigError("unknown sweep '" + sweep + "' (expected layers, ncz or lcz)");
    }
    for (const auto& p : points) {
        try {
            p.spec.validate();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        if (grad_param >= param_count(p.spec)) throw ConfigError("grad_param out of range for " + p.spec.descriptor());
    }

    std::ostringstream out;
    csv::write_row(out, {"arch", "n", "L", "n_cz", "l_cz", "seed", "metric", "value", "samples"});
    for (std::size_t s = 0; s < n_seeds; ++s) {
        const std::uint64_t row_seed = seed + s;
        for (const auto& p : points) {
            const auto layers = p.spec.scheme.connected_layers(p.spec.layers);
            const std::size_t l_cz = layers.size() == 1 ? *layers.begin() : 0;
            for (const auto& m : metrics) {
                double value = 0.0;
                std::size_t count = 0;
                if (m == "exp_kl") {
                    value = estimate_expressibility(p.spec, exp_pairs, bins, derive_seed(row_seed, "exp_kl"), opt.threads)
                                .kl_divergence;
                    count = exp_pairs;
                } else if (m == "ent") {
                    value = estimate_entangling_capability(p.spec, ent_samples, derive_seed(row_seed, "ent"), opt.threads).ent;
                    count = ent_samples;
                } else {
                    value = estimate_gradient_variance(p.spec, boundary_zz_observable(n), grad_param, grad_samples,
                                                       derive_seed(row_seed, "grad_var"), opt.threads)
                                .variance;
                    count = grad_samples;
                }
                if (!std::isfinite(value)) throw NumericalError("non-finite " + m + " for " + p.spec.descriptor());
                csv::write_row(out, {p.arch, std::to_string(n), std::to_string(p.spec.layers), std::to_string(layers.size()),
                                     std::to_string(l_cz), std::to_string(row_seed), m, csv::format_double(value),
                                     std::to_string(count)});
            }
            log << "metrics: " << p.spec.descriptor() << " seed " << row_seed << " done\n";
        }
    }
    detail::write_file(opt.out / output, out.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// vqe

/// Runs repeated VQE trainings per (architecture, L, problem parameter).
/// Writes vqe_summary.csv, one repeats_*.csv per point and, if requested,
/// one trace_*.csv per repetition.
inline int cmd_vqe(const json& cfg, const Options& opt, std::ostream& log) {
    detail::check_version(cfg);
    const std::uint64_t seed = detail::seed_of(cfg, opt);
    const std::string problem = cfg.at("problem").get<std::string>();
    const auto n = cfg.at("n_qubits").get<std::size_t>();
    const auto archs = detail::string_list(cfg, "architectures", {"SECA", "FECA"});
    const auto layers = detail::int_range(cfg, "layers");
    const auto reps = cfg.value("reps", std::size_t{1});
    const bool write_traces = cfg.value("traces", true);

    TrainConfig tc;
    tc.max_steps = cfg.value("steps", std::size_t{500});
    tc.learning_rate = cfg.value("learning_rate", 0.05);
    const std::string optimizer = cfg.value("optimizer", std::string("adam"));
    if (optimizer == "adam") tc.optimizer = Optimizer::adam;
    else if (optimizer == "vanilla_gd") tc.optimizer = Optimizer::vanilla_gd;
    else throw ConfigError("unknown optimizer '" + optimizer + "'");
    const std::string init = cfg.value("init", std::string("uniform_0_2pi"));
    if (init == "uniform_0_2pi") tc.init = InitPolicy::uniform_0_2pi;
    else if (init == "small_normal") tc.init = InitPolicy::small_normal;
    else throw ConfigError("unknown init policy '" + init + "'");
    try {
        tc.validate();
    } catch (const ArgumentError& e) {
        throw ConfigError(e.what());
    }
    if (reps < 1) throw ConfigError("reps must be at least 1");

    std::vector<double> params;
    std::string param_name;
    std::function<PauliObservable(double, std::uint64_t)> make_observable;
    if (problem == "heisenberg") {
        params = detail::real_list(cfg, "couplings");
        param_name = "J";
        const std::string b = cfg.value("boundary", std::string("periodic"));
        if (b != "periodic" && b != "open") throw ConfigError("boundary must be periodic or open");
        const Boundary boundary = b == "periodic" ? Boundary::periodic : Boundary::open;
        make_observable = [n, boundary](double j, std::uint64_t) { return heisenberg({n, j, boundary}); };
    } else if (problem == "qubo") {
        params = detail::real_list(cfg, "densities");
        param_name = "D";
        for (double d : params) {
            if (!(d > 0.0 && d <= 1.0) || qubo_edge_count(n, d) < 1) throw ConfigError("invalid density");
        }
        make_observable = [n](double d, std::uint64_t rep_seed) {
            return to_ising(random_qubo(n, d, derive_seed(rep_seed, "qubo-instance"))).observable;
        };
    } else {
        throw ConfigError("problem must be heisenberg or qubo");
    }

    std::ostringstream all_reps;
    csv::write_row(all_reps, {"problem", "arch", "n", "L", "param", "value", "rep", "seed", "final_energy", "final_v_score"});
    std::ostringstream summary;
    csv::write_row(summary, {"problem", "arch", "n", "L", "param", "value", "steps", "reps", "mean_final_energy",
                             "var_final_energy", "mean_final_v_score", "var_final_v_score"});
    for (const auto& a : archs) {
        ConnectionScheme scheme = ConnectionScheme::nocz();
        try {
            scheme = ConnectionScheme::parse(a);
        } catch (const ArgumentError& e) {
            throw ConfigError(e.what());
        }
        for (std::size_t l : layers) {
            for (double pv : params) {
                Experiment exp{AnsatzSpec{n, l, scheme}, [&, pv](std::uint64_t s) { return make_observable(pv, s); }, tc, {}};
                try {
                    exp.ansatz.validate();
                } catch (const std::exception& e) {
                    throw ConfigError(e.what());
                }
                const RepeatStats stats = repeat_experiment(exp, reps, seed, opt.threads);
                const std::string tag = scheme.name() + "_L" + std::to_string(l) + "_" + param_name + detail::label(pv);

                std::ostringstream rep_csv;
                csv::write_row(rep_csv, {"rep", "seed", "final_energy", "final_v_score"});
                for (const auto& e : stats.entries) {
                    csv::write_row(all_reps, {problem, scheme.name(), std::to_string(n), std::to_string(l), param_name,
                                              csv::format_double(pv), std::to_string(e.rep), std::to_string(e.seed),
                                              csv::format_double(e.final_energy), csv::format_double(e.final_v_score)});
                    csv::write_row(rep_csv, {std::to_string(e.rep), std::to_string(e.seed), csv::format_double(e.final_energy),
                                             csv::format_double(e.final_v_score)});
                }
                csv::write_row(rep_csv, {"mean", "", csv::format_double(stats.mean_energy), csv::format_double(stats.mean_v_score)});
                csv::write_row(rep_csv, {"variance", "", csv::format_double(stats.var_energy), csv::format_double(stats.var_v_score)});
                detail::write_file(opt.out / ("repeats_" + tag + ".csv"), rep_csv.str());

                if (write_traces) {
                    for (std::size_t r = 0; r < stats.traces.size(); ++r) {
                        const auto& t = stats.traces[r];
                        std::ostringstream tr;
                        csv::write_row(tr, {"step", "energy", "e_var", "v_score"});
                        auto emit = [&tr](const TrainRecord& rec) {
                            csv::write_row(tr, {std::to_string(rec.step), csv::format_double(rec.energy),
                                                csv::format_double(rec.e_var), csv::format_double(rec.v_score)});
                        };
                        emit(t.initial);
                        for (const auto& rec : t.records) emit(rec);
                        detail::write_file(opt.out / ("trace_" + tag + "_rep" + std::to_string(r) + ".csv"), tr.str());
                    }
                }
                csv::write_row(summary, {problem, scheme.name(), std::to_string(n), std::to_string(l), param_name,
                                         csv::format_double(pv), std::to_string(tc.max_steps), std::to_string(reps),
                                         csv::format_double(stats.mean_energy), csv::format_double(stats.var_energy),
                                         csv::format_double(stats.mean_v_score), csv::format_double(stats.var_v_score)});
                log << "vqe: " << tag << " mean V-score " << csv::format_double(stats.mean_v_score) << "\n";
            }
        }
    }
    detail::write_file(opt.out / "vqe_summary.csv", summary.str());
    detail::write_file(opt.out / "vqe_repeats.csv", all_reps.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// cut-verify

inline PauliObservable named_observable(const std::string& name, std::size_t n) {
    if (name == "heisenberg") return heisenberg({n, 1.0, Boundary::periodic});
    if (name == "zz_boundary") return boundary_zz_observable(n);
    PauliObservable obs(n);
    if (name == "z_all") {
        obs.add(PauliString(1.0, std::string(n, 'Z')));
    } else if (name == "x_first") {
        obs.add(PauliString::sparse(n, 1.0, {{0, Pauli::X}}));
    } else if (name == "xy_boundary") {
        obs.add(PauliString::sparse(n, 1.0, {{n / 2 - 1, Pauli::X}, {n / 2, Pauli::Y}}));
    } else {
        throw ConfigError("unknown observable '" + name + "'");
    }
    return obs;
}

/// Compares cut reconstruction with the uncut simulation for every
/// (theta seed, observable) pair. Exit 0 iff the worst error is below 1e-9.
inline int cmd_cut_verify(const json& cfg, const Options& opt, std::ostream& log) {
    detail::check_version(cfg);
    const std::uint64_t seed = detail::seed_of(cfg, opt);
    const auto n = cfg.at("n_qubits").get<std::size_t>();
    const auto layers = cfg.at("layers").get<std::size_t>();
    const std::string arch = cfg.value("architecture", std::string("SECA"));
    const auto n_theta = cfg.value("n_theta", std::size_t{10});
    const auto observables = detail::string_list(cfg, "observables", {"heisenberg"});
    const auto budget = cfg.value("budget", kDefaultCutBudget);
    const bool corrupt = cfg.value("corrupt_coefficient", false);
    const std::string output = cfg.value("output", std::string("cut_report.json"));
    if (n > kMaxExactQubits) throw ConfigError("cut verification supports at most 12 qubits");
    if (n_theta < 1) throw ConfigError("n_theta must be at least 1");

    AnsatzSpec spec{n, layers, ConnectionScheme::seca()};
    try {
        spec.scheme = ConnectionScheme::parse(arch);
        spec.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const SplitCircuit sc = split(spec);
    if (overhead(sc.cuts) > budget) {
        throw ConfigError("10^" + std::to_string(sc.cuts) + " sub-circuit combinations exceed budget " + std::to_string(budget));
    }
    CutEnsemble ensemble = cz_cut_ensemble();
    if (corrupt) ensemble.terms[0].coefficient *= 1.01;
    const Circuit full = build(spec);

    json runs = json::array();
    CutReport worst;
    double max_err = -1.0;
    std::string worst_desc;
    for (std::size_t t = 0; t < n_theta; ++t) {
        Rng rng(seed, "cut-theta", t);
        const auto theta = sample_parameters(param_count(spec), rng);
        for (const auto& name : observables) {
            const PauliObservable obs = named_observable(name, n);
            const CutResult r = execute_cut(sc, ensemble, theta, obs, budget, opt.threads);
            const double exact = expectation(prepare(full, theta), obs);
            const double err = std::abs(r.value - exact);
            if (!std::isfinite(err)) throw NumericalError("non-finite cut reconstruction");
            CutReport rep{r.cuts, r.terms_executed, r.kappa, r.value, exact, err};
            json j = cut_report_to_json(rep);
            j["theta_index"] = t;
            j["observable"] = name;
            runs.push_back(std::move(j));
            if (err > max_err) {
                max_err = err;
                worst = rep;
                worst_desc = "theta " + std::to_string(t) + ", observable " + name;
            }
        }
    }
    json report = cut_report_to_json(worst);
    report["architecture"] = spec.scheme.name();
    report["n_qubits"] = n;
    report["layers"] = layers;
    report["cut_layers"] = sc.cut_layers;
    report["tolerance"] = kCutTolerance;
    report["max_abs_error"] = max_err;
    report["passed"] = max_err < kCutTolerance;
    report["runs"] = std::move(runs);
    detail::write_file(opt.out / output, report.dump(2) + "\n");
    if (max_err < kCutTolerance) {
        log << "cut-verify: " << spec.descriptor() << " cuts=" << sc.cuts << " max error " << max_err << " (ok)\n";
        return kExitOk;
    }
    std::cerr << "cut-verify: mismatch " << max_err << " at " << worst_desc << " (value " << worst.value << ", uncut "
              << *worst.uncut_value << ")\n";
    return kExitVerify;
}

// ---------------------------------------------------------------------------
// plot

namespace detail {

struct Agg {
    double sum = 0.0;
    double sq = 0.0;
    std::size_t count = 0;
    void add(double v) {
        sum += v;
        sq += v * v;
        ++count;
    }
    [[nodiscard]] double mean() const { return sum / static_cast<double>(count); }
    [[nodiscard]] double var() const { return std::max(0.0, sq / static_cast<double>(count) - mean() * mean()); }
};

inline double to_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw ConfigError("bad number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad number '" + s + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("number out of range '" + s + "'");
    }
}

}  // namespace detail

/// Renders a metrics, vqe_summary or trace CSV into SVG line charts.
inline int cmd_plot(const json& cfg, const Options& opt, std::ostream& log) {
    detail::check_version(cfg);
    if (!cfg.contains("input")) throw ConfigError("plot config needs \"input\"");
    const std::filesystem::path input = cfg.at("input").get<std::string>();
    const std::string prefix = cfg.value("output_prefix", input.stem().string());
    std::ifstream f(input, std::ios::binary);
    if (!f) throw ConfigError("cannot read " + input.string());
    const csv::Table table = csv::read(f);
    if (table.rows.empty()) throw ConfigError("no data rows in " + input.string());
    for (const auto& r : table.rows) {
        if (r.size() != table.header.size()) throw ConfigError("ragged CSV row in " + input.string());
    }
    auto col = [&](const std::string& name) {
        const int c = table.column(name);
        if (c < 0) throw ConfigError("column '" + name + "' missing");
        return static_cast<std::size_t>(c);
    };

    std::vector<std::pair<std::string, plot::Chart>> charts;
    const csv::Row metrics_header{"arch", "n", "L", "n_cz", "l_cz", "seed", "metric", "value", "samples"};
    const csv::Row trace_header{"step", "energy", "e_var", "v_score"};
    if (table.header == metrics_header) {
        // metric -> arch -> x -> aggregate over seeds
        std::map<std::string, std::map<std::string, std::map<double, detail::Agg>>> data;
        const auto c_arch = col("arch");
        const auto c_metric = col("metric");
        const auto c_value = col("value");
        for (const auto& r : table.rows) {
            const std::string& arch = r[c_arch];
            const std::size_t c_x = arch == "NCZ" ? col("n_cz") : (arch == "LCZ" ? col("l_cz") : col("L"));
            data[r[c_metric]][arch][detail::to_double(r[c_x])].add(detail::to_double(r[c_value]));
        }
        for (const auto& [metric, by_arch] : data) {
            plot::Chart chart;
            chart.title = metric;
            chart.y_label = metric;
            chart.x_label = by_arch.begin()->first == "NCZ" ? "N_CZ" : (by_arch.begin()->first == "LCZ" ? "L_CZ" : "L");
            for (const auto& [arch, pts] : by_arch) {
                plot::Series s{arch, {}, {}, {}};
                for (const auto& [x, agg] : pts) {
                    s.x.push_back(x);
                    s.y.push_back(agg.mean());
                    s.err.push_back(agg.var());
                }
                chart.series.push_back(std::move(s));
            }
            charts.emplace_back(prefix + "_" + metric, std::move(chart));
        }
    } else if (table.column("mean_final_v_score") >= 0 && table.column("arch") >= 0 && table.column("L") >= 0) {
        std::map<std::string, std::map<std::string, std::vector<std::array<double, 3>>>> data;
        for (const auto& r : table.rows) {
            data[r[col("param")] + "=" + r[col("value")]][r[col("arch")]].push_back(
                {detail::to_double(r[col("L")]), detail::to_double(r[col("mean_final_v_score")]),
                 detail::to_double(r[col("var_final_v_score")])});
        }
        for (auto& [key, by_arch] : data) {
            plot::Chart chart;
            chart.title = "V-score vs L (" + key + ")";
            chart.x_label = "L";
            chart.y_label = "V-score";
            for (auto& [arch, pts] : by_arch) {
                std::sort(pts.begin(), pts.end());
                plot::Series s{arch, {}, {}, {}};
                for (const auto& p : pts) {
                    s.x.push_back(p[0]);
                    s.y.push_back(p[1]);
                    s.err.push_back(p[2]);
                }
                chart.series.push_back(std::move(s));
            }
            std::string name = key;
            std::replace(name.begin(), name.end(), '=', '_');
            std::replace(name.begin(), name.end(), '.', 'p');
            charts.emplace_back(prefix + "_" + name, std::move(chart));
        }
    } else if (table.header == trace_header) {
        plot::Chart chart;
        chart.title = "V-score vs step";
        chart.x_label = "step";
        chart.y_label = "V-score";
        plot::Series s{input.stem().string(), {}, {}, {}};
        bool positive = true;
        for (const auto& r : table.rows) {
            const double v = detail::to_double(r[col("v_score")]);
            if (!std::isfinite(v)) continue;
            positive = positive && v > 0.0;
            s.x.push_back(detail::to_double(r[col("step")]));
            s.y.push_back(v);
        }
        if (s.x.empty()) throw ConfigError("no finite V-scores in " + input.string());
        chart.log_y = positive;
        chart.series.push_back(std::move(s));
        charts.emplace_back(prefix, std::move(chart));
    } else {
        throw ConfigError("unrecognized CSV schema in " + input.string());
    }

    for (const auto& [name, chart] : charts) {
        detail::write_file(opt.out / (name + ".svg"), plot::render_svg(chart));
        log << "plot: wrote " << (opt.out / (name + ".svg")).string() << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

/// Dispatches one command and maps failures onto exit codes.
inline int run_command(const std::string& command, const json& cfg, const Options& opt, std::ostream& log) {
    try {
        if (command == "metrics") return cmd_metrics(cfg, opt, log);
        if (command == "vqe") return cmd_vqe(cfg, opt, log);
        if (command == "cut-verify") return cmd_cut_verify(cfg, opt, log);
        if (command == "plot") return cmd_plot(cfg, opt, log);
        std::cerr << "unknown command '" << command << "'\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const CapacityError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

inline int run_command_file(const std::string& command, const std::filesystem::path& config, const Options& opt,
                            std::ostream& log) {
    std::ifstream f(config);
    if (!f) {
        std::cerr << "config error: cannot read " << config.string() << "\n";
        return kExitConfig;
    }
    json cfg;
    try {
        cfg = json::parse(f);
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return run_command(command, cfg, opt, log);
}

}  // namespace seca::cli
