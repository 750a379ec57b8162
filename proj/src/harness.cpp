#include "pg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "pg/errors.hpp"
#include "pg/losses.hpp"
#include "pg/rng.hpp"

namespace pg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_text(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw param_error("config: bad section header at line " + std::to_string(lineno));
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw param_error("config: empty section name at line " + std::to_string(lineno));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw param_error("config: expected key=value at line " + std::to_string(lineno));
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw param_error("config: empty key at line " + std::to_string(lineno));
        if (section.empty()) throw param_error("config: key outside any section at line " +
                                               std::to_string(lineno));
        std::string full = section + "." + key;
        if (cfg.entries_.count(full)) throw param_error("config: duplicate key '" + full + "'");
        cfg.entries_[full] = val;
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

bool ConfigFile::has(const std::string& key) const { return entries_.count(key) != 0; }

std::string ConfigFile::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw param_error("config: missing required key '" + key + "'");
    return it->second;
}

std::string ConfigFile::get_or(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

namespace {

long long to_ll(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw param_error("config: bad integer for " + key + ": '" + v + "'");
    }
}

double to_dbl(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw param_error("config: bad number for " + key + ": '" + v + "'");
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw param_error("config: bad boolean for " + key + ": '" + v + "'");
}

const char* known_keys[] = {
    "run.mode",          "run.protocol",     "run.optimizer",   "run.objective",
    "run.kernel",        "run.T",            "run.n_trials",    "run.base_seed",
    "run.record_every",  "run.threads",      "run.record_bias", "run.track_auc",
    "run.write_trials",  "run.output",       "run.metric_b",    "run.hinge",
    "topology.descriptor",
    "schedule.a",        "schedule.alpha",
    "projection.kind",   "projection.radius",
    "data.source",       "data.path",        "data.has_header", "data.id_column",
    "data.label_column", "data.label_map",   "data.n",          "data.classes",
    "data.dim",          "data.subspace",    "data.mean_scale", "data.sigma",
    "data.seed",         "data.binarize",
};

}  // namespace

ExperimentConfig ExperimentConfig::parse(const ConfigFile& file) {
    for (const auto& [key, value] : file.entries()) {
        bool ok = false;
        for (const char* k : known_keys)
            if (key == k) {
                ok = true;
                break;
            }
        if (!ok) throw param_error("config: unknown key '" + key + "'");
        (void)value;
    }

    ExperimentConfig cfg;
    const std::string mode = file.get("run.mode");
    if (mode == "estimate")
        cfg.mode = RunMode::estimate;
    else if (mode == "optimize")
        cfg.mode = RunMode::optimize;
    else
        throw param_error("config: run.mode must be estimate or optimize");

    cfg.topology = file.get("topology.descriptor");
    cfg.T = to_ll(file.get("run.T"), "run.T");
    if (cfg.T < 1) throw param_error("config: run.T must be >= 1");
    cfg.n_trials = static_cast<int>(to_ll(file.get_or("run.n_trials", "1"), "run.n_trials"));
    if (cfg.n_trials < 1) throw param_error("config: run.n_trials must be >= 1");
    cfg.base_seed = static_cast<std::uint64_t>(to_ll(file.get_or("run.base_seed", "0"), "run.base_seed"));
    cfg.record_every = to_ll(file.get_or("run.record_every", "0"), "run.record_every");
    cfg.threads = static_cast<int>(to_ll(file.get_or("run.threads", "1"), "run.threads"));
    cfg.write_trials = to_bool(file.get_or("run.write_trials", "false"), "run.write_trials");
    cfg.output = file.get("run.output");

    const std::string proto = file.get_or("run.protocol", "gosta");
    if (proto == "gosta")
        cfg.protocol = Protocol::gosta;
    else if (proto == "gosta_async") {
        cfg.protocol = Protocol::gosta;
        cfg.protocol_async = true;
    } else if (proto == "u1")
        cfg.protocol = Protocol::u1;
    else if (proto == "u2")
        cfg.protocol = Protocol::u2;
    else
        throw param_error("config: run.protocol must be gosta, gosta_async, u1 or u2");
    cfg.kernel = file.get_or("run.kernel", "product");

    cfg.optimizer = file.get_or("run.optimizer", "sync");
    if (cfg.optimizer != "sync" && cfg.optimizer != "async" && cfg.optimizer != "baseline")
        throw param_error("config: run.optimizer must be sync, async or baseline");
    cfg.objective = file.get_or("run.objective", "auc");
    cfg.metric_b = to_dbl(file.get_or("run.metric_b", "1"), "run.metric_b");
    const std::string hinge = file.get_or("run.hinge", "paper");
    if (hinge == "plus")
        cfg.hinge_plus = true;
    else if (hinge != "paper")
        throw param_error("config: run.hinge must be paper or plus");
    cfg.record_bias = to_bool(file.get_or("run.record_bias", "false"), "run.record_bias");
    cfg.track_auc = to_bool(file.get_or("run.track_auc", "false"), "run.track_auc");

    cfg.sched_a = to_dbl(file.get_or("schedule.a", "0.001"), "schedule.a");
    cfg.sched_alpha = to_dbl(file.get_or("schedule.alpha", "-0.5"), "schedule.alpha");

    cfg.psi = file.get_or("projection.kind", "none");
    if (cfg.psi != "none" && cfg.psi != "ball" && cfg.psi != "psd")
        throw param_error("config: projection.kind must be none, ball or psd");
    cfg.psi_radius = to_dbl(file.get_or("projection.radius", "0"), "projection.radius");

    cfg.data_source = file.get("data.source");
    if (cfg.data_source == "csv") {
        cfg.csv_path = file.get("data.path");
        cfg.csv_options.has_header = to_bool(file.get_or("data.has_header", "false"), "data.has_header");
        cfg.csv_options.id_column =
            static_cast<int>(to_ll(file.get_or("data.id_column", "-1"), "data.id_column"));
        cfg.csv_options.label_column =
            static_cast<int>(to_ll(file.get_or("data.label_column", "-1"), "data.label_column"));
        cfg.csv_options.label_map = parse_label_map(file.get_or("data.label_map", ""));
    } else if (cfg.data_source == "synthetic") {
        cfg.mixture.n = static_cast<int>(to_ll(file.get_or("data.n", "1000"), "data.n"));
        cfg.mixture.classes = static_cast<int>(to_ll(file.get_or("data.classes", "10"), "data.classes"));
        cfg.mixture.dim = static_cast<int>(to_ll(file.get_or("data.dim", "40"), "data.dim"));
        cfg.mixture.subspace =
            static_cast<int>(to_ll(file.get_or("data.subspace", "5"), "data.subspace"));
        cfg.mixture.mean_scale = to_dbl(file.get_or("data.mean_scale", "3"), "data.mean_scale");
        cfg.mixture.sigma = to_dbl(file.get_or("data.sigma", "1"), "data.sigma");
        cfg.mixture.seed = static_cast<std::uint64_t>(to_ll(file.get_or("data.seed", "1"), "data.seed"));
        cfg.binarize = file.get_or("data.binarize", "none") == "parity";
    } else if (cfg.data_source == "toy_auc") {
        cfg.toy_n = static_cast<int>(to_ll(file.get_or("data.n", "20"), "data.n"));
        cfg.toy_dim = static_cast<int>(to_ll(file.get_or("data.dim", "2"), "data.dim"));
        cfg.data_seed = static_cast<std::uint64_t>(to_ll(file.get_or("data.seed", "1"), "data.seed"));
    } else {
        throw param_error("config: data.source must be csv, synthetic or toy_auc");
    }
    return cfg;
}

Dataset synth_mixture(const SyntheticMixtureSpec& spec) {
    if (spec.n < 1 || spec.classes < 1 || spec.dim < 1)
        throw param_error("synth_mixture: n, classes, dim must be positive");
    if (spec.subspace > spec.dim)
        throw param_error("synth_mixture: subspace dim exceeds ambient dim");
    Rng rng(spec.seed);
    auto means_rng = rng.child(0);
    std::vector<Vec> means(spec.classes, Vec(spec.dim, 0.0));
    for (int c = 0; c < spec.classes; ++c)
        for (int k = 0; k < spec.subspace; ++k)
            means[c][k] = spec.mean_scale * means_rng.next_normal();

    std::vector<std::vector<double>> points;
    std::vector<double> labels;
    points.reserve(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        const int c = i % spec.classes;  // balanced classes
        auto pt_rng = rng.child(static_cast<std::uint64_t>(i) + 1);
        std::vector<double> x(spec.dim);
        for (int k = 0; k < spec.dim; ++k)
            x[k] = means[c][k] + spec.sigma * pt_rng.next_normal();
        points.push_back(std::move(x));
        labels.push_back(static_cast<double>(c));
    }
    return make_dataset(std::move(points), std::move(labels));
}

Dataset binarize_parity(const Dataset& data) {
    Dataset out = data;
    for (double& l : out.labels) {
        long long c = static_cast<long long>(std::llround(l));
        l = (c % 2 == 0) ? -1.0 : 1.0;
    }
    return out;
}

Dataset toy_auc_dataset(int n, int dim, std::uint64_t seed) {
    if (n < 2 || dim < 1) throw param_error("toy_auc_dataset: need n >= 2, dim >= 1");
    Rng rng(seed);
    std::vector<std::vector<double>> points;
    std::vector<double> labels;
    const int half = n / 2;
    for (int i = 0; i < n; ++i) {
        const double label = (i < half) ? -1.0 : 1.0;  // ordered by label
        auto pt = rng.child(static_cast<std::uint64_t>(i));
        std::vector<double> x(dim);
        x[0] = 1.2 * label + pt.next_normal();
        for (int k = 1; k < dim; ++k) x[k] = pt.next_normal();
        points.push_back(std::move(x));
        labels.push_back(label);
    }
    return make_dataset(std::move(points), std::move(labels));
}

Dataset load_experiment_dataset(const ExperimentConfig& cfg, int* dropped) {
    if (dropped) *dropped = 0;
    if (cfg.data_source == "csv") {
        LoadedCsv loaded = load_csv(cfg.csv_path, cfg.csv_options);
        if (dropped) *dropped = loaded.dropped_rows;
        return loaded.data;
    }
    if (cfg.data_source == "synthetic") {
        Dataset d = synth_mixture(cfg.mixture);
        return cfg.binarize ? binarize_parity(d) : d;
    }
    return toy_auc_dataset(cfg.toy_n, cfg.toy_dim, cfg.data_seed);
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    const int nt = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < nt; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += nt) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

PairKernel kernel_by_name(const std::string& name) {
    if (name == "product") return product_kernel();
    if (name == "variance") return variance_kernel();
    if (name == "cluster_scatter") return cluster_scatter_kernel();
    throw param_error("config: unknown kernel '" + name + "'");
}

std::unique_ptr<PairwiseObjective> objective_by_name(const ExperimentConfig& cfg,
                                                     const Dataset& data) {
    if (cfg.objective == "auc") {
        if (!data.has_labels()) throw data_error("objective auc: dataset has no labels");
        return std::make_unique<AucLogistic>();
    }
    if (cfg.objective == "metric") {
        if (!data.has_labels()) throw data_error("objective metric: dataset has no labels");
        return std::make_unique<MetricHinge>(cfg.metric_b, cfg.hinge_plus);
    }
    if (cfg.objective == "ranking") {
        if (!data.has_labels()) throw data_error("objective ranking: dataset has no labels");
        return std::make_unique<RankingLogistic>();
    }
    if (cfg.objective == "zero") return std::make_unique<ZeroObjective>(data.dim);
    throw param_error("config: unknown objective '" + cfg.objective + "'");
}

constexpr double kSafetyRadius = 1e6;

ProjectionSpec projection_of(const ExperimentConfig& cfg, const Dataset& data) {
    if (cfg.psi == "ball") return ProjectionSpec::ball(cfg.psi_radius);
    if (cfg.psi == "psd") return ProjectionSpec::psd_cone(data.dim);
    // no explicit regularization: a wide safety ball, flagged if ever active
    return ProjectionSpec::ball(kSafetyRadius);
}

struct AggRow {
    long long t = 0;
    double mean_a = 0.0;  // risk (optimize) or err_l2 (estimate)
    double std_a = 0.0;
    double mean_bias = 0.0;
    double mean_auc = 0.0;
};

struct SingleRun {
    std::vector<AggRow> rows;       // per recorded step, per-trial values in mean_a etc.
    bool safety_ball_active = false;
};

std::vector<AggRow> aggregate_rows(const std::vector<SingleRun>& trials) {
    if (trials.empty()) return {};
    const std::size_t steps = trials[0].rows.size();
    std::vector<AggRow> agg(steps);
    const double n = static_cast<double>(trials.size());
    for (std::size_t s = 0; s < steps; ++s) {
        double sum = 0.0, sumsq = 0.0, bias = 0.0, aucv = 0.0;
        for (const auto& tr : trials) {
            if (tr.rows.size() != steps)
                throw numeric_error("experiment: trials recorded different step counts");
            sum += tr.rows[s].mean_a;
            sumsq += tr.rows[s].mean_a * tr.rows[s].mean_a;
            bias += tr.rows[s].mean_bias;
            aucv += tr.rows[s].mean_auc;
        }
        agg[s].t = trials[0].rows[s].t;
        agg[s].mean_a = sum / n;
        double var = trials.size() > 1
                         ? std::max(0.0, (sumsq - n * agg[s].mean_a * agg[s].mean_a) / (n - 1.0))
                         : 0.0;
        agg[s].std_a = std::sqrt(var);
        agg[s].mean_bias = bias / n;
        agg[s].mean_auc = aucv / n;
    }
    return agg;
}

struct TopoRun {
    std::string descriptor;
    std::vector<AggRow> agg;
    std::vector<std::string> notes;
    Graph graph;
    bool safety_ball_warn = false;
};

[[noreturn]] void rethrow_with_seed(std::uint64_t seed) {
    const std::string tag = "trial seed " + std::to_string(seed) + ": ";
    try {
        throw;
    } catch (const param_error& e) {
        throw param_error(tag + e.what());
    } catch (const data_error& e) {
        throw data_error(tag + e.what());
    } catch (const std::exception& e) {
        throw numeric_error(tag + e.what());
    }
}

TopoRun run_one_topology(const ExperimentConfig& cfg, const std::string& descriptor,
                         const Dataset& data, std::vector<SingleRun>* raw_out) {
    TopoRun out;
    out.descriptor = descriptor;
    out.graph = parse_topology(descriptor, &out.notes);
    if (out.graph.n != data.n)
        throw param_error("experiment: topology has " + std::to_string(out.graph.n) +
                          " nodes but dataset has " + std::to_string(data.n));

    std::vector<SingleRun> trials(cfg.n_trials);

    if (cfg.mode == RunMode::estimate) {
        PairKernel kernel = kernel_by_name(cfg.kernel);
        KernelMatrix km = kernel_matrix(kernel, data);
        parallel_for(cfg.n_trials, cfg.threads, [&](int k) {
            std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(k);
            try {
                Trajectory traj;
                if (cfg.protocol_async)
                    traj = gosta_async(out.graph, km, cfg.T, seed, cfg.record_every);
                else if (cfg.protocol == Protocol::gosta)
                    traj = gosta_sync(out.graph, km, cfg.T, seed, cfg.record_every);
                else if (cfg.protocol == Protocol::u1)
                    traj = u1_gossip(out.graph, km, cfg.T, seed, cfg.record_every);
                else
                    traj = u2_gossip(out.graph, km, cfg.T, seed, cfg.record_every);
                SingleRun run;
                for (const auto& pt : traj.points)
                    run.rows.push_back({pt.t, pt.err_l2, 0.0, 0.0, 0.0});
                trials[k] = std::move(run);
            } catch (...) {
                rethrow_with_seed(seed);
            }
        });
    } else {
        auto obj = objective_by_name(cfg, data);
        StepSchedule sched(cfg.sched_a, cfg.sched_alpha);
        ProjectionSpec psi = projection_of(cfg, data);
        if (cfg.track_auc && obj->param_dim(data) != data.dim)
            throw param_error("experiment: track_auc requires a linear-score objective");
        OptOptions opts;
        opts.record_every = cfg.record_every;
        opts.record_bias = cfg.record_bias;
        opts.track_auc = cfg.track_auc;
        parallel_for(cfg.n_trials, cfg.threads, [&](int k) {
            std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(k);
            try {
                OptResult res;
                if (cfg.optimizer == "sync")
                    res = gossip_pairwise_da_sync(out.graph, *obj, data, sched, psi, cfg.T, seed,
                                                  opts);
                else if (cfg.optimizer == "baseline")
                    res = unbiased_baseline_sync(out.graph, *obj, data, sched, psi, cfg.T, seed,
                                                 opts);
                else
                    res = gossip_pairwise_da_async(out.graph, *obj, data, sched, psi, cfg.T, seed,
                                                   opts);
                SingleRun run;
                for (const auto& pt : res.points)
                    run.rows.push_back(
                        {pt.t, pt.risk_mean, pt.risk_std, pt.bias_inner, pt.auc_mean});
                if (cfg.psi == "none") {
                    for (const auto& th : res.final_state.theta)
                        if (norm2(th) >= 0.999 * kSafetyRadius) run.safety_ball_active = true;
                }
                trials[k] = std::move(run);
            } catch (...) {
                rethrow_with_seed(seed);
            }
        });
    }

    for (const auto& tr : trials)
        if (tr.safety_ball_active) out.safety_ball_warn = true;
    out.agg = aggregate_rows(trials);
    if (raw_out) *raw_out = std::move(trials);
    return out;
}

void write_aggregate_csv(const std::string& path, RunMode mode, const std::vector<TopoRun>& runs,
                         bool sweep) {
    std::ofstream outf(path);
    if (!outf) throw data_error("experiment: cannot write '" + path + "'");
    if (mode == RunMode::optimize) {
        outf << (sweep ? "topology," : "") << "t,mean_risk,std_risk,mean_bias_inner,mean_auc\n";
        for (const auto& run : runs)
            for (const auto& row : run.agg) {
                if (sweep) outf << run.descriptor << ',';
                outf << row.t << ',' << format_double(row.mean_a) << ','
                     << format_double(row.std_a) << ',' << format_double(row.mean_bias) << ','
                     << format_double(row.mean_auc) << '\n';
            }
    } else {
        outf << (sweep ? "topology," : "") << "t,mean_err_l2,std_err_l2\n";
        for (const auto& run : runs)
            for (const auto& row : run.agg) {
                if (sweep) outf << run.descriptor << ',';
                outf << row.t << ',' << format_double(row.mean_a) << ','
                     << format_double(row.std_a) << '\n';
            }
    }
}

}  // namespace

ExperimentOutputs run_experiment(const ExperimentConfig& cfg, const std::vector<std::string>& sweep) {
    const auto t_start = std::chrono::steady_clock::now();
    ExperimentOutputs outputs;

    int dropped = 0;
    Dataset data = load_experiment_dataset(cfg, &dropped);

    std::vector<std::string> descriptors = sweep.empty()
                                               ? std::vector<std::string>{cfg.topology}
                                               : sweep;
    std::vector<TopoRun> runs;
    std::vector<std::vector<SingleRun>> raw(descriptors.size());
    for (std::size_t d = 0; d < descriptors.size(); ++d)
        runs.push_back(run_one_topology(cfg, descriptors[d], data,
                                        cfg.write_trials ? &raw[d] : nullptr));

    const bool sweeping = !sweep.empty();
    outputs.aggregate_csv = cfg.output + (sweeping ? "_sweep.csv" : "_aggregate.csv");
    write_aggregate_csv(outputs.aggregate_csv, cfg.mode, runs, sweeping);

    if (cfg.data_source != "csv") {
        outputs.dataset_csv = cfg.output + "_dataset.csv";
        write_dataset_csv(outputs.dataset_csv, data);
    }

    if (cfg.write_trials) {
        for (std::size_t d = 0; d < descriptors.size(); ++d) {
            for (std::size_t k = 0; k < raw[d].size(); ++k) {
                std::string path = cfg.output + "_trial" +
                                   (sweeping ? "_" + std::to_string(d) + "_" : "") +
                                   std::to_string(k) + ".csv";
                std::ofstream tf(path);
                if (!tf) throw data_error("experiment: cannot write '" + path + "'");
                tf << "t,value,std,bias_inner,auc\n";
                for (const auto& row : raw[d][k].rows)
                    tf << row.t << ',' << format_double(row.mean_a) << ','
                       << format_double(row.std_a) << ',' << format_double(row.mean_bias) << ','
                       << format_double(row.mean_auc) << '\n';
                outputs.trial_csvs.push_back(path);
            }
        }
    }

    const auto t_end = std::chrono::steady_clock::now();
    const double wall = std::chrono::duration<double>(t_end - t_start).count();

    outputs.manifest = cfg.output + "_manifest.txt";
    std::ofstream mf(outputs.manifest);
    if (!mf) throw data_error("experiment: cannot write '" + outputs.manifest + "'");
    mf << "mode = " << (cfg.mode == RunMode::estimate ? "estimate" : "optimize") << '\n';
    mf << "T = " << cfg.T << '\n';
    mf << "n_trials = " << cfg.n_trials << '\n';
    mf << "base_seed = " << cfg.base_seed << '\n';
    mf << "seeds = " << cfg.base_seed << ".." << cfg.base_seed + cfg.n_trials - 1 << '\n';
    mf << "record_every = " << cfg.record_every << '\n';
    mf << "threads = " << cfg.threads << '\n';
    if (cfg.mode == RunMode::estimate) {
        mf << "protocol = " << (cfg.protocol_async ? "gosta_async" : protocol_name(cfg.protocol))
           << '\n';
        mf << "kernel = " << cfg.kernel << '\n';
    } else {
        mf << "optimizer = " << cfg.optimizer << '\n';
        mf << "objective = " << cfg.objective << '\n';
        mf << "schedule.a = " << format_double(cfg.sched_a) << '\n';
        mf << "schedule.alpha = " << format_double(cfg.sched_alpha) << '\n';
        mf << "projection = " << cfg.psi << '\n';
    }
    mf << "data.source = " << cfg.data_source << '\n';
    mf << "data.n = " << data.n << '\n';
    mf << "data.dim = " << data.dim << '\n';
    if (cfg.data_source == "csv") mf << "data.dropped_rows = " << dropped << '\n';
    for (const auto& run : runs) {
        const std::string p = "topology[" + run.descriptor + "].";
        Spectrum spec = spectrum(run.graph);
        DistanceTable dist = distances(run.graph);
        mf << p << "n = " << run.graph.n << '\n';
        mf << p << "edges = " << run.graph.edge_count() << '\n';
        mf << p << "spectral_gap = " << format_double(spec.spectral_gap) << '\n';
        mf << p << "gap_over_edges = "
           << format_double(spec.spectral_gap / run.graph.edge_count()) << '\n';
        mf << p << "diameter = " << dist.diameter << '\n';
        mf << p << "bipartite = " << (is_bipartite(run.graph) ? "true" : "false") << '\n';
        for (const auto& note : run.notes) mf << p << "note = " << note << '\n';
        if (run.safety_ball_warn)
            mf << p << "warning = safety ball radius " << format_double(kSafetyRadius)
               << " was active; results are clipped\n";
    }
    mf << "wall_time_s = " << format_double(wall) << '\n';
    return outputs;
}

}  // namespace pg
