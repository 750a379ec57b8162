// pg: gossip protocol simulator and bound evaluator for pairwise objectives.
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pg/bounds.hpp"
#include "pg/csvio.hpp"
#include "pg/dualavg.hpp"
#include "pg/errors.hpp"
#include "pg/estimation.hpp"
#include "pg/graph.hpp"
#include "pg/harness.hpp"
#include "pg/losses.hpp"

namespace {

using namespace pg;

struct DataFlags {
    std::string csv_path;
    bool has_header = false;
    int id_column = -1;
    int label_column = -1;
    std::string label_map;
    bool synth = false;
    int toy_n = 0;
    int toy_dim = 2;
    std::uint64_t data_seed = 1;
};

void add_data_flags(CLI::App* cmd, DataFlags& flags) {
    cmd->add_option("--data", flags.csv_path, "dataset CSV path");
    cmd->add_flag("--has-header", flags.has_header, "CSV has a header line");
    cmd->add_option("--id-column", flags.id_column, "CSV id column to drop (-1 = none)");
    cmd->add_option("--label-column", flags.label_column,
                    "CSV label column (-1 = last, -2 = none)");
    cmd->add_option("--label-map", flags.label_map, "label map, e.g. \"2:-1,4:1\"");
    cmd->add_flag("--synth-mixture", flags.synth, "use the synthetic Gaussian mixture");
    cmd->add_option("--toy-auc", flags.toy_n, "use the binary AUC toy with this many points");
    cmd->add_option("--toy-dim", flags.toy_dim, "toy dataset dimension");
    cmd->add_option("--data-seed", flags.data_seed, "seed for generated datasets");
}

Dataset dataset_from_flags(const DataFlags& flags, bool binarize_mixture) {
    if (!flags.csv_path.empty()) {
        CsvOptions opts;
        opts.has_header = flags.has_header;
        opts.id_column = flags.id_column;
        opts.label_column = flags.label_column;
        opts.label_map = parse_label_map(flags.label_map);
        LoadedCsv loaded = load_csv(flags.csv_path, opts);
        if (loaded.dropped_rows > 0)
            std::cerr << "note: dropped " << loaded.dropped_rows
                      << " rows with missing values\n";
        return loaded.data;
    }
    if (flags.synth) {
        SyntheticMixtureSpec spec;
        spec.seed = flags.data_seed;
        Dataset d = synth_mixture(spec);
        return binarize_mixture ? binarize_parity(d) : d;
    }
    if (flags.toy_n > 0) return toy_auc_dataset(flags.toy_n, flags.toy_dim, flags.data_seed);
    throw param_error("no dataset given: use --data, --synth-mixture or --toy-auc");
}

void print_spectral_report(const Graph& g, const std::vector<std::string>& notes) {
    Spectrum spec = spectrum(g);
    DistanceTable dist = distances(g);
    std::cout << "n = " << g.n << '\n';
    std::cout << "edges = " << g.edge_count() << '\n';
    std::cout << "connected = " << (is_connected(g) ? "true" : "false") << '\n';
    std::cout << "bipartite = " << (is_bipartite(g) ? "true" : "false") << '\n';
    std::cout << "spectral_gap = " << format_double(spec.spectral_gap) << '\n';
    std::cout << "lambda_max = " << format_double(spec.eigenvalues.back()) << '\n';
    std::cout << "gap_over_edges = " << format_double(spec.spectral_gap / g.edge_count()) << '\n';
    if (is_connected(g)) {
        std::cout << "lambda2_w1 = " << format_double(transition(g, 1.0).lambda2) << '\n';
        std::cout << "lambda2_w2 = " << format_double(transition(g, 2.0).lambda2) << '\n';
    }
    std::cout << "diameter = " << dist.diameter << '\n';
    for (const auto& note : notes) std::cout << "note = " << note << '\n';
}

int run_cli(int argc, char** argv) {
    CLI::App app{"gossip simulation and bound evaluation for pairwise objectives"};
    app.require_subcommand(1);

    // --- spectral ---------------------------------------------------------
    auto* spectral = app.add_subcommand("spectral", "graph spectral report");
    std::string topo;
    spectral->add_option("--topology", topo, "topology descriptor")->required();

    // --- estimate ---------------------------------------------------------
    auto* estimate = app.add_subcommand("estimate", "run a U-statistic gossip protocol");
    std::string est_topo, est_protocol = "gosta", est_kernel = "product", est_out;
    long long est_T = 100, est_record = 1;
    std::uint64_t est_seed = 0;
    DataFlags est_data;
    estimate->add_option("--topology", est_topo, "topology descriptor")->required();
    estimate->add_option("--protocol", est_protocol, "gosta|gosta_async|u1|u2");
    estimate->add_option("--kernel", est_kernel, "product|variance|cluster_scatter");
    estimate->add_option("--T", est_T, "iterations")->required();
    estimate->add_option("--seed", est_seed, "seed");
    estimate->add_option("--record-every", est_record, "recording stride (<=0: final only)");
    estimate->add_option("--out", est_out, "trajectory CSV path");
    add_data_flags(estimate, est_data);

    // --- optimize ---------------------------------------------------------
    auto* optimize = app.add_subcommand("optimize", "run gossip dual averaging");
    std::string opt_topo, opt_mode = "sync", opt_objective = "auc", opt_psi = "none", opt_out;
    long long opt_T = 1000, opt_record = 0;
    std::uint64_t opt_seed = 0;
    double opt_a = 1e-3, opt_alpha = -0.5, opt_radius = 0.0, opt_b = 1.0;
    bool opt_bias = false, opt_auc = false, opt_hinge_plus = false;
    DataFlags opt_data;
    optimize->add_option("--topology", opt_topo, "topology descriptor")->required();
    optimize->add_option("--mode", opt_mode, "sync|async|baseline");
    optimize->add_option("--objective", opt_objective, "auc|metric|ranking|zero");
    optimize->add_option("--T", opt_T, "iterations")->required();
    optimize->add_option("--seed", opt_seed, "seed");
    optimize->add_option("--a", opt_a, "step scale: gamma(t) = a t^alpha");
    optimize->add_option("--alpha", opt_alpha, "step exponent in (-1,0)");
    optimize->add_option("--psi", opt_psi, "none|ball|psd");
    optimize->add_option("--radius", opt_radius, "ball radius");
    optimize->add_option("--metric-b", opt_b, "metric hinge margin");
    optimize->add_flag("--hinge-plus", opt_hinge_plus, "use max(0,u) instead of max(0,1-u)");
    optimize->add_option("--record-every", opt_record, "recording stride (<=0: final only)");
    optimize->add_flag("--record-bias", opt_bias, "record the bias term");
    optimize->add_flag("--track-auc", opt_auc, "record AUC of averaged iterates");
    optimize->add_option("--out", opt_out, "trajectory CSV path");
    add_data_flags(optimize, opt_data);

    // --- bounds -----------------------------------------------------------
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the optimization-side bounds");
    std::string bnd_topo;
    long long bnd_T = 100;
    double bnd_a = 1e-3, bnd_L = 1.0, bnd_dist0 = 1.0, bnd_eps = -1.0, bnd_R = -1.0, bnd_t = -1.0;
    bounds_cmd->add_option("--topology", bnd_topo, "topology descriptor")->required();
    bounds_cmd->add_option("--T", bnd_T, "horizon");
    bounds_cmd->add_option("--a", bnd_a, "step scale for gamma(t) = a/sqrt(t)");
    bounds_cmd->add_option("--L", bnd_L, "Lipschitz constant");
    bounds_cmd->add_option("--dist0", bnd_dist0, "||theta_0 - theta*||");
    bounds_cmd->add_option("--eps", bnd_eps, "mixing epsilon (default 1/T)");
    bounds_cmd->add_option("--R", bnd_R, "lower bound radius (default dist0)");
    bounds_cmd->add_option("--t", bnd_t, "lower bound time (default T)");

    // --- experiment -------------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "run a config-driven experiment");
    std::string exp_config, exp_sweep;
    experiment->add_option("--config", exp_config, "config file")->required();
    experiment->add_option("--sweep", exp_sweep, "comma-separated topology list");

    CLI11_PARSE(app, argc, argv);

    if (*spectral) {
        std::vector<std::string> notes;
        Graph g = parse_topology(topo, &notes);
        print_spectral_report(g, notes);
        return 0;
    }

    if (*estimate) {
        std::vector<std::string> notes;
        Graph g = parse_topology(est_topo, &notes);
        Dataset data = dataset_from_flags(est_data, est_kernel != "cluster_scatter");
        PairKernel kernel;
        if (est_kernel == "product")
            kernel = product_kernel();
        else if (est_kernel == "variance")
            kernel = variance_kernel();
        else if (est_kernel == "cluster_scatter")
            kernel = cluster_scatter_kernel();
        else
            throw param_error("unknown kernel '" + est_kernel + "'");
        KernelMatrix km = kernel_matrix(kernel, data);
        Trajectory traj;
        if (est_protocol == "gosta")
            traj = gosta_sync(g, km, est_T, est_seed, est_record);
        else if (est_protocol == "gosta_async")
            traj = gosta_async(g, km, est_T, est_seed, est_record);
        else if (est_protocol == "u1")
            traj = u1_gossip(g, km, est_T, est_seed, est_record);
        else if (est_protocol == "u2")
            traj = u2_gossip(g, km, est_T, est_seed, est_record);
        else
            throw param_error("unknown protocol '" + est_protocol + "'");
        if (!est_out.empty()) {
            write_trajectory_csv(est_out, traj);
        } else {
            std::cout << "t,node_err_l2,mean_z,std_z\n";
            for (const auto& pt : traj.points)
                std::cout << pt.t << ',' << format_double(pt.err_l2) << ','
                          << format_double(pt.mean_z) << ',' << format_double(pt.std_z) << '\n';
        }
        std::cout << "target_u_full = " << format_double(km.u_full) << '\n';
        return 0;
    }

    if (*optimize) {
        Graph g = parse_topology(opt_topo);
        Dataset data = dataset_from_flags(opt_data, true);
        std::unique_ptr<PairwiseObjective> obj;
        if (opt_objective == "auc")
            obj = std::make_unique<AucLogistic>();
        else if (opt_objective == "metric")
            obj = std::make_unique<MetricHinge>(opt_b, opt_hinge_plus);
        else if (opt_objective == "ranking")
            obj = std::make_unique<RankingLogistic>();
        else if (opt_objective == "zero")
            obj = std::make_unique<ZeroObjective>(data.dim);
        else
            throw param_error("unknown objective '" + opt_objective + "'");
        StepSchedule sched(opt_a, opt_alpha);
        ProjectionSpec psi = ProjectionSpec::ball(1e6);
        if (opt_psi == "ball")
            psi = ProjectionSpec::ball(opt_radius);
        else if (opt_psi == "psd")
            psi = ProjectionSpec::psd_cone(data.dim);
        else if (opt_psi != "none")
            throw param_error("unknown psi '" + opt_psi + "'");
        OptOptions opts;
        opts.record_every = opt_record;
        opts.record_bias = opt_bias;
        opts.track_auc = opt_auc;
        OptResult res;
        if (opt_mode == "sync")
            res = gossip_pairwise_da_sync(g, *obj, data, sched, psi, opt_T, opt_seed, opts);
        else if (opt_mode == "baseline")
            res = unbiased_baseline_sync(g, *obj, data, sched, psi, opt_T, opt_seed, opts);
        else if (opt_mode == "async")
            res = gossip_pairwise_da_async(g, *obj, data, sched, psi, opt_T, opt_seed, opts);
        else
            throw param_error("unknown mode '" + opt_mode + "'");
        if (!opt_out.empty()) {
            write_opt_csv(opt_out, res, opt_auc);
        } else {
            std::cout << "t,risk,risk_std,bias_inner,auc\n";
            for (const auto& pt : res.points)
                std::cout << pt.t << ',' << format_double(pt.risk_mean) << ','
                          << format_double(pt.risk_std) << ',' << format_double(pt.bias_inner)
                          << ',' << format_double(pt.auc_mean) << '\n';
        }
        return 0;
    }

    if (*bounds_cmd) {
        Graph g = parse_topology(bnd_topo);
        Spectrum spec = spectrum(g);
        const double eps = bnd_eps > 0 ? bnd_eps : 1.0 / static_cast<double>(bnd_T);
        const double radius = bnd_R > 0 ? bnd_R : bnd_dist0;
        const double lb_t = bnd_t >= 0 ? bnd_t : static_cast<double>(bnd_T);
        RateInputs in;
        in.T = bnd_T;
        in.sched = StepSchedule(bnd_a, -0.5);
        in.lipschitz = bnd_L;
        in.dist_to_opt = bnd_dist0;
        in.spectral_gap = spec.spectral_gap;
        in.nedges = g.edge_count();
        in.eps = eps;
        RateDecomposition rd = rate_bound_decomposition(in);
        auto [wi, wj] = worst_pair(g);
        const double dt = delta_tilde(g, wi, wj);
        std::cout << "n = " << g.n << '\n';
        std::cout << "edges = " << g.edge_count() << '\n';
        std::cout << "spectral_gap = " << format_double(spec.spectral_gap) << '\n';
        std::cout << "T = " << bnd_T << '\n';
        std::cout << "a = " << format_double(bnd_a) << '\n';
        std::cout << "L = " << format_double(bnd_L) << '\n';
        std::cout << "dist0 = " << format_double(bnd_dist0) << '\n';
        std::cout << "eps = " << format_double(eps) << '\n';
        std::cout << "c_of_graph = " << format_double(c_of_graph(g)) << '\n';
        std::cout << "C1 = " << format_double(rd.c1) << '\n';
        std::cout << "C2 = " << format_double(rd.c2) << '\n';
        std::cout << "tau_eps = " << format_double(mixing_time(g, eps)) << '\n';
        std::cout << "corollary = "
                  << format_double(rate_bound_corollary(bnd_T, bnd_a, g, bnd_L, bnd_dist0)) << '\n';
        std::cout << "worst_pair = (" << wi << "," << wj << ")\n";
        std::cout << "delta_tilde = " << format_double(dt) << '\n';
        std::cout << "lower_bound = " << format_double(lower_bound(radius, bnd_L, lb_t, dt))
                  << '\n';
        return 0;
    }

    if (*experiment) {
        ExperimentConfig cfg = ExperimentConfig::parse(ConfigFile::parse_file(exp_config));
        std::vector<std::string> sweep;
        if (!exp_sweep.empty()) {
            std::string cur;
            std::istringstream in(exp_sweep);
            while (std::getline(in, cur, ',')) sweep.push_back(cur);
        }
        ExperimentOutputs out = run_experiment(cfg, sweep);
        std::cout << "aggregate = " << out.aggregate_csv << '\n';
        std::cout << "manifest = " << out.manifest << '\n';
        if (!out.dataset_csv.empty()) std::cout << "dataset = " << out.dataset_csv << '\n';
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const param_error& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 2;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
