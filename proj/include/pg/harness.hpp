#ifndef PG_HARNESS_HPP
#define PG_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pg/csvio.hpp"
#include "pg/dualavg.hpp"
#include "pg/estimation.hpp"
#include "pg/graph.hpp"

namespace pg {

/// Flat key=value config with [section] headers; comments start with '#'.
/// Keys are addressed as "section.key". Unknown keys are rejected by
/// ExperimentConfig::parse so typos fail loudly.
class ConfigFile {
  public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_text(const std::string& text);

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;  // param_error if absent
    std::string get_or(const std::string& key, const std::string& fallback) const;
    const std::map<std::string, std::string>& entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
};

struct SyntheticMixtureSpec {
    int n = 1000;
    int classes = 10;
    int dim = 40;
    int subspace = 5;
    double mean_scale = 3.0;
    double sigma = 1.0;
    std::uint64_t seed = 0;
};

/// Gaussian mixture with class means confined to the leading `subspace`
/// coordinates and shared isotropic covariance; balanced classes, labels are
/// class ids. Deterministic in the seed.
Dataset synth_mixture(const SyntheticMixtureSpec& spec);

/// Maps integer class ids to -1/+1 by parity, for AUC runs on mixture data.
Dataset binarize_parity(const Dataset& data);

/// Deterministic two-cluster binary toy for AUC experiments: n points in
/// dimension dim, labels +-1, Gaussian clusters with some overlap. Points
/// are ordered by label, which makes poorly mixing topologies visibly slow.
Dataset toy_auc_dataset(int n, int dim, std::uint64_t seed);

enum class RunMode { estimate, optimize };

struct ExperimentConfig {
    RunMode mode = RunMode::optimize;
    std::string topology;

    // estimate
    Protocol protocol = Protocol::gosta;
    bool protocol_async = false;
    std::string kernel = "product";

    // optimize
    std::string optimizer = "sync";  // sync | async | baseline
    std::string objective = "auc";   // auc | metric | ranking | zero
    double metric_b = 1.0;
    bool hinge_plus = false;
    double sched_a = 1e-3;
    double sched_alpha = -0.5;
    std::string psi = "none";  // none | ball | psd
    double psi_radius = 0.0;
    bool record_bias = false;
    bool track_auc = false;

    long long T = 1;
    int n_trials = 1;
    std::uint64_t base_seed = 0;
    long long record_every = 0;
    int threads = 1;
    bool write_trials = false;
    std::string output;

    // data
    std::string data_source;  // csv | synthetic | toy_auc
    std::string csv_path;
    CsvOptions csv_options;
    SyntheticMixtureSpec mixture;
    bool binarize = false;
    int toy_n = 20;
    int toy_dim = 2;
    std::uint64_t data_seed = 1;

    static ExperimentConfig parse(const ConfigFile& file);
};

struct ExperimentOutputs {
    std::string aggregate_csv;
    std::string manifest;
    std::vector<std::string> trial_csvs;
    std::string dataset_csv;
};

/// Runs n_trials seeded trials (optionally across threads; outputs do not
/// depend on the thread count), writes the per-step aggregate CSV and a
/// manifest echoing the config and the graph spectral report. With a
/// non-empty sweep list the same config is run over each topology into a
/// single long-format CSV.
ExperimentOutputs run_experiment(const ExperimentConfig& cfg,
                                 const std::vector<std::string>& sweep = {});

Dataset load_experiment_dataset(const ExperimentConfig& cfg, int* dropped = nullptr);

/// Chunked parallel loop; fn(i) for i in [0, count). Serial when threads<=1.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace pg

#endif
