#ifndef PG_CSVIO_HPP
#define PG_CSVIO_HPP

#include <string>
#include <utility>
#include <vector>

#include "pg/dualavg.hpp"
#include "pg/estimation.hpp"
#include "pg/pairwise.hpp"

namespace pg {

struct CsvOptions {
    bool has_header = false;
    int id_column = -1;     // dropped from features; -1 = none
    int label_column = -1;  // -1 = last column, -2 = no labels
    std::vector<std::pair<double, double>> label_map;  // raw -> mapped, empty = keep raw
};

struct LoadedCsv {
    Dataset data;
    int dropped_rows = 0;  // rows removed for missing cells ('?' or empty)
};

/// Numeric CSV loader: one row per point, optional id and label columns.
/// Rows containing missing cells are dropped and counted; any other parse
/// failure raises data_error with the row and column. A non-empty label_map
/// must cover every label value seen.
LoadedCsv load_csv(const std::string& path, const CsvOptions& opts);

/// `label_map` grammar used by CLI/config: "2:-1,4:1".
std::vector<std::pair<double, double>> parse_label_map(const std::string& text);

void write_dataset_csv(const std::string& path, const Dataset& data);

/// Columns: t, node_err_l2, mean_z, std_z, seed, protocol.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Columns: t, node_id, risk, risk_std, bias_inner, auc, seed (single "mean"
/// row per recorded step).
void write_opt_csv(const std::string& path, const OptResult& result, bool has_auc);

std::string format_double(double v);  // shortest round-trip-stable form

}  // namespace pg

#endif
