#include "pg/csvio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pg/errors.hpp"

namespace pg {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, ',')) cells.push_back(cur);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool is_missing(const std::string& cell) {
    if (cell.empty()) return true;
    std::string t;
    for (char c : cell)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    return t.empty() || t == "?";
}

double parse_cell(const std::string& cell, int row, int col) {
    try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
        if (pos != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw data_error("csv: cannot parse cell at row " + std::to_string(row) + ", column " +
                         std::to_string(col) + ": '" + cell + "'");
    }
}

}  // namespace

LoadedCsv load_csv(const std::string& path, const CsvOptions& opts) {
    std::ifstream in(path);
    if (!in) throw data_error("csv: cannot open '" + path + "'");
    LoadedCsv out;
    std::vector<std::vector<double>> points;
    std::vector<double> labels;
    std::string line;
    int row = 0;
    bool skipped_header = !opts.has_header;
    int ncols = -1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        if (!skipped_header) {
            skipped_header = true;
            continue;
        }
        auto cells = split_cells(line);
        if (ncols < 0) ncols = static_cast<int>(cells.size());
        if (static_cast<int>(cells.size()) != ncols)
            throw data_error("csv: row " + std::to_string(row) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(ncols));
        bool missing = false;
        for (const auto& c : cells)
            if (is_missing(c)) {
                missing = true;
                break;
            }
        if (missing) {
            ++out.dropped_rows;
            continue;
        }
        const int label_col =
            (opts.label_column == -1) ? ncols - 1 : opts.label_column;
        std::vector<double> feat;
        double label = 0.0;
        bool have_label = opts.label_column != -2;
        for (int c = 0; c < ncols; ++c) {
            if (c == opts.id_column) continue;
            double v = parse_cell(cells[c], row, c);
            if (have_label && c == label_col)
                label = v;
            else
                feat.push_back(v);
        }
        if (feat.empty()) throw data_error("csv: no feature columns left at row " + std::to_string(row));
        points.push_back(std::move(feat));
        if (have_label) labels.push_back(label);
    }
    if (points.empty()) throw data_error("csv: no data rows in '" + path + "'");
    if (!opts.label_map.empty()) {
        for (double& l : labels) {
            bool found = false;
            for (auto [raw, mapped] : opts.label_map) {
                if (l == raw) {
                    l = mapped;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw data_error("csv: label value " + format_double(l) + " missing from label_map");
        }
    }
    out.data = make_dataset(std::move(points), std::move(labels));
    return out;
}

std::vector<std::pair<double, double>> parse_label_map(const std::string& text) {
    std::vector<std::pair<double, double>> map;
    if (text.empty()) return map;
    std::istringstream in(text);
    std::string entry;
    while (std::getline(in, entry, ',')) {
        auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw param_error("label_map: expected raw:mapped, got '" + entry + "'");
        try {
            map.emplace_back(std::stod(entry.substr(0, colon)), std::stod(entry.substr(colon + 1)));
        } catch (const std::exception&) {
            throw param_error("label_map: bad number in '" + entry + "'");
        }
    }
    return map;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw data_error("csv: cannot write '" + path + "'");
    for (int i = 0; i < data.n; ++i) {
        auto x = data.point(i);
        for (int k = 0; k < data.dim; ++k) {
            if (k) out << ',';
            out << format_double(x[k]);
        }
        if (data.has_labels()) out << ',' << format_double(data.label(i));
        out << '\n';
    }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw data_error("csv: cannot write '" + path + "'");
    out << "t,node_err_l2,mean_z,std_z,seed,protocol\n";
    for (const auto& pt : traj.points) {
        out << pt.t << ',' << format_double(pt.err_l2) << ',' << format_double(pt.mean_z) << ','
            << format_double(pt.std_z) << ',' << traj.seed << ',' << traj.protocol << '\n';
    }
}

void write_opt_csv(const std::string& path, const OptResult& result, bool has_auc) {
    std::ofstream out(path);
    if (!out) throw data_error("csv: cannot write '" + path + "'");
    out << "t,node_id,risk,risk_std,bias_inner,auc,seed\n";
    for (const auto& pt : result.points) {
        out << pt.t << ",mean," << format_double(pt.risk_mean) << ','
            << format_double(pt.risk_std) << ',' << format_double(pt.bias_inner) << ',';
        if (has_auc) out << format_double(pt.auc_mean);
        out << ',' << result.seed << '\n';
    }
}

}  // namespace pg
