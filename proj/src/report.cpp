#include "supercliff/report.h"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace supercliff::report {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string entropy_curve_csv(const EntropyCurve &curve) {
    std::string out = "t,mean,stderr,n\n";
    for (size_t i = 0; i < curve.times.size(); i++) {
        out += std::to_string(curve.times[i]);
        out += ',';
        out += format_double(curve.mean_entropy[i]);
        out += ',';
        out += format_double(curve.std_err[i]);
        out += ',';
        out += std::to_string(curve.n_realizations);
        out += '\n';
    }
    return out;
}

std::string scrambling_times_csv(const std::vector<ScramblingTimeRow> &rows) {
    std::string out = "n,t_star,epsilon,m,convention,t_star_std_err,n_unsaturated,n_realizations\n";
    for (const auto &row : rows) {
        out += std::to_string(row.n);
        out += ',';
        if (row.t_star) {
            out += format_double(*row.t_star);
        }
        out += ',';
        out += format_double(row.epsilon);
        out += ',';
        out += row.m.to_string();
        out += ',';
        out += row.convention;
        out += ',';
        if (row.t_star_std_err) {
            out += format_double(*row.t_star_std_err);
        }
        out += ',';
        out += std::to_string(row.n_unsaturated);
        out += ',';
        out += std::to_string(row.n_realizations);
        out += '\n';
    }
    return out;
}

std::string otoc_trace_csv(const OtocTrace &trace) {
    std::string out = "t,mean_f,fraction_off_plateau,k_histogram\n";
    std::vector<double> mean = trace.mean_f();
    std::vector<double> off = trace.fraction_off_plateau();
    for (size_t i = 0; i < trace.times.size(); i++) {
        std::string hist = "{\"zero\":" + std::to_string(trace.zero_counts[i]);
        for (const auto &[k, count] : trace.k_counts[i]) {
            hist += ",\"" + std::to_string(k) + "\":" + std::to_string(count);
        }
        hist += "}";
        // CSV-quote the JSON cell, doubling interior quotes
        std::string quoted = "\"";
        for (char c : hist) {
            quoted += c;
            if (c == '"') {
                quoted += '"';
            }
        }
        quoted += '"';

        out += std::to_string(trace.times[i]);
        out += ',';
        out += format_double(mean[i]);
        out += ',';
        out += format_double(off[i]);
        out += ',';
        out += quoted;
        out += '\n';
    }
    return out;
}

std::string run_meta_json(const EnsembleSpec &spec,
                          std::optional<double> plateau,
                          const std::string &v_gates,
                          const std::string &w0) {
    nlohmann::json j{
        {"schema", "supercliff-run-meta"},
        {"version", 1},
        {"code_version", kCodeVersion},
        {"spec", nlohmann::json::parse(spec.to_json())},
    };
    if (plateau) {
        j["plateau"] = *plateau;
        j["v_gates"] = v_gates;
        j["w0"] = w0;
    }
    return j.dump(2) + "\n";
}

RunMeta read_run_meta(const std::filesystem::path &path) {
    nlohmann::json j = nlohmann::json::parse(read_file(path));
    if (j.value("schema", "") != "supercliff-run-meta") {
        throw std::invalid_argument("not a run-meta file: " + path.string());
    }
    RunMeta meta;
    meta.spec = EnsembleSpec::from_json(j.at("spec").dump());
    if (j.contains("plateau")) {
        meta.plateau = j.at("plateau").get<double>();
    }
    return meta;
}

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); i++) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                i++;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path &path,
                                               const std::string &expected_header) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != expected_header) {
        throw std::invalid_argument("unexpected CSV header in " + path.string());
    }
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            rows.push_back(split_csv_line(line));
        }
    }
    return rows;
}

}  // namespace

EntropyCurve read_entropy_curve_csv(const std::filesystem::path &csv_path,
                                    const std::filesystem::path &meta_path) {
    EntropyCurve curve;
    curve.spec = read_run_meta(meta_path).spec;
    for (const auto &row : read_csv(csv_path, "t,mean,stderr,n")) {
        curve.times.push_back(std::stoull(row.at(0)));
        curve.mean_entropy.push_back(std::stod(row.at(1)));
        curve.std_err.push_back(std::stod(row.at(2)));
        curve.n_realizations = std::stoull(row.at(3));
    }
    return curve;
}

std::vector<ScramblingTimeRow> read_scrambling_times_csv(const std::filesystem::path &path) {
    std::vector<ScramblingTimeRow> rows;
    for (const auto &fields : read_csv(
             path, "n,t_star,epsilon,m,convention,t_star_std_err,n_unsaturated,n_realizations")) {
        ScramblingTimeRow row;
        row.n = std::stoull(fields.at(0));
        if (!fields.at(1).empty()) {
            row.t_star = std::stod(fields.at(1));
        }
        row.epsilon = std::stod(fields.at(2));
        row.m = Fraction::parse(fields.at(3));
        row.convention = fields.at(4);
        if (!fields.at(5).empty()) {
            row.t_star_std_err = std::stod(fields.at(5));
        }
        row.n_unsaturated = std::stoull(fields.at(6));
        row.n_realizations = std::stoull(fields.at(7));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_file_atomic(const std::filesystem::path &path, const std::string &content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace supercliff::report
