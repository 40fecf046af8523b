#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "supercliff/experiments.h"

namespace supercliff::report {

inline constexpr const char *kCodeVersion = "0.1.0";

// Fixed-precision float rendering shared by every CSV/JSON writer, so a rerun
// with identical inputs reproduces outputs byte for byte.
std::string format_double(double v);

// Columns: t,mean,stderr,n
std::string entropy_curve_csv(const EntropyCurve &curve);

struct ScramblingTimeRow {
    size_t n = 0;
    std::optional<double> t_star;
    double epsilon = 0.0;
    Fraction m;
    std::string convention;  // "averaged" or "per_realization"
    std::optional<double> t_star_std_err;
    size_t n_unsaturated = 0;
    size_t n_realizations = 0;
};

// Columns: n,t_star,epsilon,m,convention,t_star_std_err,n_unsaturated,n_realizations
// An unsaturated outcome leaves t_star empty rather than clamping it.
std::string scrambling_times_csv(const std::vector<ScramblingTimeRow> &rows);

// Columns: t,mean_f,fraction_off_plateau,k_histogram
// The histogram cell is a quoted JSON object: {"zero":c,"k":count,...} with
// k ascending.
std::string otoc_trace_csv(const OtocTrace &trace);

// Sidecar written next to each CSV: the resolved ensemble spec plus run
// metadata (and the plateau value for correlator runs).
std::string run_meta_json(const EnsembleSpec &spec,
                          std::optional<double> plateau = std::nullopt,
                          const std::string &v_gates = "",
                          const std::string &w0 = "");

struct RunMeta {
    EnsembleSpec spec;
    std::optional<double> plateau;
};

RunMeta read_run_meta(const std::filesystem::path &path);

EntropyCurve read_entropy_curve_csv(const std::filesystem::path &csv_path,
                                    const std::filesystem::path &meta_path);

std::vector<ScramblingTimeRow> read_scrambling_times_csv(const std::filesystem::path &path);

// Writes via a temporary file in the same directory plus rename, so partial
// files are never observed.
void write_file_atomic(const std::filesystem::path &path, const std::string &content);

std::string read_file(const std::filesystem::path &path);

}  // namespace supercliff::report
