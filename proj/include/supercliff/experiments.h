#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "supercliff/ensembles.h"
#include "supercliff/otoc.h"
#include "supercliff/pauli.h"

namespace supercliff {

struct ExecutionPolicy {
    unsigned threads = 1;
};

// Raw per-realization entropy traces on the shared time grid
// {0, c, 2c, ...} <= max_t. entropies[r][i] is realization r at times[i].
struct RealizationCurves {
    EnsembleSpec spec;  // resolved
    std::vector<size_t> times;
    std::vector<std::vector<int>> entropies;
};

// Ensemble-averaged entropy curve with standard errors.
struct EntropyCurve {
    EnsembleSpec spec;  // resolved
    std::vector<size_t> times;
    std::vector<double> mean_entropy;
    std::vector<double> std_err;
    size_t n_realizations = 0;
};

RealizationCurves run_realization_curves(const EnsembleSpec &spec, ExecutionPolicy exec = {});
EntropyCurve aggregate_curves(const RealizationCurves &curves);
EntropyCurve run_entropy_ensemble(const EnsembleSpec &spec, ExecutionPolicy exec = {});

// Smallest recorded time with value >= s_sat - epsilon, or nullopt when the
// curve never gets there within the horizon (never silently clamped).
std::optional<double> first_time_within(std::span<const size_t> times,
                                        std::span<const double> values,
                                        double s_sat,
                                        double epsilon);

std::optional<double> extract_scrambling_time(const EntropyCurve &curve, double epsilon);

// Appendix-style alternative: extract the scrambling time per realization,
// then average. Unsaturated realizations are excluded and counted.
struct PerRealizationTimes {
    std::optional<double> mean;
    double std_err = 0.0;
    size_t n_saturated = 0;
    size_t n_unsaturated = 0;
};

PerRealizationTimes per_realization_scrambling_times(const RealizationCurves &curves, double epsilon);
PerRealizationTimes per_realization_scrambling_times(const EnsembleSpec &spec,
                                                     double epsilon,
                                                     ExecutionPolicy exec = {});

struct FitResult {
    std::map<std::string, double> params;
    double r_squared = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    size_t n_points = 0;
    double residual_rms = 0.0;
    double residual_max = 0.0;
};

// Ordinary least squares of ln((S_sat - S(t))/N) against t over the window
// (inclusive). Returns lambda = -slope and alpha = exp(intercept). Every
// window point must have a positive deviation from saturation.
FitResult fit_exponential_saturation(const EntropyCurve &curve, double window_lo, double window_hi);

// Default end of the saturation-fit window: the last recorded time where the
// averaged deviation from saturation exceeds the attainability floor
// (S_sat - floor(mN), nonzero when mN is fractional) by at least one bit.
// Past that point the log-deviation measures integer resolution and sampling
// noise rather than the exponential approach, and the fitted rate collapses.
std::optional<double> default_fit_window_end(const EntropyCurve &curve);

// Least squares of t* against ln N for the scaling t*(N) = a ln(N) + b.
// Needs at least two points with distinct N.
FitResult fit_log_scaling(const std::vector<std::pair<double, double>> &n_tstar_points);

// Correlator ensemble aggregate. Per-realization outcomes are exact dyadic
// values; they are aggregated as outcome counts so the merge is independent
// of realization order, and floats appear only in the derived columns.
struct OtocTrace {
    EnsembleSpec spec;  // resolved
    std::vector<size_t> times;
    std::vector<uint64_t> zero_counts;                  // per time
    std::vector<std::map<uint32_t, uint64_t>> k_counts; // per time: k -> count
    size_t n_realizations = 0;
    double plateau = 0.0;  // late-time reference value for the probe used

    std::vector<double> mean_f() const;
    std::vector<double> fraction_off_plateau() const;
};

OtocTrace run_otoc_ensemble(const EnsembleSpec &spec,
                            std::span<const GateOp> v_gates,
                            const BasisOperatorLabel &w0,
                            std::vector<size_t> times,
                            ExecutionPolicy exec = {});

}  // namespace supercliff
