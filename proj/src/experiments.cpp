#include "supercliff/experiments.h"

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "supercliff/entropy.h"

namespace supercliff {

namespace {

// Runs fn(i) for i in [0, count) across a small worker pool. Work items only
// write to their own slots, so scheduling cannot affect results.
void parallel_for(size_t count, unsigned threads, const std::function<void(size_t)> &fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads == 1) {
        for (size_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; w++) {
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    next.store(count);
                    return;
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::vector<size_t> time_grid(size_t max_t, size_t cadence) {
    std::vector<size_t> times;
    for (size_t t = 0; t <= max_t; t += cadence) {
        times.push_back(t);
    }
    return times;
}

struct LeastSquares {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    double residual_rms = 0.0;
    double residual_max = 0.0;
};

LeastSquares least_squares(const std::vector<double> &x, const std::vector<double> &y) {
    size_t n = x.size();
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; i++) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("least squares needs at least two distinct x values");
    }
    LeastSquares fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < n; i++) {
        double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
        ss_tot += (y[i] - my) * (y[i] - my);
        fit.residual_max = std::max(fit.residual_max, std::abs(r));
    }
    fit.residual_rms = std::sqrt(ss_res / double(n));
    fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : (ss_res <= 1e-24 ? 1.0 : 0.0);
    return fit;
}

}  // namespace

RealizationCurves run_realization_curves(const EnsembleSpec &raw_spec, ExecutionPolicy exec) {
    EnsembleSpec spec = raw_spec.resolved();
    spec.validate();

    RealizationCurves out;
    out.spec = spec;
    out.times = time_grid(spec.max_t, spec.entropy_cadence);
    out.entropies.assign(spec.realizations, {});

    size_t n_a = spec.region_size();
    parallel_for(spec.realizations, exec.threads, [&](size_t r) {
        Rng rng(realization_seed(spec.master_seed, r));
        Tableau t = new_computational(BasisOperatorLabel::all_x(spec.n_qubits));
        std::vector<int> trace;
        trace.reserve(out.times.size());
        trace.push_back(prefix_entropy(t, n_a));
        for (size_t step = 1; step <= spec.max_t; step++) {
            std::vector<GateOp> gates = sample_step(spec, rng);
            for (const GateOp &g : gates) {
                t.apply_gate(g);
            }
            if (step % spec.entropy_cadence == 0) {
                trace.push_back(prefix_entropy(t, n_a));
            }
        }
        out.entropies[r] = std::move(trace);
    });
    return out;
}

EntropyCurve aggregate_curves(const RealizationCurves &curves) {
    EntropyCurve out;
    out.spec = curves.spec;
    out.times = curves.times;
    out.n_realizations = curves.entropies.size();
    size_t points = curves.times.size();
    out.mean_entropy.resize(points);
    out.std_err.resize(points);

    // Integer accumulators keep the aggregation exact and independent of
    // realization order.
    for (size_t i = 0; i < points; i++) {
        uint64_t sum = 0, sum_sq = 0;
        for (const auto &trace : curves.entropies) {
            uint64_t v = static_cast<uint64_t>(trace[i]);
            sum += v;
            sum_sq += v * v;
        }
        double r = double(out.n_realizations);
        double mean = double(sum) / r;
        out.mean_entropy[i] = mean;
        if (out.n_realizations > 1) {
            double var = (double(sum_sq) - r * mean * mean) / (r - 1.0);
            out.std_err[i] = std::sqrt(std::max(0.0, var) / r);
        } else {
            out.std_err[i] = 0.0;
        }
    }
    return out;
}

EntropyCurve run_entropy_ensemble(const EnsembleSpec &spec, ExecutionPolicy exec) {
    return aggregate_curves(run_realization_curves(spec, exec));
}

std::optional<double> first_time_within(std::span<const size_t> times,
                                        std::span<const double> values,
                                        double s_sat,
                                        double epsilon) {
    double threshold = s_sat - epsilon;
    for (size_t i = 0; i < times.size(); i++) {
        if (values[i] >= threshold) {
            return double(times[i]);
        }
    }
    return std::nullopt;
}

std::optional<double> extract_scrambling_time(const EntropyCurve &curve, double epsilon) {
    return first_time_within(curve.times, curve.mean_entropy, curve.spec.saturation_entropy(), epsilon);
}

PerRealizationTimes per_realization_scrambling_times(const RealizationCurves &curves, double epsilon) {
    double s_sat = curves.spec.saturation_entropy();
    double threshold = s_sat - epsilon;
    PerRealizationTimes out;
    double sum = 0, sum_sq = 0;
    for (const auto &trace : curves.entropies) {
        std::optional<double> t_star;
        for (size_t i = 0; i < curves.times.size(); i++) {
            if (double(trace[i]) >= threshold) {
                t_star = double(curves.times[i]);
                break;
            }
        }
        if (t_star) {
            out.n_saturated++;
            sum += *t_star;
            sum_sq += *t_star * *t_star;
        } else {
            out.n_unsaturated++;
        }
    }
    if (out.n_saturated > 0) {
        double r = double(out.n_saturated);
        double mean = sum / r;
        out.mean = mean;
        if (out.n_saturated > 1) {
            double var = (sum_sq - r * mean * mean) / (r - 1.0);
            out.std_err = std::sqrt(std::max(0.0, var) / r);
        }
    }
    return out;
}

PerRealizationTimes per_realization_scrambling_times(const EnsembleSpec &spec,
                                                     double epsilon,
                                                     ExecutionPolicy exec) {
    return per_realization_scrambling_times(run_realization_curves(spec, exec), epsilon);
}

FitResult fit_exponential_saturation(const EntropyCurve &curve, double window_lo, double window_hi) {
    double s_sat = curve.spec.saturation_entropy();
    double n = double(curve.spec.n_qubits);
    std::vector<double> x, y;
    for (size_t i = 0; i < curve.times.size(); i++) {
        double t = double(curve.times[i]);
        if (t < window_lo || t > window_hi) {
            continue;
        }
        double delta = (s_sat - curve.mean_entropy[i]) / n;
        if (!(delta > 0)) {
            throw std::invalid_argument(
                "saturation deviation is nonpositive at t=" + std::to_string(curve.times[i]) +
                "; shrink the fit window");
        }
        x.push_back(t);
        y.push_back(std::log(delta));
    }
    if (x.size() < 2) {
        throw std::invalid_argument("fit window contains fewer than two curve points");
    }
    LeastSquares ls = least_squares(x, y);
    FitResult fit;
    fit.params["lambda"] = -ls.slope;
    fit.params["alpha"] = std::exp(ls.intercept);
    fit.r_squared = ls.r_squared;
    fit.window_lo = window_lo;
    fit.window_hi = window_hi;
    fit.n_points = x.size();
    fit.residual_rms = ls.residual_rms;
    fit.residual_max = ls.residual_max;
    return fit;
}

std::optional<double> default_fit_window_end(const EntropyCurve &curve) {
    double s_sat = curve.spec.saturation_entropy();
    double floor = s_sat - double(curve.spec.region_size());
    for (size_t i = curve.times.size(); i-- > 0;) {
        if (s_sat - curve.mean_entropy[i] >= floor + 1.0) {
            return double(curve.times[i]);
        }
    }
    return std::nullopt;
}

FitResult fit_log_scaling(const std::vector<std::pair<double, double>> &n_tstar_points) {
    std::vector<double> x, y;
    for (const auto &[n, t_star] : n_tstar_points) {
        if (!(n > 0)) {
            throw std::invalid_argument("system sizes must be positive");
        }
        x.push_back(std::log(n));
        y.push_back(t_star);
    }
    if (x.size() < 2) {
        throw std::invalid_argument("log fit needs at least two points");
    }
    LeastSquares ls = least_squares(x, y);
    FitResult fit;
    fit.params["a"] = ls.slope;
    fit.params["b"] = ls.intercept;
    fit.r_squared = ls.r_squared;
    fit.window_lo = n_tstar_points.front().first;
    fit.window_hi = n_tstar_points.back().first;
    fit.n_points = x.size();
    fit.residual_rms = ls.residual_rms;
    fit.residual_max = ls.residual_max;
    return fit;
}

std::vector<double> OtocTrace::mean_f() const {
    std::vector<double> out(times.size());
    for (size_t i = 0; i < times.size(); i++) {
        double sum = 0.0;
        for (const auto &[k, count] : k_counts[i]) {
            sum += double(count) * std::pow(2.0, -0.5 * double(k));
        }
        out[i] = sum / double(n_realizations);
    }
    return out;
}

std::vector<double> OtocTrace::fraction_off_plateau() const {
    std::vector<double> out(times.size());
    bool plateau_is_zero = std::abs(plateau) <= 1e-9;
    for (size_t i = 0; i < times.size(); i++) {
        uint64_t off = plateau_is_zero ? 0 : zero_counts[i];
        for (const auto &[k, count] : k_counts[i]) {
            if (std::abs(std::pow(2.0, -0.5 * double(k)) - plateau) > 1e-9) {
                off += count;
            }
        }
        out[i] = double(off) / double(n_realizations);
    }
    return out;
}

OtocTrace run_otoc_ensemble(const EnsembleSpec &raw_spec,
                            std::span<const GateOp> v_gates,
                            const BasisOperatorLabel &w0,
                            std::vector<size_t> times,
                            ExecutionPolicy exec) {
    EnsembleSpec spec = raw_spec.resolved();
    spec.validate();
    if (w0.n_sites() != spec.n_qubits) {
        throw std::invalid_argument("initial operator label length must equal N");
    }
    for (const GateOp &g : v_gates) {
        g.validate(spec.n_qubits);
    }
    size_t support = support_size(v_gates);
    if (support > 5) {
        throw std::invalid_argument("probe support exceeds the 5-qubit plateau region");
    }
    if (times.empty()) {
        throw std::invalid_argument("need at least one evaluation time");
    }

    OtocTrace out;
    out.spec = spec;
    out.times = times;
    out.n_realizations = spec.realizations;
    out.plateau = plateau_value(v_gates, std::max<size_t>(support, 1));
    out.zero_counts.assign(times.size(), 0);
    out.k_counts.assign(times.size(), {});

    size_t steps_needed = times.back();
    std::vector<std::vector<OtocValue>> results(spec.realizations);
    parallel_for(spec.realizations, exec.threads, [&](size_t r) {
        Rng rng(realization_seed(spec.master_seed, r));
        std::vector<std::vector<GateOp>> steps;
        steps.reserve(steps_needed);
        for (size_t s = 0; s < steps_needed; s++) {
            steps.push_back(sample_step(spec, rng));
        }
        results[r] = otoc_trace(steps, v_gates, w0, times);
    });

    for (size_t r = 0; r < spec.realizations; r++) {
        for (size_t i = 0; i < times.size(); i++) {
            const OtocValue &v = results[r][i];
            if (v.is_zero) {
                out.zero_counts[i]++;
            } else {
                out.k_counts[i][v.k]++;
            }
        }
    }
    return out;
}

}  // namespace supercliff
