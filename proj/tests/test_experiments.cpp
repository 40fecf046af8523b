#include <doctest.h>

#include <cmath>

#include "supercliff/experiments.h"

using namespace supercliff;

namespace {

EnsembleSpec small_spec() {
    EnsembleSpec spec;
    spec.n_qubits = 40;
    spec.family = CircuitFamily::Parallel;
    spec.realizations = 8;
    spec.max_t = 120;
    spec.master_seed = 99;
    spec.entropy_fraction = {1, 4};
    spec.epsilon = 3.0;
    spec.entropy_cadence = 1;
    return spec;
}

// Synthetic curve following the saturation model exactly.
EntropyCurve synthetic_exponential(size_t n, double m, double alpha, double lambda, size_t max_t) {
    EntropyCurve curve;
    curve.spec.n_qubits = n;
    curve.spec.entropy_fraction = Fraction::parse(m == 0.25 ? "1/4" : "1/3");
    curve.spec.realizations = 1;
    curve.n_realizations = 1;
    double s_sat = m * double(n);
    for (size_t t = 0; t <= max_t; t++) {
        curve.times.push_back(t);
        curve.mean_entropy.push_back(s_sat - alpha * double(n) * std::exp(-lambda * double(t)));
        curve.std_err.push_back(0.0);
    }
    return curve;
}

}  // namespace

TEST_CASE("scrambling time on a hand-made curve") {
    std::vector<size_t> times = {0, 1, 2, 3};
    std::vector<double> values = {0, 15, 22, 25};
    auto t = first_time_within(times, values, 30.0, 10.0);
    REQUIRE(t.has_value());
    CHECK(*t == 2.0);
}

TEST_CASE("cutoff larger than saturation gives time zero") {
    std::vector<size_t> times = {0, 1};
    std::vector<double> values = {0, 1};
    auto t = first_time_within(times, values, 30.0, 31.0);
    REQUIRE(t.has_value());
    CHECK(*t == 0.0);
}

TEST_CASE("unsaturated curves report no time at all") {
    std::vector<size_t> times = {0, 1, 2};
    std::vector<double> values = {0, 1, 2};
    CHECK_FALSE(first_time_within(times, values, 30.0, 10.0).has_value());
}

TEST_CASE("synthetic exponential curve crosses at the closed-form time") {
    double alpha = 0.3, lambda = 0.08, epsilon = 2.0;
    size_t n = 200;
    EntropyCurve curve = synthetic_exponential(n, 0.25, alpha, lambda, 200);
    auto t = extract_scrambling_time(curve, epsilon);
    REQUIRE(t.has_value());
    double exact = std::log(alpha * double(n) / epsilon) / lambda;
    CHECK(*t == std::ceil(exact));
}

TEST_CASE("exponential fit recovers exact synthetic parameters") {
    EntropyCurve curve = synthetic_exponential(200, 0.25, 0.25, 0.06, 150);
    FitResult fit = fit_exponential_saturation(curve, 10, 150);
    CHECK(fit.params.at("lambda") == doctest::Approx(0.06).epsilon(1e-10));
    CHECK(fit.params.at("alpha") == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.n_points == 141);
}

TEST_CASE("exponential fit rejects windows touching saturation") {
    EntropyCurve curve = synthetic_exponential(100, 0.25, 0.25, 0.06, 50);
    curve.mean_entropy.back() = 25.0;  // exactly saturated point
    CHECK_THROWS_AS(fit_exponential_saturation(curve, 0, 50), std::invalid_argument);
    CHECK_NOTHROW(fit_exponential_saturation(curve, 0, 49));
}

TEST_CASE("default fit window ends one bit above the attainability floor") {
    // deviation 0.25 * 200 * exp(-0.06 t) crosses one bit at t = ln(50)/0.06
    EntropyCurve curve = synthetic_exponential(200, 0.25, 0.25, 0.06, 150);
    auto hi = default_fit_window_end(curve);
    REQUIRE(hi.has_value());
    CHECK(*hi == std::floor(std::log(50.0) / 0.06));

    EntropyCurve flat = curve;
    for (double &v : flat.mean_entropy) {
        v = 50.0;
    }
    CHECK_FALSE(default_fit_window_end(flat).has_value());
}

TEST_CASE("log-scaling fit recovers the reference parameters exactly") {
    double a = 15.61, b = -24.18;
    std::vector<std::pair<double, double>> points;
    for (double n : {520.0, 680.0, 840.0, 1000.0, 1500.0, 3000.0}) {
        points.emplace_back(n, a * std::log(n) + b);
    }
    FitResult fit = fit_log_scaling(points);
    CHECK(fit.params.at("a") == doctest::Approx(a).epsilon(1e-9));
    CHECK(fit.params.at("b") == doctest::Approx(b).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two points interpolate exactly") {
    std::vector<std::pair<double, double>> points = {{100.0, 10.0}, {1000.0, 30.0}};
    FitResult fit = fit_log_scaling(points);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.n_points == 2);
}

TEST_CASE("degenerate fit inputs are rejected") {
    CHECK_THROWS_AS(fit_log_scaling({{100.0, 10.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_log_scaling({{100.0, 10.0}, {100.0, 12.0}}), std::invalid_argument);
}

TEST_CASE("entropy ensembles start at zero and saturate") {
    EnsembleSpec spec = small_spec();
    EntropyCurve curve = run_entropy_ensemble(spec, {2});
    CHECK(curve.times.front() == 0);
    CHECK(curve.mean_entropy.front() == 0.0);
    // N=40, m=1/4: saturation at 10 bits; by t=120 the mean is pinned there.
    CHECK(curve.mean_entropy.back() > 8.0);
    CHECK(curve.mean_entropy.back() <= 10.0);

    auto t_star = extract_scrambling_time(curve, spec.epsilon);
    CHECK(t_star.has_value());
}

TEST_CASE("scrambling time is monotone nonincreasing in epsilon") {
    EnsembleSpec spec = small_spec();
    EntropyCurve curve = run_entropy_ensemble(spec, {2});
    double previous = double(curve.times.back()) + 1;
    for (double eps : {0.5, 1.0, 2.0, 4.0, 8.0, 12.0}) {
        auto t = extract_scrambling_time(curve, eps);
        if (t) {
            CHECK(*t <= previous);
            previous = *t;
        }
    }
}

TEST_CASE("quarter entropy of 120 qubits saturates to 30") {
    EnsembleSpec spec;
    spec.n_qubits = 120;
    spec.family = CircuitFamily::Parallel;
    spec.realizations = 30;
    spec.max_t = 200;
    spec.master_seed = 7;
    spec.entropy_fraction = {1, 4};
    spec.entropy_cadence = 2;
    EntropyCurve curve = run_entropy_ensemble(spec, {2});
    CHECK(std::abs(curve.mean_entropy.back() - 30.0) <= 1.0);
}

TEST_CASE("ensembles are deterministic and thread-count independent") {
    EnsembleSpec spec = small_spec();
    EntropyCurve a = run_entropy_ensemble(spec, {1});
    EntropyCurve b = run_entropy_ensemble(spec, {2});
    CHECK(a.mean_entropy == b.mean_entropy);
    CHECK(a.std_err == b.std_err);
}

TEST_CASE("per-realization times reduce to the averaged ones for R = 1") {
    EnsembleSpec spec = small_spec();
    spec.realizations = 1;
    RealizationCurves curves = run_realization_curves(spec, {1});
    PerRealizationTimes per = per_realization_scrambling_times(curves, spec.epsilon);
    auto averaged = extract_scrambling_time(aggregate_curves(curves), spec.epsilon);
    REQUIRE(per.mean.has_value());
    REQUIRE(averaged.has_value());
    CHECK(*per.mean == *averaged);
    CHECK(per.std_err == 0.0);
    CHECK(per.n_unsaturated == 0);
}

TEST_CASE("identical synthetic realizations have zero spread") {
    RealizationCurves curves;
    curves.spec = small_spec();
    curves.spec.realizations = 4;
    curves.times = {0, 1, 2};
    curves.entropies = {{0, 5, 9}, {0, 5, 9}, {0, 5, 9}, {0, 5, 9}};
    PerRealizationTimes per = per_realization_scrambling_times(curves, 3.0);
    REQUIRE(per.mean.has_value());
    CHECK(per.std_err == 0.0);
    CHECK(per.n_saturated == 4);

    EntropyCurve curve = aggregate_curves(curves);
    CHECK(curve.std_err == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("unsaturated realizations are excluded and counted") {
    RealizationCurves curves;
    curves.spec = small_spec();  // saturation 10, epsilon given per call
    curves.times = {0, 1};
    curves.entropies = {{0, 9}, {0, 2}};
    PerRealizationTimes per = per_realization_scrambling_times(curves, 2.0);
    CHECK(per.n_saturated == 1);
    CHECK(per.n_unsaturated == 1);
    REQUIRE(per.mean.has_value());
    CHECK(*per.mean == 1.0);
}

TEST_CASE("correlator ensemble with the identity probe is exactly one") {
    EnsembleSpec spec = small_spec();
    spec.realizations = 5;
    OtocTrace trace = run_otoc_ensemble(spec, {}, BasisOperatorLabel::all_x(40), {0, 2, 5}, {2});
    CHECK(trace.plateau == doctest::Approx(1.0));
    for (double f : trace.mean_f()) {
        CHECK(f == 1.0);
    }
    for (double frac : trace.fraction_off_plateau()) {
        CHECK(frac == 0.0);
    }
    for (size_t i = 0; i < trace.times.size(); i++) {
        CHECK(trace.k_counts[i].at(0) == 5);
    }
}

TEST_CASE("correlator aggregation is an exact dyadic average") {
    OtocTrace trace;
    trace.spec = small_spec();
    trace.times = {0};
    trace.n_realizations = 4;
    trace.plateau = 0.5;
    trace.zero_counts = {1};
    trace.k_counts = {{{2, 2}, {4, 1}}};
    // (0 + 2*(1/2) + 1/4) / 4
    CHECK(trace.mean_f()[0] == doctest::Approx((0.0 + 2 * 0.5 + 0.25) / 4.0).epsilon(1e-15));
    CHECK(trace.fraction_off_plateau()[0] == doctest::Approx(0.5));
}

TEST_CASE("correlator ensemble rejects wide probes") {
    EnsembleSpec spec = small_spec();
    std::vector<GateOp> wide = {GateOp::c3(0, 3, 5)};
    CHECK_THROWS_AS(run_otoc_ensemble(spec, wide, BasisOperatorLabel::all_x(40), {0, 1}, {1}),
                    std::invalid_argument);
}
