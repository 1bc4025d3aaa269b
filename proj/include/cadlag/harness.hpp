#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cadlag/simulate.hpp"

namespace cadlag {

// Two-sided KS discrepancy between samples and a target distribution function:
// sup over sorted-sample breakpoints of |ECDF - target|, both one-sided ECDF
// values at each breakpoint.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& target_cdf);

// (1/2) sum |empirical - target| over the union of supports.
double tv_distance(const std::map<long long, std::uint64_t>& counts,
                   const std::map<long long, double>& pmf);

struct ExperimentConfig {
    std::string process = "donsker-d";      // donsker-c | donsker-d | poisson | empirical
    std::string increments = "rademacher";  // rademacher | uniform
    std::string functional = "sup";         // sup | inf | sup_abs | occupation_positive | ks_scaled | last_zero
    std::string target = "wiener-sup";      // wiener-sup | wiener-abs-sup | arcsine | kolmogorov
    int n = 500;
    int replicas = 20000;
    std::uint64_t seed = 0;
    double tolerance = 0.03;
    double alpha = 2.0;  // poisson rate
    int grid_points = 101;
    int workers = 1;
};

struct ExperimentReport {
    ExperimentConfig config;
    double distance = 0.0;
    bool pass = false;
    std::vector<double> grid;       // evaluation points (sample quantile range)
    std::vector<double> empirical;  // ECDF on grid
    std::vector<double> target;     // target cdf on grid
    double runtime_seconds = 0.0;   // not serialized: reports are byte-reproducible
};

std::function<double(double)> resolve_target_cdf(const std::string& name);

// Simulates `replicas` functional values (one stream per replica), compares to
// the target law by ks_distance; pass iff distance <= tolerance. Deterministic
// for fixed (config, seed) regardless of `workers`.
ExperimentReport run_convergence_experiment(const ExperimentConfig& config);

// ---------------------------------------------------------------------------

struct TightnessRow {
    double delta = 0.0;
    double estimate = 0.0;  // P(w'(X, delta) >= eps) (or w for the C-case)
    double std_error = 0.0;
};

struct TightnessReport {
    std::vector<TightnessRow> rows;  // in the given delta order
    bool nonincreasing = false;      // within 2 MC standard errors, deltas decreasing
    double final_estimate = 0.0;
    bool tight = false;              // nonincreasing and final below threshold
    double threshold = 0.05;
};

// process: "donsker-d" | "donsker-c" | "spike" (Dirac triangle-spike family,
// n coupled to delta, deterministic). modulus: WPrime (D-case) or W (C-case).
TightnessReport tightness_probe(const std::string& process, int n, int replicas,
                                const std::vector<double>& deltas, double eps,
                                std::uint64_t seed,
                                ModulusKind modulus = ModulusKind::WPrime,
                                double threshold = 0.05);

struct MomentConditionRow {
    double r, s, t;
    double estimate, std_error, bound;
    bool exact_zero;  // t - r < 1/n: every sample must be exactly 0
    bool pass;
};

struct MomentConditionReport {
    std::vector<MomentConditionRow> rows;
    bool pass = false;
};

// E(|X_s - X_r|^beta |X_t - X_s|^beta) <= (H(t) - H(r))^alpha with
// H(t) = h_scale * t; pass iff estimate <= bound + 3 SE, exact zero enforced
// for t - r < 1/n.
MomentConditionReport moment_condition_probe(
    const std::string& process, int n, int replicas,
    const std::vector<std::array<double, 3>>& triples, double beta, double alpha,
    double h_scale, std::uint64_t seed);

// sup over lattice |z| <= 3 of |sqrt(npq) P(S_n = i) - phi(z)|.
double local_limit_probe(int n, double p);

struct MultinomialCovReport {
    std::vector<std::vector<double>> target;     // V
    std::vector<std::vector<double>> empirical;  // sample covariance of (Z-np)/sqrt n
    double max_deviation = 0.0;
};

MultinomialCovReport multinomial_cov_probe(int n, const std::vector<double>& p,
                                           int replicas, std::uint64_t seed);

struct BridgeConditioningReport {
    double estimate = 0.0;   // P(sup <= b | 0 <= W_1 <= eps), rejection estimate
    double target = 0.0;     // 1 - exp(-2 b^2)
    int accepted = 0;
    long long attempts = 0;
    bool pass = false;
};

// Rejection-samples walks with S_n in [0, eps sqrt(n)]; throws
// std::length_error if the acceptance target cannot be met.
BridgeConditioningReport bridge_conditioning_probe(double b, double eps, int n,
                                                   int min_accepted,
                                                   std::uint64_t seed,
                                                   double tolerance = 0.04);

// ---------------------------------------------------------------------------
// report serialization (JSON document / flat CSV); excludes wall-clock data
std::string report_to_json(const ExperimentReport& r);
std::string report_to_csv(const ExperimentReport& r);

}  // namespace cadlag
