#pragma once

#include <string>
#include <vector>

#include "cadlag/path.hpp"

namespace cadlag {

/// Strictly increasing continuous piecewise-linear bijection of [0,1].
class TimeChange {
  public:
    // knots (t, lambda t), first (0,0), last (1,1), strictly increasing in both
    explicit TimeChange(std::vector<std::pair<double, double>> knots);
    static TimeChange identity();

    const std::vector<std::pair<double, double>>& knots() const { return knots_; }
    double operator()(double t) const;

  private:
    std::vector<std::pair<double, double>> knots_;
};

struct TimeChangeNorms {
    double deviation = 0.0;  // ||lambda - 1||
    double slope = 0.0;      // ||lambda||° = max |log slope|
};

TimeChangeNorms timechange_norms(const TimeChange& lambda);

// Skorokhod metric d(x,y) = inf_lambda ||lambda - 1|| v ||x - y lambda||.
// Exact for step paths (candidate-set search over a monotone alignment DP);
// throws std::invalid_argument for non-step inputs.
double skorokhod_d(const CadlagPath& x, const CadlagPath& y);

struct EnclosedValue {
    double value = 0.0;       // midpoint of the certified enclosure
    double half_width = 0.0;  // enclosure half-width
    double upper() const { return value + half_width; }
    double lower() const { return value - half_width; }
};

// d°(x,y) with the slope norm; bisection to a certified enclosure.
EnclosedValue skorokhod_d_circ(const CadlagPath& x, const CadlagPath& y,
                               double target_half_width = 1e-6);

// Grid-approximate d for arbitrary paths: both arguments are replaced by step
// interpolants on (uniform grid ∪ breakpoints); the reported error bound is the
// exact uniform distance to the interpolants (d is 1-Lipschitz in each slot).
struct ApproxValue {
    double value = 0.0;
    double error_bound = 0.0;
};
ApproxValue skorokhod_d_grid(const CadlagPath& x, const CadlagPath& y,
                             double grid_step = 1e-3);

// psi_i taper: identity on [0, i-1], (i-t)x(t) on (i-1, i], continuous at i.
// Exact for step paths; linear pieces in the taper zone are chord-sampled at
// taper_grid.
CadlagPath psi_taper(const CadlagPath& x, int i, double taper_grid = 1e-3);

// r_t: restriction of x to [0, t], terminal x(t).
CadlagPath restrict_path(const CadlagPath& x, double t);

// d_infinity truncated to `terms`: sum 2^{-i} min(1, d_i(psi_i x, psi_i y)).
ApproxValue d_infinity(const CadlagPath& x, const CadlagPath& y, int terms,
                       double grid_step = 1e-3);

// ---------------------------------------------------------------------------

/// Finite discrete measure: labeled atoms, weights summing to 1, and a
/// distance matrix that must be a metric.
class DiscreteMeasure {
  public:
    DiscreteMeasure(std::vector<std::string> atoms, std::vector<double> weights,
                    std::vector<std::vector<double>> dist);

    std::size_t size() const { return atoms_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<std::vector<double>>& dist() const { return dist_; }

    bool same_space(const DiscreteMeasure& o) const;

  private:
    std::vector<std::string> atoms_;
    std::vector<double> weights_;
    std::vector<std::vector<double>> dist_;
};

enum class ProkhorovMode { Auto, Exact, Flow };

// Prokhorov distance: inf eps with P(A) <= Q(A^eps) + eps and symmetrically.
// Exact subset scan for n <= 15; max-flow feasibility per candidate beyond.
double prokhorov_distance(const DiscreteMeasure& p, const DiscreteMeasure& q,
                          ProkhorovMode mode = ProkhorovMode::Auto);

}  // namespace cadlag
