// Independent brute-force oracles used by the unit and acceptance suites.
// These deliberately share no code with the library's algorithms.
#pragma once

#include <vector>

#include "cadlag/metrics.hpp"
#include "cadlag/path.hpp"
#include "cadlag/simulate.hpp"

namespace cadlag::oracles {

// Exhaustive piecewise-linear lambda with knots at y's jump preimages, each
// preimage restricted to a finite grid: uniform `grid_step` plus both paths'
// breakpoints, pairwise midpoints, and uniform-slope interpolation points.
// Minimizes max(||lambda - 1||, ||x - y lambda||) over monotone grid tuples.
double grid_d(const CadlagPath& x, const CadlagPath& y, double grid_step = 1e-3);

// Same search for max(||lambda||°, ||x - y lambda||).
double grid_d_circ(const CadlagPath& x, const CadlagPath& y, double grid_step = 1e-3);

// All delta-sparse partitions with breakpoints on (uniform grid ∪ jump times ∪
// jump-plus-multiple-of-delta points); minimizes the max interval oscillation.
double grid_w_prime(const CadlagPath& x, double delta, double grid_step = 1e-3);

// Direct sweep over all subsets and candidate epsilon values, fully
// independent of the library's per-subset minimization.
double subset_prokhorov(const DiscreteMeasure& p, const DiscreteMeasure& q);

// Seeded random step paths with jump times on `time_lattice` multiples (min
// separation `min_gap`) and values on a 0.1 lattice in [-2, 2].
CadlagPath random_step_path(Rng& rng, int max_jumps, double time_lattice = 0.01,
                            double min_gap = 0.05);

// Continuous-valued variant for inequality-lattice property tests.
CadlagPath random_step_path_continuous(Rng& rng, int max_jumps);

}  // namespace cadlag::oracles
