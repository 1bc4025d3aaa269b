#pragma once

#include <cstddef>
#include <vector>

namespace cadlag {

enum class SegmentKind { Constant, Linear };

// One piece of a cadlag path. `value` is the path value at `start` (right
// limit); `end_value` is the limit approached at the segment's right end.
// Constant segments keep end_value == value.
struct Segment {
    double start = 0.0;
    double value = 0.0;
    double end_value = 0.0;
    SegmentKind kind = SegmentKind::Constant;
};

/// Finitely-parameterized cadlag function on [0, domain], piecewise constant
/// or linear. Right continuous everywhere, left limits everywhere on
/// (0, domain]. Immutable after construction.
class CadlagPath {
  public:
    CadlagPath();  // zero path on [0,1]

    static CadlagPath constant(double v, double domain = 1.0);
    // Step path: values[i] on [breaks[i], breaks[i+1]), breaks[0] == 0.
    static CadlagPath step(const std::vector<double>& breaks,
                           const std::vector<double>& values, double terminal,
                           double domain = 1.0);
    // Continuous piecewise-linear path through (ts[i], vs[i]); ts spans [0, domain].
    static CadlagPath piecewise_linear(const std::vector<double>& ts,
                                       const std::vector<double>& vs);
    static CadlagPath from_segments(std::vector<Segment> segs, double terminal,
                                    double domain = 1.0);
    // 1_{[a, domain]}
    static CadlagPath indicator(double a, double domain = 1.0);

    double domain() const { return domain_; }
    double terminal() const { return terminal_; }
    const std::vector<Segment>& segments() const { return segs_; }
    bool is_step() const;

    double value(double t) const;       // x(t)
    double left_limit(double t) const;  // x(t-), t in (0, domain]
    double sup_norm() const;

    // segment starts plus the domain end
    std::vector<double> breakpoints() const;

    bool operator==(const CadlagPath& o) const;

  private:
    std::vector<Segment> segs_;
    double terminal_ = 0.0;
    double domain_ = 1.0;

    std::size_t segment_index(double t) const;
    double segment_end(std::size_t i) const;
    friend struct PathAccess;
};

enum class ModulusKind { W, WPrime, WDoublePrime };

struct ModulusResult {
    double value = 0.0;
    bool exact = true;
    double grid_step = 0.0;   // 0 when exact
    double error_bound = 0.0; // 0 when exact
};

enum class Side { Right, Left };

double evaluate(const CadlagPath& x, double t, Side side);

// Exact sup |x - y| over the common domain (merged-grid evaluation).
double uniform_distance(const CadlagPath& x, const CadlagPath& y);

// j_x = sup_{0 < t <= domain} |x(t) - x(t-)|
double largest_jump(const CadlagPath& x);

// sup - inf of x over [a,b) (right_open) or [a,b]; left limits enter through
// the supremum over the half-open pieces.
double oscillation_on_interval(const CadlagPath& x, double a, double b,
                               bool right_open);

// w_x(delta) = sup over windows [t, t+delta] of the oscillation, delta in (0, domain].
double modulus_w(const CadlagPath& x, double delta);

// Cadlag modulus w'_x(delta): inf over delta-sparse partitions of the max
// interval oscillation. Exact for step paths; grid-approximate otherwise.
double modulus_w_prime(const CadlagPath& x, double delta);
ModulusResult modulus_w_prime_detailed(const CadlagPath& x, double delta,
                                       double grid_step = 1e-3);

// Three-point minimax modulus w''_x(delta). Exact for step paths.
double modulus_w_double_prime(const CadlagPath& x, double delta);
ModulusResult modulus_w_double_prime_detailed(const CadlagPath& x, double delta,
                                              double grid_step = 1e-3);

// Threshold query: w'_x(delta) >= eps. One feasibility pass, cheaper than the
// full modulus; used by the tightness probe. Ties resolved by the documented
// 1e-9 slack (lattice-valued paths keep it exact).
bool modulus_w_prime_at_least(const CadlagPath& x, double delta, double eps);

// Absolute tolerance for the strict comparisons in feasibility searches.
inline constexpr double kFeasibilityTol = 1e-12;

}  // namespace cadlag
