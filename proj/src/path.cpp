#include "cadlag/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cadlag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

CadlagPath::CadlagPath() : segs_{Segment{}}, terminal_(0.0), domain_(1.0) {}

CadlagPath CadlagPath::from_segments(std::vector<Segment> segs, double terminal,
                                     double domain) {
    require(domain > 0.0, "path: domain must be positive");
    require(!segs.empty(), "path: needs at least one segment");
    require(segs.front().start == 0.0, "path: first segment must start at 0");
    for (std::size_t i = 0; i + 1 < segs.size(); ++i)
        require(segs[i].start < segs[i + 1].start,
                "path: segment starts must be strictly increasing");
    require(segs.back().start < domain, "path: segment starts must be < domain");

    // canonical form: linear segments with equal endpoints become constant,
    // adjacent equal constants merge
    for (auto& s : segs) {
        if (s.kind == SegmentKind::Constant) s.end_value = s.value;
        if (s.kind == SegmentKind::Linear && s.value == s.end_value)
            s.kind = SegmentKind::Constant;
    }
    std::vector<Segment> out;
    out.reserve(segs.size());
    for (const auto& s : segs) {
        if (!out.empty() && out.back().kind == SegmentKind::Constant &&
            s.kind == SegmentKind::Constant && out.back().value == s.value)
            continue;
        out.push_back(s);
    }
    CadlagPath p;
    p.segs_ = std::move(out);
    p.terminal_ = terminal;
    p.domain_ = domain;
    return p;
}

CadlagPath CadlagPath::constant(double v, double domain) {
    return from_segments({Segment{0.0, v, v, SegmentKind::Constant}}, v, domain);
}

CadlagPath CadlagPath::step(const std::vector<double>& breaks,
                            const std::vector<double>& values, double terminal,
                            double domain) {
    require(breaks.size() == values.size(), "step: breaks/values size mismatch");
    require(!breaks.empty(), "step: empty");
    std::vector<Segment> segs;
    segs.reserve(breaks.size());
    for (std::size_t i = 0; i < breaks.size(); ++i)
        segs.push_back({breaks[i], values[i], values[i], SegmentKind::Constant});
    return from_segments(std::move(segs), terminal, domain);
}

CadlagPath CadlagPath::piecewise_linear(const std::vector<double>& ts,
                                        const std::vector<double>& vs) {
    require(ts.size() == vs.size() && ts.size() >= 2, "pl: needs >= 2 knots");
    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        segs.push_back({ts[i], vs[i], vs[i + 1], SegmentKind::Linear});
    return from_segments(std::move(segs), vs.back(), ts.back());
}

CadlagPath CadlagPath::indicator(double a, double domain) {
    require(a > 0.0 && a <= domain, "indicator: a in (0, domain]");
    if (a == domain) return from_segments({{0.0, 0.0, 0.0, SegmentKind::Constant}}, 1.0, domain);
    return step({0.0, a}, {0.0, 1.0}, 1.0, domain);
}

bool CadlagPath::is_step() const {
    return std::all_of(segs_.begin(), segs_.end(), [](const Segment& s) {
        return s.kind == SegmentKind::Constant;
    });
}

std::size_t CadlagPath::segment_index(double t) const {
    // last segment with start <= t
    std::size_t lo = 0, hi = segs_.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (segs_[mid].start <= t) lo = mid; else hi = mid - 1;
    }
    return lo;
}

double CadlagPath::segment_end(std::size_t i) const {
    return i + 1 < segs_.size() ? segs_[i + 1].start : domain_;
}

double CadlagPath::value(double t) const {
    require(t >= 0.0 && t <= domain_, "value: t outside domain");
    if (t == domain_) return terminal_;
    std::size_t i = segment_index(t);
    const Segment& s = segs_[i];
    if (s.kind == SegmentKind::Constant) return s.value;
    double e = segment_end(i);
    return s.value + (s.end_value - s.value) * (t - s.start) / (e - s.start);
}

double CadlagPath::left_limit(double t) const {
    require(t > 0.0 && t <= domain_, "left_limit: t in (0, domain]");
    std::size_t i = segment_index(t);
    const Segment& s = segs_[i];
    if (s.start == t) {
        const Segment& prev = segs_[i - 1];  // i >= 1 since segs_[0].start == 0 < t
        return prev.end_value;
    }
    if (t == domain_) return s.end_value;
    if (s.kind == SegmentKind::Constant) return s.value;
    double e = segment_end(i);
    return s.value + (s.end_value - s.value) * (t - s.start) / (e - s.start);
}

std::vector<double> CadlagPath::breakpoints() const {
    std::vector<double> b;
    b.reserve(segs_.size() + 1);
    for (const auto& s : segs_) b.push_back(s.start);
    b.push_back(domain_);
    return b;
}

double CadlagPath::sup_norm() const {
    double m = std::abs(terminal_);
    for (const auto& s : segs_)
        m = std::max({m, std::abs(s.value), std::abs(s.end_value)});
    return m;
}

bool CadlagPath::operator==(const CadlagPath& o) const {
    if (domain_ != o.domain_ || terminal_ != o.terminal_ ||
        segs_.size() != o.segs_.size())
        return false;
    for (std::size_t i = 0; i < segs_.size(); ++i) {
        const Segment &a = segs_[i], &b = o.segs_[i];
        if (a.start != b.start || a.value != b.value ||
            a.end_value != b.end_value || a.kind != b.kind)
            return false;
    }
    return true;
}

double evaluate(const CadlagPath& x, double t, Side side) {
    if (side == Side::Right) return x.value(t);
    return x.left_limit(t);
}

namespace {

// min/max of the value set of x over [a,b) or [a,b]; suprema include the
// left limits reached inside the window.
struct Extremes { double lo = kInf, hi = -kInf; };

Extremes value_extremes(const CadlagPath& x, double a, double b, bool closed_right) {
    Extremes e;
    auto add = [&e](double v) {
        e.lo = std::min(e.lo, v);
        e.hi = std::max(e.hi, v);
    };
    add(x.value(a));
    for (const auto& s : x.segments()) {
        if (s.start <= a) continue;
        if (s.start >= b) break;
        add(s.value);
        add(x.left_limit(s.start));
    }
    if (b > a) add(x.left_limit(b));
    if (closed_right) add(x.value(b));
    return e;
}

}  // namespace

double uniform_distance(const CadlagPath& x, const CadlagPath& y) {
    require(x.domain() == y.domain(), "uniform_distance: domain mismatch");
    std::vector<double> grid = x.breakpoints();
    {
        auto gy = y.breakpoints();
        grid.insert(grid.end(), gy.begin(), gy.end());
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }
    double m = std::abs(x.terminal() - y.terminal());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double u = grid[i], w = grid[i + 1];
        m = std::max(m, std::abs(x.value(u) - y.value(u)));
        m = std::max(m, std::abs(x.left_limit(w) - y.left_limit(w)));
    }
    return m;
}

double largest_jump(const CadlagPath& x) {
    double j = std::abs(x.terminal() - x.left_limit(x.domain()));
    const auto& segs = x.segments();
    for (std::size_t i = 1; i < segs.size(); ++i)
        j = std::max(j, std::abs(segs[i].value - segs[i - 1].end_value));
    return j;
}

double oscillation_on_interval(const CadlagPath& x, double a, double b,
                               bool right_open) {
    require(a < b, "oscillation: requires a < b");
    require(a >= 0.0 && b <= x.domain(), "oscillation: interval outside domain");
    Extremes e = value_extremes(x, a, b, !right_open);
    return e.hi - e.lo;
}

double modulus_w(const CadlagPath& x, double delta) {
    require(delta > 0.0 && delta <= x.domain(), "modulus_w: delta in (0, domain]");
    const double D = x.domain();
    if (delta >= D) {
        Extremes e = value_extremes(x, 0.0, D, true);
        return e.hi - e.lo;
    }
    std::vector<double> starts{0.0, D - delta};
    for (double b : x.breakpoints()) {
        if (b >= 0.0 && b <= D - delta) starts.push_back(b);
        double s = b - delta;
        if (s >= 0.0 && s <= D - delta) starts.push_back(s);
    }
    double m = 0.0;
    for (double t : starts) {
        Extremes e = value_extremes(x, t, t + delta, true);
        m = std::max(m, e.hi - e.lo);
    }
    return m;
}

// ---------------------------------------------------------------------------
// w' and w'' for step paths: piece decomposition + slot DP
// ---------------------------------------------------------------------------

namespace {

struct Pieces {
    std::vector<double> bounds;  // b_0 = 0 < b_1 < ... < b_{m+1} = domain
    std::vector<double> values;  // value on [b_k, b_{k+1})
    double terminal = 0.0;
};

Pieces step_pieces(const CadlagPath& x) {
    Pieces p;
    for (const auto& s : x.segments()) {
        p.bounds.push_back(s.start);
        p.values.push_back(s.value);
    }
    p.bounds.push_back(x.domain());
    p.terminal = x.terminal();
    return p;
}

// range min/max over piece values, contiguous ranges only
struct RangeMinMax {
    std::vector<std::vector<double>> mn, mx;
    std::vector<int> lg;
    explicit RangeMinMax(const std::vector<double>& v) {
        int n = (int)v.size();
        lg.assign(n + 1, 0);
        for (int i = 2; i <= n; ++i) lg[i] = lg[i / 2] + 1;
        int L = lg[n] + 1;
        mn.assign(L, v);
        mx.assign(L, v);
        for (int k = 1; k < L; ++k)
            for (int i = 0; i + (1 << k) <= n; ++i) {
                mn[k][i] = std::min(mn[k - 1][i], mn[k - 1][i + (1 << (k - 1))]);
                mx[k][i] = std::max(mx[k - 1][i], mx[k - 1][i + (1 << (k - 1))]);
            }
    }
    double osc(int lo, int hi) const {  // inclusive piece range
        if (lo > hi) return 0.0;
        int k = lg[hi - lo + 1];
        return std::max(mx[k][lo], mx[k][hi - (1 << k) + 1]) -
               std::min(mn[k][lo], mn[k][hi - (1 << k) + 1]);
    }
};

// Feasibility of a delta-sparse partition of [0, domain) with all interval
// oscillations <= eps, for a step path given as pieces. Cut positions are
// classified by slot: exactly at a boundary b_k, or strictly inside a piece.
// Minimal-position propagation is sound because the sparseness constraint
// only bounds gaps from below. Gap-at-exactly-delta is infeasible (strict).
bool wprime_feasible(const Pieces& p, const RangeMinMax& rng, double delta,
                     double eps, double tol) {
    const int m = (int)p.values.size() - 1;  // pieces 0..m
    const double D = p.bounds.back();
    // slots: 0 = start cut at 0; for k in 0..m: interior of piece k -> slot 1+2k,
    // boundary b_{k+1} (k+1 <= m) -> slot 2+2k. Final cut at D handled separately.
    const int S = 2 * m + 2;
    std::vector<double> best(S, kInf);
    // first piece covered by an interval starting at a cut in slot s
    auto start_piece = [&](int s) { return s == 0 ? 0 : (s - 1) / 2 + ((s - 1) % 2 ? 1 : 0); };
    // last piece covered by an interval ending at a cut in slot s
    auto end_piece = [&](int s) { return s == 0 ? -1 : (s - 1) / 2; };
    // interior slot s=1+2k: open interval (b_k, b_{k+1}); boundary slot s=2+2k: point b_{k+1}
    auto slot_lo = [&](int s) { int k = (s - 1) / 2; return (s - 1) % 2 == 0 ? p.bounds[k] : p.bounds[k + 1]; };
    auto slot_hi = [&](int s) { int k = (s - 1) / 2; return (s - 1) % 2 == 0 ? p.bounds[k + 1] : p.bounds[k + 1]; };
    auto is_point = [&](int s) { return (s - 1) % 2 == 1; };

    best[0] = 0.0;
    for (int s = 0; s < S; ++s) {
        if (best[s] == kInf) continue;
        int from_piece = start_piece(s);
        // transition to the final cut at D: interval [cut, D) covers pieces from..m
        // handled after the loop via best[]
        for (int s2 = s + 1; s2 < S; ++s2) {
            int to_piece = end_piece(s2);
            if (to_piece < from_piece) continue;  // empty interval impossible (s2 > s ensures >=)
            if (rng.osc(from_piece, to_piece) > eps + tol) continue;
            double cand = std::max(best[s] + delta, slot_lo(s2));
            if (is_point(s2)) {
                double b = slot_lo(s2);
                if (best[s] + delta + tol < b) {
                    if (b < best[s2]) best[s2] = b;
                }
            } else {
                if (cand + tol < slot_hi(s2)) {
                    if (cand < best[s2]) best[s2] = cand;
                }
            }
        }
    }
    // close at D
    for (int s = 0; s < S; ++s) {
        if (best[s] == kInf) continue;
        if (best[s] + delta + tol >= D) continue;
        int from_piece = start_piece(s);
        if (rng.osc(from_piece, m) <= eps + tol) return true;
    }
    return false;
}

double wprime_exact_step(const CadlagPath& x, double delta, double tol) {
    Pieces p = step_pieces(x);
    RangeMinMax rng(p.values);
    // candidate oscillation levels: all pairwise |v_i - v_j|, plus 0
    std::vector<double> cand{0.0};
    for (std::size_t i = 0; i < p.values.size(); ++i)
        for (std::size_t j = i + 1; j < p.values.size(); ++j)
            cand.push_back(std::abs(p.values[i] - p.values[j]));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    // least feasible candidate (feasibility is monotone in eps)
    std::size_t lo = 0, hi = cand.size() - 1;
    if (wprime_feasible(p, rng, delta, cand[lo], tol)) return cand[lo];
    // cand.back() = full range, always feasible with the trivial partition {0, D}
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (wprime_feasible(p, rng, delta, cand[mid], tol)) hi = mid; else lo = mid;
    }
    return cand[hi];
}

// step interpolation of an arbitrary path on (uniform grid) U (own breakpoints)
CadlagPath step_interpolate(const CadlagPath& x, double grid_step) {
    std::vector<double> grid;
    const double D = x.domain();
    for (double t = 0.0; t < D; t += grid_step) grid.push_back(t);
    for (double b : x.breakpoints())
        if (b < D) grid.push_back(b);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<double> vals;
    vals.reserve(grid.size());
    for (double t : grid) vals.push_back(x.value(t));
    return CadlagPath::step(grid, vals, x.terminal(), D);
}

double wdouble_exact_step(const CadlagPath& x, double delta, double tol) {
    Pieces p = step_pieces(x);
    // append the degenerate terminal piece [D, D]
    const int m = (int)p.values.size();
    std::vector<double> v = p.values;
    v.push_back(p.terminal);
    auto piece_start = [&](int k) { return k < m ? p.bounds[k] : p.bounds[m]; };
    auto piece_end = [&](int k) { return k < m ? p.bounds[k + 1] : p.bounds[m]; };
    auto degenerate = [&](int k) { return k == m; };

    double best = 0.0;
    for (int p1 = 0; p1 <= m; ++p1) {
        for (int p2 = p1; p2 <= m; ++p2) {
            // minimal time gap between t1 in piece p1 and t2 in piece p2
            bool ok;
            if (p1 == p2) {
                ok = true;
            } else {
                double gap = piece_start(p2) - piece_end(p1);
                ok = degenerate(p1) ? (gap <= delta + tol) : (gap + tol < delta);
                if (gap < 0) ok = true;
            }
            if (!ok) continue;
            for (int q = p1; q <= p2; ++q) {
                double val = std::min(std::abs(v[q] - v[p1]), std::abs(v[p2] - v[q]));
                if (val > best) best = val;
            }
        }
    }
    return best;
}

}  // namespace

ModulusResult modulus_w_prime_detailed(const CadlagPath& x, double delta,
                                       double grid_step) {
    if (!(delta > 0.0 && delta < x.domain()))
        throw std::invalid_argument("modulus_w_prime: delta in (0, domain)");
    if (x.is_step())
        return {wprime_exact_step(x, delta, kFeasibilityTol), true, 0.0, 0.0};
    CadlagPath xg = step_interpolate(x, grid_step);
    double err = 2.0 * uniform_distance(x, xg);  // |w'_x - w'_y| <= 2 ||x - y||
    return {wprime_exact_step(xg, delta, kFeasibilityTol), false, grid_step, err};
}

double modulus_w_prime(const CadlagPath& x, double delta) {
    return modulus_w_prime_detailed(x, delta).value;
}

ModulusResult modulus_w_double_prime_detailed(const CadlagPath& x, double delta,
                                              double grid_step) {
    if (!(delta > 0.0 && delta < x.domain()))
        throw std::invalid_argument("modulus_w_double_prime: delta in (0, domain)");
    if (x.is_step())
        return {wdouble_exact_step(x, delta, kFeasibilityTol), true, 0.0, 0.0};
    CadlagPath xg = step_interpolate(x, grid_step);
    double err = 2.0 * uniform_distance(x, xg);
    return {wdouble_exact_step(xg, delta, kFeasibilityTol), false, grid_step, err};
}

double modulus_w_double_prime(const CadlagPath& x, double delta) {
    return modulus_w_double_prime_detailed(x, delta).value;
}

bool modulus_w_prime_at_least(const CadlagPath& x, double delta, double eps) {
    if (!(delta > 0.0 && delta < x.domain()))
        throw std::invalid_argument("modulus_w_prime_at_least: delta in (0, domain)");
    const CadlagPath* p = &x;
    CadlagPath tmp;
    if (!x.is_step()) {
        tmp = step_interpolate(x, 1e-3);
        p = &tmp;
    }
    Pieces pc = step_pieces(*p);
    RangeMinMax rng(pc.values);
    return !wprime_feasible(pc, rng, delta, eps - 1e-9, kFeasibilityTol);
}

}  // namespace cadlag
