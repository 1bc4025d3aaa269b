#include "cadlag/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cadlag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = kFeasibilityTol;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

struct StepView {
    std::vector<double> jumps;   // interior jump times
    std::vector<double> values;  // piece values, jumps.size() + 1 of them
    double terminal = 0.0;
    double domain = 1.0;
};

StepView step_view(const CadlagPath& x) {
    require(x.is_step(), "skorokhod metric: exact mode needs step paths");
    StepView v;
    v.domain = x.domain();
    v.terminal = x.terminal();
    const auto& segs = x.segments();
    v.values.push_back(segs[0].value);
    for (std::size_t i = 1; i < segs.size(); ++i) {
        v.jumps.push_back(segs[i].start);
        v.values.push_back(segs[i].value);
    }
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// TimeChange
// ---------------------------------------------------------------------------

TimeChange::TimeChange(std::vector<std::pair<double, double>> knots)
    : knots_(std::move(knots)) {
    require(knots_.size() >= 2, "timechange: needs >= 2 knots");
    require(knots_.front().first == 0.0 && knots_.front().second == 0.0,
            "timechange: first knot must be (0,0)");
    require(knots_.back().first == 1.0 && knots_.back().second == 1.0,
            "timechange: last knot must be (1,1)");
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
        require(knots_[i].first < knots_[i + 1].first &&
                    knots_[i].second < knots_[i + 1].second,
                "timechange: knots must be strictly increasing");
}

TimeChange TimeChange::identity() { return TimeChange({{0.0, 0.0}, {1.0, 1.0}}); }

double TimeChange::operator()(double t) const {
    require(t >= 0.0 && t <= 1.0, "timechange: t in [0,1]");
    std::size_t i = 0;
    while (i + 2 < knots_.size() && knots_[i + 1].first <= t) ++i;
    auto [t0, v0] = knots_[i];
    auto [t1, v1] = knots_[i + 1];
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

TimeChangeNorms timechange_norms(const TimeChange& lambda) {
    TimeChangeNorms n;
    const auto& k = lambda.knots();
    for (const auto& [t, v] : k) n.deviation = std::max(n.deviation, std::abs(v - t));
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        double slope = (k[i + 1].second - k[i].second) / (k[i + 1].first - k[i].first);
        n.slope = std::max(n.slope, std::abs(std::log(slope)));
    }
    return n;
}

// ---------------------------------------------------------------------------
// Skorokhod d: staircase feasibility over piece pairs.
//
// tau_j = preimage of y's j-th jump under lambda; a monotone staircase through
// the grid of piece pairs fixes which pieces coexist. Every visited pair must
// match within eps (squeezed pieces still coexist with one x-piece in any
// strict realization), jump preimages live in +-eps windows, simultaneous
// x/y jumps are diagonal moves. Minimal-position propagation is exact because
// all coupling constraints are one-sided.
// ---------------------------------------------------------------------------

namespace {

bool d_feasible(const StepView& x, const StepView& y, double eps) {
    const int p = (int)x.jumps.size();
    const int q = (int)y.jumps.size();
    if (std::abs(x.terminal - y.terminal) > eps + kTol) return false;
    auto ok = [&](int i, int j) {
        return std::abs(x.values[i] - y.values[j]) <= eps + kTol;
    };
    if (!ok(0, 0)) return false;
    auto xa = [&](int i) {  // a_0 = 0, a_{p+1} = domain
        if (i == 0) return 0.0;
        if (i == p + 1) return x.domain;
        return x.jumps[i - 1];
    };
    std::vector<std::vector<double>> L(p + 1, std::vector<double>(q + 1, kInf));
    L[0][0] = 0.0;
    for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= q; ++j) {
            if (i == 0 && j == 0) continue;
            if (!ok(i, j)) continue;
            double best = kInf;
            if (i > 0 && L[i - 1][j] < kInf && L[i - 1][j] <= xa(i) + kTol)
                best = std::min(best, L[i - 1][j]);
            if (j > 0 && L[i][j - 1] < kInf) {
                double c = y.jumps[j - 1];
                double lo = std::max({L[i][j - 1], c - eps, xa(i)});
                double hi = std::min(c + eps, xa(i + 1));
                if (lo <= hi + kTol) best = std::min(best, lo);
            }
            if (i > 0 && j > 0 && L[i - 1][j - 1] < kInf) {
                double c = y.jumps[j - 1];
                double a = xa(i);
                if (std::abs(a - c) <= eps + kTol && L[i - 1][j - 1] <= a + kTol)
                    best = std::min(best, a);
            }
            L[i][j] = best;
        }
    }
    return L[p][q] < kInf;
}

std::vector<double> d_candidates(const StepView& x, const StepView& y) {
    std::vector<double> c{0.0};
    auto add_vals = [&](const std::vector<double>& a, const std::vector<double>& b) {
        for (double u : a)
            for (double w : b) c.push_back(std::abs(u - w));
    };
    std::vector<double> xv = x.values;
    xv.push_back(x.terminal);
    std::vector<double> yv = y.values;
    yv.push_back(y.terminal);
    add_vals(xv, yv);
    std::vector<double> xt{0.0, x.domain};
    xt.insert(xt.end(), x.jumps.begin(), x.jumps.end());
    std::vector<double> yt = y.jumps;
    for (double a : xt)
        for (double cj : yt) {
            c.push_back(std::abs(a - cj));
            c.push_back(std::abs(a - cj) / 2.0);
        }
    for (std::size_t i = 0; i < yt.size(); ++i)
        for (std::size_t j = i + 1; j < yt.size(); ++j)
            c.push_back((yt[j] - yt[i]) / 2.0);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

}  // namespace

double skorokhod_d(const CadlagPath& x, const CadlagPath& y) {
    require(x.domain() == y.domain(), "skorokhod_d: domain mismatch");
    StepView vx = step_view(x), vy = step_view(y);
    std::vector<double> cand = d_candidates(vx, vy);
    // monotone feasibility; the largest candidate (full value spread) is feasible
    std::size_t lo = 0, hi = cand.size() - 1;
    if (d_feasible(vx, vy, cand[lo])) return cand[lo];
    while (!d_feasible(vx, vy, cand[hi])) ++hi;  // defensive; should not trigger
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (d_feasible(vx, vy, cand[mid])) hi = mid; else lo = mid;
    }
    return cand[hi];
}

// ---------------------------------------------------------------------------
// d°: same staircase, multiplicative slope windows, interval propagation.
// ---------------------------------------------------------------------------

namespace {

using Intervals = std::vector<std::pair<double, double>>;

void merge_into(Intervals& dst, double lo, double hi) {
    if (lo > hi + kTol) return;
    dst.emplace_back(lo, hi);
}

Intervals normalize(Intervals v) {
    if (v.empty()) return v;
    std::sort(v.begin(), v.end());
    Intervals out;
    out.push_back(v[0]);
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i].first <= out.back().second + kTol)
            out.back().second = std::max(out.back().second, v[i].second);
        else
            out.push_back(v[i]);
    }
    return out;
}

bool dcirc_feasible(const StepView& x, const StepView& y, double eps) {
    const int p = (int)x.jumps.size();
    const int q = (int)y.jumps.size();
    if (std::abs(x.terminal - y.terminal) > eps + kTol) return false;
    auto ok = [&](int i, int j) {
        return std::abs(x.values[i] - y.values[j]) <= eps + kTol;
    };
    if (!ok(0, 0)) return false;
    const double B = std::exp(eps);
    auto xa = [&](int i) {
        if (i == 0) return 0.0;
        if (i == p + 1) return x.domain;
        return x.jumps[i - 1];
    };
    auto yc = [&](int j) { return j == 0 ? 0.0 : y.jumps[j - 1]; };

    // I[i][j]: feasible positions of tau_j while x-piece i is current
    std::vector<std::vector<Intervals>> I(p + 1, std::vector<Intervals>(q + 1));
    I[0][0] = {{0.0, 0.0}};
    for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= q; ++j) {
            if (i == 0 && j == 0) continue;
            if (!ok(i, j)) continue;
            Intervals acc;
            if (i > 0)
                for (auto [lo, hi] : I[i - 1][j])  // x-jump at xa(i): tau_j <= xa(i)
                    merge_into(acc, lo, std::min(hi, xa(i)));
            if (j > 0) {
                double dc = yc(j) - yc(j - 1);
                double wlo = dc / B, whi = dc * B;
                for (auto [lo, hi] : I[i][j - 1])  // place tau_j inside x-piece i
                    merge_into(acc, std::max(lo + wlo, xa(i)),
                               std::min(hi + whi, xa(i + 1)));
                if (i > 0)
                    for (auto [lo, hi] : I[i - 1][j - 1]) {  // tau_j = xa(i)
                        double a = xa(i);
                        if (a >= lo + wlo - kTol && a <= hi + whi + kTol)
                            merge_into(acc, a, a);
                    }
            }
            I[i][j] = normalize(std::move(acc));
        }
    }
    if (q == 0) return !I[p][0].empty();
    // last lambda segment (tau_q, c_q) -> (D, D)
    double rem = x.domain - yc(q);
    double lo_f = x.domain - rem * B, hi_f = x.domain - rem / B;
    for (auto [lo, hi] : I[p][q])
        if (std::max(lo, lo_f) <= std::min(hi, hi_f) + kTol) return true;
    return false;
}

}  // namespace

EnclosedValue skorokhod_d_circ(const CadlagPath& x, const CadlagPath& y,
                               double target_half_width) {
    require(x.domain() == y.domain(), "skorokhod_d_circ: domain mismatch");
    StepView vx = step_view(x), vy = step_view(y);
    double hi = uniform_distance(x, y);  // d° <= ||x - y|| (identity lambda)
    if (hi == 0.0 || dcirc_feasible(vx, vy, 0.0)) return {0.0, 0.0};
    double lo = 0.0;
    while (hi - lo > 2.0 * target_half_width) {
        double mid = 0.5 * (lo + hi);
        if (dcirc_feasible(vx, vy, mid)) hi = mid; else lo = mid;
    }
    return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

// ---------------------------------------------------------------------------
// grid-approximate d, psi taper, restriction, d_infinity
// ---------------------------------------------------------------------------

namespace {

CadlagPath step_interpolate_path(const CadlagPath& x, double grid_step) {
    const double D = x.domain();
    std::vector<double> grid;
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

}  // namespace

ApproxValue skorokhod_d_grid(const CadlagPath& x, const CadlagPath& y,
                             double grid_step) {
    require(x.domain() == y.domain(), "skorokhod_d_grid: domain mismatch");
    CadlagPath xs = x.is_step() ? x : step_interpolate_path(x, grid_step);
    CadlagPath ys = y.is_step() ? y : step_interpolate_path(y, grid_step);
    double err = 0.0;
    if (!x.is_step()) err += uniform_distance(x, xs);
    if (!y.is_step()) err += uniform_distance(y, ys);
    return {skorokhod_d(xs, ys), err};
}

namespace {

struct Piece {  // one segment with an explicit end
    double start, end, v_start, v_end;
    SegmentKind kind;
};

std::vector<Piece> pieces_of(const CadlagPath& x) {
    std::vector<Piece> out;
    const auto& segs = x.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        double e = i + 1 < segs.size() ? segs[i + 1].start : x.domain();
        out.push_back({segs[i].start, e, segs[i].value, segs[i].end_value, segs[i].kind});
    }
    return out;
}

double piece_at(const Piece& p, double t) {
    if (p.kind == SegmentKind::Constant) return p.v_start;
    return p.v_start + (p.v_end - p.v_start) * (t - p.start) / (p.end - p.start);
}

// clip piece to [a, b] (assumes overlap)
Piece clip(const Piece& p, double a, double b) {
    Piece c = p;
    double s = std::max(p.start, a), e = std::min(p.end, b);
    c.v_start = piece_at(p, s);
    c.v_end = (e == p.end) ? p.v_end : piece_at(p, e);
    c.start = s;
    c.end = e;
    return c;
}

// constant extension of x to a larger horizon
CadlagPath extend_copy(const CadlagPath& x, double horizon) {
    if (horizon <= x.domain()) return x;
    std::vector<Segment> segs = x.segments();
    segs.push_back({x.domain(), x.terminal(), x.terminal(), SegmentKind::Constant});
    return CadlagPath::from_segments(std::move(segs), x.terminal(), horizon);
}

}  // namespace

CadlagPath psi_taper(const CadlagPath& x, int i, double taper_grid) {
    require(i >= 1, "psi_taper: i >= 1");
    require((double)i <= x.domain(), "psi_taper: i exceeds horizon");
    const double lo = i - 1.0, hi = (double)i;
    std::vector<Segment> out;
    for (const Piece& p : pieces_of(x)) {
        if (p.end <= lo && p.start < lo) {
            out.push_back({p.start, p.v_start, p.v_end, p.kind});
            continue;
        }
        if (p.start >= hi) break;
        // identity portion [p.start, lo)
        if (p.start < lo) {
            Piece c = clip(p, p.start, lo);
            out.push_back({c.start, c.v_start, c.v_end, c.kind});
        }
        // taper portion within [max(p.start, lo), min(p.end, hi))
        double s = std::max(p.start, lo), e = std::min(p.end, hi);
        if (s >= e) continue;
        Piece c = clip(p, s, e);
        if (c.kind == SegmentKind::Constant) {
            out.push_back({s, (hi - s) * c.v_start, (hi - e) * c.v_start,
                           SegmentKind::Linear});
        } else {
            // (hi - t) x(t) is quadratic on a linear piece: chord subdivision
            int steps = std::max(1, (int)std::ceil((e - s) / taper_grid));
            for (int u = 0; u < steps; ++u) {
                double a = s + (e - s) * u / steps;
                double b = s + (e - s) * (u + 1) / steps;
                out.push_back({a, (hi - a) * piece_at(c, a), (hi - b) * piece_at(c, b),
                               SegmentKind::Linear});
            }
        }
    }
    if (out.empty()) out.push_back({0.0, 0.0, 0.0, SegmentKind::Constant});
    return CadlagPath::from_segments(std::move(out), 0.0, hi);
}

CadlagPath restrict_path(const CadlagPath& x, double t) {
    require(t > 0.0 && t <= x.domain(), "restrict_path: t in (0, horizon]");
    std::vector<Segment> out;
    for (const Piece& p : pieces_of(x)) {
        if (p.start >= t) break;
        Piece c = clip(p, p.start, std::min(p.end, t));
        out.push_back({c.start, c.v_start, c.v_end, c.kind});
    }
    return CadlagPath::from_segments(std::move(out), x.value(t), t);
}

ApproxValue d_infinity(const CadlagPath& x, const CadlagPath& y, int terms,
                       double grid_step) {
    require(terms >= 1, "d_infinity: terms >= 1");
    double value = 0.0;
    double err = std::pow(2.0, -terms);  // tail bound
    for (int i = 1; i <= terms; ++i) {
        CadlagPath px = psi_taper(extend_copy(x, (double)i), i, grid_step);
        CadlagPath py = psi_taper(extend_copy(y, (double)i), i, grid_step);
        ApproxValue di = skorokhod_d_grid(px, py, grid_step);
        value += std::pow(2.0, -i) * std::min(1.0, di.value);
        err += std::pow(2.0, -i) * di.error_bound;
    }
    return {value, err};
}

// ---------------------------------------------------------------------------
// Prokhorov distance
// ---------------------------------------------------------------------------

DiscreteMeasure::DiscreteMeasure(std::vector<std::string> atoms,
                                 std::vector<double> weights,
                                 std::vector<std::vector<double>> dist)
    : atoms_(std::move(atoms)), weights_(std::move(weights)), dist_(std::move(dist)) {
    const std::size_t n = atoms_.size();
    require(n >= 1, "measure: needs atoms");
    require(weights_.size() == n, "measure: weights size mismatch");
    require(dist_.size() == n, "measure: dist size mismatch");
    double sum = 0.0;
    for (double w : weights_) {
        require(w >= -kTol, "measure: negative weight");
        sum += w;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "measure: weights must sum to 1");
    for (std::size_t i = 0; i < n; ++i) {
        require(dist_[i].size() == n, "measure: dist row size mismatch");
        require(dist_[i][i] == 0.0, "measure: dist diagonal must be 0");
        for (std::size_t j = 0; j < n; ++j) {
            require(dist_[i][j] >= 0.0, "measure: dist must be nonnegative");
            require(dist_[i][j] == dist_[j][i], "measure: dist must be symmetric");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                require(dist_[i][j] <= dist_[i][k] + dist_[k][j] + 1e-12,
                        "measure: dist violates the triangle inequality");
}

bool DiscreteMeasure::same_space(const DiscreteMeasure& o) const {
    return atoms_ == o.atoms_ && dist_ == o.dist_;
}

namespace {

// minimal eps >= 0 with P(A) <= Q(A^eps) + eps for every subset A; thresholds
// are the sorted distinct distances (closed neighborhoods).
double one_sided_exact(const std::vector<double>& pw, const std::vector<double>& qw,
                       const std::vector<std::vector<double>>& dist,
                       const std::vector<double>& thresholds) {
    const int n = (int)pw.size();
    double worst = 0.0;
    std::vector<double> mindist(n);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        double pa = 0.0;
        for (int b = 0; b < n; ++b)
            if (mask >> b & 1) pa += pw[b];
        for (int b = 0; b < n; ++b) {
            double md = kInf;
            for (int a = 0; a < n; ++a)
                if (mask >> a & 1) md = std::min(md, dist[b][a]);
            mindist[b] = md;
        }
        double eps_a = kInf;
        for (std::size_t k = 0; k < thresholds.size(); ++k) {
            double d = thresholds[k];
            double qa = 0.0;
            for (int b = 0; b < n; ++b)
                if (mindist[b] <= d + kTol) qa += qw[b];
            double need = pa - qa;  // eps >= need and eps >= d, eps < next threshold
            double cand = std::max(d, need);
            double next = (k + 1 < thresholds.size()) ? thresholds[k + 1] : kInf;
            if (cand < next) {
                eps_a = cand;
                break;
            }
        }
        worst = std::max(worst, eps_a);
    }
    return worst;
}

// Edmonds-Karp on the bipartite transport network; returns max flow value.
double bipartite_maxflow(const std::vector<double>& pw, const std::vector<double>& qw,
                         const std::vector<std::vector<char>>& edge) {
    const int n = (int)pw.size();
    const int N = 2 * n + 2, S = 2 * n, T = 2 * n + 1;
    std::vector<std::vector<double>> cap(N, std::vector<double>(N, 0.0));
    for (int i = 0; i < n; ++i) cap[S][i] = pw[i];
    for (int j = 0; j < n; ++j) cap[n + j][T] = qw[j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (edge[i][j]) cap[i][n + j] = 2.0;  // effectively infinite
    double flow = 0.0;
    while (true) {
        std::vector<int> prev(N, -1);
        prev[S] = S;
        std::vector<int> queue{S};
        for (std::size_t h = 0; h < queue.size() && prev[T] < 0; ++h) {
            int u = queue[h];
            for (int v = 0; v < N; ++v)
                if (prev[v] < 0 && cap[u][v] > 1e-15) {
                    prev[v] = u;
                    queue.push_back(v);
                }
        }
        if (prev[T] < 0) break;
        double aug = kInf;
        for (int v = T; v != S; v = prev[v]) aug = std::min(aug, cap[prev[v]][v]);
        for (int v = T; v != S; v = prev[v]) {
            cap[prev[v]][v] -= aug;
            cap[v][prev[v]] += aug;
        }
        flow += aug;
    }
    return flow;
}

double prokhorov_flow(const std::vector<double>& pw, const std::vector<double>& qw,
                      const std::vector<std::vector<double>>& dist,
                      const std::vector<double>& thresholds) {
    const int n = (int)pw.size();
    double best = kInf;
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        double d = thresholds[k];
        std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) edge[i][j] = dist[i][j] <= d + kTol;
        double flow = bipartite_maxflow(pw, qw, edge);
        double need = 1.0 - flow;  // Strassen: feasible iff eps >= 1 - maxflow
        double cand = std::max(d, need);
        double next = (k + 1 < thresholds.size()) ? thresholds[k + 1] : kInf;
        if (cand < next) best = std::min(best, cand);
    }
    return best;
}

}  // namespace

double prokhorov_distance(const DiscreteMeasure& p, const DiscreteMeasure& q,
                          ProkhorovMode mode) {
    require(p.same_space(q), "prokhorov: measures must share atoms and distances");
    const int n = (int)p.size();
    std::vector<double> thresholds{0.0};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) thresholds.push_back(p.dist()[i][j]);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                     thresholds.end());
    if (mode == ProkhorovMode::Auto)
        mode = n <= 15 ? ProkhorovMode::Exact : ProkhorovMode::Flow;
    if (mode == ProkhorovMode::Exact) {
        if (n > 15)
            throw std::length_error("prokhorov: exact mode capped at 15 atoms; use flow mode");
        double a = one_sided_exact(p.weights(), q.weights(), p.dist(), thresholds);
        double b = one_sided_exact(q.weights(), p.weights(), p.dist(), thresholds);
        return std::max(a, b);
    }
    return prokhorov_flow(p.weights(), q.weights(), p.dist(), thresholds);
}

}  // namespace cadlag
