#include "cadlag/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cadlag {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(SeededStream s) {
    std::uint64_t k = s.seed;
    std::uint64_t a = splitmix64(k);
    k = s.stream_id ^ 0x5851F42D4C957F2Dull;
    std::uint64_t b = splitmix64(k);
    state_ = a ^ (b + 0x9E3779B97F4A7C15ull);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform01() {
    // (0, 1]: 53-bit mantissa shifted into (0,1]
    return ((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::uniform_open() {
    double u;
    do { u = (next_u64() >> 11) * 0x1.0p-53; } while (u == 0.0);
    return u;
}

int Rng::rademacher() { return (next_u64() & 1) ? 1 : -1; }

IncrementLaw IncrementLaw::rademacher() { return {Kind::Rademacher, 1.0, {}, {}}; }

IncrementLaw IncrementLaw::centered_uniform(double sigma) {
    require(sigma > 0.0, "increment law: sigma > 0");
    return {Kind::CenteredUniform, sigma, {}, {}};
}

IncrementLaw IncrementLaw::finite_support(std::vector<double> values,
                                          std::vector<double> probs) {
    require(values.size() == probs.size() && !values.empty(),
            "increment law: values/probs mismatch");
    double mean = 0.0, var = 0.0, total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        require(probs[i] >= 0.0, "increment law: negative probability");
        mean += probs[i] * values[i];
        total += probs[i];
    }
    require(std::abs(total - 1.0) <= 1e-12, "increment law: probs must sum to 1");
    require(std::abs(mean) <= 1e-12, "increment law: mean must be 0");
    for (std::size_t i = 0; i < values.size(); ++i)
        var += probs[i] * values[i] * values[i];
    IncrementLaw law{Kind::FiniteSupport, std::sqrt(var), std::move(values),
                     std::move(probs)};
    return law;
}

double IncrementLaw::draw(Rng& rng) const {
    switch (kind) {
        case Kind::Rademacher:
            return (double)rng.rademacher();
        case Kind::CenteredUniform:
            // centered uniform on [-c, c], c = sigma * sqrt(3)
            return sigma * std::sqrt(3.0) * (2.0 * rng.uniform_open() - 1.0);
        case Kind::FiniteSupport: {
            double u = rng.uniform01();
            double acc = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) {
                acc += probs[i];
                if (u <= acc) return values[i];
            }
            return values.back();
        }
    }
    return 0.0;
}

CadlagPath donsker_path_from_increments(const std::vector<double>& increments,
                                        double sigma, DonskerVariant variant) {
    const int n = (int)increments.size();
    require(n >= 1, "donsker: n >= 1");
    require(sigma > 0.0, "donsker: sigma > 0");
    const double scale = 1.0 / (sigma * std::sqrt((double)n));
    std::vector<double> s(n + 1, 0.0);
    for (int i = 0; i < n; ++i) s[i + 1] = s[i] + increments[i];
    if (variant == DonskerVariant::D) {
        std::vector<double> breaks(n), values(n);
        for (int i = 0; i < n; ++i) {
            breaks[i] = (double)i / n;
            values[i] = s[i] * scale;
        }
        return CadlagPath::step(breaks, values, s[n] * scale);
    }
    std::vector<double> ts(n + 1), vs(n + 1);
    for (int i = 0; i <= n; ++i) {
        ts[i] = (double)i / n;
        vs[i] = s[i] * scale;
    }
    return CadlagPath::piecewise_linear(ts, vs);
}

CadlagPath donsker_path(int n, const IncrementLaw& law, SeededStream stream,
                        DonskerVariant variant) {
    require(n >= 1, "donsker: n >= 1");
    Rng rng(stream);
    std::vector<double> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = law.draw(rng);
    return donsker_path_from_increments(xi, law.sigma, variant);
}

CadlagPath poisson_path_from_indicators(const std::vector<bool>& xi) {
    const int n = (int)xi.size();
    require(n >= 1, "poisson path: n >= 1");
    std::vector<double> breaks{0.0};
    std::vector<double> values{0.0};
    int count = 0;
    for (int i = 1; i <= n; ++i)
        if (xi[i - 1]) {
            ++count;
            breaks.push_back((double)i / n);
            values.push_back((double)count);
        }
    return CadlagPath::step(breaks, values, (double)count);
}

CadlagPath poisson_path(int n, double alpha, SeededStream stream) {
    require(n >= 1, "poisson path: n >= 1");
    require(alpha > 0.0 && alpha < n, "poisson path: 0 < alpha < n");
    const double p = alpha / n;
    Rng rng(stream);
    std::vector<double> breaks{0.0};
    std::vector<double> values{0.0};
    // skip-sampling: geometric gaps between successes
    const double log1mp = std::log1p(-p);
    int i = 0, count = 0;
    while (true) {
        double u = rng.uniform_open();
        int gap = (int)std::floor(std::log(u) / log1mp);  // failures before success
        if (gap < 0) gap = 0;
        long long next = (long long)i + gap + 1;
        if (next > n) break;
        i = (int)next;
        ++count;
        breaks.push_back((double)i / n);
        values.push_back((double)count);
    }
    return CadlagPath::step(breaks, values, (double)count);
}

CdfSpec CdfSpec::uniform() { return {Kind::Uniform, 1.0, std::nullopt}; }

CdfSpec CdfSpec::power(double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("cdf: power alpha > 0");
    return {Kind::Power, alpha, std::nullopt};
}

CdfSpec CdfSpec::piecewise(CadlagPath f) {
    require(f.domain() == 1.0, "cdf: pl spec lives on [0,1]");
    require(std::abs(f.terminal() - 1.0) <= 1e-9, "cdf: F(1) must equal 1");
    // nondecreasing: each segment nondecreasing and jumps upward
    const auto& segs = f.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        require(segs[i].end_value >= segs[i].value - 1e-15, "cdf: F must be nondecreasing");
        double next = i + 1 < segs.size() ? segs[i + 1].value : f.terminal();
        require(next >= segs[i].end_value - 1e-15, "cdf: F must be nondecreasing");
        require(segs[i].value >= -1e-15 && segs[i].end_value <= 1.0 + 1e-15,
                "cdf: F values in [0,1]");
    }
    return {Kind::Pl, 1.0, std::move(f)};
}

double CdfSpec::value(double t) const {
    switch (kind) {
        case Kind::Uniform: return std::clamp(t, 0.0, 1.0);
        case Kind::Power: return std::pow(std::clamp(t, 0.0, 1.0), alpha);
        case Kind::Pl: return pl->value(t);
    }
    return 0.0;
}

double quantile_transform(double u, const CdfSpec& cdf) {
    require(u > 0.0 && u <= 1.0, "quantile_transform: u in (0, 1]");
    switch (cdf.kind) {
        case CdfSpec::Kind::Uniform: return u;
        case CdfSpec::Kind::Power: return std::pow(u, 1.0 / cdf.alpha);
        case CdfSpec::Kind::Pl: break;
    }
    const CadlagPath& f = *cdf.pl;
    const auto& segs = f.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const Segment& s = segs[i];
        double e = i + 1 < segs.size() ? segs[i + 1].start : f.domain();
        if (s.value >= u) return s.start;  // jump (or start) reaches u
        if (s.kind == SegmentKind::Linear && s.end_value > s.value) {
            // first t in [start, e) with F(t) >= u
            if (s.end_value >= u) {
                double t = s.start + (u - s.value) * (e - s.start) / (s.end_value - s.value);
                if (t < e) return t;
            }
        }
    }
    return f.domain();  // F(1) = 1 >= u
}

CadlagPath empirical_path_from_samples(const std::vector<double>& samples,
                                       const CdfSpec& cdf) {
    const int n = (int)samples.size();
    require(n >= 1, "empirical path: n >= 1");
    const double root = std::sqrt((double)n);
    std::vector<double> xs = samples;
    std::sort(xs.begin(), xs.end());
    for (double v : xs) require(v >= 0.0 && v <= 1.0, "empirical path: samples in [0,1]");

    // breakpoints: 0, sample values (< 1), and F's own breakpoints
    std::vector<double> grid{0.0};
    for (double v : xs)
        if (v > 0.0 && v < 1.0) grid.push_back(v);
    if (cdf.kind == CdfSpec::Kind::Pl)
        for (double b : cdf.pl->breakpoints())
            if (b < 1.0) grid.push_back(b);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto fn = [&](double t) {  // F_n(t)
        return (double)(std::upper_bound(xs.begin(), xs.end(), t) - xs.begin()) / n;
    };
    auto y_right = [&](double t) { return root * (fn(t) - cdf.value(t)); };

    std::vector<Segment> segs;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double s = grid[i];
        double e = i + 1 < grid.size() ? grid[i + 1] : 1.0;
        double vs = y_right(s);
        // F is affine on (s, e): the left limit at e determines the end value
        double fe_left = cdf.kind == CdfSpec::Kind::Pl ? cdf.pl->left_limit(e)
                                                       : cdf.value(e);
        double ve = root * (fn(s) - fe_left);
        segs.push_back({s, vs, ve,
                        vs == ve ? SegmentKind::Constant : SegmentKind::Linear});
    }
    double terminal = root * (1.0 - cdf.value(1.0));  // 0 when F(1) = 1
    return CadlagPath::from_segments(std::move(segs), terminal);
}

CadlagPath empirical_path(int n, const CdfSpec& cdf, SeededStream stream) {
    require(n >= 1, "empirical path: n >= 1");
    Rng rng(stream);
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = quantile_transform(rng.uniform01(), cdf);
    return empirical_path_from_samples(xs, cdf);
}

CadlagPath bridge_transform(const CadlagPath& x) {
    const double x1 = x.terminal();
    require(x.domain() == 1.0, "bridge_transform: path must live on [0,1]");
    std::vector<Segment> out;
    const auto& segs = x.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const Segment& s = segs[i];
        double e = i + 1 < segs.size() ? segs[i + 1].start : 1.0;
        double vs = s.value - s.start * x1;
        double ve = s.end_value - e * x1;
        out.push_back({s.start, vs, ve,
                       vs == ve ? SegmentKind::Constant : SegmentKind::Linear});
    }
    return CadlagPath::from_segments(std::move(out), 0.0);
}

namespace {

struct PieceIter {
    double start, end, v_start, v_end;
    SegmentKind kind;
};

template <class Fn>
void for_each_piece(const CadlagPath& x, Fn&& fn) {
    const auto& segs = x.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        double e = i + 1 < segs.size() ? segs[i + 1].start : x.domain();
        fn(PieceIter{segs[i].start, e, segs[i].value, segs[i].end_value, segs[i].kind});
    }
}

}  // namespace

double apply_functional(const CadlagPath& x, const Functional& f) {
    using K = Functional::Kind;
    switch (f.kind) {
        case K::Sup: {
            double m = x.terminal();
            for_each_piece(x, [&](const PieceIter& p) {
                m = std::max({m, p.v_start, p.v_end});
            });
            return m;
        }
        case K::Inf: {
            double m = x.terminal();
            for_each_piece(x, [&](const PieceIter& p) {
                m = std::min({m, p.v_start, p.v_end});
            });
            return m;
        }
        case K::SupAbs:
            return std::max(std::abs(apply_functional(x, Functional::sup())),
                            std::abs(apply_functional(x, Functional::inf())));
        case K::Range:
            return apply_functional(x, Functional::sup()) -
                   apply_functional(x, Functional::inf());
        case K::LastZero: {
            if (x.terminal() == 0.0) return x.domain();
            double last = 0.0;
            for_each_piece(x, [&](const PieceIter& p) {
                if (p.kind == SegmentKind::Constant) {
                    if (p.v_start == 0.0) last = std::max(last, p.end);
                    return;
                }
                // linear piece: x(t) = 0 at t* in [start, end)
                if (p.v_start == 0.0) last = std::max(last, p.start);
                if ((p.v_start < 0.0) != (p.v_end < 0.0) ||
                    (p.v_start > 0.0) != (p.v_end > 0.0)) {
                    double t = p.start + (0.0 - p.v_start) * (p.end - p.start) /
                                             (p.v_end - p.v_start);
                    if (t >= p.start && t < p.end) last = std::max(last, t);
                }
            });
            return last;
        }
        case K::OccupationPositive: {
            double total = 0.0;
            for_each_piece(x, [&](const PieceIter& p) {
                double len = p.end - p.start;
                if (p.kind == SegmentKind::Constant) {
                    if (p.v_start > 0.0) total += len;
                    return;
                }
                double a = p.v_start, b = p.v_end;
                if (a > 0.0 && b >= 0.0) { total += len; return; }
                if (a >= 0.0 && b > 0.0) { total += len; return; }
                if (a <= 0.0 && b <= 0.0) return;
                double cross = p.start + (0.0 - a) * len / (b - a);
                total += (a > 0.0) ? (cross - p.start) : (p.end - cross);
            });
            return total;
        }
        case K::Integral: {
            double total = 0.0;
            for_each_piece(x, [&](const PieceIter& p) {
                total += 0.5 * (p.v_start + p.v_end) * (p.end - p.start);
            });
            return total;
        }
        case K::KsScaled:
            return std::sqrt((double)f.n) * apply_functional(x, Functional::sup_abs());
    }
    return 0.0;
}

}  // namespace cadlag
