#include "cadlag/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cadlag/laws.hpp"
#include "cadlag/walks.hpp"

#include "json.hpp"

namespace cadlag {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& target_cdf) {
    require(!samples.empty(), "ks_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = (double)samples.size();
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = target_cdf(samples[i]);
        d = std::max(d, std::abs((double)(i + 1) / n - f));
        d = std::max(d, std::abs((double)i / n - f));
    }
    return d;
}

double tv_distance(const std::map<long long, std::uint64_t>& counts,
                   const std::map<long long, double>& pmf) {
    std::uint64_t total = 0;
    for (const auto& [k, c] : counts) total += c;
    require(total > 0, "tv_distance: empty histogram");
    double acc = 0.0;
    for (const auto& [k, c] : counts) {
        auto it = pmf.find(k);
        double p = it == pmf.end() ? 0.0 : it->second;
        acc += std::abs((double)c / (double)total - p);
    }
    for (const auto& [k, p] : pmf)
        if (!counts.count(k)) acc += p;
    return 0.5 * acc;
}

std::function<double(double)> resolve_target_cdf(const std::string& name) {
    if (name == "wiener-sup") return [](double b) { return wiener_sup_cdf(b); };
    if (name == "wiener-abs-sup") return [](double b) { return wiener_abs_sup_cdf(b); };
    if (name == "arcsine")
        return [](double t) { return arcsine_cdf(std::clamp(t, 0.0, 1.0)); };
    if (name == "kolmogorov") return [](double b) { return kolmogorov_cdf(b); };
    if (name == "bridge-sup") return [](double b) { return bridge_sup_cdf(b); };
    throw std::invalid_argument("unknown target law: " + name);
}

namespace {

IncrementLaw resolve_increments(const std::string& name) {
    if (name == "rademacher") return IncrementLaw::rademacher();
    if (name == "uniform") return IncrementLaw::centered_uniform(1.0);
    throw std::invalid_argument("unknown increment law: " + name);
}

Functional resolve_functional(const std::string& name, int n) {
    if (name == "sup") return Functional::sup();
    if (name == "inf") return Functional::inf();
    if (name == "sup_abs") return Functional::sup_abs();
    if (name == "range") return Functional::range();
    if (name == "last_zero") return Functional::last_zero();
    if (name == "occupation_positive") return Functional::occupation_positive();
    if (name == "integral") return Functional::integral();
    if (name == "ks_scaled") return Functional::ks_scaled(n);
    throw std::invalid_argument("unknown functional: " + name);
}

double one_replica(const ExperimentConfig& cfg, std::uint64_t stream_id) {
    SeededStream stream{cfg.seed, stream_id};
    if (cfg.process == "donsker-d" || cfg.process == "donsker-c") {
        CadlagPath x = donsker_path(cfg.n, resolve_increments(cfg.increments), stream,
                                    cfg.process == "donsker-d" ? DonskerVariant::D
                                                               : DonskerVariant::C);
        return apply_functional(x, resolve_functional(cfg.functional, cfg.n));
    }
    if (cfg.process == "empirical") {
        // sup_abs of Y^n is the scaled KS statistic: Y already carries sqrt(n)
        CadlagPath x = empirical_path(cfg.n, CdfSpec::uniform(), stream);
        return apply_functional(x, resolve_functional(cfg.functional, 1));
    }
    if (cfg.process == "poisson") {
        CadlagPath x = poisson_path(cfg.n, cfg.alpha, stream);
        return apply_functional(x, resolve_functional(cfg.functional, cfg.n));
    }
    throw std::invalid_argument("unknown process: " + cfg.process);
}

void run_replicas(const ExperimentConfig& cfg, std::vector<double>& out) {
    out.resize(cfg.replicas);
    int workers = std::max(1, cfg.workers);
    if (workers == 1) {
        for (int r = 0; r < cfg.replicas; ++r) out[r] = one_replica(cfg, (std::uint64_t)r);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (int r = w; r < cfg.replicas; r += workers)
                out[r] = one_replica(cfg, (std::uint64_t)r);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

ExperimentReport run_convergence_experiment(const ExperimentConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.config = config;
    require(config.replicas >= 100, "experiment: replicas >= 100");
    require(config.tolerance > 0.0, "experiment: tolerance > 0");
    std::vector<double> values;
    run_replicas(config, values);
    auto target = resolve_target_cdf(config.target);
    rep.distance = ks_distance(values, target);
    rep.pass = rep.distance <= config.tolerance;

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    int g = std::max(2, config.grid_points);
    rep.grid.resize(g);
    rep.empirical.resize(g);
    rep.target.resize(g);
    double lo = sorted.front(), hi = sorted.back();
    for (int i = 0; i < g; ++i) {
        double t = lo + (hi - lo) * i / (g - 1);
        rep.grid[i] = t;
        rep.empirical[i] =
            (double)(std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin()) /
            sorted.size();
        rep.target[i] = target(t);
    }
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Example-E1.3 triangle spike: 0 -> 1 on [0, 1/n], back to 0 on [1/n, 2/n].
CadlagPath spike_path(int n) {
    double a = 1.0 / n, b = 2.0 / n;
    return CadlagPath::piecewise_linear({0.0, a, b, 1.0}, {0.0, 1.0, 0.0, 0.0});
}

}  // namespace

TightnessReport tightness_probe(const std::string& process, int n, int replicas,
                                const std::vector<double>& deltas, double eps,
                                std::uint64_t seed, ModulusKind modulus,
                                double threshold) {
    require(!deltas.empty(), "tightness probe: needs deltas");
    TightnessReport rep;
    rep.threshold = threshold;
    std::vector<std::vector<char>> exceed(deltas.size(),
                                          std::vector<char>(std::max(replicas, 1), 0));
    int reps = replicas;
    if (process == "spike") reps = 1;  // Dirac measures
    for (int r = 0; r < reps; ++r) {
        CadlagPath x;
        if (process == "spike") {
            x = CadlagPath();  // per-delta below
        } else if (process == "donsker-d" || process == "donsker-c") {
            x = donsker_path(n, IncrementLaw::rademacher(), SeededStream{seed, (std::uint64_t)r},
                             process == "donsker-d" ? DonskerVariant::D : DonskerVariant::C);
        } else {
            throw std::invalid_argument("tightness probe: unknown process " + process);
        }
        for (std::size_t di = 0; di < deltas.size(); ++di) {
            const CadlagPath& path =
                process == "spike" ? (x = spike_path(std::max(n, (int)std::ceil(2.0 / deltas[di])))) : x;
            bool over;
            if (modulus == ModulusKind::WPrime)
                over = modulus_w_prime_at_least(path, deltas[di], eps);
            else if (modulus == ModulusKind::W)
                over = modulus_w(path, deltas[di]) >= eps;
            else
                over = modulus_w_double_prime(path, deltas[di]) >= eps;
            exceed[di][r] = over ? 1 : 0;
        }
    }
    for (std::size_t di = 0; di < deltas.size(); ++di) {
        double k = 0;
        for (int r = 0; r < reps; ++r) k += exceed[di][r];
        double p = k / reps;
        rep.rows.push_back({deltas[di], p, std::sqrt(std::max(p * (1 - p), 1e-12) / reps)});
    }
    rep.nonincreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        double slack = 2.0 * (rep.rows[i - 1].std_error + rep.rows[i].std_error);
        if (rep.rows[i].estimate > rep.rows[i - 1].estimate + slack)
            rep.nonincreasing = false;
    }
    rep.final_estimate = rep.rows.back().estimate;
    rep.tight = rep.nonincreasing && rep.final_estimate < threshold;
    return rep;
}

MomentConditionReport moment_condition_probe(
    const std::string& process, int n, int replicas,
    const std::vector<std::array<double, 3>>& triples, double beta, double alpha,
    double h_scale, std::uint64_t seed) {
    require(beta > 0.0 && alpha > 0.0, "moment probe: alpha, beta > 0");
    require(process == "donsker-d", "moment probe: donsker-d only");
    MomentConditionReport rep;
    rep.pass = true;
    std::vector<std::vector<double>> prods(triples.size());
    for (int r = 0; r < replicas; ++r) {
        CadlagPath x = donsker_path(n, IncrementLaw::rademacher(),
                                    SeededStream{seed, (std::uint64_t)r}, DonskerVariant::D);
        for (std::size_t ti = 0; ti < triples.size(); ++ti) {
            auto [a, s, t] = triples[ti];
            double d1 = std::abs(x.value(s) - x.value(a));
            double d2 = std::abs(x.value(t) - x.value(s));
            prods[ti].push_back(std::pow(d1, beta) * std::pow(d2, beta));
        }
    }
    for (std::size_t ti = 0; ti < triples.size(); ++ti) {
        auto [a, s, t] = triples[ti];
        double mean = 0.0;
        for (double v : prods[ti]) mean += v;
        mean /= replicas;
        double var = 0.0;
        for (double v : prods[ti]) var += (v - mean) * (v - mean);
        var /= std::max(1, replicas - 1);
        double se = std::sqrt(var / replicas);
        double bound = std::pow(h_scale * (t - a), alpha);
        bool exact_zero = (t - a) < 1.0 / n;
        bool ok;
        if (exact_zero) {
            ok = true;
            for (double v : prods[ti]) ok = ok && v == 0.0;
        } else {
            ok = mean <= bound + 3.0 * se;
        }
        rep.rows.push_back({a, s, t, mean, se, bound, exact_zero, ok});
        rep.pass = rep.pass && ok;
    }
    return rep;
}

double local_limit_probe(int n, double p) {
    require(p > 0.0 && p < 1.0, "local limit probe: p in (0,1)");
    double npq = n * p * (1.0 - p);
    require(npq >= 9.0, "local limit probe: npq >= 9 required");
    double root = std::sqrt(npq);
    double sup = 0.0;
    int lo = (int)std::ceil(n * p - 3.0 * root);
    int hi = (int)std::floor(n * p + 3.0 * root);
    for (int i = std::max(0, lo); i <= std::min(n, hi); ++i) {
        double z = (i - n * p) / root;
        double err = std::abs(root * binomial_pmf(n, p, i) -
                              std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI));
        sup = std::max(sup, err);
    }
    return sup;
}

MultinomialCovReport multinomial_cov_probe(int n, const std::vector<double>& p,
                                           int replicas, std::uint64_t seed) {
    const int r = (int)p.size();
    double tot = 0.0;
    for (double v : p) tot += v;
    require(std::abs(tot - 1.0) <= 1e-12, "multinomial probe: p must sum to 1");
    MultinomialCovReport rep;
    rep.target.assign(r, std::vector<double>(r, 0.0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            rep.target[i][j] = i == j ? p[i] * (1.0 - p[i]) : -p[i] * p[j];

    std::vector<std::vector<double>> ys(replicas, std::vector<double>(r, 0.0));
    for (int rep_i = 0; rep_i < replicas; ++rep_i) {
        Rng rng(SeededStream{seed, (std::uint64_t)rep_i});
        std::vector<int> counts(r, 0);
        for (int k = 0; k < n; ++k) {
            double u = rng.uniform01();
            double acc = 0.0;
            for (int j = 0; j < r; ++j) {
                acc += p[j];
                if (u <= acc || j == r - 1) {
                    ++counts[j];
                    break;
                }
            }
        }
        for (int j = 0; j < r; ++j)
            ys[rep_i][j] = (counts[j] - n * p[j]) / std::sqrt((double)n);
    }
    std::vector<double> mean(r, 0.0);
    for (const auto& y : ys)
        for (int j = 0; j < r; ++j) mean[j] += y[j];
    for (int j = 0; j < r; ++j) mean[j] /= replicas;
    rep.empirical.assign(r, std::vector<double>(r, 0.0));
    for (const auto& y : ys)
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                rep.empirical[i][j] += (y[i] - mean[i]) * (y[j] - mean[j]);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            rep.empirical[i][j] /= std::max(1, replicas - 1);
            rep.max_deviation =
                std::max(rep.max_deviation, std::abs(rep.empirical[i][j] - rep.target[i][j]));
        }
    return rep;
}

BridgeConditioningReport bridge_conditioning_probe(double b, double eps, int n,
                                                   int min_accepted,
                                                   std::uint64_t seed,
                                                   double tolerance) {
    require(eps > 0.0 && b > 0.0, "bridge probe: b, eps > 0");
    BridgeConditioningReport rep;
    rep.target = bridge_sup_cdf(b);
    const double cap = eps * std::sqrt((double)n);
    long long max_attempts = 400ll * min_accepted;  // acceptance floor ~ eps/4
    int hits = 0;
    std::uint64_t stream = 0;
    while (rep.accepted < min_accepted && rep.attempts < max_attempts) {
        Rng rng(SeededStream{seed, stream++});
        ++rep.attempts;
        int s = 0, mx = 0;
        for (int k = 0; k < n; ++k) {
            s += rng.rademacher();
            mx = std::max(mx, s);
        }
        if (s < 0 || (double)s > cap) continue;
        ++rep.accepted;
        if ((double)mx / std::sqrt((double)n) <= b) ++hits;
    }
    if (rep.accepted < min_accepted)
        throw std::length_error("bridge probe: acceptance rate below floor");
    rep.estimate = (double)hits / rep.accepted;
    rep.pass = std::abs(rep.estimate - rep.target) <= tolerance;
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json config_json(const ExperimentConfig& c) {
    return {{"process", c.process}, {"increments", c.increments},
            {"functional", c.functional}, {"target", c.target},
            {"n", c.n}, {"replicas", c.replicas}, {"seed", c.seed},
            {"tolerance", c.tolerance}, {"alpha", c.alpha},
            {"grid_points", c.grid_points}, {"workers", c.workers}};
}

}  // namespace

std::string report_to_json(const ExperimentReport& r) {
    nlohmann::json j{{"config", config_json(r.config)},
                     {"distance", r.distance},
                     {"pass", r.pass},
                     {"grid", r.grid},
                     {"empirical", r.empirical},
                     {"target", r.target}};
    return j.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "# process=" << r.config.process << " functional=" << r.config.functional
       << " target=" << r.config.target << " n=" << r.config.n
       << " replicas=" << r.config.replicas << " seed=" << r.config.seed
       << " distance=" << r.distance << " pass=" << (r.pass ? 1 : 0) << "\n";
    os << "grid,empirical,target\n";
    for (std::size_t i = 0; i < r.grid.size(); ++i)
        os << r.grid[i] << "," << r.empirical[i] << "," << r.target[i] << "\n";
    return os.str();
}

}  // namespace cadlag
