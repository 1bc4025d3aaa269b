#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cadlag/path.hpp"

namespace cadlag {

/// Splittable counter-based generator: identical (seed, stream_id) reproduces
/// identical output; distinct stream_ids give statistically independent
/// streams (splitmix64 finalizer over a per-stream key).
struct SeededStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

class Rng {
  public:
    explicit Rng(SeededStream s);
    std::uint64_t next_u64();
    double uniform01();        // (0, 1]
    double uniform_open();     // (0, 1)
    int rademacher();          // +-1
  private:
    std::uint64_t state_;
};

struct IncrementLaw {
    enum class Kind { Rademacher, CenteredUniform, FiniteSupport };
    Kind kind = Kind::Rademacher;
    double sigma = 1.0;
    std::vector<double> values;  // FiniteSupport only
    std::vector<double> probs;

    static IncrementLaw rademacher();
    static IncrementLaw centered_uniform(double sigma = 1.0);
    static IncrementLaw finite_support(std::vector<double> values,
                                       std::vector<double> probs);
    double draw(Rng& rng) const;
};

enum class DonskerVariant { C, D };  // C: linear interpolation; D: step

// Scaled random-walk path on [0,1]: values S_k / (sigma sqrt n) at k/n.
CadlagPath donsker_path(int n, const IncrementLaw& law, SeededStream stream,
                        DonskerVariant variant);
CadlagPath donsker_path_from_increments(const std::vector<double>& increments,
                                        double sigma, DonskerVariant variant);

// X^n_t = sum_{i <= nt} xi_i with P(xi = 1) = alpha/n: a count path.
// Geometric skip-sampling; exact Bernoulli-process law.
CadlagPath poisson_path(int n, double alpha, SeededStream stream);
CadlagPath poisson_path_from_indicators(const std::vector<bool>& xi);

/// Distribution function on [0,1] for sampling: uniform, t^alpha, or a general
/// nondecreasing piecewise-linear-with-jumps cadlag F with F(1) = 1.
struct CdfSpec {
    enum class Kind { Uniform, Power, Pl };
    Kind kind = Kind::Uniform;
    double alpha = 1.0;             // Power
    std::optional<CadlagPath> pl;   // Pl

    static CdfSpec uniform();
    static CdfSpec power(double alpha);
    static CdfSpec piecewise(CadlagPath f);
    double value(double t) const;   // F(t)
};

// Quantile function phi(u) = inf{t : u <= F(t)}, u in (0, 1], exact.
double quantile_transform(double u, const CdfSpec& cdf);

// Y^n_t = sqrt(n) (F_n(t) - F(t)), samples drawn via the quantile transform.
CadlagPath empirical_path(int n, const CdfSpec& cdf, SeededStream stream);
CadlagPath empirical_path_from_samples(const std::vector<double>& samples,
                                       const CdfSpec& cdf);

// t -> x(t) - t x(1): bridge transform on [0,1].
CadlagPath bridge_transform(const CadlagPath& x);

struct Functional {
    enum class Kind {
        Sup, Inf, SupAbs, Range, LastZero, OccupationPositive, Integral, KsScaled
    };
    Kind kind = Kind::Sup;
    int n = 1;  // KsScaled scale

    static Functional sup() { return {Kind::Sup, 1}; }
    static Functional inf() { return {Kind::Inf, 1}; }
    static Functional sup_abs() { return {Kind::SupAbs, 1}; }
    static Functional range() { return {Kind::Range, 1}; }
    static Functional last_zero() { return {Kind::LastZero, 1}; }
    static Functional occupation_positive() { return {Kind::OccupationPositive, 1}; }
    static Functional integral() { return {Kind::Integral, 1}; }
    static Functional ks_scaled(int n) { return {Kind::KsScaled, n}; }
};

// Exact evaluation on the piecewise representation. last_zero of a zero-free
// path is 0 (sup of the empty set, by the walk-path convention where a zero
// always exists).
double apply_functional(const CadlagPath& x, const Functional& f);

}  // namespace cadlag
