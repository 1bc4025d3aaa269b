#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace cadlag {

/// Exact rational on int64 (sufficient for walk lengths <= 20: denominators
/// divide n * 2^n).
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
    Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
    Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    double to_double() const { return (double)num / (double)den; }
};

// Joint statistics of one sign path: terminal, min, max, last zero time,
// positive count (S_k > 0 or S_k = 0 > ... see U convention below), and the
// positive count restricted to [0, T].
struct WalkTuple {
    int terminal, min, max, last_zero, positive, positive_to_last_zero;
    bool operator<(const WalkTuple& o) const {
        return std::tie(terminal, min, max, last_zero, positive, positive_to_last_zero) <
               std::tie(o.terminal, o.min, o.max, o.last_zero, o.positive, o.positive_to_last_zero);
    }
};

/// Exact joint counts of (S_n, m_n, M_n, T_n, U_n, V_n) over all 2^n sign
/// paths. U_n counts steps k >= 1 with S_k > 0 or (S_k = 0 and S_{k-1} > 0),
/// the classical even-time convention, applied uniformly at odd n as well.
struct WalkStats {
    int n = 0;
    std::map<WalkTuple, std::uint64_t> counts;

    std::uint64_t total() const { return 1ull << n; }
    // marginal count of an event over tuples
    template <class Pred>
    std::uint64_t count_if(Pred&& pred) const {
        std::uint64_t c = 0;
        for (const auto& [t, k] : counts)
            if (pred(t)) c += k;
        return c;
    }
};

// P(S_n = i) for the symmetric simple walk, exact.
Rational walk_pmf(int n, int i);

// Reflection identity (*): P(i < m_n <= M_n < j; S_n = l), i < 0 < j, i < l < j.
Rational reflection_joint(int n, int i, int j, int l);

// P(S_1 >= 1, ..., S_{n-1} >= 1, S_n = i) = (i/n) p_n(i), i >= 1.
Rational ballot_positive(int n, int i);

// P(V_{2n} = 2j | S_{2n} = 0) = 1/(n+1), j = 0..n.
Rational occupation_conditional(int n, int j);

// Full enumeration over 2^n paths, n <= 20.
WalkStats enumerate_walks(int n);

// Bernoulli(p) pmf P(S_n = i successes), evaluated via log-gamma. Used by the
// local-limit probe; not exact rational.
double binomial_pmf(int n, double p, int i);

}  // namespace cadlag
