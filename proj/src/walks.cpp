#include "cadlag/walks.hpp"

#include <cmath>

namespace cadlag {

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

Rational walk_pmf(int n, int i) {
    if (n < 0 || n > 62) throw std::invalid_argument("walk_pmf: n in [0, 62]");
    if (std::abs(i) > n || ((n - i) & 1)) return Rational(0);
    if (n > 20) throw std::invalid_argument("walk_pmf: exact mode capped at n = 20");
    return Rational(binom(n, (n + i) / 2), 1ll << n);
}

Rational reflection_joint(int n, int i, int j, int l) {
    if (!(i < 0 && 0 < j && i < l && l < j))
        throw std::invalid_argument("reflection_joint: need i < 0 < j and i < l < j");
    const int period = 2 * (j - i);
    Rational acc(0);
    // both series are finite: |S_n| <= n
    for (int k = -(n / period) - 1; k <= n / period + 1; ++k) {
        acc = acc + walk_pmf(n, k * period + l);
        acc = acc - walk_pmf(n, k * period + 2 * j - l);
    }
    return acc;
}

Rational ballot_positive(int n, int i) {
    if (i <= 0) throw std::invalid_argument("ballot_positive: i >= 1");
    if (i > n) return Rational(0);
    return Rational(i, n) * walk_pmf(n, i);
}

Rational occupation_conditional(int n, int j) {
    if (j < 0 || j > n) throw std::invalid_argument("occupation_conditional: j in [0, n]");
    return Rational(1, n + 1);
}

WalkStats enumerate_walks(int n) {
    if (n < 1 || n > 20) throw std::length_error("enumerate_walks: n in [1, 20]");
    WalkStats st;
    st.n = n;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        int s = 0, mn = 0, mx = 0, last_zero = 0, pos = 0, pos_at_zero = 0;
        int prev = 0;
        for (int k = 1; k <= n; ++k) {
            s += (bits >> (k - 1) & 1) ? 1 : -1;
            mn = std::min(mn, s);
            mx = std::max(mx, s);
            if (s > 0 || (s == 0 && prev > 0)) ++pos;
            if (s == 0) {
                last_zero = k;
                pos_at_zero = pos;
            }
            prev = s;
        }
        ++st.counts[{s, mn, mx, last_zero, pos, pos_at_zero}];
    }
    return st;
}

double binomial_pmf(int n, double p, int i) {
    if (i < 0 || i > n) return 0.0;
    double lp = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                i * std::log(p) + (n - i) * std::log1p(-p);
    return std::exp(lp);
}

}  // namespace cadlag
