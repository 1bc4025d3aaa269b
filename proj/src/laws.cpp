#include "cadlag/laws.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cadlag {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// symmetric-in-k summation: term(0), then term(k) + term(-k) pairs until the
// pair magnitude drops below abs_tol
template <class Term>
double sum_symmetric(Term&& term, const SeriesControl& ctl) {
    double acc = term(0);
    for (int k = 1; k <= ctl.max_terms; ++k) {
        double pair = term(k) + term(-k);
        acc += pair;
        if (std::abs(pair) < ctl.abs_tol) return acc;
    }
    throw std::runtime_error("series did not converge within max_terms");
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double wiener_range_joint(double a, double b, double a2, double b2,
                          SeriesControl ctl) {
    require(a <= 0.0 && 0.0 <= b, "wiener_range_joint: need a <= 0 <= b");
    require(a <= a2 && a2 < b2 && b2 <= b,
            "wiener_range_joint: need a <= a' < b' <= b");
    if (b == a) return 0.0;
    const double L = b - a;
    double first = sum_symmetric(
        [&](int k) { return normal_cdf(2 * k * L + b2) - normal_cdf(2 * k * L + a2); },
        ctl);
    double second = sum_symmetric(
        [&](int k) {
            return normal_cdf(2 * k * L + 2 * b - a2) - normal_cdf(2 * k * L + 2 * b - b2);
        },
        ctl);
    return first - second;
}

double wiener_sup_cdf(double b) {
    if (b < 0.0) return 0.0;
    return 2.0 * normal_cdf(b) - 1.0;
}

double wiener_abs_sup_cdf(double b, SeriesControl ctl) {
    if (b <= 0.0) return 0.0;
    double v = wiener_range_joint(-b, b, -b, b, ctl);
    return std::clamp(v, 0.0, 1.0);
}

double arcsine_cdf(double t) {
    require(t >= 0.0 && t <= 1.0, "arcsine_cdf: t in [0,1]");
    return 2.0 / M_PI * std::asin(std::sqrt(t));
}

double arcsine_density_g(double t, double z) {
    require(t > 0.0 && t < 1.0, "arcsine_density_g: t in (0,1)");
    double s = t * (1.0 - t);
    return std::abs(z) / (2.0 * M_PI) * std::pow(s, -1.5) *
           std::exp(-z * z / (2.0 * (1.0 - t)));
}

double bridge_range_prob(double a, double b, SeriesControl ctl) {
    require(a < 0.0 && 0.0 < b, "bridge_range_prob: need a < 0 < b");
    const double L = b - a;
    double v = sum_symmetric(
        [&](int k) {
            return std::exp(-2.0 * k * k * L * L) -
                   std::exp(-2.0 * (b + k * L) * (b + k * L));
        },
        ctl);
    return std::clamp(v, 0.0, 1.0);
}

double kolmogorov_cdf(double b, SeriesControl ctl) {
    if (b <= 0.0) return 0.0;
    double acc = 1.0;
    double sign = -1.0;
    for (int k = 1; k <= ctl.max_terms; ++k) {
        double term = 2.0 * sign * std::exp(-2.0 * k * k * b * b);
        acc += term;
        sign = -sign;
        if (std::abs(term) < ctl.abs_tol) return std::clamp(acc, 0.0, 1.0);
    }
    throw std::runtime_error("kolmogorov_cdf: series did not converge");
}

double bridge_sup_cdf(double b) {
    if (b <= 0.0) return 0.0;
    return 1.0 - std::exp(-2.0 * b * b);
}

AtomicMeasureFamily::AtomicMeasureFamily(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
    for (const auto& a : atoms_) {
        require(a.z != 0.0, "levy family: atoms must be nonzero");
        require(a.mass_pl.size() >= 2, "levy family: mass function needs knots");
        require(a.mass_pl.front().first == 0.0 && a.mass_pl.back().first == 1.0,
                "levy family: mass knots must span [0,1]");
        for (std::size_t i = 0; i + 1 < a.mass_pl.size(); ++i) {
            require(a.mass_pl[i].first < a.mass_pl[i + 1].first,
                    "levy family: mass knots must be increasing in t");
            require(a.mass_pl[i].second <= a.mass_pl[i + 1].second + 1e-15,
                    "levy family: mass functions must be nondecreasing");
        }
    }
}

double AtomicMeasureFamily::mass(std::size_t r, double t) const {
    const auto& pl = atoms_.at(r).mass_pl;
    require(t >= 0.0 && t <= 1.0, "levy family: t in [0,1]");
    std::size_t i = 0;
    while (i + 2 < pl.size() && pl[i + 1].first <= t) ++i;
    auto [t0, v0] = pl[i];
    auto [t1, v1] = pl[i + 1];
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

double AtomicMeasureFamily::total_mass(double t) const {
    double h = 0.0;
    for (std::size_t r = 0; r < atoms_.size(); ++r) h += mass(r, t);
    return h;
}

std::complex<double> levy_cf(const AtomicMeasureFamily& family, double s, double t,
                             double u) {
    require(0.0 <= s && s <= t && t <= 1.0, "levy_cf: need 0 <= s <= t <= 1");
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t r = 0; r < family.size(); ++r) {
        double z = family.atoms()[r].z;
        double dm = family.mass(r, t) - family.mass(r, s);
        std::complex<double> kernel =
            (std::exp(std::complex<double>(0.0, u * z)) - 1.0 -
             std::complex<double>(0.0, u * z)) /
            (z * z);
        acc += kernel * dm;
    }
    return std::exp(acc);
}

}  // namespace cadlag
