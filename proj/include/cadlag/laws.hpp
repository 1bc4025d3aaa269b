#pragma once

#include <complex>
#include <vector>

namespace cadlag {

/// Truncation control for the reflection-type series. Summation stops when a
/// symmetric +-k term pair falls below abs_tol; exceeding max_terms throws.
struct SeriesControl {
    double abs_tol = 1e-12;
    int max_terms = 200;
};

// Standard normal distribution function, |error| <= 1e-12 (erfc-based,
// verified against quadrature in the tests).
double normal_cdf(double z);

// P(a < m <= M < b; a' < W_1 < b') for the Wiener process on [0,1],
// a <= 0 <= b, a <= a' < b' <= b. Theorem-9.10 double series.
double wiener_range_joint(double a, double b, double a2, double b2,
                          SeriesControl ctl = {});

// P(sup W < b) = 2 Phi(b) - 1; 0 for b < 0 by convention.
double wiener_sup_cdf(double b);

// P(sup |W| < b) via the a = -b specialization of the range series.
double wiener_abs_sup_cdf(double b, SeriesControl ctl = {});

// (2/pi) arcsin(sqrt t) on [0,1].
double arcsine_cdf(double t);

// g(t,z) = |z| exp(-z^2/(2(1-t))) / (2 pi t^{3/2} (1-t)^{3/2}), 0 < t < 1.
double arcsine_density_g(double t, double z);

// P(a < inf W° <= sup W° <= b), a < 0 < b (Brownian bridge).
double bridge_range_prob(double a, double b, SeriesControl ctl = {});

// P(sup |W°| <= b) = 1 + 2 sum (-1)^k exp(-2 k^2 b^2); 0 for b <= 0.
double kolmogorov_cdf(double b, SeriesControl ctl = {});

// P(sup W° <= b) = 1 - exp(-2 b^2); 0 for b <= 0.
double bridge_sup_cdf(double b);

/// Atomic Levy measure family: atoms z_r != 0 with nondecreasing continuous
/// piecewise-linear mass functions m_r on [0,1]; H(t) = sum_r m_r(t).
class AtomicMeasureFamily {
  public:
    struct Atom {
        double z;                                        // atom location, nonzero
        std::vector<std::pair<double, double>> mass_pl;  // (t, m(t)) knots on [0,1]
    };
    explicit AtomicMeasureFamily(std::vector<Atom> atoms);

    double mass(std::size_t r, double t) const;  // m_r(t)
    double total_mass(double t) const;           // H(t)
    std::size_t size() const { return atoms_.size(); }
    const std::vector<Atom>& atoms() const { return atoms_; }

  private:
    std::vector<Atom> atoms_;
};

// phi_{s,t}(u) = exp sum_r (e^{iuz} - 1 - iuz)/z^2 (m_r(t) - m_r(s)), s <= t.
std::complex<double> levy_cf(const AtomicMeasureFamily& family, double s, double t,
                             double u);

}  // namespace cadlag
