/**
 * @file levy_measure.hpp
 * @brief Finite Levy measures on [0, inf) and the jump-integral functionals
 *        used by the root equations and the HJB residual
 */

#ifndef CATDIV_LEVY_MEASURE_HPP
#define CATDIV_LEVY_MEASURE_HPP

#include "catdiv/quadrature.hpp"

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace catdiv {

/// nu(dz) = exp(-rate * z) dz on [0, inf). Mass 1/rate, mean jump 1/rate^2.
struct ExponentialFamily {
    double rate;
};

/**
 * Density tabulated on a grid starting at z = 0, linear between nodes.
 * Beyond the last node the density continues as
 * density.back() * exp(-tail_rate * (z - z.back())).
 */
struct TabulatedDensity {
    std::vector<double> z;
    std::vector<double> density;
    double tail_rate;
};

using LevyMeasureSpec = std::variant<ExponentialFamily, TabulatedDensity>;

/// Relative margin kept between k*d and the exponential-moment boundary.
inline constexpr double kDivergenceGuard = 1e-6;

class LevyMeasure {
public:
    /// Validates the spec (finite positive mass and mean, support in [0, inf)).
    explicit LevyMeasure(LevyMeasureSpec spec);

    static LevyMeasure exponential(double rate);
    static LevyMeasure tabulated(std::vector<double> z, std::vector<double> density,
                                 double tail_rate);

    const LevyMeasureSpec& spec() const noexcept { return spec_; }
    bool is_exponential() const noexcept;

    /// Largest exponent r with Int e^{r z} nu(dz) < inf (rate or tail rate).
    double exponential_moment_bound() const noexcept;

    double total_mass() const noexcept { return mass_; }
    double mean_jump() const noexcept { return mean_; }

    /**
     * Int (e^{kdz} - 1 - kdz) nu(dz). Closed form (kd)^2 / (t^2 (t - kd)) for
     * the exponential family, quadrature otherwise.
     * Throws DivergentIntegral when k*d reaches the exponential-moment bound.
     */
    double exp_jump_integral(double k, double d) const;

    /// Same functional, always evaluated by quadrature.
    double exp_jump_integral_numeric(double k, double d, double abs_tol = 1e-12) const;

    /**
     * Int ((1 + bz)^gamma - 1 - gamma b z) nu(dz) for gamma in (0, 1), b >= 0.
     * Non-positive by concavity. Throws QuadratureFailure if abs_tol is not met.
     */
    double power_jump_integral(double gamma, double b, double abs_tol = 1e-12) const;

    /// Inverse CDF of nu / nu(R) at u in (0, 1).
    double sample_jump(double u) const;

    /**
     * Int f(z) nu(dz) over [0, inf), splitting at the given interior
     * breakpoints (kinks of f). f must be integrable against nu.
     */
    double integrate(const std::function<double(double)>& f,
                     std::span<const double> breakpoints = {},
                     double abs_tol = 1e-12) const;

    /// (Int_{z0}^inf nu(dz), Int_{z0}^inf z nu(dz)) for z0 >= 0.
    std::pair<double, double> tail_moments(double z0) const;

    /// Short human-readable description, e.g. "exp(1)".
    std::string describe() const;

private:
    LevyMeasureSpec spec_;
    double mass_ = 0.0;
    double mean_ = 0.0;
    std::vector<double> cdf_;  // tabulated only: cumulative mass at each node
};

}  // namespace catdiv

#endif  // CATDIV_LEVY_MEASURE_HPP
