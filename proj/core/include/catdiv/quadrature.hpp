/**
 * @file quadrature.hpp
 * @brief Globally adaptive Gauss-Kronrod integration with an absolute tolerance
 */

#ifndef CATDIV_QUADRATURE_HPP
#define CATDIV_QUADRATURE_HPP

#include <cstddef>
#include <functional>

namespace catdiv::quad {

struct Options {
    double abs_tol = 1e-12;         ///< Target bound on the summed panel error estimates
    std::size_t max_panels = 4000;  ///< Subdivision budget before giving up
};

struct Result {
    double value = 0.0;
    double error = 0.0;      ///< Summed G7/K15 error estimate
    std::size_t panels = 0;
};

/**
 * Integrate f over [a, b]; b may be +infinity.
 *
 * The worst panel is bisected until the summed error estimate drops
 * below opts.abs_tol. Semi-infinite ranges are mapped onto [0, 1) with
 * x = a + u / (1 - u), so f must decay at least like x^-2.
 *
 * Throws Error(QuadratureFailure) when the budget is exhausted or the
 * integrand returns a non-finite value.
 */
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

}  // namespace catdiv::quad

#endif  // CATDIV_QUADRATURE_HPP
