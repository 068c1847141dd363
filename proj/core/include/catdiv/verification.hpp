/**
 * @file verification.hpp
 * @brief Grid certification of the HJB variational inequality
 */

#ifndef CATDIV_VERIFICATION_HPP
#define CATDIV_VERIFICATION_HPP

#include "catdiv/value_function.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace catdiv {

enum class CheckId {
    SlopeAboveBeta,       ///< psi'(x) > beta on (0, x*)
    SlopeEqualsBeta,      ///< |psi'(x) - beta| <= slope_tol on [x*, inf)
    ResidualNonPositive,  ///< max_a residual(x, a) <= tolerance
    FeedbackMaximizer,    ///< grid argmax within one a-step of a(x), x < x*
};

std::string_view to_string(CheckId id) noexcept;

struct VerifyOptions {
    double residual_abs_tol = 1e-5;  ///< on [x0, inf)
    double region1_rel_tol = 1e-3;   ///< on (0, x0), relative to psi(x)
    double slope_tol = 1e-8;
    std::size_t a_steps = 100;       ///< a-grid {0, 1/a_steps, ..., 1}
    unsigned threads = 0;            ///< 0 = hardware concurrency
};

struct Violation {
    double x = 0.0;
    CheckId check = CheckId::SlopeAboveBeta;
    double value = 0.0;
    double bound = 0.0;
};

struct GridPoint {
    double x = 0.0;
    double slope = 0.0;
    double max_residual = 0.0;
    double argmax_a = 0.0;
    double retention = 0.0;
    double residual_bound = 0.0;
};

struct VerificationReport {
    std::vector<GridPoint> points;
    std::vector<Violation> violations;
    double max_residual_region1_rel = 0.0;  ///< max over (0, x0) of max_a residual / psi
    double max_residual_upper = 0.0;        ///< max over [x0, inf) of max_a residual

    std::size_t count(CheckId id) const noexcept;
    bool ok() const noexcept { return violations.empty(); }
};

/// n points evenly spaced on (0, 3 x*], the last one at 3 x*.
std::vector<double> verification_grid(const ValueFunction& v, std::size_t n);

/**
 * Pointwise checks over the grid. Violations are collected, never thrown.
 * Throws InvalidParameter for x <= 0 (psi' is singular at 0).
 */
VerificationReport verify_variational_inequality(const ValueFunction& v,
                                                 std::span<const double> grid,
                                                 const VerifyOptions& opts = {});

}  // namespace catdiv

#endif  // CATDIV_VERIFICATION_HPP
