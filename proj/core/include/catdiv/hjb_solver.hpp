/**
 * @file hjb_solver.hpp
 * @brief Closed-form dividend barrier / retention policy for the
 *        reinsured surplus process with catastrophe jumps
 *
 * The value function is piecewise: a power law C1 x^gamma below x0,
 * C3 e^{d- x} + C4 e^{d+ x} on [x0, x*], and linear with slope beta
 * above the barrier x*. This header produces every constant in that
 * representation from the model primitives.
 */

#ifndef CATDIV_HJB_SOLVER_HPP
#define CATDIV_HJB_SOLVER_HPP

#include "catdiv/levy_measure.hpp"

#include <cstddef>

namespace catdiv {

struct ModelParams {
    double mu = 0.0;      ///< Premium rate (currency / time)
    double sigma2 = 0.0;  ///< Diffusion variance rate (currency^2 / time)
    double k = 0.0;       ///< Adjusted risk rate applied to catastrophe jumps
    double c = 0.0;       ///< Discount rate (1 / time)
    double beta = 0.8;    ///< Fraction of each dividend reaching shareholders
    double s = 0.0;       ///< Initial time
    LevyMeasure levy = LevyMeasure::exponential(1.0);
};

struct PolicyParams {
    double gamma = 0.0;    ///< Power-law exponent, in (0, 1)
    double d_minus = 0.0;  ///< Negative root of l(d)
    double d_plus = 0.0;   ///< Positive root of l(d)
    double x0 = 0.0;       ///< Surplus where full retention starts
    double x_star = 0.0;   ///< Dividend barrier
    double c1 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
    std::size_t gamma_sign_changes = 1;  ///< >1 means h has several roots in (0, 1)
};

/// Upper end of the admissible adjusted risk rate, mu / (2 Int z nu(dz)).
double max_adjusted_risk_rate(const ModelParams& m);

/**
 * Returns m unchanged when every model assumption holds.
 * Throws InvalidK, InvalidFraction, InvalidParameter (mu, sigma2, c, s);
 * measure problems are rejected earlier by LevyMeasure itself.
 */
ModelParams validate_params(ModelParams m);

/// -c - (mu^2 / 2 sigma^2) gamma / (gamma - 1) + Int((1+bz)^gamma - 1 - gamma b z) nu(dz),
/// b = mu k / (sigma^2 (1 - gamma)).
double h_of_gamma(const ModelParams& m, double gamma);

struct GammaSolution {
    double gamma = 0.0;
    std::size_t sign_changes = 0;
};

/**
 * Smallest root of h on (0, 1): sign scan with step 1e-3 from 0, then
 * bisection. Throws NoRoot when no sign change is found or the residual
 * stays above 1e-10.
 */
GammaSolution solve_gamma(const ModelParams& m);

/// 0.5 sigma^2 d^2 + mu d - c + Int(e^{kdz} - 1 - kdz) nu(dz).
double l_of_d(const ModelParams& m, double d);

struct Exponents {
    double d_minus = 0.0;
    double d_plus = 0.0;
};

/// Both roots of l, d- < 0 < d+, each with |l| < 1e-10.
Exponents solve_exponents(const ModelParams& m);

double compute_x0(const ModelParams& m, double gamma);

/// x0 / gamma + 1 / |d-| - 1 / d+ < 0, i.e. q(x0) < 0.
bool check_barrier_condition(double gamma, double d_minus, double d_plus, double x0);

/**
 * Auxiliary function q whose zero is the barrier: the mismatch left in the
 * value/slope matching at x0 when the barrier is placed at x. Increasing
 * on (x0, inf); beta only scales it.
 */
double barrier_equation(double x, double gamma, double d_minus, double d_plus, double x0,
                        double beta);

/// Closed-form barrier. Throws DegenerateLog or BarrierConditionViolated.
double compute_xstar(double gamma, double d_minus, double d_plus, double x0);

struct Coefficients {
    double c1 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
};

/// Smooth-pasting coefficients. Throws SignViolation unless c3 < 0 < c4 and c1 > 0.
Coefficients compute_coefficients(double gamma, double d_minus, double d_plus, double x0,
                                  double x_star, double beta);

/// Full pipeline; deterministic in its inputs.
PolicyParams solve_policy(const ModelParams& m);

}  // namespace catdiv

#endif  // CATDIV_HJB_SOLVER_HPP
