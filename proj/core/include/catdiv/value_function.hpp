/**
 * @file value_function.hpp
 * @brief Piecewise value function, feedback retention and HJB residual
 */

#ifndef CATDIV_VALUE_FUNCTION_HPP
#define CATDIV_VALUE_FUNCTION_HPP

#include "catdiv/hjb_solver.hpp"

namespace catdiv {

struct Derivatives {
    double first = 0.0;
    double second = 0.0;
};

/**
 * psi(x) = C1 x^gamma             on [0, x0)
 *        = C3 e^{d- x} + C4 e^{d+ x}  on [x0, x*)
 *        = beta (x - x*) + psi2(x*)   on [x*, inf)
 *
 * The optimal return is V(s, x) = e^{-cs} psi(x). Branch evaluators are
 * exposed separately so the pasting conditions can be checked from
 * either side of x0 and x*.
 */
class ValueFunction {
public:
    ValueFunction(ModelParams model, PolicyParams policy);

    /// Solve the policy for model and wrap it.
    static ValueFunction solve(const ModelParams& model);

    const ModelParams& model() const noexcept { return model_; }
    const PolicyParams& policy() const noexcept { return policy_; }

    double psi(double x) const;

    /**
     * Analytic (psi', psi''). At x = 0 the power branch is singular and the
     * result is (+inf, -inf). Above the barrier it is exactly (beta, 0).
     */
    Derivatives derivatives(double x) const;

    /// min(mu x / (sigma^2 (1 - gamma)), 1).
    double retention_ratio(double x) const;

    double optimal_return(double s, double x) const;

    /**
     * Generator applied to e^{-cs} psi for a fixed retention a, divided by
     * e^{-cs}:
     *   -c psi + a mu psi' + a^2 sigma^2 psi'' / 2
     *     + Int (psi(x + akz) - psi(x) - akz psi'(x)) nu(dz),
     * with the full piecewise psi inside the jump integral.
     */
    double hjb_residual(double x, double a) const;

    double power_branch(double x) const;
    Derivatives power_branch_derivatives(double x) const;
    double exponential_branch(double x) const;
    Derivatives exponential_branch_derivatives(double x) const;
    double linear_branch(double x) const;

private:
    ModelParams model_;
    PolicyParams policy_;
    double psi_at_barrier_;
};

}  // namespace catdiv

#endif  // CATDIV_VALUE_FUNCTION_HPP
