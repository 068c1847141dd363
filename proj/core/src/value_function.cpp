#include "catdiv/value_function.hpp"

#include "catdiv/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace catdiv {

namespace {

void require_surplus(double x) {
    if (!(x >= 0.0)) {
        std::ostringstream msg;
        msg << "surplus must be >= 0, got " << x;
        throw Error(ErrorCode::NegativeSurplus, msg.str());
    }
}

constexpr double kResidualQuadTol = 1e-11;

}  // namespace

ValueFunction::ValueFunction(ModelParams model, PolicyParams policy)
    : model_(std::move(model)), policy_(policy) {
    psi_at_barrier_ = exponential_branch(policy_.x_star);
}

ValueFunction ValueFunction::solve(const ModelParams& model) {
    return ValueFunction(model, solve_policy(model));
}

double ValueFunction::power_branch(double x) const {
    return policy_.c1 * std::pow(x, policy_.gamma);
}

Derivatives ValueFunction::power_branch_derivatives(double x) const {
    if (x == 0.0) {
        return {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    }
    const double g = policy_.gamma;
    const double first = policy_.c1 * g * std::pow(x, g - 1.0);
    return {first, first * (g - 1.0) / x};
}

double ValueFunction::exponential_branch(double x) const {
    return policy_.c3 * std::exp(policy_.d_minus * x) + policy_.c4 * std::exp(policy_.d_plus * x);
}

Derivatives ValueFunction::exponential_branch_derivatives(double x) const {
    const double em = policy_.c3 * std::exp(policy_.d_minus * x);
    const double ep = policy_.c4 * std::exp(policy_.d_plus * x);
    const double dm = policy_.d_minus;
    const double dp = policy_.d_plus;
    return {em * dm + ep * dp, em * dm * dm + ep * dp * dp};
}

double ValueFunction::linear_branch(double x) const {
    return model_.beta * (x - policy_.x_star) + psi_at_barrier_;
}

double ValueFunction::psi(double x) const {
    require_surplus(x);
    if (x < policy_.x0) return power_branch(x);
    if (x < policy_.x_star) return exponential_branch(x);
    return linear_branch(x);
}

Derivatives ValueFunction::derivatives(double x) const {
    require_surplus(x);
    if (x < policy_.x0) return power_branch_derivatives(x);
    if (x < policy_.x_star) return exponential_branch_derivatives(x);
    return {model_.beta, 0.0};
}

double ValueFunction::retention_ratio(double x) const {
    require_surplus(x);
    if (x >= policy_.x0) return 1.0;
    return std::min(model_.mu * x / (model_.sigma2 * (1.0 - policy_.gamma)), 1.0);
}

double ValueFunction::optimal_return(double s, double x) const {
    if (!(s >= 0.0)) {
        std::ostringstream msg;
        msg << "time must be >= 0, got " << s;
        throw Error(ErrorCode::InvalidParameter, msg.str());
    }
    return std::exp(-model_.c * s) * psi(x);
}

double ValueFunction::hjb_residual(double x, double a) const {
    require_surplus(x);
    if (!(a >= 0.0 && a <= 1.0)) {
        std::ostringstream msg;
        msg << "retention must lie in [0, 1], got " << a;
        throw Error(ErrorCode::InvalidParameter, msg.str());
    }
    const double value = psi(x);
    if (a == 0.0) return -model_.c * value;
    if (x == 0.0) {
        throw Error(ErrorCode::InvalidParameter, "residual undefined at x = 0 for a > 0");
    }

    const Derivatives dv = derivatives(x);
    const double d1 = dv.first;
    const double d2 = dv.second;
    const double local = -model_.c * value + a * model_.mu * d1 + 0.5 * a * a * model_.sigma2 * d2;

    // Above the barrier psi is linear, so the jump integrand vanishes.
    if (x >= policy_.x_star) return local;

    const double u = a * model_.k;
    const double z_star = (policy_.x_star - x) / u;

    // Beyond z_star the integrand is A + B z; integrate that piece exactly.
    const double A = linear_branch(x) - value;
    const double B = u * (model_.beta - d1);
    const auto [m0, m1] = model_.levy.tail_moments(z_star);
    const double tail = A * m0 + B * m1;

    std::array<double, 2> breaks{z_star, z_star};
    std::size_t n_breaks = 1;
    if (x < policy_.x0) {
        breaks[0] = (policy_.x0 - x) / u;
        breaks[1] = z_star;
        n_breaks = 2;
    }
    auto integrand = [this, x, u, value, d1, z_star](double z) {
        if (z >= z_star) return 0.0;
        return psi(x + u * z) - value - u * z * d1;
    };
    const double body = model_.levy.integrate(
        integrand, std::span<const double>(breaks.data(), n_breaks), kResidualQuadTol);
    return local + body + tail;
}

}  // namespace catdiv
