#include "catdiv/error.hpp"
#include "catdiv/value_function.hpp"
#include "fixtures.hpp"
#include "golden.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace catdiv;
namespace g = golden::canonical;

namespace {

const ValueFunction& canonical_vf() {
    static const ValueFunction v = ValueFunction::solve(fixture::canonical());
    return v;
}

/**
 * Each closed-form branch satisfies its own generator equation exactly when
 * the jump integral also reads that branch, so with the piecewise psi
 *   residual(x, a(x)) = Int (psi - branch)(x + a k z) e^{-z} dz,
 * which is zero wherever x + a k z stays in the branch of x.
 */
double residual_oracle(const ValueFunction& v, double x) {
    const auto& p = v.policy();
    const oracle::Psi psi{p, v.model().beta};
    const double a = v.retention_ratio(x);
    const double ak = a * v.model().k;
    const bool lower = x < p.x0;
    auto diff = [&](double z) {
        const double y = x + ak * z;
        return psi(y) - (lower ? psi.branch1(y) : psi.branch2(y));
    };
    const double z_x0 = lower ? (p.x0 - x) / ak : 0.0;
    const double z_star = (p.x_star - x) / ak;
    double total = 0.0;
    if (lower) {
        total += oracle::simpson([&](double z) { return diff(z) * std::exp(-z); }, z_x0, z_star,
                                 200000);
    }
    total += oracle::simpson([&](double z) { return diff(z) * std::exp(-z); }, z_star,
                             z_star + 80.0, 400000);
    return total;
}

}  // namespace

TEST(ValueFunction, BoundaryValues) {
    const auto& v = canonical_vf();
    EXPECT_EQ(v.psi(0.0), 0.0);
    EXPECT_NEAR(v.psi(g::x_star), g::psi_at_barrier, 1e-9);
    EXPECT_NEAR(v.psi(g::x_star + 1.0), v.psi(g::x_star) + g::beta, 1e-12);
    EXPECT_THROW(v.psi(-1e-9), Error);
    try {
        v.psi(-1.0);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NegativeSurplus);
    }
}

TEST(ValueFunction, SmoothPasting) {
    const auto& v = canonical_vf();
    const auto& p = v.policy();
    EXPECT_LT(std::abs(v.power_branch(p.x0) - v.exponential_branch(p.x0)), 1e-8);
    EXPECT_LT(std::abs(v.power_branch_derivatives(p.x0).first -
                       v.exponential_branch_derivatives(p.x0).first),
              1e-8);
    EXPECT_LT(std::abs(v.exponential_branch_derivatives(p.x_star).first - g::beta), 1e-8);
    EXPECT_LT(std::abs(v.exponential_branch_derivatives(p.x_star).second), 1e-8);
    EXPECT_LT(std::abs(v.exponential_branch(p.x_star) - v.linear_branch(p.x_star)), 1e-12);
}

TEST(ValueFunction, DerivativesAboveBarrier) {
    const auto& v = canonical_vf();
    const double xs = v.policy().x_star;
    for (double x : {xs, xs + 0.1, 3 * xs, 1e3}) {
        const auto d = v.derivatives(x);
        EXPECT_EQ(d.first, g::beta);
        EXPECT_EQ(d.second, 0.0);
    }
    const auto at0 = v.derivatives(0.0);
    EXPECT_TRUE(std::isinf(at0.first) && at0.first > 0);
    EXPECT_TRUE(std::isinf(at0.second) && at0.second < 0);
}

TEST(ValueFunction, DerivativesMatchFiniteDifferences) {
    const auto& v = canonical_vf();
    const auto& p = v.policy();
    auto psi = [&](double x) { return v.psi(x); };
    for (int i = 1; i <= 100; ++i) {
        const double x = 3 * p.x_star * i / 101.0;
        if (std::abs(x - p.x0) < 0.01 || std::abs(x - p.x_star) < 0.01 || x < 0.05) continue;
        const auto d = v.derivatives(x);
        const double h1 = 1e-5 * std::max(1.0, x);
        EXPECT_NEAR(oracle::central_first(psi, x, h1), d.first, 1e-6 * std::abs(d.first)) << x;
        if (x < p.x_star) {
            const double h2 = 1e-3 * std::max(0.1, std::min(x, 1.0));
            EXPECT_NEAR(oracle::central_second(psi, x, h2), d.second, 1e-6 * std::abs(d.second) + 1e-6)
                << x;
        }
    }
}

TEST(ValueFunction, ConcaveIncreasingSlopeAboveBeta) {
    const auto& v = canonical_vf();
    const auto& p = v.policy();
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 2000; ++i) {
        const double x = p.x_star * i / 2000.0;
        const auto d = v.derivatives(x);
        EXPECT_LT(d.second, 0.0) << x;
        EXPECT_GT(d.first, g::beta) << x;
        EXPECT_LT(d.first, prev) << x;
        prev = d.first;
    }
}

TEST(ValueFunction, RetentionRatio) {
    const auto& v = canonical_vf();
    const auto& p = v.policy();
    EXPECT_EQ(v.retention_ratio(0.0), 0.0);
    EXPECT_EQ(v.retention_ratio(p.x0), 1.0);
    EXPECT_NEAR(v.retention_ratio(p.x0 / 2), 0.5, 1e-15);
    EXPECT_EQ(v.retention_ratio(10 * p.x_star), 1.0);
    EXPECT_THROW(v.retention_ratio(-1.0), Error);
}

TEST(ValueFunction, OptimalReturnDiscounting) {
    const auto& v = canonical_vf();
    for (double x : {0.5, 3.0, 12.0}) {
        EXPECT_EQ(v.optimal_return(0.0, x), v.psi(x));
        EXPECT_NEAR(v.optimal_return(std::log(2.0) / g::c, x), v.psi(x) / 2, 1e-13 * v.psi(x));
    }
}

TEST(HjbResidual, AboveBarrierIsLocal) {
    const auto& v = canonical_vf();
    for (double x : {g::x_star, g::x_star + 0.5, 2 * g::x_star}) {
        for (double a : {0.0, 0.3, 1.0}) {
            EXPECT_NEAR(v.hjb_residual(x, a), -g::c * v.psi(x) + a * g::mu * g::beta, 1e-12)
                << x << " " << a;
        }
        EXPECT_LE(v.hjb_residual(x, 1.0), 0.0);
    }
}

TEST(HjbResidual, AtBarrierEqualsReferenceValue) {
    EXPECT_NEAR(canonical_vf().hjb_residual(g::x_star, 1.0), g::mu_beta_minus_c_psi, 1e-10);
    const auto fast = ValueFunction::solve(fixture::fast_discount());
    EXPECT_NEAR(fast.hjb_residual(golden::fast_discount::x_star, 1.0),
                golden::fast_discount::mu_beta_minus_c_psi, 1e-10);
}

TEST(HjbResidual, MatchesBranchDifferenceOracle) {
    const auto& v = canonical_vf();
    const auto& p = v.policy();
    for (double x : {0.1, 0.6, 1.5, 2.1, p.x0 + 0.05, 3.0, 4.5, 6.0, 6.7}) {
        const double a = v.retention_ratio(x);
        EXPECT_NEAR(v.hjb_residual(x, a), residual_oracle(v, x), 1e-9) << x;
    }
}

TEST(HjbResidual, ZeroRetentionIsDiscountOnly) {
    const auto& v = canonical_vf();
    for (double x : {0.0, 1.0, 5.0}) EXPECT_EQ(v.hjb_residual(x, 0.0), -g::c * v.psi(x));
}

TEST(HjbResidual, RejectsBadInputs) {
    const auto& v = canonical_vf();
    EXPECT_THROW(v.hjb_residual(1.0, -0.1), Error);
    EXPECT_THROW(v.hjb_residual(1.0, 1.1), Error);
    EXPECT_THROW(v.hjb_residual(-1.0, 0.5), Error);
}

TEST(HjbResidual, NondecreasingInRetentionOnMiddleRegion) {
    const auto& v = canonical_vf();
    const auto& p = v.policy();
    for (int i = 0; i <= 40; ++i) {
        const double x = p.x0 + (p.x_star - p.x0) * i / 40.0;
        double prev = -std::numeric_limits<double>::infinity();
        for (int j = 0; j <= 100; ++j) {
            const double r = v.hjb_residual(x, j / 100.0);
            EXPECT_GE(r, prev) << "x=" << x << " a=" << j / 100.0;
            prev = r;
        }
    }
}

TEST(ValueFunction, ReflectsPolicy) {
    const auto& v = canonical_vf();
    EXPECT_EQ(v.policy().x_star, solve_policy(fixture::canonical()).x_star);
    EXPECT_EQ(v.model().k, g::k);
}
