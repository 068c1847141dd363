#include "catdiv/error.hpp"
#include "catdiv/levy_measure.hpp"
#include "golden.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using catdiv::Error;
using catdiv::ErrorCode;
using catdiv::LevyMeasure;

namespace {

const LevyMeasure& exp_table_measure() {
    static const LevyMeasure m = [] {
        std::vector<double> z, d;
        oracle::exp_table(1.0, 10.0, 2.5e-4, z, d);
        return LevyMeasure::tabulated(z, d, 1.0);
    }();
    return m;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no catdiv::Error thrown";
    return ErrorCode::IoError;
}

}  // namespace

TEST(LevyMeasure, ExponentialMassAndMean) {
    EXPECT_DOUBLE_EQ(LevyMeasure::exponential(1.0).total_mass(), 1.0);
    EXPECT_DOUBLE_EQ(LevyMeasure::exponential(2.0).total_mass(), 0.5);
    EXPECT_DOUBLE_EQ(LevyMeasure::exponential(1.0).mean_jump(), 1.0);
    EXPECT_DOUBLE_EQ(LevyMeasure::exponential(2.0).mean_jump(), 0.25);
}

TEST(LevyMeasure, TabulatedMassAndMean) {
    const auto& m = exp_table_measure();
    EXPECT_NEAR(m.total_mass(), 1.0, 1e-8);
    EXPECT_NEAR(m.mean_jump(), 1.0, 1e-8);
}

TEST(LevyMeasure, RejectsInvalidSpecs) {
    EXPECT_EQ(code_of([] { LevyMeasure::exponential(0.0); }), ErrorCode::InvalidMeasure);
    EXPECT_EQ(code_of([] { LevyMeasure::exponential(-1.0); }), ErrorCode::InvalidMeasure);
    EXPECT_EQ(code_of([] { LevyMeasure::tabulated({0.0, 1.0}, {0.0, 0.0}, 1.0); }),
              ErrorCode::InvalidMeasure);
    EXPECT_EQ(code_of([] { LevyMeasure::tabulated({-1.0, 0.0, 1.0}, {1, 1, 1}, 1.0); }),
              ErrorCode::InvalidMeasure);
    EXPECT_EQ(code_of([] { LevyMeasure::tabulated({0.0, 1.0}, {1.0, -0.5}, 1.0); }),
              ErrorCode::InvalidMeasure);
    EXPECT_EQ(code_of([] { LevyMeasure::tabulated({0.0, 1.0}, {1.0, 0.5}, 0.0); }),
              ErrorCode::InvalidMeasure);
}

TEST(LevyMeasure, ExpJumpIntegralExamples) {
    const auto m1 = LevyMeasure::exponential(1.0);
    const auto m2 = LevyMeasure::exponential(2.0);
    EXPECT_EQ(m1.exp_jump_integral(0.5, 0.0), 0.0);
    EXPECT_NEAR(m1.exp_jump_integral(0.5, 1.0), 0.5, 1e-15);
    EXPECT_NEAR(m2.exp_jump_integral(0.5, -2.0), 1.0 / 12.0, 1e-15);

    // Simpson oracle on the raw integrands.
    EXPECT_NEAR(oracle::exp_weighted([](double z) { return std::expm1(0.5 * z) - 0.5 * z; }, 1.0,
                                     0.0, 120.0, 400000),
                0.5, 1e-9);
    EXPECT_NEAR(oracle::exp_weighted([](double z) { return std::expm1(-z) + z; }, 2.0), 1.0 / 12.0,
                1e-10);
}

TEST(LevyMeasure, ExpJumpIntegralDivergence) {
    const auto m = LevyMeasure::exponential(1.0);
    EXPECT_EQ(code_of([&] { m.exp_jump_integral(0.5, 2.0); }), ErrorCode::DivergentIntegral);
    EXPECT_EQ(code_of([&] { m.exp_jump_integral(0.5, 3.0); }), ErrorCode::DivergentIntegral);
    EXPECT_EQ(code_of([&] { exp_table_measure().exp_jump_integral(0.5, 2.5); }),
              ErrorCode::DivergentIntegral);
}

TEST(LevyMeasure, QuadratureMatchesClosedFormOnGrid) {
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const auto m = LevyMeasure::exponential(t);
        for (double k : {0.1, 0.5, 1.0}) {
            for (double frac : {-3.0, -0.5, 0.2, 0.6, 0.9}) {
                const double d = frac * t / k;
                const double closed = m.exp_jump_integral(k, d);
                const double kd = k * d;
                EXPECT_NEAR(closed, kd * kd / (t * t * (t - kd)), 1e-15 * (1 + closed));
                EXPECT_NEAR(m.exp_jump_integral_numeric(k, d), closed, 1e-9)
                    << "t=" << t << " k=" << k << " d=" << d;
            }
        }
    }
}

TEST(LevyMeasure, ExpJumpIntegralNonNegativeAndConvex) {
    const auto m = LevyMeasure::exponential(1.0);
    const double k = 0.5, h = 1e-3;
    for (double d = -5.0; d < 1.9; d += 0.01) {
        EXPECT_GE(m.exp_jump_integral(k, d), 0.0);
        const double second =
            m.exp_jump_integral(k, d - h) - 2 * m.exp_jump_integral(k, d) + m.exp_jump_integral(k, d + h);
        EXPECT_GE(second, -1e-8) << d;
    }
}

TEST(LevyMeasure, TabulatedExpJumpIntegralMatchesExponential) {
    const auto exp1 = LevyMeasure::exponential(1.0);
    for (double d : {-2.0, -0.77, 0.02, 0.5, 1.0}) {
        EXPECT_NEAR(exp_table_measure().exp_jump_integral(0.5, d), exp1.exp_jump_integral(0.5, d),
                    1e-8)
            << d;
    }
}

TEST(LevyMeasure, PowerJumpIntegral) {
    const auto m = LevyMeasure::exponential(1.0);
    EXPECT_EQ(m.power_jump_integral(0.5, 0.0), 0.0);
    EXPECT_NEAR(m.power_jump_integral(0.5, 1e-12), 0.0, 1e-20);

    const double trap = oracle::trapezoid(
        [](double z) { return (std::sqrt(1 + z) - 1 - 0.5 * z) * std::exp(-z); }, 0.0, 50.0,
        2000000);
    // Tail beyond 50 is below 51 * e^{-50} in magnitude.
    EXPECT_NEAR(trap, golden::power_integral_half_unit, 1e-10);
    EXPECT_NEAR(m.power_jump_integral(0.5, 1.0), golden::power_integral_half_unit, 1e-12);
    EXPECT_NEAR(exp_table_measure().power_jump_integral(0.5, 1.0), golden::power_integral_half_unit,
                1e-8);
}

TEST(LevyMeasure, PowerJumpIntegralNonPositive) {
    const auto m = LevyMeasure::exponential(1.0);
    for (double g = 0.05; g < 1.0; g += 0.1) {
        for (double b : {1e-3, 0.1, 1.0, 10.0, 100.0}) {
            EXPECT_LE(m.power_jump_integral(g, b), 0.0) << g << " " << b;
        }
    }
}

TEST(LevyMeasure, SampleJumpInverseCdf) {
    EXPECT_NEAR(LevyMeasure::exponential(1.0).sample_jump(1 - std::exp(-1.0)), 1.0, 1e-14);
    EXPECT_NEAR(LevyMeasure::exponential(2.0).sample_jump(1 - std::exp(-2.0)), 1.0, 1e-14);

    // Median of the table: bisection on its trapezoid CDF.
    const auto& m = exp_table_measure();
    const double median = oracle::bisect(
        [](double x) {
            const double body = oracle::trapezoid([](double z) { return std::exp(-z); }, 0.0, x,
                                                  static_cast<std::size_t>(x / 2.5e-4 + 0.5));
            return body / 1.0 - 0.5;
        },
        0.1, 2.0);
    EXPECT_NEAR(m.sample_jump(0.5), median, 1e-6);
    EXPECT_NEAR(m.sample_jump(0.5), std::log(2.0), 1e-7);
}

TEST(LevyMeasure, SampleJumpMonotoneInU) {
    const auto& m = exp_table_measure();
    double prev = -1.0;
    for (double u = 0.001; u < 1.0; u += 0.001) {
        const double z = m.sample_jump(u);
        EXPECT_GT(z, prev);
        prev = z;
    }
    EXPECT_GT(m.sample_jump(0.99999999), 10.0);  // exponential tail
}

TEST(LevyMeasure, SampleMeanMatchesMeanJump) {
    for (const auto* m : {&exp_table_measure()}) {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const int n = 1000000;
        double s = 0, s2 = 0;
        for (int i = 0; i < n; ++i) {
            double v = u(rng);
            if (v == 0.0) v = 0.5;
            const double z = m->sample_jump(v);
            s += z;
            s2 += z * z;
        }
        const double mean = s / n;
        const double se = std::sqrt((s2 / n - mean * mean) / n);
        EXPECT_NEAR(mean, m->mean_jump() / m->total_mass(), 4 * se);
    }
}

TEST(LevyMeasure, IntegrateAgainstClosedForms) {
    const auto m = LevyMeasure::exponential(2.0);
    EXPECT_NEAR(m.integrate([](double z) { return z * z; }), 2.0 / 8.0, 1e-13);
    const double kink[] = {0.7};
    EXPECT_NEAR(m.integrate([](double z) { return std::max(z - 0.7, 0.0); }, kink),
                std::exp(-1.4) / 4.0, 1e-13);
    EXPECT_NEAR(exp_table_measure().integrate([](double z) { return z * z; }), 2.0, 1e-7);
}

TEST(LevyMeasure, TailMoments) {
    const auto m = LevyMeasure::exponential(2.0);
    const auto [m0, m1] = m.tail_moments(1.5);
    EXPECT_NEAR(m0, std::exp(-3.0) / 2.0, 1e-16);
    EXPECT_NEAR(m1, std::exp(-3.0) * (1.5 / 2.0 + 0.25), 1e-16);
    const auto [t0, t1] = exp_table_measure().tail_moments(1.5);
    EXPECT_NEAR(t0, std::exp(-1.5), 1e-8);
    EXPECT_NEAR(t1, 2.5 * std::exp(-1.5), 1e-8);
}

TEST(LevyMeasure, Describe) {
    EXPECT_EQ(LevyMeasure::exponential(1.0).describe(), "exp(1)");
}
