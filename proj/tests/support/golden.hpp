// Reference values computed at 40 significant digits with an independent
// arbitrary-precision implementation (mpmath), exponential jump measure
// nu(dz) = e^{-z} dz.

#ifndef CATDIV_TESTS_GOLDEN_HPP
#define CATDIV_TESTS_GOLDEN_HPP

namespace golden {

/// mu = 2, sigma2 = 5, c = 0.05, beta = 0.8, k = 0.5.
namespace canonical {
inline constexpr double mu = 2.0;
inline constexpr double sigma2 = 5.0;
inline constexpr double c = 0.05;
inline constexpr double beta = 0.8;
inline constexpr double k = 0.5;

inline constexpr double gamma = 0.11881306948148006331;
inline constexpr double d_plus = 0.024194232776757049217;
inline constexpr double d_minus = -0.77034844667029807051;
inline constexpr double x0 = 2.2029673262962998417;
inline constexpr double x_star = 6.7331243791198474598;
inline constexpr double c1 = 25.213643292976181729;
inline constexpr double c3 = -5.6574218240566382917;
inline constexpr double c4 = 27.239575483296350835;
inline constexpr double psi_at_barrier = 32.027240207240911893;
inline constexpr double mu_beta_minus_c_psi = -0.0013620103620455946685;
inline constexpr double h_at_half = 0.32307851730302045918;
}  // namespace canonical

/// Canonical parameters with c = 0.5.
namespace fast_discount {
inline constexpr double c = 0.5;
inline constexpr double gamma = 0.57219887584259396828;
inline constexpr double d_plus = 0.19642398390956808766;
inline constexpr double d_minus = -0.94694050355567723767;
inline constexpr double x0 = 1.0695028103935150793;
inline constexpr double x_star = 2.5297494760117417894;
inline constexpr double c1 = 1.8798269325501755586;
inline constexpr double c3 = -1.5927191485051152372;
inline constexpr double c4 = 2.052253620716098769;
inline constexpr double psi_at_barrier = 3.2279963475325227035;
inline constexpr double mu_beta_minus_c_psi = -0.013998173766261351768;
}  // namespace fast_discount

/// Int ((1+z)^0.5 - 1 - 0.5 z) e^{-z} dz.
inline constexpr double power_integral_half_unit = -0.12106392192934394698;

}  // namespace golden

#endif  // CATDIV_TESTS_GOLDEN_HPP
