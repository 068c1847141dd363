#include "catdiv/levy_measure.hpp"

#include "catdiv/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace catdiv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// 3-point Gauss-Legendre on [-1, 1]; exact to degree 5, which covers a
// smooth integrand times a linear density on cells of width ~1e-3.
constexpr std::array<double, 3> kGLNodes = {-0.7745966692414833770, 0.0, 0.7745966692414833770};
constexpr std::array<double, 3> kGLWeights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

/// Exact Int_{a}^{b} rho and Int_{a}^{b} z rho for rho linear from ra to rb.
std::pair<double, double> linear_cell_moments(double a, double b, double ra, double rb) {
    const double h = b - a;
    const double m0 = 0.5 * h * (ra + rb);
    const double m1 = h / 6.0 * (a * (2.0 * ra + rb) + b * (ra + 2.0 * rb));
    return {m0, m1};
}

double interpolate(const TabulatedDensity& tab, std::size_t cell, double z) {
    const double z0 = tab.z[cell];
    const double z1 = tab.z[cell + 1];
    const double w = (z - z0) / (z1 - z0);
    return tab.density[cell] + w * (tab.density[cell + 1] - tab.density[cell]);
}

[[noreturn]] void throw_divergent(double kd, double bound) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "exponential moment diverges: k*d = " << kd << " >= " << bound;
    throw Error(ErrorCode::DivergentIntegral, msg.str());
}

// e^{u} - 1 - u without cancellation for small |u|.
double exp_excess(double u) { return std::expm1(u) - u; }

}  // namespace

LevyMeasure::LevyMeasure(LevyMeasureSpec spec) : spec_(std::move(spec)) {
    std::visit(
        overloaded{
            [this](const ExponentialFamily& e) {
                if (!(e.rate > 0.0) || !std::isfinite(e.rate)) {
                    std::ostringstream msg;
                    msg << "exponential rate must be finite and > 0, got " << e.rate;
                    throw Error(ErrorCode::InvalidMeasure, msg.str());
                }
                mass_ = 1.0 / e.rate;
                mean_ = 1.0 / (e.rate * e.rate);
            },
            [this](const TabulatedDensity& tab) {
                if (tab.z.size() < 2 || tab.z.size() != tab.density.size()) {
                    throw Error(ErrorCode::InvalidMeasure,
                                "tabulated density needs >= 2 (z, density) rows of equal length");
                }
                if (!(tab.z.front() >= 0.0)) {
                    throw Error(ErrorCode::InvalidMeasure, "support must lie in [0, inf): z[0] < 0");
                }
                for (std::size_t i = 0; i < tab.z.size(); ++i) {
                    if (!std::isfinite(tab.z[i]) || !std::isfinite(tab.density[i]) ||
                        tab.density[i] < 0.0) {
                        std::ostringstream msg;
                        msg << "row " << i << ": z and density must be finite, density >= 0";
                        throw Error(ErrorCode::InvalidMeasure, msg.str());
                    }
                    if (i > 0 && !(tab.z[i] > tab.z[i - 1])) {
                        std::ostringstream msg;
                        msg << "row " << i << ": z must be strictly increasing";
                        throw Error(ErrorCode::InvalidMeasure, msg.str());
                    }
                }
                if (!(tab.tail_rate > 0.0) || !std::isfinite(tab.tail_rate)) {
                    throw Error(ErrorCode::InvalidMeasure, "tail rate must be finite and > 0");
                }
                cdf_.assign(tab.z.size(), 0.0);
                double m0 = 0.0;
                double m1 = 0.0;
                for (std::size_t i = 0; i + 1 < tab.z.size(); ++i) {
                    const auto [c0, c1] = linear_cell_moments(tab.z[i], tab.z[i + 1],
                                                              tab.density[i], tab.density[i + 1]);
                    m0 += c0;
                    m1 += c1;
                    cdf_[i + 1] = m0;
                }
                const double r = tab.tail_rate;
                const double zm = tab.z.back();
                const double rho = tab.density.back();
                mass_ = m0 + rho / r;
                mean_ = m1 + rho * (zm / r + 1.0 / (r * r));
            }},
        spec_);

    if (!(mass_ > 0.0) || !std::isfinite(mass_)) {
        throw Error(ErrorCode::InvalidMeasure, "total mass must be finite and > 0");
    }
    if (!(mean_ > 0.0) || !std::isfinite(mean_)) {
        throw Error(ErrorCode::InvalidMeasure, "mean jump must be finite and > 0");
    }
}

LevyMeasure LevyMeasure::exponential(double rate) { return LevyMeasure(ExponentialFamily{rate}); }

LevyMeasure LevyMeasure::tabulated(std::vector<double> z, std::vector<double> density,
                                   double tail_rate) {
    return LevyMeasure(TabulatedDensity{std::move(z), std::move(density), tail_rate});
}

bool LevyMeasure::is_exponential() const noexcept {
    return std::holds_alternative<ExponentialFamily>(spec_);
}

double LevyMeasure::exponential_moment_bound() const noexcept {
    return std::visit(overloaded{[](const ExponentialFamily& e) { return e.rate; },
                                 [](const TabulatedDensity& t) { return t.tail_rate; }},
                      spec_);
}

double LevyMeasure::integrate(const std::function<double(double)>& f,
                              std::span<const double> breakpoints, double abs_tol) const {
    std::vector<double> bps;
    bps.reserve(breakpoints.size());
    for (double b : breakpoints) {
        if (b > 0.0 && std::isfinite(b)) bps.push_back(b);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    return std::visit(
        overloaded{
            [&](const ExponentialFamily& e) {
                // Work in w = t z so the weight is e^{-w} regardless of t.
                const double t = e.rate;
                auto g = [&f, t](double w) { return f(w / t) * std::exp(-w) / t; };
                std::vector<double> edges{0.0};
                for (double b : bps) edges.push_back(b * t);
                const quad::Options opts{abs_tol / static_cast<double>(edges.size()), 4000};
                double total = 0.0;
                for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
                    total += quad::integrate(g, edges[i], edges[i + 1], opts).value;
                }
                total += quad::integrate(g, edges.back(),
                                         std::numeric_limits<double>::infinity(), opts)
                             .value;
                return total;
            },
            [&](const TabulatedDensity& tab) {
                double body = 0.0;
                auto bp = bps.begin();
                for (std::size_t i = 0; i + 1 < tab.z.size(); ++i) {
                    const double z0 = tab.z[i];
                    const double z1 = tab.z[i + 1];
                    while (bp != bps.end() && *bp <= z0) ++bp;
                    double lo = z0;
                    auto sub_cell = [&](double a, double b) {
                        const double mid = 0.5 * (a + b);
                        const double half = 0.5 * (b - a);
                        double s = 0.0;
                        for (std::size_t q = 0; q < kGLNodes.size(); ++q) {
                            const double z = mid + half * kGLNodes[q];
                            s += kGLWeights[q] * f(z) * interpolate(tab, i, z);
                        }
                        return half * s;
                    };
                    while (bp != bps.end() && *bp < z1) {
                        body += sub_cell(lo, *bp);
                        lo = *bp;
                        ++bp;
                    }
                    body += sub_cell(lo, z1);
                }
                const double zm = tab.z.back();
                const double rho = tab.density.back();
                if (rho == 0.0) return body;
                const double r = tab.tail_rate;
                auto g = [&f, zm, rho, r](double w) { return f(zm + w / r) * rho * std::exp(-w) / r; };
                std::vector<double> edges{0.0};
                for (double b : bps) {
                    if (b > zm) edges.push_back((b - zm) * r);
                }
                const quad::Options opts{abs_tol / static_cast<double>(edges.size()), 4000};
                double tail = 0.0;
                for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
                    tail += quad::integrate(g, edges[i], edges[i + 1], opts).value;
                }
                tail += quad::integrate(g, edges.back(), std::numeric_limits<double>::infinity(),
                                        opts)
                            .value;
                return body + tail;
            }},
        spec_);
}

double LevyMeasure::exp_jump_integral(double k, double d) const {
    const double kd = k * d;
    if (const auto* e = std::get_if<ExponentialFamily>(&spec_)) {
        const double t = e->rate;
        if (kd >= t) throw_divergent(kd, t);
        return kd * kd / (t * t * (t - kd));
    }
    return exp_jump_integral_numeric(k, d);
}

double LevyMeasure::exp_jump_integral_numeric(double k, double d, double abs_tol) const {
    const double kd = k * d;
    const double bound = exponential_moment_bound();
    if (kd >= bound) throw_divergent(kd, bound);
    if (kd == 0.0) return 0.0;
    auto f = [kd](double z) { return exp_excess(kd * z); };
    if (const auto* tab = std::get_if<TabulatedDensity>(&spec_)) {
        // Body by the composite rule, tail in closed form against the
        // exponential continuation of the density.
        double body = 0.0;
        for (std::size_t i = 0; i + 1 < tab->z.size(); ++i) {
            const double mid = 0.5 * (tab->z[i] + tab->z[i + 1]);
            const double half = 0.5 * (tab->z[i + 1] - tab->z[i]);
            double s = 0.0;
            for (std::size_t q = 0; q < kGLNodes.size(); ++q) {
                const double z = mid + half * kGLNodes[q];
                s += kGLWeights[q] * f(z) * interpolate(*tab, i, z);
            }
            body += half * s;
        }
        const double zm = tab->z.back();
        const double rho = tab->density.back();
        const double r = tab->tail_rate;
        const double tail =
            rho * (std::exp(kd * zm) / (r - kd) - 1.0 / r - kd * (zm / r + 1.0 / (r * r)));
        return body + tail;
    }
    // Exponential family: fold e^{kdz} into the weight so large z cannot overflow.
    const double t = std::get<ExponentialFamily>(spec_).rate;
    const double alpha = kd / t;
    auto g = [alpha, t](double w) {
        if (alpha * w < 300.0) return exp_excess(alpha * w) * std::exp(-w) / t;
        return (std::exp((alpha - 1.0) * w) - (1.0 + alpha * w) * std::exp(-w)) / t;
    };
    return quad::integrate(g, 0.0, std::numeric_limits<double>::infinity(), {abs_tol, 4000}).value;
}

double LevyMeasure::power_jump_integral(double gamma, double b, double abs_tol) const {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        std::ostringstream msg;
        msg << "power_jump_integral needs gamma in (0, 1), got " << gamma;
        throw Error(ErrorCode::InvalidParameter, msg.str());
    }
    if (!(b >= 0.0)) {
        std::ostringstream msg;
        msg << "power_jump_integral needs b >= 0, got " << b;
        throw Error(ErrorCode::InvalidParameter, msg.str());
    }
    if (b == 0.0) return 0.0;
    auto f = [gamma, b](double z) {
        const double bz = b * z;
        return std::expm1(gamma * std::log1p(bz)) - gamma * bz;
    };
    return integrate(f, {}, abs_tol);
}

double LevyMeasure::sample_jump(double u) const {
    return std::visit(
        overloaded{
            [u](const ExponentialFamily& e) { return -std::log1p(-u) / e.rate; },
            [u, this](const TabulatedDensity& tab) {
                const double target = u * mass_;
                const double body = cdf_.back();
                if (target >= body) {
                    const double rho = tab.density.back();
                    const double r = tab.tail_rate;
                    const double frac = (target - body) * r / rho;
                    return tab.z.back() - std::log1p(-std::min(frac, 1.0)) / r;
                }
                auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
                const std::size_t i = static_cast<std::size_t>(it - cdf_.begin()) - 1;
                const double need = target - cdf_[i];
                const double r0 = tab.density[i];
                const double h = tab.z[i + 1] - tab.z[i];
                const double g = (tab.density[i + 1] - r0) / h;
                // Solve r0 s + g s^2 / 2 = need in the stable root form.
                const double disc = std::max(r0 * r0 + 2.0 * g * need, 0.0);
                const double denom = r0 + std::sqrt(disc);
                const double s = denom > 0.0 ? 2.0 * need / denom : 0.0;
                return tab.z[i] + std::clamp(s, 0.0, h);
            }},
        spec_);
}

std::pair<double, double> LevyMeasure::tail_moments(double z0) const {
    z0 = std::max(z0, 0.0);
    return std::visit(
        overloaded{
            [z0](const ExponentialFamily& e) {
                const double t = e.rate;
                const double w = std::exp(-t * z0);
                return std::pair{w / t, w * (z0 / t + 1.0 / (t * t))};
            },
            [z0](const TabulatedDensity& tab) {
                const double zm = tab.z.back();
                const double rho = tab.density.back();
                const double r = tab.tail_rate;
                if (z0 >= zm) {
                    const double w = rho * std::exp(-r * (z0 - zm));
                    return std::pair{w / r, w * (z0 / r + 1.0 / (r * r))};
                }
                double m0 = rho / r;
                double m1 = rho * (zm / r + 1.0 / (r * r));
                for (std::size_t i = 0; i + 1 < tab.z.size(); ++i) {
                    const double a = tab.z[i];
                    const double b = tab.z[i + 1];
                    if (b <= z0) continue;
                    const double lo = std::max(a, z0);
                    const double rlo = lo == a ? tab.density[i] : interpolate(tab, i, lo);
                    const auto [c0, c1] = linear_cell_moments(lo, b, rlo, tab.density[i + 1]);
                    m0 += c0;
                    m1 += c1;
                }
                return std::pair{m0, m1};
            }},
        spec_);
}

std::string LevyMeasure::describe() const {
    std::ostringstream out;
    out.precision(17);
    std::visit(overloaded{[&](const ExponentialFamily& e) { out << "exp(" << e.rate << ")"; },
                          [&](const TabulatedDensity& t) {
                              out << "table(" << t.z.size() << " rows, tail_rate=" << t.tail_rate
                                  << ")";
                          }},
               spec_);
    return out.str();
}

}  // namespace catdiv
