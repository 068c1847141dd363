#include "catdiv/quadrature.hpp"

#include "catdiv/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace catdiv::quad {

namespace {

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

bool operator<(const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; }

Panel evaluate_panel(const std::function<double(double)>& g, double a, double b) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double err = 0.0;
    // max_depth = 0: one K15 panel on [-1, 1] plus its |K15 - G7| estimate.
    const double v = Rule::integrate(
        [&](double t) { return g(mid + half * t); }, -1.0, 1.0, 0, 0.0, &err);
    if (!std::isfinite(v) || !std::isfinite(err)) {
        std::ostringstream msg;
        msg << "non-finite integrand on [" << a << ", " << b << "]";
        throw Error(ErrorCode::QuadratureFailure, msg.str());
    }
    return {a, b, half * v, half * err};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts) {
    if (!(b > a)) {
        if (a == b) return {};
        std::ostringstream msg;
        msg << "empty or reversed range [" << a << ", " << b << "]";
        throw Error(ErrorCode::QuadratureFailure, msg.str());
    }

    std::function<double(double)> g;
    double lo = a;
    double hi = b;
    if (std::isinf(b)) {
        g = [&f, a](double u) {
            const double w = 1.0 - u;
            return f(a + u / w) / (w * w);
        };
        lo = 0.0;
        hi = 1.0;
    } else {
        g = f;
    }

    std::vector<Panel> heap;
    heap.reserve(64);
    heap.push_back(evaluate_panel(g, lo, hi));

    auto total_error = [&heap] {
        double e = 0.0;
        for (const auto& p : heap) e += p.error;
        return e;
    };

    double err = heap.front().error;
    while (err > opts.abs_tol) {
        if (heap.size() >= opts.max_panels) {
            std::ostringstream msg;
            msg << "error estimate " << err << " above tolerance " << opts.abs_tol
                << " after " << heap.size() << " panels on [" << a << ", " << b << "]";
            throw Error(ErrorCode::QuadratureFailure, msg.str());
        }
        std::pop_heap(heap.begin(), heap.end());
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            std::ostringstream msg;
            msg << "panel width underflow near x = " << worst.a;
            throw Error(ErrorCode::QuadratureFailure, msg.str());
        }
        heap.push_back(evaluate_panel(g, worst.a, mid));
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(evaluate_panel(g, mid, worst.b));
        std::push_heap(heap.begin(), heap.end());
        err = total_error();
    }

    // Sum in a fixed order so results do not depend on heap layout.
    std::sort(heap.begin(), heap.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });
    Result out;
    for (const auto& p : heap) {
        out.value += p.value;
        out.error += p.error;
    }
    out.panels = heap.size();
    return out;
}

}  // namespace catdiv::quad
