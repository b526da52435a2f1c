// quadrature.cpp: globally adaptive Gauss-Kronrod (10/21) integration

#include "bathforge/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "bathforge/errors.hpp"

namespace bathforge::numerics {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600567703630, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const Integrand& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double resg = 0.0;
    double resk = fc * kWgk[10];
    double resabs = std::abs(resk);
    std::array<double, 10> fv1{}, fv2{};
    for (int j = 0; j < 5; ++j) {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 5; ++j) {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[10] * std::abs(fc - reskh);
    for (int j = 0; j < 10; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    return {lo, hi, value, err};
}

} // namespace

QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureOptions& opts) {
    QuadratureResult out;
    if (breakpoints.size() < 2) return out;

    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double lo = breakpoints[i];
        const double hi = breakpoints[i + 1];
        if (!(hi > lo)) continue;
        Panel p = gauss_kronrod(f, lo, hi);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    const auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    while (!heap.empty() && total_err > tolerance()) {
        if (heap.size() >= opts.max_intervals) {
            out.converged = false;
            break;
        }
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Panel cannot be split further in floating point.
            out.converged = false;
            break;
        }
        heap.pop();
        const Panel left = gauss_kronrod(f, worst.lo, mid);
        const Panel right = gauss_kronrod(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift accumulated by incremental updates.
    out.intervals = heap.size();
    if (!heap.empty()) {
        out.worst_lo = heap.top().lo;
        out.worst_hi = heap.top().hi;
    }
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = value;
    out.error = error;
    if (!std::isfinite(value)) out.converged = false;
    return out;
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureOptions& opts, std::size_t panels) {
    if (a == b) return {};
    if (a > b) {
        QuadratureResult r = integrate(f, b, a, opts, panels);
        r.value = -r.value;
        return r;
    }
    panels = std::max<std::size_t>(panels, 1);
    std::vector<double> pts(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i)
        pts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(panels);
    pts.back() = b;
    return integrate(f, std::span<const double>(pts), opts);
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a, double scale,
                                       const QuadratureOptions& opts) {
    const auto g = [&](double u) {
        const double x = a + scale * (1.0 - u) / u;
        if (!std::isfinite(x)) return 0.0;
        const double jac = scale / (u * u);
        const double v = f(x) * jac;
        return std::isfinite(v) ? v : 0.0;
    };
    // Denser initial partition near u -> 0, i.e. far in the tail.
    const std::array<double, 8> pts = {0.0, 1e-4, 1e-3, 1e-2, 0.05, 0.2, 0.5, 1.0};
    return integrate(g, std::span<const double>(pts), opts);
}

QuadratureResult integrate_from_minus_infinity(const Integrand& f, double b, double scale,
                                               const QuadratureOptions& opts) {
    return integrate_to_infinity([&](double x) { return f(-x); }, -b, scale, opts);
}

QuadratureResult combine(const QuadratureResult& lhs, const QuadratureResult& rhs) {
    QuadratureResult out;
    out.value = lhs.value + rhs.value;
    out.error = lhs.error + rhs.error;
    out.intervals = lhs.intervals + rhs.intervals;
    out.converged = lhs.converged && rhs.converged;
    const bool left_worse = !lhs.converged || (rhs.converged && lhs.error >= rhs.error);
    out.worst_lo = left_worse ? lhs.worst_lo : rhs.worst_lo;
    out.worst_hi = left_worse ? lhs.worst_hi : rhs.worst_hi;
    return out;
}

void require_converged(const QuadratureResult& r, const std::string& context) {
    if (r.converged) return;
    std::ostringstream msg;
    msg << context << ": quadrature did not converge (value " << r.value << ", residual "
        << r.error << ", " << r.intervals << " panels, worst panel [" << r.worst_lo << ", "
        << r.worst_hi << "])";
    throw NumericError(msg.str());
}

std::vector<double> uniform_breakpoints(double a, double b, double h, std::size_t max_panels) {
    std::size_t n = 1;
    if (h > 0.0 && b > a) {
        const double want = std::ceil((b - a) / h);
        n = static_cast<std::size_t>(std::clamp(want, 1.0, static_cast<double>(max_panels)));
    }
    std::vector<double> pts(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        pts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    pts.back() = b;
    return pts;
}

std::vector<double> merge_breakpoints(std::vector<double> base, std::span<const double> extra) {
    if (base.empty()) return base;
    const double lo = base.front();
    const double hi = base.back();
    for (double x : extra)
        if (x > lo && x < hi) base.push_back(x);
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    return base;
}

} // namespace bathforge::numerics
