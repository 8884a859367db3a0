// Fixed-order Gauss-Legendre rules, the angular (u) integral and the
// semi-infinite frequency (x) integral with a certified exponential tail.
#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace qfpc {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-300;
    int gl_order_u = 64;
    int gl_order_panel = 32;
    double panel_width = std::numbers::pi;
    double tail_epsilon = 1e-16;
    /// Oscillation phase covered by one angular panel of gl_order_u nodes.
    double u_panel_phase = 24.0 * std::numbers::pi;
    long max_panels = 1'000'000;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(tail_epsilon > 0.0)) {
            throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
        }
        if (gl_order_u < 2 || gl_order_panel < 2) {
            throw std::invalid_argument("QuadratureConfig: rule orders must be >= 2");
        }
        if (!(panel_width > 0.0) || !(u_panel_phase > 0.0) || max_panels < 1) {
            throw std::invalid_argument("QuadratureConfig: panel sizes must be positive");
        }
    }
};

class NonFiniteSampleError : public std::runtime_error {
public:
    NonFiniteSampleError(const std::string& what, double node) : std::runtime_error(what), node_(node) {}
    double node() const { return node_; }

private:
    double node_;
};

class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Nodes and weights of the n-point rule on [-1, 1].
class GaussLegendreRule {
public:
    explicit GaussLegendreRule(int order) : nodes_(order), weights_(order) {
        if (order < 1) throw std::invalid_argument("GaussLegendreRule: order must be >= 1");
        const int n = order;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                if (n == 1) p0 = 1.0;
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes_[i] = -x;
            nodes_[n - 1 - i] = x;
            weights_[i] = w;
            weights_[n - 1 - i] = w;
        }
        if (n % 2) nodes_[n / 2] = 0.0;
    }

    int order() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Shared immutable instance per order.
    static const GaussLegendreRule& get(int order) {
        static std::mutex mu;
        static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
        std::lock_guard lock(mu);
        auto& slot = cache[order];
        if (!slot) slot = std::make_unique<GaussLegendreRule>(order);
        return *slot;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

namespace quadrature_detail {

// Scalars and fixed-size vectors (ChannelValues, std::array) share one code path.
template <class R>
concept Indexable = requires(R r) {
    { r[std::size_t{0}] } -> std::convertible_to<double>;
    { r.size() } -> std::convertible_to<std::size_t>;
};

template <class R>
std::size_t components(const R& r) {
    if constexpr (Indexable<R>) {
        return r.size();
    } else {
        return 1;
    }
}

template <class R>
double component(const R& r, std::size_t i) {
    if constexpr (Indexable<R>) {
        return r[i];
    } else {
        (void)i;
        return r;
    }
}

template <class R>
bool all_finite(const R& r) {
    for (std::size_t i = 0; i < components(r); ++i)
        if (!std::isfinite(component(r, i))) return false;
    return true;
}

template <class R>
R scaled(double s, const R& r) {
    if constexpr (Indexable<R>) {
        R out = r;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * r[i];
        return out;
    } else {
        return s * r;
    }
}

template <class R>
void accumulate(R& acc, const R& r) {
    if constexpr (Indexable<R>) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += r[i];
    } else {
        acc += r;
    }
}

template <class F, class R>
R gauss_legendre_impl(const GaussLegendreRule& rule, F& f, double lo, double hi) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    R acc{};
    const auto& xs = rule.nodes();
    const auto& ws = rule.weights();
    for (int i = 0; i < rule.order(); ++i) {
        const double t = mid + half * xs[i];
        const R val = f(t);
        if (!all_finite(val)) {
            std::ostringstream os;
            os << "gauss_legendre: non-finite integrand at node " << t;
            throw NonFiniteSampleError(os.str(), t);
        }
        accumulate(acc, scaled(ws[i], val));
    }
    return scaled(half, acc);
}

}  // namespace quadrature_detail

/// n-point Gauss-Legendre approximation of int_lo^hi f.
template <class F>
auto gauss_legendre(int order, F&& f, double lo, double hi) {
    using R = std::decay_t<std::invoke_result_t<F&, double>>;
    if (!(lo < hi)) throw std::invalid_argument("gauss_legendre: need lo < hi");
    return quadrature_detail::gauss_legendre_impl<F, R>(GaussLegendreRule::get(order), f, lo, hi);
}

/// int_0^1 du f(u) through u = cos(theta), which removes the sqrt(1-u^2)
/// edge at u = 1. f may take (u) or (u, sqrt(1-u^2)).
///
/// `oscillation` is the largest angular frequency of f in theta (x for the
/// friction kernels); the theta range is split into panels of at most
/// cfg.u_panel_phase radians of phase, each integrated with gl_order_u nodes.
/// `theta_max` < pi/2 restricts the range to u in [cos(theta_max), 1].
template <class F>
auto integrate_u(F&& f, const QuadratureConfig& cfg, double oscillation = 0.0,
                 double theta_max = std::numbers::pi / 2) {
    auto in_theta = [&f](double theta) {
        const double u = std::cos(theta), s = std::sin(theta);
        if constexpr (std::is_invocable_v<F&, double, double>) {
            return quadrature_detail::scaled(s, f(u, s));
        } else {
            return quadrature_detail::scaled(s, f(u));
        }
    };
    using R = std::decay_t<std::invoke_result_t<decltype(in_theta)&, double>>;
    theta_max = std::clamp(theta_max, 0.0, std::numbers::pi / 2);
    R acc{};
    if (theta_max == 0.0) return acc;
    const double phase = std::max(oscillation, 0.0) * theta_max;
    const long panels = std::max(1L, static_cast<long>(std::ceil(phase / cfg.u_panel_phase)));
    const double width = theta_max / panels;
    const auto& rule = GaussLegendreRule::get(cfg.gl_order_u);
    for (long p = 0; p < panels; ++p) {
        const R part =
            quadrature_detail::gauss_legendre_impl<decltype(in_theta), R>(rule, in_theta, p * width, (p + 1) * width);
        quadrature_detail::accumulate(acc, part);
    }
    return acc;
}

template <class R>
struct XIntegral {
    R value{};
    R tail_bound{};
    long panels = 0;
    double x_max = 0.0;
};

namespace quadrature_detail {

// log of int_X^inf x^7 e^{-r x} dx = e^{-rX} sum_{k=0}^{7} 7!/k! X^k / r^{8-k}
inline double log_envelope_tail(double X, double r) {
    double sum = 0.0;
    double fact = 5040.0;  // 7!/k!
    for (int k = 0; k <= 7; ++k) {
        sum += fact * std::pow(X, k) / std::pow(r, 8 - k);
        if (k < 7) fact /= (k + 1);
    }
    return -r * X + std::log(sum);
}

}  // namespace quadrature_detail

/// int_0^inf f(x) dx for f bounded by C x^7 e^{-decay_rate x} at large x.
///
/// Sums Gauss-Legendre panels of width cfg.panel_width from x = 0. After
/// each panel past the envelope peak, C is estimated from that panel's
/// samples and the analytic tail of the envelope beyond the panel is the
/// reported bound; integration stops once it falls below
/// max(tail_epsilon |value|, abs_tol) in every component.
template <class F>
auto integrate_x(F&& f, double decay_rate, const QuadratureConfig& cfg) {
    using namespace quadrature_detail;
    using R = std::decay_t<std::invoke_result_t<F&, double>>;
    cfg.validate();
    if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
        throw std::domain_error("integrate_x: decay rate must be positive");
    }
    const auto& rule = GaussLegendreRule::get(cfg.gl_order_panel);
    const double peak = 7.0 / decay_rate;
    XIntegral<R> out;
    std::vector<double> log_c;
    for (long p = 0; p < cfg.max_panels; ++p) {
        const double lo = p * cfg.panel_width, hi = (p + 1) * cfg.panel_width;
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        R panel{};
        log_c.assign(0, 0.0);
        for (int i = 0; i < rule.order(); ++i) {
            const double x = mid + half * rule.nodes()[i];
            const R val = f(x);
            if (!all_finite(val)) {
                std::ostringstream os;
                os << "integrate_x: non-finite integrand at x = " << x;
                throw NonFiniteSampleError(os.str(), x);
            }
            accumulate(panel, scaled(half * rule.weights()[i], val));
            if (log_c.empty()) log_c.assign(components(val), -std::numeric_limits<double>::infinity());
            for (std::size_t c = 0; c < components(val); ++c) {
                const double mag = std::fabs(component(val, c));
                if (mag > 0.0) {
                    log_c[c] = std::max(log_c[c], std::log(mag) + decay_rate * x - 7.0 * std::log(x));
                }
            }
        }
        accumulate(out.value, panel);
        out.panels = p + 1;
        out.x_max = hi;
        if (hi < peak) continue;
        const double log_tail = log_envelope_tail(hi, decay_rate);
        bool done = true;
        R bound{};
        for (std::size_t c = 0; c < log_c.size(); ++c) {
            const double b = std::isinf(log_c[c]) ? 0.0 : std::exp(log_c[c] + log_tail);
            if constexpr (Indexable<R>) {
                bound[c] = b;
            } else {
                bound = b;
            }
            const double target = std::max(cfg.tail_epsilon * std::fabs(component(out.value, c)), cfg.abs_tol);
            if (b > target) done = false;
        }
        out.tail_bound = bound;
        if (done) return out;
    }
    std::ostringstream os;
    os << "integrate_x: tail criterion not met within " << cfg.max_panels << " panels (decay rate " << decay_rate
       << ")";
    throw NonConvergenceError(os.str());
}

}  // namespace qfpc
