#include "incomplete/math_util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace incomplete {

namespace {

// Acklam's rational approximation for the normal quantile.
double inverse_normal_acklam(double p) {
    static const double a[] = {-3.969683028665376e+01,  2.209460984245205e+02,
                               -2.759285104469687e+02,  1.383577518672690e+02,
                               -3.066479806614716e+01,  2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01,  1.615858368580409e+02,
                               -1.556989798598866e+02,  6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = { 7.784695709041462e-03,  3.224671290700398e-01,
                                2.445134137142996e+00,  3.754408661907416e+00};
    const double p_low = 0.02425;
    double q, r;
    if (p < p_low) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0]*q + c[1])*q + c[2])*q + c[3])*q + c[4])*q + c[5]) /
               ((((d[0]*q + d[1])*q + d[2])*q + d[3])*q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0]*r + a[1])*r + a[2])*r + a[3])*r + a[4])*r + a[5])*q /
               (((((b[0]*r + b[1])*r + b[2])*r + b[3])*r + b[4])*r + 1.0);
    }
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0]*q + c[1])*q + c[2])*q + c[3])*q + c[4])*q + c[5]) /
            ((((d[0]*q + d[1])*q + d[2])*q + d[3])*q + 1.0);
}

} // namespace

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("inverse_normal_cdf: p must be in (0,1)");
    double x = inverse_normal_acklam(p);
    // One Halley step against the exact CDF.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

double empirical_quantile_inf(std::vector<double>& values, double alpha) {
    if (values.empty())
        throw std::invalid_argument("empirical_quantile_inf: no values");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("empirical_quantile_inf: alpha must be in (0,1]");
    std::sort(values.begin(), values.end());
    const double k = std::ceil(alpha * static_cast<double>(values.size()) - 1e-12);
    const auto idx = static_cast<std::size_t>(
        std::clamp<double>(k, 1.0, static_cast<double>(values.size())));
    return values[idx - 1];
}

std::optional<std::pair<std::int64_t, std::int64_t>>
rationalize(double x, std::int64_t max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    const bool neg = x < 0;
    double v = std::abs(x);
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(frac);
        if (fl > 9e18) return std::nullopt;
        const auto a = static_cast<std::int64_t>(fl);
        std::int64_t p2 = a * p1 + p0;
        std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0 || p2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return std::nullopt;
    const double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - v) > tol) return std::nullopt;
    return std::make_pair(neg ? -p1 : p1, q1);
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace incomplete
