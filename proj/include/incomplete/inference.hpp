#ifndef INCOMPLETE_INFERENCE_HPP
#define INCOMPLETE_INFERENCE_HPP

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "incomplete/model.hpp"
#include "incomplete/set_family.hpp"
#include "incomplete/statistic.hpp"

namespace incomplete {

/// Finite grid over a parameter space, iterated in row-major order (first
/// axis outermost).
struct ParamGrid {
    std::vector<std::string> axis_names;
    std::vector<std::vector<double>> axis_values;

    std::size_t size() const;
    std::vector<double> point(std::size_t index) const;

    /// Parses "name=start:stop:step,name2=..." with endpoints included up
    /// to a 1e-12 slack.
    static ParamGrid parse(const std::string& text);
};

struct QuantileOptions {
    std::string method = "bridge";  // "bridge" | "subsample"
    double alpha = 0.95;
    std::size_t reps = 1000;            // bridge draws
    std::size_t subsample_count = 500;  // number of subsamples
    std::size_t subsample_size = 0;     // 0 -> default_subsample_size(n)
    double bandwidth_c = 0.5;
    double bandwidth_gamma = 0.25;
    std::uint64_t seed = 0;
};

struct TestReport {
    std::vector<double> theta;  // empty when the model is not parametrized
    StatisticValue statistic;
    QuantileEstimate quantile;
    bool reject = false;  // sqrt(n) T > q_hat; equality accepts
};

/// Runs the supremum test of the model against the sample at the given
/// level. The sample must be sorted.
TestReport specification_test(std::span<const double> sorted_sample, const Model& model,
                              const SetFamily& fam, const QuantileOptions& opt);

using ModelFactory = std::function<std::unique_ptr<Model>(const std::vector<double>&)>;

struct RegionReport {
    ParamGrid grid;
    std::vector<TestReport> tests;          // one per grid point, grid order
    std::vector<std::size_t> accepted;      // indices of non-rejected points
    /// "powerset" (finite carrier, full power set), "monotone-envelopes"
    /// (interval model with monotone envelopes under cells), or "none";
    /// when "none" the family is not certified to detect every violation
    /// and the caller should consult the brute-force checker.
    std::string core_determining_certificate;
};

/// Inverts the test over the grid: a point is accepted when
/// sqrt(n) T <= q_hat at that point. Per-point quantiles are recomputed,
/// with seeds derived from (master seed, grid index) so results do not
/// depend on scheduling.
RegionReport confidence_region(std::span<const double> sorted_sample,
                               const ModelFactory& factory, const ParamGrid& grid,
                               const SetFamily& fam, const QuantileOptions& opt,
                               unsigned threads = 1);

struct BoundsReport {
    double lower = 0.0;
    double upper = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    double alpha = 0.0;
    double delta = 0.0;
    std::size_t n = 0;
    double sigma_hat = 0.0;
    std::string method_note;
};

/// Mean bounds from bracketed observations: each value y stands for the
/// interval (y - delta/2, y + delta/2). The plug-in bounds are the sample
/// mean shifted by delta/2 each way; the confidence interval widens each
/// endpoint by z_alpha * sigma_hat / sqrt(n) with the plug-in multinomial
/// variance.
BoundsReport censored_mean_bounds(std::span<const double> bracket_sample, double delta,
                                  double alpha);

} // namespace incomplete

#endif
