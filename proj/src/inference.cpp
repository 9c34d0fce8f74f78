#include "incomplete/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "incomplete/math_util.hpp"
#include "incomplete/rng.hpp"

namespace incomplete {

std::size_t ParamGrid::size() const {
    std::size_t total = 1;
    for (const auto& axis : axis_values) total *= axis.size();
    return total;
}

std::vector<double> ParamGrid::point(std::size_t index) const {
    std::vector<double> out(axis_values.size());
    for (std::size_t a = axis_values.size(); a-- > 0;) {
        const std::size_t len = axis_values[a].size();
        out[a] = axis_values[a][index % len];
        index /= len;
    }
    return out;
}

ParamGrid ParamGrid::parse(const std::string& text) {
    ParamGrid grid;
    std::stringstream stream(text);
    std::string axis;
    while (std::getline(stream, axis, ',')) {
        const auto eq = axis.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("grid axis '" + axis + "' missing '='");
        const std::string name = axis.substr(0, eq);
        const std::string spec = axis.substr(eq + 1);
        double start = 0, stop = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream nums(spec);
        nums >> start >> c1 >> stop >> c2 >> step;
        if (nums.fail() || c1 != ':' || c2 != ':')
            throw std::invalid_argument("grid axis '" + axis +
                                        "' must look like name=start:stop:step");
        if (!(step > 0.0))
            throw std::invalid_argument("grid axis '" + name + "': step must be > 0");
        std::vector<double> values;
        for (std::size_t k = 0;; ++k) {
            const double v = start + step * static_cast<double>(k);
            if (v > stop + 1e-12) break;
            values.push_back(v);
        }
        if (values.empty())
            throw std::invalid_argument("grid axis '" + name + "' is empty");
        grid.axis_names.push_back(name);
        grid.axis_values.push_back(std::move(values));
    }
    if (grid.axis_names.empty())
        throw std::invalid_argument("empty grid specification");
    return grid;
}

namespace {

QuantileEstimate compute_quantile(const EvaluatedFamily& fam, const QuantileOptions& opt) {
    if (opt.method == "bridge") {
        const double h = default_bandwidth(fam.n, opt.bandwidth_c, opt.bandwidth_gamma);
        return bridge_quantile(fam, opt.alpha, opt.reps, h, opt.seed);
    }
    if (opt.method == "subsample") {
        const std::size_t b =
            opt.subsample_size > 0 ? opt.subsample_size : default_subsample_size(fam.n);
        return subsample_quantile(fam, opt.alpha, b, opt.subsample_count, opt.seed);
    }
    throw std::invalid_argument("unknown quantile method '" + opt.method +
                                "'; expected bridge|subsample");
}

std::string certificate_for(const Model& model, const SetFamily& fam) {
    if (fam.kind == FamilyKind::PowerSet &&
        std::holds_alternative<FiniteCarrier>(model.carrier()))
        return "powerset";
    if (fam.kind == FamilyKind::Cells) {
        if (const auto* interval = dynamic_cast<const IntervalModel*>(&model))
            if (interval->correspondence().has_monotone_envelopes())
                return "monotone-envelopes";
    }
    return "none";
}

} // namespace

TestReport specification_test(std::span<const double> sorted_sample, const Model& model,
                              const SetFamily& fam, const QuantileOptions& opt) {
    const EvaluatedFamily evaluated = evaluate_family(fam, model, sorted_sample);
    TestReport report;
    report.statistic = ks_capacity_statistic(evaluated);
    report.quantile = compute_quantile(evaluated, opt);
    report.reject = report.statistic.scaled > report.quantile.q_hat;
    return report;
}

RegionReport confidence_region(std::span<const double> sorted_sample,
                               const ModelFactory& factory, const ParamGrid& grid,
                               const SetFamily& fam, const QuantileOptions& opt,
                               unsigned threads) {
    const std::size_t total = grid.size();
    if (total == 0) throw std::invalid_argument("confidence_region: empty grid");

    RegionReport report;
    report.grid = grid;
    report.tests.resize(total);
    std::vector<std::string> certificates(total);

    parallel_for(total, threads, [&](std::size_t index) {
        const std::vector<double> theta = grid.point(index);
        const std::unique_ptr<Model> model = factory(theta);
        QuantileOptions point_opt = opt;
        point_opt.seed = substream_seed(opt.seed, index);
        TestReport test = specification_test(sorted_sample, *model, fam, point_opt);
        test.theta = theta;
        certificates[index] = certificate_for(*model, fam);
        report.tests[index] = std::move(test);
    });

    for (std::size_t i = 0; i < total; ++i)
        if (!report.tests[i].reject) report.accepted.push_back(i);
    report.core_determining_certificate =
        std::all_of(certificates.begin(), certificates.end(),
                    [&](const std::string& c) { return c == certificates.front(); })
            ? certificates.front()
            : "none";
    return report;
}

BoundsReport censored_mean_bounds(std::span<const double> bracket_sample, double delta,
                                  double alpha) {
    if (!(delta > 0.0))
        throw std::invalid_argument("censored_mean_bounds: delta must be > 0");
    if (bracket_sample.empty())
        throw std::invalid_argument("censored_mean_bounds: empty sample");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("censored_mean_bounds: alpha must be in (0,1)");

    std::vector<double> centers(bracket_sample.begin(), bracket_sample.end());
    std::sort(centers.begin(), centers.end());
    for (std::size_t i = 0; i + 1 < centers.size(); ++i) {
        if (centers[i] != centers[i + 1] && centers[i + 1] - centers[i] < delta)
            throw std::invalid_argument("censored_mean_bounds: brackets overlap (centers " +
                                        std::to_string(centers[i]) + " and " +
                                        std::to_string(centers[i + 1]) + " closer than delta)");
    }

    const auto n = static_cast<double>(centers.size());
    const double mean = std::accumulate(centers.begin(), centers.end(), 0.0) / n;
    double var = 0.0;
    for (double y : centers) var += (y - mean) * (y - mean);
    var /= n;  // plug-in multinomial variance

    BoundsReport out;
    out.n = centers.size();
    out.delta = delta;
    out.alpha = alpha;
    out.lower = mean - delta / 2.0;
    out.upper = mean + delta / 2.0;
    out.sigma_hat = std::sqrt(var);
    const double shift = inverse_normal_cdf(alpha) * out.sigma_hat / std::sqrt(n);
    out.ci_lower = out.lower - shift;
    out.ci_upper = out.upper + shift;
    out.method_note = "CI endpoints shift the plug-in bounds by z_alpha * sigma_hat / sqrt(n); "
                      "sigma_hat is the plug-in (delta-method) standard deviation of the "
                      "bracket-center frequencies";
    return out;
}

} // namespace incomplete
