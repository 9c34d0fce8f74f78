#include "incomplete/report_json.hpp"

#include <cmath>

namespace incomplete {

namespace {

OrderedJson endpoint(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

} // namespace

OrderedJson to_json(const ObsSet& set) {
    OrderedJson j;
    if (set.is_finite()) {
        j["kind"] = "atoms";
        j["indices"] = set.atoms().indices();
    } else {
        j["kind"] = "intervals";
        OrderedJson comps = OrderedJson::array();
        for (const Interval& iv : set.intervals().components())
            comps.push_back({endpoint(iv.lo), endpoint(iv.hi)});
        j["components"] = comps;
    }
    return j;
}

OrderedJson to_json(const StatisticValue& value) {
    OrderedJson j;
    j["T"] = value.raw;
    j["scaled"] = value.scaled;
    j["n"] = value.n;
    j["family"] = value.family;
    j["argmax_index"] = value.argmax_index;
    j["argmax"] = to_json(value.argmax);
    return j;
}

OrderedJson to_json(const QuantileEstimate& quantile) {
    OrderedJson j;
    j["alpha"] = quantile.alpha;
    j["q_hat"] = quantile.q_hat;
    j["method"] = quantile.method;
    j["replications"] = quantile.replications;
    if (quantile.method == "subsample") j["subsample_size"] = quantile.subsample_size;
    if (quantile.method == "bridge") j["bandwidth"] = quantile.bandwidth;
    j["seed"] = quantile.seed;
    return j;
}

OrderedJson to_json(const TestReport& report) {
    OrderedJson j;
    if (!report.theta.empty()) j["theta"] = report.theta;
    j["statistic"] = to_json(report.statistic);
    j["quantile"] = to_json(report.quantile);
    j["reject"] = report.reject;
    return j;
}

OrderedJson to_json(const RegionReport& report) {
    OrderedJson j;
    j["axes"] = report.grid.axis_names;
    j["axis_values"] = report.grid.axis_values;
    j["core_determining_certificate"] = report.core_determining_certificate;
    if (report.core_determining_certificate == "none")
        j["warning"] = "family not certified core determining for this model; "
                       "violations outside the family may go undetected";
    OrderedJson tests = OrderedJson::array();
    for (const TestReport& t : report.tests) tests.push_back(to_json(t));
    j["tests"] = tests;
    j["accepted"] = report.accepted;
    OrderedJson accepted_points = OrderedJson::array();
    for (std::size_t index : report.accepted)
        accepted_points.push_back(report.grid.point(index));
    j["accepted_points"] = accepted_points;
    return j;
}

OrderedJson to_json(const BoundsReport& report) {
    OrderedJson j;
    j["lower"] = report.lower;
    j["upper"] = report.upper;
    j["ci_lower"] = report.ci_lower;
    j["ci_upper"] = report.ci_upper;
    j["alpha"] = report.alpha;
    j["delta"] = report.delta;
    j["n"] = report.n;
    j["sigma_hat"] = report.sigma_hat;
    j["method_note"] = report.method_note;
    return j;
}

OrderedJson to_json(const CouplingResult& result) {
    OrderedJson j;
    j["violation_mass"] = result.violation_mass;
    j["feasible"] = result.feasible;
    OrderedJson coupling = OrderedJson::array();
    for (const CouplingEntry& e : result.coupling)
        coupling.push_back({{"y", e.y_index}, {"u", e.u_index}, {"mass", e.mass}});
    j["coupling"] = coupling;
    j["dual_witness"] = result.dual_witness.indices();
    return j;
}

} // namespace incomplete
