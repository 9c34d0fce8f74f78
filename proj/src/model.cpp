#include "incomplete/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace incomplete {

namespace {

Carrier finite_carrier_from_labels(const std::vector<std::string>& labels) {
    FiniteCarrier carrier;
    carrier.labels = labels;
    std::vector<double> values;
    values.reserve(labels.size());
    bool numeric = true;
    for (const std::string& label : labels) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(label, &pos);
            if (pos != label.size()) { numeric = false; break; }
            values.push_back(v);
        } catch (const std::exception&) {
            numeric = false;
            break;
        }
    }
    if (numeric &&
        std::adjacent_find(values.begin(), values.end(),
                           [](double a, double b) { return a >= b; }) == values.end())
        carrier.values = std::move(values);
    return carrier;
}

} // namespace

FiniteModel::FiniteModel(FiniteCorrespondence corr, DiscreteMeasure nu)
    : corr_(std::move(corr)), nu_(std::move(nu)),
      carrier_(finite_carrier_from_labels(corr_.y_labels())) {
    if (nu_.size() != corr_.u_size())
        throw std::invalid_argument("FiniteModel: nu carrier does not match latent carrier");
    if (!corr_.forward_valid())
        throw std::invalid_argument("FiniteModel: correspondence has an observable atom with "
                                    "empty value");
}

double FiniteModel::nu_gamma(const ObsSet& a) const {
    return nu_.mass(corr_.image(a.atoms()));
}

std::string FiniteModel::describe() const {
    return "finite(" + std::to_string(corr_.y_size()) + "x" +
           std::to_string(corr_.u_size()) + ")";
}

IntervalValuedModel::IntervalValuedModel(IntervalValuedCorrespondence corr, LatentLaw law,
                                         std::string description)
    : corr_(std::move(corr)), law_(std::move(law)), description_(std::move(description)) {
    FiniteCarrier carrier;
    carrier.values = corr_.atom_values();
    for (double v : corr_.atom_values()) {
        std::ostringstream label;
        label << v;
        carrier.labels.push_back(label.str());
    }
    carrier_ = std::move(carrier);
}

double IntervalValuedModel::nu_gamma(const ObsSet& a) const {
    return law_.measure(corr_.image(a.atoms()));
}

std::string IntervalValuedModel::describe() const {
    return description_.empty()
        ? "interval-valued(" + std::to_string(corr_.y_size()) + " atoms, " + law_.name() + ")"
        : description_;
}

IntervalModel::IntervalModel(IntervalCorrespondence corr, LatentLaw law)
    : corr_(std::move(corr)), law_(std::move(law)),
      carrier_(RealCarrier{corr_.domain_lo(), corr_.domain_hi()}) {}

double IntervalModel::nu_gamma(const ObsSet& a) const {
    return law_.measure(corr_.image(a.intervals()));
}

std::string IntervalModel::describe() const {
    return "interval([" + std::to_string(corr_.domain_lo()) + "," +
           std::to_string(corr_.domain_hi()) + "], " + law_.name() + ")";
}

std::unique_ptr<IntervalValuedModel> entry_game_model(double lambda, double phi) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("entry_game_model: lambda must be in (0, 1]");
    if (!(phi > 0.0))
        throw std::invalid_argument("entry_game_model: phi must be > 0");
    IntervalValuedCorrespondence corr({0.0, 1.0}, {{0.0, 1.0}, {0.0, lambda}});
    std::ostringstream desc;
    desc << "entry-game(lambda=" << lambda << ", phi=" << phi << ")";
    return std::make_unique<IntervalValuedModel>(std::move(corr), LatentLaw::power(phi),
                                                 desc.str());
}

std::pair<FiniteCorrespondence, DiscreteMeasure>
discretize(const IntervalValuedModel& model, std::size_t cells) {
    if (cells < 2)
        throw std::invalid_argument("discretize: need at least 2 cells");
    const LatentLaw& law = model.law();
    const double lo = law.support_lo();
    const double hi = law.support_hi();
    const double width = (hi - lo) / static_cast<double>(cells);

    std::vector<std::string> u_labels(cells);
    std::vector<double> masses(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        const double left = lo + width * static_cast<double>(j);
        const double right = (j + 1 == cells) ? hi : lo + width * static_cast<double>(j + 1);
        u_labels[j] = "cell" + std::to_string(j);
        masses[j] = law.cdf(right) - law.cdf(left);
    }

    const auto& corr = model.correspondence();
    std::vector<std::string> y_labels;
    for (double v : corr.atom_values()) y_labels.push_back(std::to_string(v));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t yi = 0; yi < corr.y_size(); ++yi) {
        const Interval value = corr.value(yi);
        bool covered = false;
        for (std::size_t j = 0; j < cells; ++j) {
            const double mid = lo + width * (static_cast<double>(j) + 0.5);
            if (value.lo <= mid && mid <= value.hi) {
                edges.emplace_back(yi, j);
                covered = true;
            }
        }
        if (!covered)
            throw std::invalid_argument("discretize: atom " + std::to_string(yi) +
                                        " covers no cell midpoint; raise the resolution");
    }
    DiscreteMeasure cell_law(u_labels, std::move(masses));
    return {FiniteCorrespondence(std::move(y_labels), std::move(u_labels), std::move(edges)),
            std::move(cell_law)};
}

} // namespace incomplete
