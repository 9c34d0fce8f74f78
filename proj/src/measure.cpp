#include "incomplete/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace incomplete {

DiscreteMeasure::DiscreteMeasure(std::vector<std::string> labels,
                                 std::vector<double> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
    if (labels_.size() != weights_.size())
        throw std::invalid_argument("DiscreteMeasure: labels/weights size mismatch");
    if (weights_.empty())
        throw std::invalid_argument("DiscreteMeasure: empty support");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0))
            throw std::invalid_argument("DiscreteMeasure: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("DiscreteMeasure: weights sum to " +
                                    std::to_string(total) + ", expected 1");
}

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights)
    : DiscreteMeasure(
          [&] {
              std::vector<std::string> labels(weights.size());
              for (std::size_t i = 0; i < weights.size(); ++i)
                  labels[i] = std::to_string(i);
              return labels;
          }(),
          std::move(weights)) {}

double DiscreteMeasure::mass(const Bitset& subset) const {
    if (subset.size() != weights_.size())
        throw std::invalid_argument("DiscreteMeasure::mass: carrier size mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (subset.test(i)) total += weights_[i];
    return total;
}

LatentLaw LatentLaw::uniform(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("LatentLaw::uniform: need a < b");
    LatentLaw law;
    law.kind_ = Kind::Uniform;
    law.lo_ = a;
    law.hi_ = b;
    law.name_ = "uniform(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return law;
}

LatentLaw LatentLaw::power(double phi) {
    if (!(phi > 0.0)) throw std::invalid_argument("LatentLaw::power: need phi > 0");
    LatentLaw law;
    law.kind_ = Kind::Power;
    law.lo_ = 0.0;
    law.hi_ = 1.0;
    law.phi_ = phi;
    law.name_ = "power(" + std::to_string(phi) + ")";
    return law;
}

double LatentLaw::cdf(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    switch (kind_) {
    case Kind::Uniform: return (x - lo_) / (hi_ - lo_);
    case Kind::Power:   return std::pow(x, phi_);
    }
    return 0.0;
}

double LatentLaw::measure(const IntervalSet& set) const {
    double total = 0.0;
    for (const Interval& iv : set.components())
        total += cdf(iv.hi) - cdf(iv.lo);
    return total;
}

} // namespace incomplete
