#ifndef INCOMPLETE_MEASURE_HPP
#define INCOMPLETE_MEASURE_HPP

#include <span>
#include <string>
#include <vector>

#include "incomplete/bitset.hpp"
#include "incomplete/interval_set.hpp"

namespace incomplete {

/// Probability measure with finite support: ordered atom labels and
/// non-negative weights summing to one (tolerance 1e-12).
class DiscreteMeasure {
public:
    DiscreteMeasure(std::vector<std::string> labels, std::vector<double> weights);

    /// Convenience constructor with labels "0", "1", ...
    explicit DiscreteMeasure(std::vector<double> weights);

    std::size_t size() const { return weights_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& weights() const { return weights_; }
    double weight(std::size_t i) const { return weights_.at(i); }

    /// Mass of a subset of atoms. Summation runs in ascending index order,
    /// so that complementary sums of dyadic weights are exact.
    double mass(const Bitset& subset) const;

private:
    std::vector<std::string> labels_;
    std::vector<double> weights_;
};

/// Absolutely continuous law on a real interval, described by its CDF.
/// Covers the built-in latent laws: Uniform(a,b) and the power family
/// F(u) = u^phi on [0,1].
class LatentLaw {
public:
    static LatentLaw uniform(double a, double b);
    static LatentLaw power(double phi);

    double cdf(double x) const;
    double measure(const IntervalSet& set) const;

    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    const std::string& name() const { return name_; }

private:
    LatentLaw() = default;

    enum class Kind { Uniform, Power } kind_ = Kind::Uniform;
    double lo_ = 0.0;
    double hi_ = 1.0;
    double phi_ = 1.0;
    std::string name_;
};

} // namespace incomplete

#endif
