#ifndef INCOMPLETE_MODEL_HPP
#define INCOMPLETE_MODEL_HPP

#include <memory>
#include <string>
#include <utility>

#include "incomplete/carrier.hpp"
#include "incomplete/correspondence.hpp"
#include "incomplete/measure.hpp"
#include "incomplete/obs_set.hpp"

namespace incomplete {

/// A structure under test: an observable carrier together with the set
/// function A -> nu(Gamma(A)). Everything the supremum statistic needs.
class Model {
public:
    virtual ~Model() = default;

    virtual const Carrier& carrier() const = 0;
    virtual double nu_gamma(const ObsSet& a) const = 0;
    virtual std::string describe() const = 0;
};

/// Finite observables, finite latent support.
class FiniteModel final : public Model {
public:
    FiniteModel(FiniteCorrespondence corr, DiscreteMeasure nu);

    const Carrier& carrier() const override { return carrier_; }
    double nu_gamma(const ObsSet& a) const override;
    std::string describe() const override;

    const FiniteCorrespondence& correspondence() const { return corr_; }
    const DiscreteMeasure& nu() const { return nu_; }

private:
    FiniteCorrespondence corr_;
    DiscreteMeasure nu_;
    Carrier carrier_;
};

/// Finite observables whose values are intervals of a real latent carrier,
/// with an absolutely continuous latent law.
class IntervalValuedModel final : public Model {
public:
    IntervalValuedModel(IntervalValuedCorrespondence corr, LatentLaw law,
                        std::string description = {});

    const Carrier& carrier() const override { return carrier_; }
    double nu_gamma(const ObsSet& a) const override;
    std::string describe() const override;

    const IntervalValuedCorrespondence& correspondence() const { return corr_; }
    const LatentLaw& law() const { return law_; }

private:
    IntervalValuedCorrespondence corr_;
    LatentLaw law_;
    Carrier carrier_;
    std::string description_;
};

/// Real observables with piecewise-linear envelope values and an
/// absolutely continuous latent law.
class IntervalModel final : public Model {
public:
    IntervalModel(IntervalCorrespondence corr, LatentLaw law);

    const Carrier& carrier() const override { return carrier_; }
    double nu_gamma(const ObsSet& a) const override;
    std::string describe() const override;

    const IntervalCorrespondence& correspondence() const { return corr_; }
    const LatentLaw& law() const { return law_; }

private:
    IntervalCorrespondence corr_;
    LatentLaw law_;
    Carrier carrier_;
};

/// Two-firm entry game: outcome 1 (both enter) requires the latent cost in
/// [0, lambda]; outcome 0 is compatible with any cost in [0, 1]. The
/// latent law has CDF u^phi. Requires lambda in (0, 1] and phi > 0.
std::unique_ptr<IntervalValuedModel> entry_game_model(double lambda, double phi);

/// Finite transport instance for a finite-observable model with interval
/// latent values: the latent interval is cut into `cells` uniform cells,
/// each cell's law mass is assigned to its midpoint, and (y, cell) is an
/// edge when the midpoint falls in Gamma(y). The approximation error of
/// the transport value is at most (cell width) x (density bound).
std::pair<FiniteCorrespondence, DiscreteMeasure>
discretize(const IntervalValuedModel& model, std::size_t cells = 512);

} // namespace incomplete

#endif
