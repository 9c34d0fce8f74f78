#include "incomplete/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace incomplete {

FiniteCorrespondence::FiniteCorrespondence(
    std::vector<std::string> y_labels, std::vector<std::string> u_labels,
    std::vector<std::pair<std::size_t, std::size_t>> edges)
    : y_labels_(std::move(y_labels)),
      u_labels_(std::move(u_labels)),
      edges_(std::move(edges)) {
    if (y_labels_.empty() || u_labels_.empty())
        throw std::invalid_argument("FiniteCorrespondence: empty carrier");
    y_images_.assign(y_size(), Bitset(u_size()));
    u_preimages_.assign(u_size(), Bitset(y_size()));
    for (const auto& [yi, ui] : edges_) {
        if (yi >= y_size() || ui >= u_size())
            throw std::invalid_argument("FiniteCorrespondence: edge (" +
                                        std::to_string(yi) + "," + std::to_string(ui) +
                                        ") outside carrier");
        y_images_[yi].set(ui);
        u_preimages_[ui].set(yi);
    }
    forward_valid_ = std::all_of(y_images_.begin(), y_images_.end(),
                                 [](const Bitset& b) { return b.any(); });
    inverse_valid_ = std::all_of(u_preimages_.begin(), u_preimages_.end(),
                                 [](const Bitset& b) { return b.any(); });
}

FiniteCorrespondence FiniteCorrespondence::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("y") || !j.contains("u") || !j.contains("edges"))
        throw std::invalid_argument("finite correspondence JSON needs \"y\", \"u\", \"edges\"");
    auto read_labels = [](const nlohmann::json& arr) {
        std::vector<std::string> out;
        for (const auto& v : arr)
            out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        return out;
    };
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("finite correspondence JSON: edge must be [i,j]");
        edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return FiniteCorrespondence(read_labels(j.at("y")), read_labels(j.at("u")),
                                std::move(edges));
}

Bitset FiniteCorrespondence::image(const Bitset& a) const {
    if (a.size() != y_size())
        throw std::invalid_argument("image: set width does not match observable carrier");
    Bitset out(u_size());
    for (std::size_t yi = 0; yi < y_size(); ++yi)
        if (a.test(yi)) out |= y_images_[yi];
    return out;
}

Bitset FiniteCorrespondence::preimage(const Bitset& b) const {
    if (b.size() != u_size())
        throw std::invalid_argument("preimage: set width does not match latent carrier");
    Bitset out(y_size());
    for (std::size_t ui = 0; ui < u_size(); ++ui)
        if (b.test(ui)) out |= u_preimages_[ui];
    return out;
}

Bitset FiniteCorrespondence::lower_inverse(const Bitset& b) const {
    if (b.size() != u_size())
        throw std::invalid_argument("lower_inverse: set width does not match latent carrier");
    Bitset out(y_size());
    for (std::size_t yi = 0; yi < y_size(); ++yi)
        if (y_images_[yi].any() && y_images_[yi].is_subset_of(b)) out.set(yi);
    return out;
}

FiniteCorrespondence FiniteCorrespondence::swapped() const {
    if (!inverse_valid_)
        throw std::logic_error("swapped: inverse correspondence has an atom with empty value");
    std::vector<std::pair<std::size_t, std::size_t>> transposed;
    transposed.reserve(edges_.size());
    for (const auto& [yi, ui] : edges_) transposed.emplace_back(ui, yi);
    return FiniteCorrespondence(u_labels_, y_labels_, std::move(transposed));
}

IntervalValuedCorrespondence::IntervalValuedCorrespondence(
    std::vector<double> atom_values, std::vector<Interval> values)
    : atom_values_(std::move(atom_values)), values_(std::move(values)) {
    if (atom_values_.empty())
        throw std::invalid_argument("IntervalValuedCorrespondence: empty carrier");
    if (atom_values_.size() != values_.size())
        throw std::invalid_argument("IntervalValuedCorrespondence: atoms/values size mismatch");
    if (std::adjacent_find(atom_values_.begin(), atom_values_.end(),
                           [](double a, double b) { return a >= b; }) != atom_values_.end())
        throw std::invalid_argument("IntervalValuedCorrespondence: atom values must be strictly increasing");
    for (const Interval& iv : values_)
        if (!(iv.lo <= iv.hi))
            throw std::invalid_argument("IntervalValuedCorrespondence: empty value interval");
}

IntervalSet IntervalValuedCorrespondence::image(const Bitset& a) const {
    if (a.size() != y_size())
        throw std::invalid_argument("image: set width does not match observable carrier");
    std::vector<Interval> pieces;
    for (std::size_t i = 0; i < y_size(); ++i)
        if (a.test(i)) pieces.push_back(values_[i]);
    return IntervalSet::from_pieces(std::move(pieces));
}

Bitset IntervalValuedCorrespondence::preimage(const IntervalSet& b) const {
    Bitset out(y_size());
    for (std::size_t i = 0; i < y_size(); ++i)
        if (b.intersects_interval(values_[i].lo, values_[i].hi)) out.set(i);
    return out;
}

Bitset IntervalValuedCorrespondence::lower_inverse(const IntervalSet& b) const {
    Bitset out(y_size());
    for (std::size_t i = 0; i < y_size(); ++i)
        if (b.contains_interval(values_[i].lo, values_[i].hi)) out.set(i);
    return out;
}

IntervalCorrespondence::IntervalCorrespondence(std::vector<double> knots,
                                               std::vector<double> lower,
                                               std::vector<double> upper)
    : knots_(std::move(knots)), lower_(std::move(lower)), upper_(std::move(upper)) {
    if (knots_.size() < 2)
        throw std::invalid_argument("IntervalCorrespondence: need at least two knots");
    if (lower_.size() != knots_.size() || upper_.size() != knots_.size())
        throw std::invalid_argument("IntervalCorrespondence: envelope/knot size mismatch");
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
        if (!(knots_[i] < knots_[i + 1]))
            throw std::invalid_argument("IntervalCorrespondence: knots must be strictly increasing");
    for (std::size_t i = 0; i < knots_.size(); ++i)
        if (!(lower_[i] <= upper_[i]))
            throw std::invalid_argument("IntervalCorrespondence: lower envelope exceeds upper at knot " +
                                        std::to_string(i));
}

IntervalCorrespondence IntervalCorrespondence::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("knots") || !j.contains("lower") || !j.contains("upper"))
        throw std::invalid_argument("interval correspondence JSON needs \"knots\", \"lower\", \"upper\"");
    return IntervalCorrespondence(j.at("knots").get<std::vector<double>>(),
                                  j.at("lower").get<std::vector<double>>(),
                                  j.at("upper").get<std::vector<double>>());
}

namespace {

double interpolate(const std::vector<double>& knots, const std::vector<double>& vals,
                   double y) {
    const auto it = std::upper_bound(knots.begin(), knots.end(), y);
    if (it == knots.begin()) return vals.front();
    if (it == knots.end()) return vals.back();
    const std::size_t hi = static_cast<std::size_t>(it - knots.begin());
    const std::size_t lo = hi - 1;
    const double t = (y - knots[lo]) / (knots[hi] - knots[lo]);
    return vals[lo] + t * (vals[hi] - vals[lo]);
}

} // namespace

double IntervalCorrespondence::lower_at(double y) const {
    if (y < domain_lo() || y > domain_hi())
        throw std::invalid_argument("IntervalCorrespondence: point outside domain");
    return interpolate(knots_, lower_, y);
}

double IntervalCorrespondence::upper_at(double y) const {
    if (y < domain_lo() || y > domain_hi())
        throw std::invalid_argument("IntervalCorrespondence: point outside domain");
    return interpolate(knots_, upper_, y);
}

double IntervalCorrespondence::min_lower(double a, double b) const {
    double m = std::min(interpolate(knots_, lower_, a), interpolate(knots_, lower_, b));
    for (std::size_t i = 0; i < knots_.size(); ++i)
        if (a < knots_[i] && knots_[i] < b) m = std::min(m, lower_[i]);
    return m;
}

double IntervalCorrespondence::max_upper(double a, double b) const {
    double m = std::max(interpolate(knots_, upper_, a), interpolate(knots_, upper_, b));
    for (std::size_t i = 0; i < knots_.size(); ++i)
        if (a < knots_[i] && knots_[i] < b) m = std::max(m, upper_[i]);
    return m;
}

IntervalSet IntervalCorrespondence::image(const IntervalSet& a) const {
    std::vector<Interval> pieces;
    for (const Interval& iv : a.clip(domain_lo(), domain_hi()).components())
        pieces.push_back({min_lower(iv.lo, iv.hi), max_upper(iv.lo, iv.hi)});
    return IntervalSet::from_pieces(std::move(pieces));
}

IntervalSet IntervalCorrespondence::sublevel(const std::vector<double>& vals,
                                             double cutoff) const {
    std::vector<Interval> pieces;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const double y0 = knots_[i], y1 = knots_[i + 1];
        const double v0 = vals[i], v1 = vals[i + 1];
        if (v0 <= cutoff && v1 <= cutoff) {
            pieces.push_back({y0, y1});
        } else if (v0 <= cutoff || v1 <= cutoff) {
            const double cross = y0 + (cutoff - v0) * (y1 - y0) / (v1 - v0);
            if (v0 <= cutoff) pieces.push_back({y0, cross});
            else              pieces.push_back({cross, y1});
        }
    }
    return IntervalSet::from_pieces(std::move(pieces));
}

IntervalSet IntervalCorrespondence::superlevel(const std::vector<double>& vals,
                                               double cutoff) const {
    std::vector<double> negated(vals.size());
    std::transform(vals.begin(), vals.end(), negated.begin(),
                   [](double v) { return -v; });
    return sublevel(negated, -cutoff);
}

IntervalSet IntervalCorrespondence::preimage(const IntervalSet& b) const {
    IntervalSet out;
    for (const Interval& iv : b.components()) {
        // Gamma(y) = [l(y), u(y)] meets [c, d] iff l(y) <= d and u(y) >= c.
        out = out.unite(sublevel(lower_, iv.hi).intersect(superlevel(upper_, iv.lo)));
    }
    return out;
}

IntervalSet IntervalCorrespondence::lower_inverse(const IntervalSet& b) const {
    IntervalSet out;
    for (const Interval& iv : b.components()) {
        // [l(y), u(y)] is connected, so containment in B means containment
        // in a single component.
        out = out.unite(superlevel(lower_, iv.lo).intersect(sublevel(upper_, iv.hi)));
    }
    return out;
}

bool IntervalCorrespondence::has_monotone_envelopes() const {
    return std::is_sorted(lower_.begin(), lower_.end()) &&
           std::is_sorted(upper_.begin(), upper_.end());
}

} // namespace incomplete
