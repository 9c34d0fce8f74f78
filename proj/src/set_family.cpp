#include "incomplete/set_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "incomplete/rng.hpp"

namespace incomplete {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBindingTol = 1e-12;

std::vector<double> distinct_sorted(std::span<const double> sorted_sample) {
    std::vector<double> out(sorted_sample.begin(), sorted_sample.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- finite

const std::vector<double>& require_ordered_values(const FiniteCarrier& carrier,
                                                  const SetFamily& fam) {
    if (!carrier.values)
        throw std::invalid_argument("family '" + fam.to_string() +
                                    "' needs numerically ordered atoms on a finite carrier");
    return *carrier.values;
}

std::vector<ObsSet> enumerate_finite(const SetFamily& fam, const FiniteCarrier& carrier) {
    const std::size_t m = carrier.labels.size();
    std::vector<ObsSet> out;
    auto push_unique = [&](Bitset b) {
        ObsSet s(std::move(b));
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    };

    switch (fam.kind) {
    case FamilyKind::PowerSet: {
        if (m > 24)
            throw std::invalid_argument("powerset family limited to 24 atoms, carrier has " +
                                        std::to_string(m));
        const std::size_t total = std::size_t{1} << m;
        if (total > fam.budget)
            throw std::invalid_argument("powerset family would enumerate " +
                                        std::to_string(total) + " candidates, budget " +
                                        std::to_string(fam.budget));
        for (std::size_t mask = 0; mask < total; ++mask) {
            Bitset b(m);
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::size_t{1} << i)) b.set(i);
            out.emplace_back(std::move(b));
        }
        return out;
    }
    case FamilyKind::Cells: {
        require_ordered_values(carrier, fam);
        push_unique(Bitset(m));          // empty
        for (std::size_t i = 0; i < m; ++i) {  // prefixes by atom order
            Bitset b(m);
            for (std::size_t j = 0; j <= i; ++j) b.set(j);
            push_unique(std::move(b));
        }
        for (std::size_t i = 0; i < m; ++i) {  // suffixes
            Bitset b(m);
            for (std::size_t j = i; j < m; ++j) b.set(j);
            push_unique(std::move(b));
        }
        return out;
    }
    case FamilyKind::Rectangles:
    case FamilyKind::UnionsOfK: {
        require_ordered_values(carrier, fam);
        const int max_union = fam.kind == FamilyKind::Rectangles ? 1 : fam.max_union;
        // Runs [i..j] of consecutive atoms; unions require a gap of at
        // least one atom between runs.
        std::size_t count = 1;  // empty set
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> stack_result;
        std::vector<std::pair<std::size_t, std::size_t>> current;
        std::function<void(std::size_t, int, bool)> rec =
            [&](std::size_t next_start, int remaining, bool store) {
            for (std::size_t i = next_start; i < m; ++i) {
                for (std::size_t j = i; j < m; ++j) {
                    current.emplace_back(i, j);
                    ++count;
                    if (store) stack_result.push_back(current);
                    if (remaining > 1 && j + 2 < m) rec(j + 2, remaining - 1, store);
                    current.pop_back();
                }
            }
        };
        rec(0, max_union, false);
        if (count > fam.budget)
            throw std::invalid_argument("family '" + fam.to_string() + "' would enumerate " +
                                        std::to_string(count) + " candidates, budget " +
                                        std::to_string(fam.budget));
        count = 1;
        rec(0, max_union, true);
        out.emplace_back(Bitset(m));  // empty
        for (const auto& combo : stack_result) {
            Bitset b(m);
            for (const auto& [i, j] : combo)
                for (std::size_t q = i; q <= j; ++q) b.set(q);
            out.emplace_back(std::move(b));
        }
        return out;
    }
    }
    throw std::logic_error("enumerate_finite: unknown family kind");
}

// ------------------------------------------------------------------ real

std::vector<ObsSet> enumerate_real(const SetFamily& fam, const RealCarrier&,
                                   std::span<const double> sorted_sample) {
    if (sorted_sample.empty())
        throw std::invalid_argument("real-carrier families need a non-empty sample");
    const std::vector<double> points = distinct_sorted(sorted_sample);
    const std::size_t nd = points.size();
    std::vector<ObsSet> out;

    switch (fam.kind) {
    case FamilyKind::PowerSet:
        throw std::invalid_argument("powerset family is not enumerable on a real carrier");
    case FamilyKind::Cells: {
        // Lower cells (-inf, y(i)] and their duals [y(i), +inf); the
        // closed left end realizes the supremum approached from below.
        out.emplace_back(IntervalSet::empty());
        for (double y : points) out.emplace_back(IntervalSet::single(-kInf, y));
        out.emplace_back(IntervalSet::whole_line());
        for (double y : points) out.emplace_back(IntervalSet::single(y, kInf));
        return out;
    }
    case FamilyKind::Rectangles:
    case FamilyKind::UnionsOfK: {
        const int max_union = fam.kind == FamilyKind::Rectangles ? 1 : fam.max_union;
        // Endpoint grid: -inf, the distinct sample points, +inf. A
        // rectangle is [g(a), g(b)] with both ends at sample points or one
        // end unbounded.
        std::vector<std::pair<std::size_t, std::size_t>> rects;  // grid index pairs
        const std::size_t glast = nd + 1;                        // +inf position
        for (std::size_t a = 0; a <= nd; ++a)
            for (std::size_t b = std::max<std::size_t>(a, 1); b <= glast; ++b) {
                if (a == 0 && b == glast) continue;  // whole line added once below
                rects.emplace_back(a, b);
            }
        auto rect_interval = [&](std::size_t a, std::size_t b) {
            const double lo = (a == 0) ? -kInf : points[a - 1];
            const double hi = (b == glast) ? kInf : points[b - 1];
            return Interval{lo, hi};
        };
        std::size_t count = 2;  // empty + whole line
        std::vector<std::vector<std::size_t>> combos;
        std::vector<std::size_t> current;
        // Unions of strictly separated rectangles: the next rectangle must
        // start strictly after the previous one ends (and not at -inf).
        std::function<void(std::size_t, int, bool)> rec =
            [&](std::size_t min_a, int remaining, bool store) {
            for (std::size_t r = 0; r < rects.size(); ++r) {
                const auto& [a, b] = rects[r];
                if (a < min_a) continue;
                if (!current.empty() && a == 0) continue;
                if (!current.empty() && a <= rects[current.back()].second) continue;
                current.push_back(r);
                ++count;
                if (store) combos.push_back(current);
                if (remaining > 1 && b + 1 <= glast) rec(b + 1, remaining - 1, store);
                current.pop_back();
            }
        };
        rec(0, max_union, false);
        if (count > fam.budget)
            throw std::invalid_argument("family '" + fam.to_string() + "' would enumerate " +
                                        std::to_string(count) + " candidates, budget " +
                                        std::to_string(fam.budget));
        rec(0, max_union, true);
        out.emplace_back(IntervalSet::empty());
        out.emplace_back(IntervalSet::whole_line());
        for (const auto& combo : combos) {
            std::vector<Interval> pieces;
            for (std::size_t r : combo) pieces.push_back(rect_interval(rects[r].first, rects[r].second));
            out.emplace_back(IntervalSet::from_pieces(std::move(pieces)));
        }
        return out;
    }
    }
    throw std::logic_error("enumerate_real: unknown family kind");
}

} // namespace

SetFamily SetFamily::parse(const std::string& text) {
    SetFamily fam;
    if (text == "powerset") {
        fam.kind = FamilyKind::PowerSet;
    } else if (text == "cells") {
        fam.kind = FamilyKind::Cells;
    } else if (text == "rectangles") {
        fam.kind = FamilyKind::Rectangles;
    } else if (text.rfind("unions:", 0) == 0) {
        fam.kind = FamilyKind::UnionsOfK;
        int k = 0;
        try {
            k = std::stoi(text.substr(7));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad family spec '" + text + "'");
        }
        if (k < 1 || k > 3)
            throw std::invalid_argument("unions:K supports K in 1..3, got " + text.substr(7));
        fam.max_union = k;
    } else {
        throw std::invalid_argument("unknown family '" + text +
                                    "'; expected powerset|cells|rectangles|unions:K");
    }
    return fam;
}

std::string SetFamily::to_string() const {
    switch (kind) {
    case FamilyKind::PowerSet:   return "powerset";
    case FamilyKind::Cells:      return "cells";
    case FamilyKind::Rectangles: return "rectangles";
    case FamilyKind::UnionsOfK:  return "unions:" + std::to_string(max_union);
    }
    return "?";
}

std::vector<ObsSet> enumerate_family(const SetFamily& fam, const Carrier& carrier,
                                     std::span<const double> sorted_sample) {
    if (fam.kind == FamilyKind::UnionsOfK && (fam.max_union < 1 || fam.max_union > 3))
        throw std::invalid_argument("unions:K supports K in 1..3");
    if (const auto* finite = std::get_if<FiniteCarrier>(&carrier))
        return enumerate_finite(fam, *finite);
    return enumerate_real(fam, std::get<RealCarrier>(carrier), sorted_sample);
}

EvaluatedFamily evaluate_family(const SetFamily& fam, const Model& model,
                                std::span<const double> sorted_sample) {
    if (sorted_sample.empty())
        throw std::invalid_argument("evaluate_family: empty sample");
    if (!std::is_sorted(sorted_sample.begin(), sorted_sample.end()))
        throw std::invalid_argument("evaluate_family: sample must be sorted");

    EvaluatedFamily out;
    out.family = fam;
    out.n = sorted_sample.size();
    out.sets = enumerate_family(fam, model.carrier(), sorted_sample);
    out.membership.reserve(out.sets.size());
    out.nu_gamma.reserve(out.sets.size());

    if (const auto* finite = std::get_if<FiniteCarrier>(&model.carrier())) {
        if (!finite->values)
            throw std::invalid_argument("evaluate_family: finite carrier without numeric atom "
                                        "values cannot ingest samples");
        const std::vector<double>& values = *finite->values;
        std::vector<std::size_t> atom_of(out.n);
        for (std::size_t i = 0; i < out.n; ++i) {
            const auto it = std::lower_bound(values.begin(), values.end(),
                                             sorted_sample[i] - 1e-9);
            if (it == values.end() || std::abs(*it - sorted_sample[i]) > 1e-9)
                throw std::invalid_argument("sample value " + std::to_string(sorted_sample[i]) +
                                            " is not an atom of the model carrier");
            atom_of[i] = static_cast<std::size_t>(it - values.begin());
        }
        for (const ObsSet& set : out.sets) {
            Bitset member(out.n);
            for (std::size_t i = 0; i < out.n; ++i)
                if (set.atoms().test(atom_of[i])) member.set(i);
            out.membership.push_back(std::move(member));
            out.nu_gamma.push_back(model.nu_gamma(set));
        }
    } else {
        const auto& real = std::get<RealCarrier>(model.carrier());
        if (sorted_sample.front() < real.lo || sorted_sample.back() > real.hi)
            throw std::invalid_argument("sample leaves the model's observable domain");
        for (const ObsSet& set : out.sets) {
            Bitset member(out.n);
            for (std::size_t i = 0; i < out.n; ++i)
                if (set.intervals().contains(sorted_sample[i])) member.set(i);
            out.membership.push_back(std::move(member));
            out.nu_gamma.push_back(model.nu_gamma(set));
        }
    }
    return out;
}

BindingClass binding_class(const EvaluatedFamily& fam, std::span<const double> exact_p,
                           double h) {
    if (exact_p.size() != fam.sets.size())
        throw std::invalid_argument("binding_class: probability vector size mismatch");
    if (h < 0.0) throw std::invalid_argument("binding_class: bandwidth must be >= 0");
    BindingClass out;
    out.bandwidth = h;
    for (std::size_t c = 0; c < fam.sets.size(); ++c)
        if (exact_p[c] >= fam.nu_gamma[c] - h - kBindingTol) out.members.push_back(c);
    return out;
}

BindingClass estimated_binding_class(const EvaluatedFamily& fam, double h) {
    if (h < 0.0) throw std::invalid_argument("estimated_binding_class: bandwidth must be >= 0");
    BindingClass out;
    out.bandwidth = h;
    for (std::size_t c = 0; c < fam.sets.size(); ++c)
        if (fam.empirical_mass(c) >= fam.nu_gamma[c] - h - kBindingTol)
            out.members.push_back(c);
    return out;
}

std::vector<double> candidate_probabilities(const EvaluatedFamily& fam,
                                            const DiscreteMeasure& p_exact) {
    std::vector<double> out;
    out.reserve(fam.sets.size());
    for (const ObsSet& set : fam.sets) out.push_back(p_exact.mass(set.atoms()));
    return out;
}

std::vector<double> candidate_probabilities(const EvaluatedFamily& fam,
                                            const std::function<double(double)>& cdf) {
    std::vector<double> out;
    out.reserve(fam.sets.size());
    for (const ObsSet& set : fam.sets) {
        double mass = 0.0;
        for (const Interval& iv : set.intervals().components())
            mass += cdf(iv.hi) - cdf(iv.lo);
        out.push_back(mass);
    }
    return out;
}

double default_bandwidth(std::size_t n, double c, double gamma) {
    if (n < 2) throw std::invalid_argument("default_bandwidth: need n >= 2");
    if (!(c > 0.0)) throw std::invalid_argument("default_bandwidth: need c > 0");
    if (!(gamma > 0.0 && gamma < 0.5))
        throw std::invalid_argument(
            "default_bandwidth: gamma must lie in (0, 1/2) so that h_n -> 0 while "
            "h_n^{-1} sqrt(log log n / n) -> 0");
    return c * std::pow(static_cast<double>(n), -gamma);
}

CoreDeterminingResult is_core_determining_bruteforce(const SetFamily& fam,
                                                     const FiniteCorrespondence& corr,
                                                     const DiscreteMeasure& nu,
                                                     std::size_t trials, std::uint64_t seed) {
    const std::size_t m = corr.y_size();
    if (m > 12)
        throw std::invalid_argument("is_core_determining_bruteforce: carrier larger than 12");
    if (nu.size() != corr.u_size())
        throw std::invalid_argument("is_core_determining_bruteforce: nu carrier mismatch");

    FiniteCarrier carrier;
    carrier.labels = corr.y_labels();
    {
        std::vector<double> values;
        bool numeric = true;
        for (const std::string& label : carrier.labels) {
            try {
                std::size_t pos = 0;
                values.push_back(std::stod(label, &pos));
                if (pos != label.size()) { numeric = false; break; }
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (numeric && std::is_sorted(values.begin(), values.end()))
            carrier.values = std::move(values);
    }

    const std::vector<ObsSet> candidates = enumerate_family(fam, Carrier(carrier), {});
    std::vector<double> fam_nu;
    fam_nu.reserve(candidates.size());
    for (const ObsSet& set : candidates) fam_nu.push_back(nu.mass(corr.image(set.atoms())));

    // All subsets, with their capacity values, for the full check.
    const std::size_t total = std::size_t{1} << m;
    std::vector<double> all_nu(total);
    std::vector<Bitset> all_sets(total, Bitset(m));
    for (std::size_t mask = 0; mask < total; ++mask) {
        Bitset b(m);
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::size_t{1} << i)) b.set(i);
        all_nu[mask] = nu.mass(corr.image(b));
        all_sets[mask] = std::move(b);
    }

    constexpr double tol = 1e-9;
    CoreDeterminingResult result;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 eng = make_engine(seed, trial);
        std::exponential_distribution<double> expo(1.0);
        std::vector<double> p(m);
        double total_w = 0.0;
        for (double& w : p) {
            w = expo(eng);
            total_w += w;
        }
        for (double& w : p) w /= total_w;

        bool family_ok = true;
        for (std::size_t c = 0; c < candidates.size() && family_ok; ++c) {
            double pa = 0.0;
            const Bitset& b = candidates[c].atoms();
            for (std::size_t i = 0; i < m; ++i)
                if (b.test(i)) pa += p[i];
            if (pa > fam_nu[c] + tol) family_ok = false;
        }
        if (!family_ok) continue;

        for (std::size_t mask = 0; mask < total; ++mask) {
            double pa = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::size_t{1} << i)) pa += p[i];
            if (pa > all_nu[mask] + tol) {
                result.core_determining = false;
                result.counterexample_p = p;
                result.counterexample_set = all_sets[mask];
                result.trials_used = trial + 1;
                return result;
            }
        }
    }
    result.trials_used = trials;
    return result;
}

} // namespace incomplete
