#include "incomplete/capacity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "incomplete/rng.hpp"
#include "simplex.hpp"

namespace incomplete {

namespace {

void check_carrier(const DiscreteMeasure& p, const FiniteCorrespondence& corr) {
    if (p.size() != corr.y_size())
        throw std::invalid_argument("carrier mismatch: measure has " +
                                    std::to_string(p.size()) + " atoms, correspondence " +
                                    std::to_string(corr.y_size()));
}

Bitset bitset_from_mask(std::size_t n, std::uint32_t mask) {
    Bitset b(n);
    for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) b.set(i);
    return b;
}

} // namespace

double belief(const DiscreteMeasure& p, const FiniteCorrespondence& corr, const Bitset& b) {
    check_carrier(p, corr);
    return p.mass(corr.lower_inverse(b));
}

double belief(const DiscreteMeasure& p, const IntervalValuedCorrespondence& corr,
              const IntervalSet& b) {
    if (p.size() != corr.y_size())
        throw std::invalid_argument("carrier mismatch between measure and correspondence");
    return p.mass(corr.lower_inverse(b));
}

double plausibility(const DiscreteMeasure& p, const FiniteCorrespondence& corr, const Bitset& b) {
    check_carrier(p, corr);
    return p.mass(corr.preimage(b));
}

double plausibility(const DiscreteMeasure& p, const IntervalValuedCorrespondence& corr,
                    const IntervalSet& b) {
    if (p.size() != corr.y_size())
        throw std::invalid_argument("carrier mismatch between measure and correspondence");
    return p.mass(corr.preimage(b));
}

CapacityTable::CapacityTable(std::size_t carrier_size, std::vector<double> values)
    : n_(carrier_size), values_(std::move(values)) {
    if (n_ == 0 || n_ > kMaxCarrier)
        throw std::invalid_argument("CapacityTable: carrier size must be in [1, 20]");
    if (values_.size() != (std::size_t{1} << n_))
        throw std::invalid_argument("CapacityTable: expected 2^n values");
    if (std::abs(values_[0]) > kCapacityTol)
        throw std::invalid_argument("CapacityTable: value(empty) must be 0");
    if (std::abs(values_[full_mask()] - 1.0) > kCapacityTol)
        throw std::invalid_argument("CapacityTable: value(full) must be 1");
    for (std::uint32_t mask = 0; mask <= full_mask(); ++mask) {
        for (std::size_t i = 0; i < n_; ++i) {
            const std::uint32_t bigger = mask | (1u << i);
            if (bigger != mask && values_[mask] > values_[bigger] + kCapacityTol)
                throw std::invalid_argument("CapacityTable: not monotone under inclusion");
        }
        if (mask == full_mask()) break;
    }
}

std::string CapacityTable::to_json_text() const {
    std::ostringstream out;
    out << "{";
    for (std::uint32_t mask = 0;; ++mask) {
        out << (mask ? "," : "") << "\"" << mask << "\":" << values_[mask];
        if (mask == full_mask()) break;
    }
    out << "}";
    return out.str();
}

CapacityTable plausibility_table(const DiscreteMeasure& p, const FiniteCorrespondence& corr) {
    check_carrier(p, corr);
    const std::size_t n = corr.u_size();
    if (n > CapacityTable::kMaxCarrier)
        throw std::invalid_argument("plausibility_table: latent carrier larger than 20");
    if (corr.y_size() > 64)
        throw std::invalid_argument("plausibility_table: observable carrier larger than 64");
    // Preimage masks by lowest-bit recursion, then one mass accumulation each.
    std::vector<std::uint64_t> single(n, 0);
    for (std::size_t ui = 0; ui < n; ++ui) {
        Bitset one(n);
        one.set(ui);
        single[ui] = corr.preimage(one).low_word();
    }
    auto mass64 = [&](std::uint64_t ymask) {
        double total = 0.0;
        for (std::size_t yi = 0; yi < corr.y_size(); ++yi)
            if (ymask & (std::uint64_t{1} << yi)) total += p.weight(yi);
        return total;
    };
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<std::uint64_t> pre(std::size_t{1} << n, 0);
    std::vector<double> values(std::size_t{1} << n, 0.0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const std::uint32_t low = mask & (~mask + 1);
        pre[mask] = pre[mask & (mask - 1)] | single[std::countr_zero(low)];
        values[mask] = mass64(pre[mask]);
        if (mask == full) break;
    }
    return CapacityTable(n, std::move(values));
}

CapacityTable measure_table(const DiscreteMeasure& nu) {
    const std::size_t n = nu.size();
    if (n > CapacityTable::kMaxCarrier)
        throw std::invalid_argument("measure_table: carrier larger than 20");
    std::vector<double> values(std::size_t{1} << n, 0.0);
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const std::uint32_t low = mask & (~mask + 1);
        values[mask] = values[mask & (mask - 1)] + nu.weight(std::countr_zero(low));
        if (mask == full) break;
    }
    values[full] = 1.0;
    return CapacityTable(n, std::move(values));
}

namespace {

/// Evaluates the alternation inequality for a family of subset masks;
/// true when satisfied.
bool alternation_holds(const CapacityTable& cap, const std::vector<std::uint32_t>& fam) {
    std::uint32_t inter = cap.full_mask();
    for (auto m : fam) inter &= m;
    double rhs = 0.0;
    const std::uint32_t k = static_cast<std::uint32_t>(fam.size());
    for (std::uint32_t pick = 1; pick < (1u << k); ++pick) {
        std::uint32_t uni = 0;
        for (std::uint32_t i = 0; i < k; ++i)
            if (pick & (1u << i)) uni |= fam[i];
        rhs += (std::popcount(pick) % 2 == 1) ? cap.value(uni) : -cap.value(uni);
    }
    return cap.value(inter) <= rhs + kCapacityTol;
}

bool comparable(std::uint32_t a, std::uint32_t b) {
    return (a & b) == a || (a & b) == b;
}

} // namespace

AlternationResult is_alternating(const CapacityTable& cap, int order,
                                 std::size_t sample_trials, std::uint64_t seed) {
    if (order < 2) throw std::invalid_argument("is_alternating: order must be >= 2");
    const std::uint32_t full = cap.full_mask();
    const double nsubsets = static_cast<double>(full) + 1.0;
    constexpr double kExhaustiveBudget = 2e7;
    AlternationResult result;

    // Families with a comparable pair reduce to a strictly smaller family,
    // so each exhaustive pass only visits strictly increasing incomparable
    // tuples.
    for (int m = 2; m <= std::min(order, 4); ++m) {
        double count = 1.0;
        for (int i = 0; i < m; ++i) count *= (nsubsets - i) / (i + 1);
        if (count > kExhaustiveBudget) break;

        std::vector<std::uint32_t> fam(static_cast<std::size_t>(m));
        // Odometer over strictly increasing m-tuples of masks.
        std::vector<std::uint32_t> idx(static_cast<std::size_t>(m));
        std::iota(idx.begin(), idx.end(), 0u);
        if (idx.back() > full) continue;
        for (;;) {
            bool skip = false;
            for (int i = 0; i < m && !skip; ++i)
                for (int j = i + 1; j < m && !skip; ++j)
                    if (comparable(idx[i], idx[j])) skip = true;
            if (!skip) {
                std::copy(idx.begin(), idx.end(), fam.begin());
                if (!alternation_holds(cap, fam)) {
                    result.alternating = false;
                    result.violating_family = fam;
                    return result;
                }
            }
            int pos = m - 1;
            while (pos >= 0 && idx[pos] == full - static_cast<std::uint32_t>(m - 1 - pos))
                --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int q = pos + 1; q < m; ++q) idx[q] = idx[q - 1] + 1;
        }
    }

    // Sampled families for the orders the exhaustive budget cannot reach.
    for (int m = 2; m <= order; ++m) {
        double count = 1.0;
        for (int i = 0; i < m; ++i) count *= (nsubsets - i) / (i + 1);
        if (m <= 4 && count <= kExhaustiveBudget) continue;
        std::mt19937_64 eng = make_engine(seed, static_cast<std::uint64_t>(m));
        std::uniform_int_distribution<std::uint32_t> pick(0, full);
        std::vector<std::uint32_t> fam(static_cast<std::size_t>(m));
        for (std::size_t trial = 0; trial < sample_trials; ++trial) {
            for (auto& v : fam) v = pick(eng);
            if (!alternation_holds(cap, fam)) {
                result.alternating = false;
                result.violating_family = fam;
                return result;
            }
        }
    }
    return result;
}

double choquet_integral(const CapacityTable& cap, const std::vector<double>& f) {
    const std::size_t n = cap.carrier_size();
    if (f.size() != n)
        throw std::invalid_argument("choquet_integral: f size does not match carrier");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });
    // Level sets grow one distinct value at a time:
    //   integral = sum_j v_j * (phi(S_j) - phi(S_{j-1})).
    double total = 0.0;
    double prev_phi = 0.0;
    std::uint32_t mask = 0;
    std::size_t i = 0;
    while (i < n) {
        const double v = f[order[i]];
        while (i < n && f[order[i]] == v) {
            mask |= (1u << order[i]);
            ++i;
        }
        const double phi = cap.value(mask);
        total += v * (phi - prev_phi);
        prev_phi = phi;
    }
    return total;
}

double core_sup_expectation(const DiscreteMeasure& p, const FiniteCorrespondence& corr,
                            const std::vector<double>& f) {
    check_carrier(p, corr);
    const std::size_t n = corr.u_size();
    if (n > 10)
        throw std::invalid_argument("core_sup_expectation: dense LP supports at most 10 latent atoms");
    if (f.size() != n)
        throw std::invalid_argument("core_sup_expectation: f size does not match latent carrier");
    const CapacityTable plaus = plausibility_table(p, corr);
    const std::uint32_t full = plaus.full_mask();

    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<detail::RowKind> kinds;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        std::vector<double> row(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) row[i] = 1.0;
        a.push_back(std::move(row));
        b.push_back(plaus.value(mask));
        kinds.push_back(detail::RowKind::LessEqual);
    }
    a.emplace_back(n, 1.0);
    b.push_back(1.0);
    kinds.push_back(detail::RowKind::Equal);

    const detail::LpResult lp = detail::solve_lp_max(a, b, kinds, f);
    if (!lp.feasible)
        throw std::runtime_error("core_sup_expectation: empty core (correspondence violates "
                                 "the non-empty-values assumption?)");
    return lp.objective;
}

CoreMembership core_membership(const DiscreteMeasure& nu, const FiniteCorrespondence& corr,
                               const DiscreteMeasure& p) {
    check_carrier(p, corr);
    if (nu.size() != corr.u_size())
        throw std::invalid_argument("carrier mismatch: nu has " + std::to_string(nu.size()) +
                                    " atoms, latent carrier " + std::to_string(corr.u_size()));
    const std::size_t n = corr.u_size();
    if (n > CapacityTable::kMaxCarrier)
        throw std::invalid_argument("core_membership: latent carrier larger than 20");
    const CapacityTable plaus = plausibility_table(p, corr);
    const CapacityTable nut = measure_table(nu);
    CoreMembership out;
    out.in_core = true;
    for (std::uint32_t mask = 1;; ++mask) {
        if (nut.value(mask) > plaus.value(mask) + kCapacityTol) {
            out.in_core = false;
            out.witness = bitset_from_mask(n, mask);
            return out;
        }
        if (mask == plaus.full_mask()) break;
    }
    return out;
}

} // namespace incomplete
