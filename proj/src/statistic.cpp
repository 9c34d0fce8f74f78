#include "incomplete/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "incomplete/math_util.hpp"
#include "incomplete/rng.hpp"

namespace incomplete {

StatisticValue ks_capacity_statistic(const EvaluatedFamily& fam) {
    if (fam.sets.empty())
        throw std::invalid_argument("ks_capacity_statistic: empty family");
    StatisticValue out;
    out.family = fam.family.to_string();
    out.n = fam.n;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < fam.sets.size(); ++c) {
        const double value = fam.empirical_mass(c) - fam.nu_gamma[c];
        if (value > best) {
            best = value;
            out.argmax_index = c;
        }
    }
    out.raw = best;
    out.scaled = std::sqrt(static_cast<double>(fam.n)) * best;
    out.argmax = fam.sets[out.argmax_index];
    return out;
}

QuantileEstimate bridge_quantile(const EvaluatedFamily& fam, double alpha, std::size_t reps,
                                 double h, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("bridge_quantile: alpha must be in (0,1)");
    if (reps < 100)
        throw std::invalid_argument("bridge_quantile: need at least 100 replications");

    const BindingClass binding = estimated_binding_class(fam, h);
    const std::size_t dim = binding.members.size();
    const auto n = static_cast<double>(fam.n);

    QuantileEstimate out;
    out.alpha = alpha;
    out.method = "bridge";
    out.replications = reps;
    out.bandwidth = h;
    out.seed = seed;

    if (dim == 0) {  // cannot happen for families containing the empty set
        out.q_hat = 0.0;
        return out;
    }

    Eigen::MatrixXd cov(dim, dim);
    std::vector<double> p_n(dim);
    for (std::size_t i = 0; i < dim; ++i)
        p_n[i] = fam.empirical_mass(binding.members[i]);
    for (std::size_t i = 0; i < dim; ++i) {
        const Bitset& mi = fam.membership[binding.members[i]];
        for (std::size_t j = i; j < dim; ++j) {
            const Bitset& mj = fam.membership[binding.members[j]];
            const double joint = static_cast<double>(mi.count_and(mj)) / n;
            const double value = joint - p_n[i] * p_n[j];
            cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
            cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = value;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("bridge_quantile: eigendecomposition failed");
    Eigen::VectorXd scale = eig.eigenvalues();
    for (Eigen::Index i = 0; i < scale.size(); ++i) {
        if (scale[i] < -1e-10)
            throw std::runtime_error("bridge_quantile: covariance eigenvalue " +
                                     std::to_string(scale[i]) + " below clipping tolerance");
        scale[i] = std::sqrt(std::max(scale[i], 0.0));
    }
    const Eigen::MatrixXd factor = eig.eigenvectors() * scale.asDiagonal();

    std::vector<double> maxima(reps);
    Eigen::VectorXd z(static_cast<Eigen::Index>(dim));
    for (std::size_t rep = 0; rep < reps; ++rep) {
        std::mt19937_64 eng = make_engine(seed, rep);
        std::normal_distribution<double> normal;
        for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(eng);
        const Eigen::VectorXd g = factor * z;
        maxima[rep] = g.maxCoeff();
    }
    out.q_hat = empirical_quantile_inf(maxima, alpha);
    return out;
}

QuantileEstimate subsample_quantile(const EvaluatedFamily& fam, double alpha, std::size_t b,
                                    std::size_t count, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("subsample_quantile: alpha must be in (0,1)");
    if (b >= fam.n)
        throw std::invalid_argument("subsample_quantile: subsample size must satisfy "
                                    "1/b + b/n -> 0, got b >= n");
    if (b < 2)
        throw std::invalid_argument("subsample_quantile: subsample size must be >= 2");
    if (count < 100)
        throw std::invalid_argument("subsample_quantile: need at least 100 subsamples");

    const std::size_t n = fam.n;
    const double sqrt_b = std::sqrt(static_cast<double>(b));
    std::vector<double> stats(count);
    std::vector<std::size_t> indices(n);

    for (std::size_t s = 0; s < count; ++s) {
        std::mt19937_64 eng = make_engine(seed, s);
        std::iota(indices.begin(), indices.end(), std::size_t{0});
        Bitset mask(n);
        for (std::size_t pick = 0; pick < b; ++pick) {
            std::uniform_int_distribution<std::size_t> dist(pick, n - 1);
            std::swap(indices[pick], indices[dist(eng)]);
            mask.set(indices[pick]);
        }
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < fam.sets.size(); ++c) {
            const double p_b = static_cast<double>(fam.membership[c].count_and(mask)) /
                               static_cast<double>(b);
            best = std::max(best, p_b - fam.nu_gamma[c]);
        }
        stats[s] = sqrt_b * best;
    }

    QuantileEstimate out;
    out.alpha = alpha;
    out.method = "subsample";
    out.replications = count;
    out.subsample_size = b;
    out.seed = seed;
    out.q_hat = empirical_quantile_inf(stats, alpha);
    return out;
}

std::size_t default_subsample_size(std::size_t n) {
    const auto b = static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(n), 1.0 / 3.0)));
    return std::clamp<std::size_t>(b, 2, n > 2 ? n - 1 : 2);
}

} // namespace incomplete
