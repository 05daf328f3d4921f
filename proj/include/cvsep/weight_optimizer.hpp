#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cvsep/gaussian_criteria.hpp"

// Derivative-free search for quadrature weights maximizing the violation
// of the weighted trace-norm criterion. How to pick the weights well is
// an open problem; this is a plain multi-start pattern search, nothing
// cleverer, and it makes no optimality claim.
//
// The criterion is invariant under per-side rescaling of the weights, so
// the search runs over directions (both sides kept at unit Euclidean
// norm). Reported weights are rescaled to max|.| = 1 per side, the
// canonical representative on which violations of different directions
// are comparable.

namespace cvsep {

struct OptimizerConfig {
    std::size_t restarts = 64;
    std::size_t max_iters = 500;   // pattern-search sweeps per restart
    std::uint64_t seed = 0;
    double step_shrink = 0.5;
    double initial_step = 0.25;
    double min_step = 1e-8;        // a restart counts as converged below this

    void validate() const {
        if (restarts == 0) throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
        if (max_iters == 0) throw std::invalid_argument("OptimizerConfig: max_iters must be >= 1");
        if (!(step_shrink > 0.0 && step_shrink < 1.0))
            throw std::invalid_argument("OptimizerConfig: step_shrink must lie in (0,1)");
        if (!(initial_step > 0.0) || !(min_step > 0.0))
            throw std::invalid_argument("OptimizerConfig: steps must be positive");
    }
};

struct OptimizationResult {
    WeightVector best_weights;                                  // max|.| = 1 per side
    CriterionReport best_report;                                // prop1a_check at best_weights
    std::vector<std::pair<std::size_t, double>> objective_trace; // best-so-far per sweep, winning restart
    bool converged = false;
};

namespace detail {

// Deterministic standard normals: mt19937_64 + Box-Muller, so results
// do not depend on the standard library's distribution internals.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed, std::uint32_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          stream};
        engine_.seed(seq);
    }

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline void normalize(std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    if (s == 0.0) throw std::invalid_argument("objective: all-zero weight side");
    for (double& x : v) x /= s;
}

inline double raw_objective(const WeightedQuadratureData& data, const std::vector<double>& a,
                            const std::vector<double>& b) {
    const double ba = data.bracket_a(a), bb = data.bracket_b(b);
    if (ba < 0.0 || bb < 0.0) return -HUGE_VAL;
    return trace_norm(data.weighted_cross(a, b)) - std::sqrt(ba * bb);
}

} // namespace detail

/// Scale-free search objective: ||C|| - sqrt(bracket_A * bracket_B) at
/// unit-norm weights. Positive exactly when the weights witness
/// entanglement. Throws std::domain_error when a bracket is negative
/// (sub-uncertainty marginals).
inline double objective(const CovarianceMatrix& cov, const ModePartition& part,
                        const WeightVector& w) {
    part.validate(cov);
    w.validate(part);
    std::vector<double> a = w.a, b = w.b;
    detail::normalize(a);
    detail::normalize(b);
    const double f = detail::raw_objective(detail::WeightedQuadratureData(cov, part), a, b);
    if (f == -HUGE_VAL) throw std::domain_error("objective: negative uncertainty bracket");
    return f;
}

/// Multi-start coordinate pattern search over the product of unit
/// spheres. Deterministic for a fixed (cov, part, config); ties between
/// restarts go to the lowest restart index.
inline OptimizationResult optimize_weights(const CovarianceMatrix& cov, const ModePartition& part,
                                           const OptimizerConfig& config = {}) {
    part.validate(cov);
    config.validate();
    const detail::WeightedQuadratureData data(cov, part);
    const std::size_t da = 2 * part.modes_a, db = 2 * part.modes_b;

    double best_objective = -HUGE_VAL;
    std::vector<double> best_a, best_b;
    std::vector<std::pair<std::size_t, double>> best_trace;
    bool best_converged = false;

    for (std::size_t restart = 0; restart < config.restarts; ++restart) {
        detail::NormalSampler normal(config.seed, static_cast<std::uint32_t>(restart));
        std::vector<double> a(da), b(db);
        for (double& x : a) x = normal();
        for (double& x : b) x = normal();
        detail::normalize(a);
        detail::normalize(b);

        double f = detail::raw_objective(data, a, b);
        double step = config.initial_step;
        std::vector<std::pair<std::size_t, double>> trace;
        bool converged = false;

        for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
            bool improved = false;
            for (int side = 0; side < 2; ++side) {
                std::vector<double>& v = side == 0 ? a : b;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    for (const double dir : {+1.0, -1.0}) {
                        std::vector<double> cand = v;
                        cand[i] += dir * step;
                        double norm = 0;
                        for (double x : cand) norm += x * x;
                        if (norm == 0.0) continue;
                        norm = std::sqrt(norm);
                        for (double& x : cand) x /= norm;
                        const double fc = side == 0 ? detail::raw_objective(data, cand, b)
                                                    : detail::raw_objective(data, a, cand);
                        if (fc > f + 1e-15) {
                            f = fc;
                            v = std::move(cand);
                            improved = true;
                        }
                    }
                }
            }
            trace.emplace_back(iter, f);
            if (!improved) {
                step *= config.step_shrink;
                if (step < config.min_step) {
                    converged = true;
                    break;
                }
            }
        }

        if (f > best_objective) {
            best_objective = f;
            best_a = a;
            best_b = b;
            best_trace = std::move(trace);
            best_converged = converged;
        }
    }

    if (best_a.empty())
        throw std::domain_error("optimize_weights: no feasible weights (sub-uncertainty marginals)");

    auto to_box_scale = [](std::vector<double>& v) {
        double mx = 0;
        for (double x : v) mx = std::max(mx, std::abs(x));
        for (double& x : v) x /= mx;
    };
    to_box_scale(best_a);
    to_box_scale(best_b);

    OptimizationResult result;
    result.best_weights = {std::move(best_a), std::move(best_b)};
    result.best_report = prop1a_check(cov, part, result.best_weights);
    result.objective_trace = std::move(best_trace);
    result.converged = best_converged;
    return result;
}

} // namespace cvsep
