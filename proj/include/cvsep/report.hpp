#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cvsep {

/// Outcome of one separability test. `violation` is oriented so that a
/// positive value means the separable-state bound is broken, whatever
/// the inequality's native direction; detected holds exactly when
/// violation exceeds the detection tolerance and no flag is set.
struct CriterionReport {
    std::string criterion;
    double lhs = 0.0;
    double rhs = 0.0;
    double violation = 0.0;
    bool detected = false;

    /// Empty normally; "unphysical-marginal" or "inapplicable" when the
    /// input lies outside the criterion's domain (never a detection).
    std::string flag;

    /// Echo of numeric inputs and secondary outputs, in print order.
    std::vector<std::pair<std::string, double>> parameters;

    void add_parameter(std::string name, double value) {
        parameters.emplace_back(std::move(name), value);
    }
};

} // namespace cvsep
