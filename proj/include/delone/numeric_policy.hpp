#pragma once

#include <cstddef>
#include <string>

namespace delone {

/// Every tolerance the library uses lives here so that a single record
/// (overridable from the environment) controls them.
struct NumericPolicy {
    double construction_tol = 1e-12;  ///< det renormalization, on-curve checks
    double comparison_tol = 1e-9;     ///< closed-set inflation, equality tests
    double curve_tol = 1e-10;         ///< anchor must lie on its geodesic
    double hyperbolic_trace_tol = 1e-10;
    double cycle_identity_tol = 1e-8;
    double boundary_tol = 1e-9;       ///< tube-boundary band for cut-and-project
    double orbit_dedup_tol = 1e-6;    ///< orbit points closer than this are one point
    std::size_t max_elements = 4'000'000;
};

/// Process-wide default. Reads `DELONE_NUMERIC_POLICY` (a JSON object whose
/// keys are the field names above) the first time it is called.
const NumericPolicy& default_policy();

/// Parses a JSON override on top of `base`. Throws InvalidArgument.
NumericPolicy policy_from_json(const std::string& text, NumericPolicy base = {});

}  // namespace delone
