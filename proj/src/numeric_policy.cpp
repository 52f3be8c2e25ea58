#include "delone/numeric_policy.hpp"

#include <cstdlib>

#include <json.hpp>

#include "delone/errors.hpp"

namespace delone {

NumericPolicy policy_from_json(const std::string& text, NumericPolicy base) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("numeric policy is not JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidArgument("numeric policy must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "max_elements") {
            if (!value.is_number_unsigned()) throw InvalidArgument("max_elements must be unsigned");
            base.max_elements = value.get<std::size_t>();
            continue;
        }
        if (!value.is_number()) throw InvalidArgument("policy field '" + key + "' must be a number");
        const double v = value.get<double>();
        if (key == "construction_tol") base.construction_tol = v;
        else if (key == "comparison_tol") base.comparison_tol = v;
        else if (key == "curve_tol") base.curve_tol = v;
        else if (key == "hyperbolic_trace_tol") base.hyperbolic_trace_tol = v;
        else if (key == "cycle_identity_tol") base.cycle_identity_tol = v;
        else if (key == "boundary_tol") base.boundary_tol = v;
        else if (key == "orbit_dedup_tol") base.orbit_dedup_tol = v;
        else throw InvalidArgument("unknown numeric policy field '" + key + "'");
    }
    return base;
}

const NumericPolicy& default_policy() {
    static const NumericPolicy policy = [] {
        const char* env = std::getenv("DELONE_NUMERIC_POLICY");
        return env ? policy_from_json(env) : NumericPolicy{};
    }();
    return policy;
}

}  // namespace delone
