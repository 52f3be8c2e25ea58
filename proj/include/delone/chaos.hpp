#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "delone/cut_project.hpp"
#include "delone/hyperbolic.hpp"
#include "delone/surface.hpp"

/// Closed geodesics of the surface, periodic approximation of projected sets,
/// τ sampling for the tangency condition, and the arithmeticity scan.
namespace delone::chaos {

struct ClosedGeodesic {
    hyp::Isometry element;  ///< primitive hyperbolic representative
    double length = 0.0;
    hyp::Geodesic axis;     ///< oriented along the translation, anchored at the foot from the base point
    int word_length = 0;
};

/// One representative per conjugacy class of primitive hyperbolic elements with
/// translation length ≤ length_cutoff, sorted by (length, matrix).
///
/// Every class has a representative whose axis meets the closed polygon P, and
/// such representatives lie in the ball of radius 2·asinh(cosh R·sinh(L/2))
/// about the base (R the circumradius). Two of them are conjugate exactly when
/// a chain of single-generator conjugations inside that set joins them, since
/// consecutive tiles along an axis differ by one generator.
/// Throws InvalidArgument for cutoff <= 0; BudgetExceeded.
std::vector<ClosedGeodesic> enumerate_closed(const surface::SurfaceGroup& group, double length_cutoff,
                                             const surface::Budget& budget = {});

struct LengthSpectrum {
    std::vector<double> lengths;  ///< ascending, distinct beyond 1e-6
    double cutoff = 0.0;
};

LengthSpectrum length_spectrum(const std::vector<ClosedGeodesic>& closed, double cutoff);

struct DalboResult {
    bool arithmetic_like = false;
    std::optional<double> witness_omega;
};

/// Whether some ω ≥ omega_min puts every length within tol of ωℕ. Candidates
/// are ω = L_min/n, each refined by least squares against the nearest
/// multiples; the largest passing ω is reported.
/// Throws InvalidArgument for an empty spectrum or omega_min <= 0.
DalboResult dalbo_check(const LengthSpectrum& spectrum, double omega_min, double tol);

struct ApproxSearch {
    int max_word_length = 12;
    double horizon = 24.0;        ///< search range for the shadowing pair along ℓ
    double sample_step = 0.25;
    std::size_t pair_candidates = 400;
    std::size_t verify_candidates = 25;
    /// Report k with the orientation of −v and compare against the reflected set.
    bool reversed = true;
};

struct ApproxResult {
    ClosedGeodesic k;
    bool reversed_matched = false;
    bool verified = false;
    double axis_deviation = 0.0;  ///< max distance from ℓ to k over the compared window
    std::size_t candidates_checked = 0;
};

/// Searches for a closed geodesic k whose projected set is N_r-close to that of
/// ℓ. Tangents of ℓ are reduced to the fundamental domain along ℓ; a pair of
/// nearly equal reductions at parameters s₁ < −r < r < s₂ gives an element
/// translating roughly along ℓ, whose axis shadows ℓ between them.
/// verified = entourage_member(S⁺_ℓ, S⁺_k (reflected when reversed), N_r),
/// computed on fresh projections. Throws InvalidArgument for r <= 0 and
/// NotFoundWithinBudget when no candidate element exists.
ApproxResult approx_by_closed(const surface::SurfaceGroup& group, const hyp::Geodesic& ell, double r,
                              const cp::TubeConfig& cfg, const ApproxSearch& search = {});

struct MatchResult {
    double a = 0.0;
    bool verified = false;
    bool reversed = false;  ///< matched against the reflected target set
    std::size_t candidates_checked = 0;
};

/// Smallest |a| with (S⁺_ℓ − a, S⁺_k) ∈ N_s, scanning the differences between
/// points of S⁺_ℓ on [−window, window] and the target's points in [−s, s];
/// the reflected target is tried when the direct scan fails.
/// Throws InvalidArgument for s <= 0 and NotFoundWithinBudget.
MatchResult translate_match(const surface::SurfaceGroup& group, const hyp::Geodesic& ell,
                            const hyp::Geodesic& k_target, double s, double window,
                            const cp::TubeConfig& cfg);

struct TauEstimate {
    double sup_estimate = 0.0;
    std::size_t tangency_suspects = 0;
    std::size_t truncated = 0;
    std::size_t samples = 0;
};

/// Samples unit tangents v over P (Halton base points × evenly spaced
/// directions) and computes τ(v), the smallest |t| at which ℓ_v(t) is inside an
/// open ρ-disk about an orbit point, truncated at the horizon. A sample is a
/// tangency suspect when its closest approach to an orbit point is within 1e-4
/// of ρ. Throws InvalidArgument for bad sizes or horizon.
TauEstimate tau_sup_estimate(const surface::SurfaceGroup& group, double rho, std::size_t base_points,
                             std::size_t directions, double horizon);

/// τ for one tangent; nullopt when no disk is entered within the horizon.
std::optional<double> tau_of(const surface::SurfaceGroup& group, const hyp::UnitTangent& v,
                             double rho, double horizon, double* closest_approach = nullptr);

enum class Verdict { pass, fail_A, B_unverified, B_suspect };
std::string to_string(Verdict v);

struct ConditionReport {
    bool condition_a = false;
    double rho = 0.0;
    double mu = 0.0;
    TauEstimate tau;
    double horizon = 0.0;
    Verdict verdict = Verdict::fail_A;
};

/// Condition (A) is ρ < μ. Condition (B) is sampled: τ must stay below the
/// horizon everywhere and no sample may be a tangency suspect.
ConditionReport condition_check(const surface::SurfaceGroup& group, double rho,
                                std::size_t base_points = 64, std::size_t directions = 64,
                                double horizon = 40.0);

/// Fraction of sampled unit tangents over P that the reduction of ℓ([−T, T])
/// passes within `tolerance` of (distance plus angle). Supporting evidence for
/// the dense-orbit assumption only.
double recurrence_fraction(const surface::SurfaceGroup& group, const hyp::Geodesic& ell, double horizon,
                           double tolerance, std::size_t base_points = 16, std::size_t directions = 16);

/// Base points in P from the (2, 3) Halton sequence on the disk, in order.
std::vector<hyp::HPoint> sample_polygon_points(const surface::SurfaceGroup& group, std::size_t count);

/// Whether z lies in the closed polygon (tolerance in signed distance).
bool polygon_contains(const surface::SurfaceGroup& group, hyp::HPoint z, double tol = 1e-9);

/// Reflected copy t ↦ −t of a projected set (window reflected as well).
cp::ProjectedSet reflect(const cp::ProjectedSet& ps);

}  // namespace delone::chaos
