#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "windkrige/geo.hpp"

namespace windkrige {

enum class StructureKind { Spherical, Exponential, HoleEffectSine };

const char* to_string(StructureKind kind);
StructureKind structure_kind_from_string(std::string_view name);

// One bounded structure: sill contribution c > 0 reached around range r > 0.
struct VariogramStructure {
    StructureKind kind = StructureKind::Spherical;
    double sill = 0.0;
    double range = 0.0;
};

// Valid theoretical semivariogram: nugget plus nested bounded structures.
// gamma(0) = 0 and gamma(h) -> nugget as h -> 0+.
struct VariogramModel {
    double nugget = 0.0;
    std::vector<VariogramStructure> structures;

    double sill_total() const;
};

void validate(const VariogramModel& m);

struct EmpiricalVariogram {
    std::vector<double> bin_centers_km;
    std::vector<double> gamma_hat;
    std::vector<std::size_t> pair_counts;
};

// Matheron estimator, pairs binned by haversine distance: for each bin,
// gamma_hat = sum of squared differences over 2 * pair count. Pairs beyond
// max_lag_km are dropped; empty bins are omitted.
EmpiricalVariogram empirical_semivariogram(std::span<const GeoPoint> sites,
                                           std::span<const double> y, double bin_width_km,
                                           double max_lag_km);

// gamma(h) for h >= 0 km. Even in h by construction; negative h is an error.
double eval_model(const VariogramModel& m, double h_km);

// C(h) = sill_total - gamma(h); defined because all supported structures are bounded.
double cov_from_variogram(const VariogramModel& m, double h_km);

struct VariogramFit {
    VariogramModel model;
    double wls_objective = 0.0;
};

struct VariogramFitOptions {
    int starts = 16;          // multi-start count per candidate shape
    int max_structures = 2;   // nested models capped at nugget + this many
    std::uint64_t seed = 42;  // start-point generator seed
};

// Fits every candidate shape (pure nugget, each family, nested pairs) by
// weighted least squares with Cressie weights N(h)/gamma^2, using seeded
// multi-start Nelder-Mead. Ties within 1e-9 relative go to the model with
// the fewest parameters. Needs at least 4 nonempty bins.
VariogramFit fit_model(const EmpiricalVariogram& ev, std::span<const StructureKind> candidates,
                       const VariogramFitOptions& options = {});

double wls_objective(const EmpiricalVariogram& ev, const VariogramModel& m);

struct CnsdResult {
    bool pass = false;
    double worst_violation = 0.0;  // max over trials of Q / (|w|^2 * max |gamma|)
};

// Monte Carlo conditional-negative-semidefiniteness check: random zero-sum
// weight vectors w must give sum_ij w_i w_j gamma(d_ij) <= 1e-9 scaled.
CnsdResult check_cnsd(const std::function<double(double)>& gamma,
                      std::span<const GeoPoint> sites, int trials, std::uint64_t seed = 42);
CnsdResult check_cnsd(const VariogramModel& m, std::span<const GeoPoint> sites, int trials,
                      std::uint64_t seed = 42);

}  // namespace windkrige
