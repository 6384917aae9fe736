#pragma once

#include <Eigen/Dense>
#include <Eigen/LU>

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "windkrige/geo.hpp"
#include "windkrige/temporal.hpp"
#include "windkrige/variogram.hpp"

namespace windkrige {

// Gamma-matrix diagonal convention. Nugget places eta on the diagonal (the
// nugget read as temporal fitting-error variance, which makes the predictor
// a smoother); ClassicalZero restores the textbook exact interpolator.
enum class DiagonalConvention { Nugget, ClassicalZero };

struct KrigingSolution {
    std::vector<double> weights;
    double lagrange_m = 0.0;
    double sigma2 = 0.0;
};

// Bordered ordinary-kriging system [gamma(d_ij) | 1; 1' | 0] x = [gamma(d_i0); 1].
struct KrigingSystem {
    Eigen::MatrixXd gamma;
    Eigen::VectorXd rhs;
    double nugget = 0.0;
};

KrigingSystem assemble_system(const VariogramModel& m, std::span<const GeoPoint> sites,
                              const GeoPoint& target,
                              DiagonalConvention convention = DiagonalConvention::Nugget);

// Dense pivoted solve. Enforces: condition estimate below 1e12, relative
// residual below 1e-8, weights summing to 1 within 1e-10. sigma2 is
// sum_i lambda_i gamma(d_i0) + m - eta, clamped to 0 when within -1e-8.
KrigingSolution solve_ok(const KrigingSystem& system);

// Shared-factorization solver: the bordered matrix depends only on the sites
// and the model, so one LU factorization serves every target location.
class Kriger {
public:
    Kriger(VariogramModel model, std::vector<GeoPoint> sites,
           DiagonalConvention convention = DiagonalConvention::Nugget);

    std::size_t site_count() const { return sites_.size(); }

    KrigingSolution solve_at(const GeoPoint& target) const;

    // (estimate, kriging variance) for field values y observed at the sites.
    std::pair<double, double> estimate(std::span<const double> y, const GeoPoint& target) const;

private:
    Eigen::VectorXd rhs_for(const GeoPoint& target) const;
    KrigingSolution solve_rhs(const Eigen::VectorXd& rhs) const;

    VariogramModel model_;
    std::vector<GeoPoint> sites_;
    DiagonalConvention convention_;
    Eigen::MatrixXd gamma_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

// One-shot convenience wrapper around Kriger.
std::pair<double, double> krige_value(const VariogramModel& m, std::span<const GeoPoint> sites,
                                      std::span<const double> y, const GeoPoint& target,
                                      DiagonalConvention convention = DiagonalConvention::Nugget);

struct ParamSurface {
    RasterSpec spec;
    std::string param_name;
    std::vector<double> values;  // row-major, raster_rows * raster_cols
    std::vector<double> sigma2;
};

// Kriges one parameter field over every raster point. Cells are independent;
// `threads` <= 0 picks the hardware concurrency. Results do not depend on the
// thread count.
ParamSurface krige_parameter_surface(const VariogramModel& m, std::span<const GeoPoint> sites,
                                     std::span<const double> y, const RasterSpec& spec,
                                     std::string param_name, int threads = 0,
                                     DiagonalConvention convention = DiagonalConvention::Nugget);

// Kriges all 18 temporal parameters to the target, each with its own fitted
// variogram model, then re-applies the variance positivity shrinkage to the
// kriged (b0, b1, b2). site_params must share one epoch_date.
TemporalParams krige_params_at(std::span<const VariogramModel> models,
                               std::span<const GeoPoint> sites,
                               std::span<const TemporalParams> site_params, const GeoPoint& target,
                               DiagonalConvention convention = DiagonalConvention::Nugget);

// fit_model plus a usability gate on the study geometry. A hole-effect-only
// model is band-limited, so its kriging matrix on a dense or regular site set
// can be numerically rank-deficient at any range (and under the nugget
// diagonal convention the nugget does not regularize it). When the winning
// model cannot be factored on `sites`, the fit is repeated without the
// hole-effect family.
VariogramFit fit_model_for_kriging(const EmpiricalVariogram& ev,
                                   std::span<const StructureKind> candidates,
                                   std::span<const GeoPoint> sites,
                                   const VariogramFitOptions& options = {});

}  // namespace windkrige
