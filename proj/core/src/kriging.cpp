#include "windkrige/kriging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace windkrige {

namespace {

constexpr double kMinRcond = 1e-12;        // condition estimate cap of 1e12
constexpr double kMaxRelResidual = 1e-8;
constexpr double kWeightSumTol = 1e-10;
constexpr double kSigma2ClampTol = -1e-8;

Eigen::MatrixXd build_gamma(const VariogramModel& m, std::span<const GeoPoint> sites,
                            DiagonalConvention convention) {
    const Eigen::Index n = static_cast<Eigen::Index>(sites.size());
    if (n < 1) throw std::invalid_argument("kriging needs at least one site");
    validate(m);

    const double diag = convention == DiagonalConvention::Nugget ? m.nugget : 0.0;
    Eigen::MatrixXd gamma(n + 1, n + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        gamma(i, i) = diag;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = haversine_km(sites[static_cast<std::size_t>(i)],
                                          sites[static_cast<std::size_t>(j)]);
            if (d < 1e-9)
                throw std::invalid_argument("duplicate sites at index " + std::to_string(i) +
                                            " and " + std::to_string(j));
            const double g = eval_model(m, d);
            gamma(i, j) = g;
            gamma(j, i) = g;
        }
        gamma(i, n) = 1.0;
        gamma(n, i) = 1.0;
    }
    gamma(n, n) = 0.0;
    return gamma;
}

Eigen::VectorXd build_rhs(const VariogramModel& m, std::span<const GeoPoint> sites,
                          const GeoPoint& target, DiagonalConvention convention) {
    const Eigen::Index n = static_cast<Eigen::Index>(sites.size());
    Eigen::VectorXd rhs(n + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = haversine_km(sites[static_cast<std::size_t>(i)], target);
        // a target on top of a site follows the diagonal convention, keeping
        // the system consistent when the nugget sits on the diagonal
        if (d < 1e-9 && convention == DiagonalConvention::Nugget)
            rhs(i) = m.nugget;
        else
            rhs(i) = eval_model(m, d);
    }
    rhs(n) = 1.0;
    return rhs;
}

KrigingSolution extract_solution(const Eigen::MatrixXd& gamma, const Eigen::VectorXd& rhs,
                                 const Eigen::VectorXd& x, double nugget) {
    const Eigen::Index n = rhs.size() - 1;

    const double rel_residual = (gamma * x - rhs).norm() / rhs.norm();
    if (!(rel_residual < kMaxRelResidual))
        throw std::runtime_error("kriging solve residual too large: " + std::to_string(rel_residual));

    KrigingSolution sol;
    sol.weights.assign(x.data(), x.data() + n);
    sol.lagrange_m = x(n);

    const double weight_sum = x.head(n).sum();
    if (!(std::fabs(weight_sum - 1.0) < kWeightSumTol))
        throw std::runtime_error("kriging weights do not sum to 1: " + std::to_string(weight_sum));

    double sigma2 = x.head(n).dot(rhs.head(n)) + sol.lagrange_m - nugget;
    if (sigma2 < 0.0) {
        if (sigma2 < kSigma2ClampTol)
            throw std::runtime_error("negative kriging variance " + std::to_string(sigma2) +
                                     " (invalid variogram model?)");
        sigma2 = 0.0;
    }
    sol.sigma2 = sigma2;
    return sol;
}

}  // namespace

KrigingSystem assemble_system(const VariogramModel& m, std::span<const GeoPoint> sites,
                              const GeoPoint& target, DiagonalConvention convention) {
    KrigingSystem sys;
    sys.gamma = build_gamma(m, sites, convention);
    sys.rhs = build_rhs(m, sites, target, convention);
    sys.nugget = m.nugget;
    return sys;
}

KrigingSolution solve_ok(const KrigingSystem& system) {
    if (system.gamma.rows() != system.gamma.cols() || system.gamma.rows() != system.rhs.size())
        throw std::invalid_argument("malformed kriging system");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system.gamma);
    if (!(lu.rcond() > kMinRcond)) throw std::runtime_error("ill-conditioned kriging system");
    return extract_solution(system.gamma, system.rhs, lu.solve(system.rhs), system.nugget);
}

Kriger::Kriger(VariogramModel model, std::vector<GeoPoint> sites, DiagonalConvention convention)
    : model_(std::move(model)),
      sites_(std::move(sites)),
      convention_(convention),
      gamma_(build_gamma(model_, sites_, convention)),
      lu_(gamma_) {
    if (!(lu_.rcond() > kMinRcond)) throw std::runtime_error("ill-conditioned kriging system");
}

Eigen::VectorXd Kriger::rhs_for(const GeoPoint& target) const {
    return build_rhs(model_, sites_, target, convention_);
}

KrigingSolution Kriger::solve_rhs(const Eigen::VectorXd& rhs) const {
    return extract_solution(gamma_, rhs, lu_.solve(rhs), model_.nugget);
}

KrigingSolution Kriger::solve_at(const GeoPoint& target) const { return solve_rhs(rhs_for(target)); }

std::pair<double, double> Kriger::estimate(std::span<const double> y,
                                           const GeoPoint& target) const {
    if (y.size() != sites_.size())
        throw std::invalid_argument("field values and sites differ in length");
    const KrigingSolution sol = solve_at(target);
    double value = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) value += sol.weights[i] * y[i];
    return {value, sol.sigma2};
}

std::pair<double, double> krige_value(const VariogramModel& m, std::span<const GeoPoint> sites,
                                      std::span<const double> y, const GeoPoint& target,
                                      DiagonalConvention convention) {
    return Kriger(m, {sites.begin(), sites.end()}, convention).estimate(y, target);
}

ParamSurface krige_parameter_surface(const VariogramModel& m, std::span<const GeoPoint> sites,
                                     std::span<const double> y, const RasterSpec& spec,
                                     std::string param_name, int threads,
                                     DiagonalConvention convention) {
    if (y.size() != sites.size())
        throw std::invalid_argument("field values and sites differ in length");

    const std::vector<GeoPoint> cells = raster_points(spec);
    const Kriger kriger(m, {sites.begin(), sites.end()}, convention);

    ParamSurface surface;
    surface.spec = spec;
    surface.param_name = std::move(param_name);
    surface.values.assign(cells.size(), 0.0);
    surface.sigma2.assign(cells.size(), 0.0);

    unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cells.size()));

    std::vector<std::string> errors(n_threads);
    auto worker = [&](unsigned tid) {
        const std::size_t chunk = (cells.size() + n_threads - 1) / n_threads;
        const std::size_t begin = tid * chunk;
        const std::size_t end = std::min(cells.size(), begin + chunk);
        for (std::size_t c = begin; c < end; ++c) {
            try {
                const auto [value, sigma2] = kriger.estimate(y, cells[c]);
                surface.values[c] = value;
                surface.sigma2[c] = sigma2;
            } catch (const std::exception& e) {
                errors[tid] = "kriging failed at (" + std::to_string(cells[c].lat_deg) + ", " +
                              std::to_string(cells[c].lon_deg) + "): " + e.what();
                return;
            }
        }
    };

    if (n_threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }
    for (const auto& err : errors)
        if (!err.empty()) throw std::runtime_error(err);
    return surface;
}

VariogramFit fit_model_for_kriging(const EmpiricalVariogram& ev,
                                   std::span<const StructureKind> candidates,
                                   std::span<const GeoPoint> sites,
                                   const VariogramFitOptions& options) {
    auto factorable = [&sites](const VariogramModel& m) {
        if (sites.size() < 2) return true;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(build_gamma(m, sites, DiagonalConvention::Nugget));
        return lu.rcond() > kMinRcond;
    };

    VariogramFit fit = fit_model(ev, candidates, options);
    if (factorable(fit.model)) return fit;

    std::vector<StructureKind> monotone;
    for (StructureKind k : candidates)
        if (k != StructureKind::HoleEffectSine) monotone.push_back(k);
    if (monotone.empty() || monotone.size() == candidates.size())
        throw std::runtime_error("fitted variogram model is unusable for kriging on these sites");

    fit = fit_model(ev, monotone, options);
    if (!factorable(fit.model))
        throw std::runtime_error("fitted variogram model is unusable for kriging on these sites");
    return fit;
}

TemporalParams krige_params_at(std::span<const VariogramModel> models,
                               std::span<const GeoPoint> sites,
                               std::span<const TemporalParams> site_params, const GeoPoint& target,
                               DiagonalConvention convention) {
    if (models.size() != static_cast<std::size_t>(TemporalParams::kParamCount))
        throw std::invalid_argument("expected one variogram model per temporal parameter");
    if (sites.size() != site_params.size())
        throw std::invalid_argument("sites and parameter rows differ in length");
    if (sites.empty()) throw std::invalid_argument("no sites to krige from");
    for (const auto& p : site_params) {
        if (p.epoch_date != site_params.front().epoch_date)
            throw std::invalid_argument("site parameters do not share a common epoch date");
    }

    TemporalParams out;
    out.epoch_date = site_params.front().epoch_date;

    std::vector<double> field(sites.size());
    for (int j = 0; j < TemporalParams::kParamCount; ++j) {
        for (std::size_t i = 0; i < site_params.size(); ++i) field[i] = site_params[i].param(j);
        const Kriger kriger(models[static_cast<std::size_t>(j)], {sites.begin(), sites.end()},
                            convention);
        out.set_param(j, kriger.estimate(field, target).first);
    }

    if (!(out.b[0] > 0.0))
        throw std::runtime_error("kriged base variance b0 is nonpositive at (" +
                                 std::to_string(target.lat_deg) + ", " +
                                 std::to_string(target.lon_deg) + ")");
    shrink_variance(out.b);
    return out;
}

}  // namespace windkrige
