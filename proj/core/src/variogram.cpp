#include "windkrige/variogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace windkrige {

namespace {

constexpr double kTieEps = 1e-9;

double structure_value(const VariogramStructure& s, double h) {
    const double u = h / s.range;
    switch (s.kind) {
        case StructureKind::Spherical:
            return u >= 1.0 ? s.sill : s.sill * (1.5 * u - 0.5 * u * u * u);
        case StructureKind::Exponential:
            return s.sill * (1.0 - std::exp(-u));
        case StructureKind::HoleEffectSine:
            // sin(u)/u -> 1 - u^2/6 for small u
            return u < 1e-8 ? s.sill * u * u / 6.0 : s.sill * (1.0 - std::sin(u) / u);
    }
    throw std::logic_error("unknown variogram structure kind");
}

}  // namespace

const char* to_string(StructureKind kind) {
    switch (kind) {
        case StructureKind::Spherical: return "spherical";
        case StructureKind::Exponential: return "exponential";
        case StructureKind::HoleEffectSine: return "hole_effect";
    }
    throw std::logic_error("unknown variogram structure kind");
}

StructureKind structure_kind_from_string(std::string_view name) {
    if (name == "spherical") return StructureKind::Spherical;
    if (name == "exponential") return StructureKind::Exponential;
    if (name == "hole_effect") return StructureKind::HoleEffectSine;
    throw std::invalid_argument("unknown variogram family '" + std::string(name) + "'");
}

double VariogramModel::sill_total() const {
    double s = nugget;
    for (const auto& st : structures) s += st.sill;
    return s;
}

void validate(const VariogramModel& m) {
    if (!(m.nugget >= 0.0)) throw std::invalid_argument("nugget must be non-negative");
    for (const auto& s : m.structures) {
        if (!(s.sill > 0.0)) throw std::invalid_argument("structure sill must be positive");
        if (!(s.range > 0.0)) throw std::invalid_argument("structure range must be positive");
    }
}

EmpiricalVariogram empirical_semivariogram(std::span<const GeoPoint> sites,
                                           std::span<const double> y, double bin_width_km,
                                           double max_lag_km) {
    const std::size_t n = sites.size();
    if (n != y.size()) throw std::invalid_argument("sites and values differ in length");
    if (n < 2) throw std::invalid_argument("need at least 2 sites");
    if (!(bin_width_km > 0.0)) throw std::invalid_argument("bin width must be positive");
    if (!(max_lag_km > 0.0)) throw std::invalid_argument("max lag must be positive");

    const std::size_t nbins =
        static_cast<std::size_t>(std::ceil(max_lag_km / bin_width_km)) + 1;
    std::vector<double> sums(nbins, 0.0);
    std::vector<std::size_t> counts(nbins, 0);

    std::size_t total_pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = haversine_km(sites[i], sites[j]);
            if (d > max_lag_km) continue;
            std::size_t bin = static_cast<std::size_t>(d / bin_width_km);
            if (bin >= nbins) bin = nbins - 1;
            const double diff = y[i] - y[j];
            sums[bin] += diff * diff;
            counts[bin] += 1;
            ++total_pairs;
        }
    }
    if (total_pairs == 0) throw std::runtime_error("all site pairs lie beyond the max lag");

    EmpiricalVariogram out;
    for (std::size_t bin = 0; bin < nbins; ++bin) {
        if (counts[bin] == 0) continue;
        out.bin_centers_km.push_back((static_cast<double>(bin) + 0.5) * bin_width_km);
        out.gamma_hat.push_back(sums[bin] / (2.0 * static_cast<double>(counts[bin])));
        out.pair_counts.push_back(counts[bin]);
    }
    return out;
}

double eval_model(const VariogramModel& m, double h_km) {
    if (h_km < 0.0) throw std::invalid_argument("negative lag distance");
    if (h_km == 0.0) return 0.0;
    double g = m.nugget;
    for (const auto& s : m.structures) g += structure_value(s, h_km);
    return g;
}

double cov_from_variogram(const VariogramModel& m, double h_km) {
    return m.sill_total() - eval_model(m, h_km);
}

double wls_objective(const EmpiricalVariogram& ev, const VariogramModel& m) {
    double obj = 0.0;
    for (std::size_t i = 0; i < ev.bin_centers_km.size(); ++i) {
        const double gm = eval_model(m, ev.bin_centers_km[i]);
        const double denom = std::max(gm, 1e-12);
        const double diff = ev.gamma_hat[i] - gm;
        obj += static_cast<double>(ev.pair_counts[i]) * diff * diff / (denom * denom);
    }
    return obj;
}

namespace {

// --- bounded Nelder-Mead over the flattened parameter vector --------------
//
// Layout: [nugget, (sill, range) per structure]. Bounds are enforced by
// clamping inside the objective plus a quadratic penalty on the excursion,
// which keeps the simplex from wandering.

struct SearchSpace {
    std::vector<StructureKind> kinds;
    std::vector<double> lo;
    std::vector<double> hi;
};

VariogramModel model_from(const SearchSpace& space, std::span<const double> params) {
    VariogramModel m;
    m.nugget = std::clamp(params[0], space.lo[0], space.hi[0]);
    for (std::size_t s = 0; s < space.kinds.size(); ++s) {
        VariogramStructure st;
        st.kind = space.kinds[s];
        st.sill = std::clamp(params[1 + 2 * s], space.lo[1 + 2 * s], space.hi[1 + 2 * s]);
        st.range = std::clamp(params[2 + 2 * s], space.lo[2 + 2 * s], space.hi[2 + 2 * s]);
        m.structures.push_back(st);
    }
    return m;
}

double penalized_objective(const EmpiricalVariogram& ev, const SearchSpace& space,
                           std::span<const double> params) {
    double penalty = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double span = std::max(space.hi[i] - space.lo[i], 1e-12);
        const double excess = std::max(space.lo[i] - params[i], 0.0) +
                              std::max(params[i] - space.hi[i], 0.0);
        const double rel = excess / span;
        penalty += 1e3 * rel * rel;
    }
    const double base = wls_objective(ev, model_from(space, params));
    return std::isfinite(base) ? base + penalty : std::numeric_limits<double>::infinity();
}

struct NelderMeadResult {
    std::vector<double> params;
    double value = std::numeric_limits<double>::infinity();
};

NelderMeadResult nelder_mead(const EmpiricalVariogram& ev, const SearchSpace& space,
                             std::vector<double> start, double spread, int max_evals) {
    const std::size_t dim = start.size();
    auto f = [&](std::span<const double> p) { return penalized_objective(ev, space, p); };

    std::vector<std::vector<double>> simplex(dim + 1, start);
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) {
        const double step = spread * std::max(space.hi[i] - space.lo[i], 1e-12);
        simplex[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= dim; ++i) values[i] = f(simplex[i]);
    int evals = static_cast<int>(dim) + 1;

    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    while (evals < max_evals) {
        std::size_t best = 0, worst = 0, second_worst = 0;
        for (std::size_t i = 1; i <= dim; ++i) {
            if (values[i] < values[best]) best = i;
            if (values[i] > values[worst]) worst = i;
        }
        second_worst = best;
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != worst && values[i] > values[second_worst]) second_worst = i;

        if (values[worst] - values[best] <= 1e-14 * (std::fabs(values[best]) + 1e-15)) break;

        for (std::size_t d = 0; d < dim; ++d) {
            double c = 0.0;
            for (std::size_t i = 0; i <= dim; ++i)
                if (i != worst) c += simplex[i][d];
            centroid[d] = c / static_cast<double>(dim);
        }

        // reflection
        for (std::size_t d = 0; d < dim; ++d) trial[d] = centroid[d] + (centroid[d] - simplex[worst][d]);
        double f_trial = f(trial);
        ++evals;

        if (f_trial < values[best]) {
            // expansion
            for (std::size_t d = 0; d < dim; ++d)
                trial2[d] = centroid[d] + 2.0 * (centroid[d] - simplex[worst][d]);
            const double f_trial2 = f(trial2);
            ++evals;
            if (f_trial2 < f_trial) {
                simplex[worst] = trial2;
                values[worst] = f_trial2;
            } else {
                simplex[worst] = trial;
                values[worst] = f_trial;
            }
        } else if (f_trial < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = f_trial;
        } else {
            // contraction
            for (std::size_t d = 0; d < dim; ++d)
                trial2[d] = centroid[d] + 0.5 * (simplex[worst][d] - centroid[d]);
            const double f_trial2 = f(trial2);
            ++evals;
            if (f_trial2 < values[worst]) {
                simplex[worst] = trial2;
                values[worst] = f_trial2;
            } else {
                // shrink toward the best vertex
                std::size_t best_idx = 0;
                for (std::size_t i = 1; i <= dim; ++i)
                    if (values[i] < values[best_idx]) best_idx = i;
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best_idx) continue;
                    for (std::size_t d = 0; d < dim; ++d)
                        simplex[i][d] = simplex[best_idx][d] + 0.5 * (simplex[i][d] - simplex[best_idx][d]);
                    values[i] = f(simplex[i]);
                    ++evals;
                }
            }
        }
    }

    NelderMeadResult out;
    std::size_t best = 0;
    for (std::size_t i = 1; i <= dim; ++i)
        if (values[i] < values[best]) best = i;
    out.params = simplex[best];
    out.value = values[best];
    return out;
}

NelderMeadResult fit_candidate(const EmpiricalVariogram& ev, const SearchSpace& space,
                               const VariogramFitOptions& options, std::uint64_t candidate_salt) {
    const std::size_t dim = 1 + 2 * space.kinds.size();
    const double scale = std::max(*std::max_element(ev.gamma_hat.begin(), ev.gamma_hat.end()), 1e-12);
    const double h_max = ev.bin_centers_km.back();

    std::vector<std::vector<double>> starts;
    // heuristic start: nugget near the first bin, remaining sill split evenly,
    // ranges staggered below the max lag
    std::vector<double> heuristic(dim);
    heuristic[0] = 0.5 * ev.gamma_hat.front();
    const double c_each =
        std::max((scale - heuristic[0]) / std::max<std::size_t>(space.kinds.size(), 1), 0.1 * scale);
    for (std::size_t s = 0; s < space.kinds.size(); ++s) {
        heuristic[1 + 2 * s] = c_each;
        heuristic[2 + 2 * s] = h_max / (3.0 * static_cast<double>(s + 1));
    }
    starts.push_back(heuristic);

    std::mt19937_64 rng(options.seed ^ (candidate_salt * 0x9e3779b97f4a7c15ULL + 1));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 1; k < options.starts; ++k) {
        std::vector<double> p(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (i >= 1 && i % 2 == 0) {
                // ranges drawn log-uniform over the bounds
                const double lo = std::log(space.lo[i]);
                const double hi = std::log(space.hi[i]);
                p[i] = std::exp(lo + (hi - lo) * unit(rng));
            } else {
                p[i] = space.lo[i] + (space.hi[i] - space.lo[i]) * unit(rng);
            }
        }
        starts.push_back(std::move(p));
    }

    NelderMeadResult best;
    const int budget = 400 * static_cast<int>(dim) * static_cast<int>(dim);
    for (const auto& start : starts) {
        NelderMeadResult r = nelder_mead(ev, space, start, 0.25, budget);
        if (r.value < best.value) best = r;
    }
    // polish: restart a tight simplex at the incumbent
    for (double spread : {1e-3, 1e-5}) {
        NelderMeadResult r = nelder_mead(ev, space, best.params, spread, budget);
        if (r.value < best.value) best = r;
    }
    return best;
}

}  // namespace

VariogramFit fit_model(const EmpiricalVariogram& ev, std::span<const StructureKind> candidates,
                       const VariogramFitOptions& options) {
    const std::size_t nbins = ev.bin_centers_km.size();
    if (nbins < 4)
        throw std::invalid_argument("too few bins for a variogram fit (need 4, got " +
                                    std::to_string(nbins) + ")");
    if (candidates.empty()) throw std::invalid_argument("no candidate variogram families");
    if (ev.gamma_hat.size() != nbins || ev.pair_counts.size() != nbins)
        throw std::invalid_argument("inconsistent empirical variogram");

    const double scale = std::max(*std::max_element(ev.gamma_hat.begin(), ev.gamma_hat.end()), 1e-12);
    const double h_max = ev.bin_centers_km.back();

    // Candidate shapes: pure nugget, single structures, then nested pairs
    // (combinations with repetition) when allowed.
    std::vector<std::vector<StructureKind>> shapes;
    shapes.push_back({});
    if (options.max_structures >= 1)
        for (StructureKind k : candidates) shapes.push_back({k});
    if (options.max_structures >= 2) {
        for (std::size_t i = 0; i < candidates.size(); ++i)
            for (std::size_t j = i; j < candidates.size(); ++j)
                shapes.push_back({candidates[i], candidates[j]});
    }

    struct Scored {
        VariogramModel model;
        double objective;
        std::size_t n_params;
    };
    std::vector<Scored> scored;

    for (std::size_t idx = 0; idx < shapes.size(); ++idx) {
        SearchSpace space;
        space.kinds = shapes[idx];
        const std::size_t dim = 1 + 2 * space.kinds.size();
        space.lo.assign(dim, 0.0);
        space.hi.assign(dim, 0.0);
        space.lo[0] = 0.0;
        space.hi[0] = 1.5 * scale;
        for (std::size_t s = 0; s < space.kinds.size(); ++s) {
            space.lo[1 + 2 * s] = 1e-6 * scale;
            space.hi[1 + 2 * s] = 2.0 * scale;
            space.lo[2 + 2 * s] = 1e-3 * h_max;
            space.hi[2 + 2 * s] = 10.0 * h_max;
        }

        const NelderMeadResult r = fit_candidate(ev, space, options, idx);
        if (!std::isfinite(r.value)) continue;
        Scored sc;
        sc.model = model_from(space, r.params);
        sc.objective = wls_objective(ev, sc.model);
        sc.n_params = dim;
        scored.push_back(std::move(sc));
    }
    if (scored.empty())
        throw std::runtime_error("variogram fit failed: no candidate produced a finite objective");

    double best_obj = scored.front().objective;
    for (const auto& sc : scored) best_obj = std::min(best_obj, sc.objective);

    const Scored* chosen = nullptr;
    const double tie = best_obj + kTieEps * std::max(1.0, best_obj);
    for (const auto& sc : scored) {
        if (sc.objective > tie) continue;
        if (chosen == nullptr || sc.n_params < chosen->n_params) chosen = &sc;
    }

    VariogramFit fit;
    fit.model = chosen->model;
    // canonical structure order keeps serialized output deterministic
    std::sort(fit.model.structures.begin(), fit.model.structures.end(),
              [](const VariogramStructure& a, const VariogramStructure& b) {
                  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                  return a.range < b.range;
              });
    fit.wls_objective = chosen->objective;
    return fit;
}

CnsdResult check_cnsd(const std::function<double(double)>& gamma,
                      std::span<const GeoPoint> sites, int trials, std::uint64_t seed) {
    const std::size_t n = sites.size();
    if (n < 2) throw std::invalid_argument("CNSD check needs at least 2 sites");
    if (trials < 1) throw std::invalid_argument("CNSD check needs at least 1 trial");

    std::vector<double> table(n * n, 0.0);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double g = gamma(haversine_km(sites[i], sites[j]));
            table[i * n + j] = g;
            table[j * n + i] = g;
            max_abs = std::max(max_abs, std::fabs(g));
        }
    }
    if (max_abs == 0.0) max_abs = 1.0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    CnsdResult result;
    result.worst_violation = -std::numeric_limits<double>::infinity();
    std::vector<double> w(n);
    for (int trial = 0; trial < trials; ++trial) {
        double mean = 0.0;
        for (double& wi : w) {
            wi = unit(rng);
            mean += wi;
        }
        mean /= static_cast<double>(n);
        double norm2 = 0.0;
        for (double& wi : w) {
            wi -= mean;
            norm2 += wi * wi;
        }
        if (norm2 < 1e-12) continue;

        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += table[i * n + j] * w[j];
            q += w[i] * row;
        }
        result.worst_violation = std::max(result.worst_violation, q / (norm2 * max_abs));
    }
    result.pass = result.worst_violation <= 1e-9;
    return result;
}

CnsdResult check_cnsd(const VariogramModel& m, std::span<const GeoPoint> sites, int trials,
                      std::uint64_t seed) {
    validate(m);
    return check_cnsd([&m](double h) { return eval_model(m, h); }, sites, trials, seed);
}

}  // namespace windkrige
