#include "numrad/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace numrad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BoundRecord make_record(std::string name, BoundSide side, double raw, int scale,
                        std::optional<double> t_star = std::nullopt) {
    raw = std::max(0.0, raw);
    double value = raw;
    if (scale == 2) value = std::sqrt(raw);
    if (scale == 4) value = std::sqrt(std::sqrt(raw));
    return {std::move(name), side, value, raw, t_star, scale};
}

double solved_radius(const ComplexMatrix& m, const BoundOptions& opts, bool upper) {
    RadiusSolver solver(m, opts.radius_grid);
    const Enclosure e = solver.refine(std::max(opts.radius_width, solver.resolution()));
    return upper ? e.hi : e.lo;
}

}  // namespace

TGrid make_tgrid(int n) {
    if (n < 2) throw std::invalid_argument("make_tgrid: need at least 2 points");
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) pts.push_back(static_cast<double>(i) / (n - 1));
    pts.back() = 1.0;
    return make_tgrid(std::move(pts));
}

TGrid make_tgrid(std::vector<double> points) {
    for (double t : points) {
        if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("make_tgrid: points must lie in [0, 1]");
    }
    points.push_back(0.0);
    points.push_back(0.5);
    points.push_back(1.0);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return {std::move(points)};
}

// ---------------------------------------------------------------------------
// AluthgeFamily

struct AluthgeFamily::Point {
    double t = 0.0;
    ComplexMatrix transform;
    double transform_norm = 0.0;
    std::unique_ptr<RadiusSolver> radius;         // w(T_t)
    std::unique_ptr<RadiusSolver> square_radius;  // w(T_t^2)
    int radius_stage = 0;
    int square_stage = 0;
};

AluthgeFamily::AluthgeFamily(const ComplexMatrix& m, TGrid grid, BoundOptions opts)
    : op_(m), grid_(std::move(grid)), opts_(opts) {
    require_operator(m, "AluthgeFamily");
    if (grid_.points.empty()) throw std::invalid_argument("AluthgeFamily: empty t grid");
    parts_ = polar_decompose(m);
    norm_ = parts_.sv.front();
    square_norm_ = spectral_norm(m * m);
    anticomm_ = anticommutator_self(m);
    anticomm_norm_ = spectral_norm(anticomm_);
}

AluthgeFamily::~AluthgeFamily() = default;
AluthgeFamily::AluthgeFamily(AluthgeFamily&&) noexcept = default;
AluthgeFamily& AluthgeFamily::operator=(AluthgeFamily&&) noexcept = default;

AluthgeFamily::Point& AluthgeFamily::point_at(double t) {
    for (auto& p : points_) {
        if (p->t == t) return *p;
    }
    auto p = std::make_unique<Point>();
    p->t = t;
    p->transform = aluthge_t(parts_, t);
    p->transform_norm = spectral_norm(p->transform);
    points_.push_back(std::move(p));
    return *points_.back();
}

AluthgeFamily::Minimum AluthgeFamily::min_transform_radius() { return minimise(Objective::TransformRadius); }
AluthgeFamily::Minimum AluthgeFamily::min_t_mean() { return minimise(Objective::TMean); }
AluthgeFamily::Minimum AluthgeFamily::min_square_term() { return minimise(Objective::SquareTerm); }
AluthgeFamily::Minimum AluthgeFamily::min_transform_norm() { return minimise(Objective::TransformNorm); }

AluthgeFamily::Minimum AluthgeFamily::minimise(Objective obj) {
    const double scale = std::max(1.0, norm_);
    const double final_width = opts_.radius_width;

    struct Bracket {
        double lo, hi;
        bool final;
    };

    auto solver_of = [&](Point& p) -> std::pair<RadiusSolver*, int*> {
        if (obj == Objective::SquareTerm) {
            if (!p.square_radius) {
                p.square_radius = std::make_unique<RadiusSolver>(p.transform * p.transform, opts_.radius_grid);
            }
            return {p.square_radius.get(), &p.square_stage};
        }
        if (!p.radius) p.radius = std::make_unique<RadiusSolver>(p.transform, opts_.radius_grid);
        return {p.radius.get(), &p.radius_stage};
    };
    auto objective = [&](const Point& p, double w) {
        switch (obj) {
            case Objective::TransformRadius: return w;
            case Objective::TMean:
                return 0.5 * w + 0.25 * (std::pow(norm_, 2.0 * p.t) + std::pow(norm_, 2.0 - 2.0 * p.t));
            case Objective::SquareTerm: return w + norm_ * p.transform_norm;
            case Objective::TransformNorm: return p.transform_norm;
        }
        return w;
    };
    // Stage k refines the radius enclosure to widths[k]; the last one is final.
    auto stage_width = [&](RadiusSolver& s, int stage) {
        const double widths[3] = {1e-3 * scale, 1e-6 * scale, final_width};
        return std::max(widths[stage], s.resolution());
    };
    auto bracket = [&](Point& p) -> Bracket {
        if (obj == Objective::TransformNorm) return {p.transform_norm, p.transform_norm, true};
        auto [solver, stage] = solver_of(p);
        return {objective(p, solver->lower()), objective(p, solver->upper()), *stage >= 3};
    };
    auto advance = [&](Point& p) {
        auto [solver, stage] = solver_of(p);
        solver->refine(stage_width(*solver, *stage));
        ++*stage;
    };

    Minimum best{kInf, 0.0};
    auto offer = [&](const Point& p, const Bracket& b) {
        if (b.hi < best.value) best = {b.hi, p.t};
    };

    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    std::vector<Point*> grid_points;
    for (double t : grid_.points) grid_points.push_back(&point_at(t));
    for (std::size_t i = 0; i < grid_points.size(); ++i) {
        const Bracket b = bracket(*grid_points[i]);
        offer(*grid_points[i], b);
        queue.push({b.lo, i});
    }
    while (!queue.empty()) {
        const auto [lo, i] = queue.top();
        queue.pop();
        Point& p = *grid_points[i];
        const Bracket now = bracket(p);
        if (now.lo >= best.value || now.final) break;
        advance(p);
        const Bracket b = bracket(p);
        offer(p, b);
        queue.push({b.lo, i});
    }

    if (!opts_.golden_refine || grid_.points.size() < 2) return best;

    // Any t gives a valid bound, so the pass can only lower the value.
    auto probe = [&](double t) {
        Point& p = point_at(t);
        Bracket b = bracket(p);
        offer(p, b);
        while (!b.final && b.lo < best.value) {
            advance(p);
            b = bracket(p);
            offer(p, b);
        }
        return b.final ? b.hi : b.lo;
    };

    const auto& pts = grid_.points;
    const auto it = std::lower_bound(pts.begin(), pts.end(), best.t);
    const std::size_t k = static_cast<std::size_t>(it - pts.begin());
    double a = pts[k > 0 ? k - 1 : 0];
    double b = pts[std::min(k + 1, pts.size() - 1)];
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - ratio * (b - a);
    double x2 = a + ratio * (b - a);
    double f1 = probe(x1);
    double f2 = probe(x2);
    for (int iter = 0; iter < opts_.golden_iterations; ++iter) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = probe(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = probe(x2);
        }
    }
    // Probes are only needed during the pass.
    points_.resize(grid_.points.size());
    return best;
}

// ---------------------------------------------------------------------------
// Closed-form bounds

BoundRecord bound_kittaneh_norm(const ComplexMatrix& m) {
    require_operator(m, "bound_kittaneh_norm");
    const double value = 0.5 * (spectral_norm(m) + std::sqrt(spectral_norm(m * m)));
    return make_record("bound_kittaneh_norm", BoundSide::Upper, value, 1);
}

std::pair<BoundRecord, BoundRecord> bound_kittaneh_cartesian(const ComplexMatrix& m) {
    require_operator(m, "bound_kittaneh_cartesian");
    const double p = spectral_norm(anticommutator_self(m));
    return {make_record("bound_kittaneh_cartesian_lower", BoundSide::Lower, 0.25 * p, 2),
            make_record("bound_kittaneh_cartesian_upper", BoundSide::Upper, 0.5 * p, 2)};
}

BoundRecord bound_yamazaki(const ComplexMatrix& m, const BoundOptions& opts) {
    require_operator(m, "bound_yamazaki");
    const double norm = spectral_norm(m);
    if (norm == 0.0) return make_record("bound_yamazaki", BoundSide::Upper, 0.0, 1, 0.5);
    const double w = solved_radius(aluthge_t(m, 0.5), opts, true);
    return make_record("bound_yamazaki", BoundSide::Upper, 0.5 * (norm + w), 1, 0.5);
}

BoundRecord bound_iterated_series(const ComplexMatrix& m, double t, int terms) {
    require_operator(m, "bound_iterated_series");
    if (terms < 1) throw std::invalid_argument("bound_iterated_series: need at least one term");
    const AluthgeChain chain = aluthge_iterate(m, t, terms);
    std::vector<double> norms;
    for (const auto& x : chain.terms) norms.push_back(spectral_norm(x));
    double raw = 0.0;
    double weight = 1.0;
    for (int n = 1; n <= terms; ++n) {
        weight *= 0.25;
        const auto& prev = chain.terms[static_cast<std::size_t>(n - 1)];
        raw += weight * (norms[n - 1] * norms[n] + spectral_norm(anticommutator_self(prev)));
    }
    raw += weight * norms.back() * norms.back();
    return make_record("bound_iterated_series", BoundSide::Upper, raw, 2, t);
}

BoundRecord bound_iterated_closed(const ComplexMatrix& m) {
    require_operator(m, "bound_iterated_closed");
    const double norm = spectral_norm(m);
    const double root_sq = std::sqrt(spectral_norm(m * m));
    const double p = spectral_norm(anticommutator_self(m));
    const double raw = 0.5 * (root_sq * (0.5 * norm + 0.5 * root_sq) + 0.5 * p);
    return make_record("bound_iterated_closed", BoundSide::Upper, raw, 2);
}

std::pair<BoundRecord, BoundRecord> bound_fourth_sandwich(const ComplexMatrix& m, const BoundOptions& opts) {
    require_operator(m, "bound_fourth_sandwich");
    const double p = spectral_norm(anticommutator_self(m));
    const ComplexMatrix sq = m * m;
    double w_sq = 0.0;
    double crawford = 0.0;
    if (spectral_norm(sq) > 0.0) {
        w_sq = solved_radius(sq, opts, true);
        const ComplexMatrix re = (sq + sq.adjoint()) * 0.5;
        ComplexMatrix re_sq = re * re;
        re_sq = (re_sq + re_sq.adjoint()) * 0.5;
        crawford = crawford_number(re_sq, opts.radius_width).lo;
    }
    return {make_record("bound_fourth_sandwich_lower", BoundSide::Lower,
                        0.25 * crawford + p * p / 16.0, 4),
            make_record("bound_fourth_sandwich_upper", BoundSide::Upper,
                        0.5 * w_sq * w_sq + p * p / 8.0, 4)};
}

// ---------------------------------------------------------------------------
// Bounds minimised over t

BoundRecord bound_min_aluthge(AluthgeFamily& f) {
    if (f.is_zero()) return make_record("bound_min_aluthge", BoundSide::Upper, 0.0, 1, 0.0);
    const auto best = f.min_transform_radius();
    return make_record("bound_min_aluthge", BoundSide::Upper, 0.5 * (f.norm() + best.value), 1, best.t);
}

BoundRecord bound_t_mean(AluthgeFamily& f) {
    if (f.is_zero()) return make_record("bound_t_mean", BoundSide::Upper, 0.0, 1, 0.5);
    const auto best = f.min_t_mean();
    return make_record("bound_t_mean", BoundSide::Upper, best.value, 1, best.t);
}

BoundRecord bound_norm_product(AluthgeFamily& f) {
    if (f.is_zero()) return make_record("bound_norm_product", BoundSide::Upper, 0.0, 2, 0.0);
    const auto best = f.min_transform_norm();
    const double raw = 0.5 * f.norm() * best.value + 0.25 * f.anticommutator_norm();
    return make_record("bound_norm_product", BoundSide::Upper, raw, 2, best.t);
}

BoundRecord bound_square_product(AluthgeFamily& f) {
    if (f.is_zero()) return make_record("bound_square_product", BoundSide::Upper, 0.0, 2, 0.0);
    const auto best = f.min_square_term();
    const double raw = 0.25 * best.value + 0.25 * f.anticommutator_norm();
    return make_record("bound_square_product", BoundSide::Upper, raw, 2, best.t);
}

BoundRecord bound_fourth_power(AluthgeFamily& f) {
    if (f.is_zero()) return make_record("bound_fourth_power", BoundSide::Upper, 0.0, 4, 0.0);
    const auto best = f.min_square_term();
    const ComplexMatrix sq = f.op() * f.op();
    const ComplexMatrix& p = f.anticommutator();
    const ComplexMatrix mixed = sq * p + p * sq;
    const double w_mixed = spectral_norm(mixed) > 0.0 ? solved_radius(mixed, f.options(), true) : 0.0;
    const double pn = f.anticommutator_norm();
    const double raw = best.value * best.value / 16.0 + w_mixed / 8.0 + pn * pn / 16.0;
    return make_record("bound_fourth_power", BoundSide::Upper, raw, 4, best.t);
}

BoundRecord bound_min_aluthge(const ComplexMatrix& m, const TGrid& g) {
    AluthgeFamily f(m, g);
    return bound_min_aluthge(f);
}

BoundRecord bound_t_mean(const ComplexMatrix& m, const TGrid& g) {
    AluthgeFamily f(m, g);
    return bound_t_mean(f);
}

BoundRecord bound_norm_product(const ComplexMatrix& m, const TGrid& g) {
    AluthgeFamily f(m, g);
    return bound_norm_product(f);
}

BoundRecord bound_square_product(const ComplexMatrix& m, const TGrid& g) {
    AluthgeFamily f(m, g);
    return bound_square_product(f);
}

BoundRecord bound_fourth_power(const ComplexMatrix& m, const TGrid& g) {
    AluthgeFamily f(m, g);
    return bound_fourth_power(f);
}

// ---------------------------------------------------------------------------
// Residual checks

double heinz_residual(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b, double r) {
    require_operator(a, "heinz_residual");
    require_operator(x, "heinz_residual");
    require_operator(b, "heinz_residual");
    if (a.rows() != x.rows() || b.rows() != x.rows()) {
        throw std::invalid_argument("heinz_residual: dimension mismatch");
    }
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("heinz_residual: r must lie in [0, 1]");
    if (!is_psd(a, 1e-10) || !is_psd(b, 1e-10)) {
        throw std::invalid_argument("heinz_residual: A and B must be positive semidefinite");
    }
    const double lhs = spectral_norm(psd_power(a, r) * x * psd_power(b, r));
    const double rhs = std::pow(spectral_norm(a * x * b), r) * std::pow(spectral_norm(x), 1.0 - r);
    return rhs - lhs;
}

double composite_spectral_residual(const ComplexMatrix& a1, const ComplexMatrix& b1,
                                   const ComplexMatrix& a2, const ComplexMatrix& b2) {
    for (const ComplexMatrix* m : {&a1, &b1, &a2, &b2}) require_operator(*m, "composite_spectral_residual");
    const auto n = a1.rows();
    if (b1.rows() != n || a2.rows() != n || b2.rows() != n) {
        throw std::invalid_argument("composite_spectral_residual: dimension mismatch");
    }
    const BoundOptions opts;
    const ComplexMatrix p1 = b1 * a1;
    const ComplexMatrix p2 = b2 * a2;
    const double w1 = spectral_norm(p1) > 0.0 ? solved_radius(p1, opts, true) : 0.0;
    const double w2 = spectral_norm(p2) > 0.0 ? solved_radius(p2, opts, true) : 0.0;
    const double cross = spectral_norm(b1 * a2) * spectral_norm(b2 * a1);
    const double rhs = 0.5 * (w1 + w2) + 0.5 * std::sqrt((w1 - w2) * (w1 - w2) + 4.0 * cross);
    return rhs - spectral_radius(a1 * b1 + a2 * b2);
}

}  // namespace numrad
