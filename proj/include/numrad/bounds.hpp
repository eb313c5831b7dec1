#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "numrad/aluthge.hpp"
#include "numrad/radius.hpp"

namespace numrad {

enum class BoundSide { Upper, Lower };

/// One numerical-radius bound evaluated for one operator. `value` is on the
/// w scale, `raw_value` on the scale the inequality is stated in (w, w^2 or
/// w^4), so value == raw_value^(1/scale).
struct BoundRecord {
    std::string name;
    BoundSide side = BoundSide::Upper;
    double value = 0.0;
    double raw_value = 0.0;
    std::optional<double> t_star;
    int scale = 1;
};

/// Sample points for the minimum over t in [0, 1]. Always sorted, always
/// contains 0, 1/2 and 1.
struct TGrid {
    std::vector<double> points;
};

TGrid make_tgrid(int n = 201);
TGrid make_tgrid(std::vector<double> points);

struct BoundOptions {
    double radius_width = 1e-9;  // width of every inner numerical-radius enclosure
    int radius_grid = 16;        // initial theta grid of the inner radius solvers
    bool golden_refine = true;   // golden-section pass around the grid argmin
    int golden_iterations = 24;
};

/// Per-operator cache of everything the t-parameterised bounds share: the
/// transforms T_t on the grid, their norms, and lazily refined radius solvers
/// for w(T_t) and w(T_t^2). Minima over t are found best-first, refining an
/// enclosure only while its lower end could still beat the incumbent.
class AluthgeFamily {
public:
    AluthgeFamily(const ComplexMatrix& m, TGrid grid, BoundOptions opts = {});
    ~AluthgeFamily();
    AluthgeFamily(AluthgeFamily&&) noexcept;
    AluthgeFamily& operator=(AluthgeFamily&&) noexcept;

    const ComplexMatrix& op() const { return op_; }
    const TGrid& grid() const { return grid_; }
    const BoundOptions& options() const { return opts_; }
    double norm() const { return norm_; }
    double square_norm() const { return square_norm_; }
    const ComplexMatrix& anticommutator() const { return anticomm_; }
    double anticommutator_norm() const { return anticomm_norm_; }
    bool is_zero() const { return norm_ == 0.0; }

    struct Minimum {
        double value = 0.0;
        double t = 0.0;
    };

    /// min_t w(T_t), the hi ends of the enclosures.
    Minimum min_transform_radius();
    /// min_t { w(T_t)/2 + (||T||^{2t} + ||T||^{2-2t})/4 }.
    Minimum min_t_mean();
    /// min_t { w(T_t^2) + ||T|| ||T_t|| }.
    Minimum min_square_term();
    /// min_t ||T_t||.
    Minimum min_transform_norm();

    struct Point;

private:
    enum class Objective { TransformRadius, TMean, SquareTerm, TransformNorm };
    Minimum minimise(Objective obj);
    Point& point_at(double t);

    ComplexMatrix op_;
    TGrid grid_;
    BoundOptions opts_;
    PolarParts parts_;
    double norm_ = 0.0;
    double square_norm_ = 0.0;
    ComplexMatrix anticomm_;
    double anticomm_norm_ = 0.0;
    std::vector<std::unique_ptr<Point>> points_;  // grid points first, then probes
};

BoundRecord bound_kittaneh_norm(const ComplexMatrix& m);
std::pair<BoundRecord, BoundRecord> bound_kittaneh_cartesian(const ComplexMatrix& m);
BoundRecord bound_yamazaki(const ComplexMatrix& m, const BoundOptions& opts = {});

BoundRecord bound_min_aluthge(const ComplexMatrix& m, const TGrid& g);
BoundRecord bound_min_aluthge(AluthgeFamily& family);
BoundRecord bound_t_mean(const ComplexMatrix& m, const TGrid& g);
BoundRecord bound_t_mean(AluthgeFamily& family);
BoundRecord bound_norm_product(const ComplexMatrix& m, const TGrid& g);
BoundRecord bound_norm_product(AluthgeFamily& family);
BoundRecord bound_square_product(const ComplexMatrix& m, const TGrid& g);
BoundRecord bound_square_product(AluthgeFamily& family);
BoundRecord bound_fourth_power(const ComplexMatrix& m, const TGrid& g);
BoundRecord bound_fourth_power(AluthgeFamily& family);

/// Partial sum to N of the iterated-transform series plus the tail
/// certificate ||T_{t_N}||^2 / 4^N.
BoundRecord bound_iterated_series(const ComplexMatrix& m, double t = 0.5, int terms = 12);
BoundRecord bound_iterated_closed(const ComplexMatrix& m);
std::pair<BoundRecord, BoundRecord> bound_fourth_sandwich(const ComplexMatrix& m,
                                                          const BoundOptions& opts = {});

/// ||A X B||^r ||X||^(1-r) - ||A^r X B^r|| for PSD A, B.
double heinz_residual(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b, double r);

/// Right side minus left side of the spectral-radius estimate for
/// r(A1 B1 + A2 B2).
double composite_spectral_residual(const ComplexMatrix& a1, const ComplexMatrix& b1,
                                   const ComplexMatrix& a2, const ComplexMatrix& b2);

}  // namespace numrad
