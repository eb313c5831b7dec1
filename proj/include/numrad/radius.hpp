#pragma once

#include <vector>

#include "numrad/matrixio.hpp"

namespace numrad {

/// Certified interval [lo, hi] for a scalar.
struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;
    double width_target = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
};

/// Extreme eigenvalues of H_theta on a uniform grid of [0, pi).
struct ThetaSweep {
    std::vector<double> thetas;
    std::vector<double> values_max;
    std::vector<double> values_min;
    double lipschitz = 0.0;
};

/// Re(e^{i theta} M) = (e^{i theta} M + e^{-i theta} M^*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m, double theta);
/// Im(e^{i theta} M) = (e^{i theta} M - e^{-i theta} M^*) / 2i.
ComplexMatrix skew_part(const ComplexMatrix& m, double theta);

ThetaSweep theta_sweep(const ComplexMatrix& m, int points);

/// Which one-parameter Hermitian family the radius sweep maximises the norm
/// of. Both have supremum w(M).
enum class SweepFamily { Real, Imaginary };

struct RadiusOptions {
    int initial_grid = 1024;
    int max_rounds = 60;
    SweepFamily family = SweepFamily::Real;
};

/// Incremental branch-and-bound for w(M) = sup_theta ||H_theta|| over [0, pi).
///
/// Every subinterval carries a rigorous upper bound on the norm inside it:
/// the smaller of the Lipschitz bound (L = ||M||) and the support-line bound,
/// i.e. the value at the apex of the two supporting lines of W(M) measured at
/// the interval ends. Intervals whose bound exceeds lo + width are split
/// into 2 to 8 pieces, sized from how far the bound overshoots; the rest
/// are kept as they are, so refine() can be called again
/// with a tighter target. lower() never decreases, upper() never increases.
class RadiusSolver {
public:
    RadiusSolver(const ComplexMatrix& m, int initial_grid = 1024, int max_rounds = 60,
                 SweepFamily family = SweepFamily::Real);

    Enclosure refine(double width_target);

    double lower() const;
    double upper() const;
    /// Upper bound on ||M|| used as the Lipschitz constant.
    double lipschitz() const { return lipschitz_; }
    long evaluations() const { return evaluations_; }
    /// Smallest width_target refine() accepts.
    double resolution() const { return 4.0 * slack_; }

private:
    struct Sample {
        double theta;
        double top;     // lambda_max(X_theta)
        double bottom;  // -lambda_min(X_theta)
    };
    struct Interval {
        Sample a, b;
        double ub;
    };

    Sample sample(double theta);
    double interval_bound(const Sample& a, const Sample& b) const;

    ComplexMatrix re_;
    ComplexMatrix im_;
    ComplexMatrix work_;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_;
    SweepFamily family_;
    int max_rounds_;
    double lipschitz_ = 0.0;
    double slack_ = 0.0;
    double best_ = 0.0;
    long evaluations_ = 0;
    std::vector<Interval> intervals_;  // partition of [0, pi)
};

/// Enclosure of w(M) with hi - lo <= width_target.
Enclosure numerical_radius(const ComplexMatrix& m, double width_target = 1e-8,
                           const RadiusOptions& opts = {});

/// Enclosure of m(M) = dist(0, W(M)) = max(0, sup_theta lambda_min(H_theta)),
/// theta over [0, 2 pi). Upper bounds per interval use the chord between the
/// boundary points <M x, x> found at the interval ends.
Enclosure crawford_number(const ComplexMatrix& m, double width_target = 1e-8,
                          const RadiusOptions& opts = {});

struct BoundaryPoint {
    double theta = 0.0;
    Complex z;
};

/// k >= 3 points <M x_theta, x_theta>, x_theta a top eigenvector of H_theta,
/// theta uniform on [0, 2 pi).
std::vector<BoundaryPoint> range_boundary(const ComplexMatrix& m, int k);

}  // namespace numrad
