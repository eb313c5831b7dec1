#include "numrad/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "numrad/decomp.hpp"

namespace numrad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxActiveIntervals = 1u << 23;

// Rounding allowance for one extreme eigenvalue of a Hermitian matrix with
// norm <= scale, covering the backward error of the tridiagonal QR sweep.
double rounding_slack(Eigen::Index n, double scale) {
    return 32.0 * static_cast<double>(n) * kEps * scale;
}

void require_width(double width_target, const char* where) {
    if (!(width_target > 0.0) || !std::isfinite(width_target)) {
        throw std::invalid_argument(std::string(where) + ": width_target must be positive");
    }
}

// Max over u in [0, delta] of s_a cos u + B sin u, the support-line apex
// bound between directions a and a + delta (delta < pi).
double apex_bound(double sa, double sb, double delta) {
    const double s = std::sin(delta);
    const double c = std::cos(delta);
    const double b = (sb - sa * c) / s;
    const double u = std::atan2(b, sa);
    if (u >= 0.0 && u <= delta) return std::hypot(sa, b);
    return std::max(sa, sb);
}

// Max over theta in [a, b] of min(Re(e^{i theta} qa), Re(e^{i theta} qb)).
double chord_bound(double a, double b, Complex qa, Complex qb) {
    auto f = [](Complex q, double th) { return q.real() * std::cos(th) - q.imag() * std::sin(th); };
    auto both = [&](double th) { return std::min(f(qa, th), f(qb, th)); };
    double best = std::max(both(a), both(b));
    auto consider = [&](double th) {
        // Shift th into [a, a + 2 pi) before testing membership.
        const double k = std::floor((th - a) / (2.0 * kPi));
        th -= k * 2.0 * kPi;
        if (th >= a && th <= b) best = std::max(best, both(th));
    };
    // Stationary points of each sinusoid: Re(e^{i th} q) = |q| cos(th + arg q).
    for (Complex q : {qa, qb}) {
        if (std::abs(q) > 0.0) consider(-std::arg(q));
    }
    // Crossings: Re(e^{i th}(qa - qb)) = 0.
    const Complex d = qa - qb;
    if (std::abs(d) > 0.0) {
        const double base = kPi / 2.0 - std::arg(d);
        consider(base);
        consider(base + kPi);
    }
    return best;
}

}  // namespace

ComplexMatrix hermitian_part(const ComplexMatrix& m, double theta) {
    const Complex e = std::polar(1.0, theta);
    ComplexMatrix h = (e * m + std::conj(e) * m.adjoint()) * 0.5;
    return (h + h.adjoint()) * 0.5;
}

ComplexMatrix skew_part(const ComplexMatrix& m, double theta) {
    const Complex e = std::polar(1.0, theta);
    ComplexMatrix k = (e * m - std::conj(e) * m.adjoint()) / Complex(0.0, 2.0);
    return (k + k.adjoint()) * 0.5;
}

ThetaSweep theta_sweep(const ComplexMatrix& m, int points) {
    require_operator(m, "theta_sweep");
    if (points < 1) throw std::invalid_argument("theta_sweep: need at least one point");
    ThetaSweep sweep;
    sweep.lipschitz = spectral_norm(m);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.rows());
    for (int i = 0; i < points; ++i) {
        const double theta = kPi * i / points;
        es.compute(hermitian_part(m, theta), Eigen::EigenvaluesOnly);
        sweep.thetas.push_back(theta);
        sweep.values_max.push_back(es.eigenvalues()(m.rows() - 1));
        sweep.values_min.push_back(es.eigenvalues()(0));
    }
    return sweep;
}

RadiusSolver::RadiusSolver(const ComplexMatrix& m, int initial_grid, int max_rounds,
                           SweepFamily family)
    : eig_(m.rows()), family_(family), max_rounds_(max_rounds) {
    require_operator(m, "numerical_radius");
    if (initial_grid < 2) throw std::invalid_argument("numerical_radius: initial grid needs >= 2 points");
    re_ = (m + m.adjoint()) * 0.5;
    re_ = (re_ + re_.adjoint()) * 0.5;
    im_ = (m - m.adjoint()) / Complex(0.0, 2.0);
    im_ = (im_ + im_.adjoint()) * 0.5;
    work_.resize(m.rows(), m.cols());
    // Any upper bound on ||M|| works here.
    const double frob = m.norm();
    const double mixed = std::sqrt(m.cwiseAbs().colwise().sum().maxCoeff() * m.cwiseAbs().rowwise().sum().maxCoeff());
    lipschitz_ = std::min(frob, mixed);
    slack_ = rounding_slack(m.rows(), lipschitz_);

    if (lipschitz_ == 0.0) {
        best_ = 0.0;
        return;
    }

    std::vector<Sample> samples;
    samples.reserve(static_cast<std::size_t>(initial_grid) + 1);
    for (int i = 0; i < initial_grid; ++i) samples.push_back(sample(kPi * i / initial_grid));
    // X_{theta + pi} = -X_theta closes the half period.
    samples.push_back({kPi, samples.front().bottom, samples.front().top});

    best_ = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) best_ = std::max({best_, s.top, s.bottom});
    intervals_.reserve(samples.size());
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        intervals_.push_back({samples[i], samples[i + 1], interval_bound(samples[i], samples[i + 1])});
    }
}

RadiusSolver::Sample RadiusSolver::sample(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if (family_ == SweepFamily::Real) {
        work_ = c * re_ - s * im_;
    } else {
        work_ = s * re_ + c * im_;
    }
    eig_.compute(work_, Eigen::EigenvaluesOnly);
    ++evaluations_;
    const auto& ev = eig_.eigenvalues();
    return {theta, ev(ev.size() - 1), -ev(0)};
}

double RadiusSolver::interval_bound(const Sample& a, const Sample& b) const {
    const double delta = b.theta - a.theta;
    const double fa = std::max(a.top, a.bottom);
    const double fb = std::max(b.top, b.bottom);
    const double lipschitz = 0.5 * (fa + fb) + 0.5 * lipschitz_ * delta;
    const double apex = std::max(apex_bound(a.top, b.top, delta), apex_bound(a.bottom, b.bottom, delta));
    return std::min(lipschitz, apex);
}

double RadiusSolver::lower() const { return std::max(0.0, best_ - slack_); }

double RadiusSolver::upper() const {
    double ub = best_;
    for (const auto& iv : intervals_) ub = std::max(ub, iv.ub);
    return ub + slack_;
}

Enclosure RadiusSolver::refine(double width_target) {
    require_width(width_target, "numerical_radius");
    if (width_target < 4.0 * slack_) {
        throw std::invalid_argument("numerical_radius: width_target below floating-point resolution");
    }
    const double budget = width_target - 2.0 * slack_;
    std::vector<int> pieces;
    for (int round = 0;; ++round) {
        const double threshold = best_ + budget;
        // The apex excess over the endpoint values shrinks quadratically
        // with the interval width; split open intervals accordingly.
        pieces.assign(intervals_.size(), 1);
        std::size_t total = 0;
        bool open = false;
        for (std::size_t i = 0; i < intervals_.size(); ++i) {
            const auto& iv = intervals_[i];
            if (iv.ub > threshold) {
                open = true;
                const double ends = std::max({iv.a.top, iv.a.bottom, iv.b.top, iv.b.bottom});
                const double ratio = (iv.ub - ends) / std::max(threshold - ends, 1e-300);
                const double k = std::ceil(1.1 * std::sqrt(ratio));
                pieces[i] = static_cast<int>(std::clamp(k, 2.0, 8.0));
            }
            total += static_cast<std::size_t>(pieces[i]);
        }
        if (!open) break;
        if (round >= max_rounds_) {
            throw std::runtime_error("numerical_radius: refinement did not converge");
        }
        if (total > kMaxActiveIntervals) {
            throw std::runtime_error("numerical_radius: refinement budget exhausted");
        }

        std::vector<Interval> next;
        next.reserve(total);
        for (std::size_t i = 0; i < intervals_.size(); ++i) {
            const auto& iv = intervals_[i];
            if (pieces[i] == 1) {
                next.push_back(iv);
                continue;
            }
            const double step = (iv.b.theta - iv.a.theta) / pieces[i];
            Sample left = iv.a;
            for (int j = 1; j < pieces[i]; ++j) {
                const Sample mid = sample(iv.a.theta + j * step);
                best_ = std::max({best_, mid.top, mid.bottom});
                next.push_back({left, mid, interval_bound(left, mid)});
                left = mid;
            }
            next.push_back({left, iv.b, interval_bound(left, iv.b)});
        }
        intervals_.swap(next);
    }
    return {lower(), upper(), width_target};
}

Enclosure numerical_radius(const ComplexMatrix& m, double width_target, const RadiusOptions& opts) {
    require_width(width_target, "numerical_radius");
    RadiusSolver solver(m, opts.initial_grid, opts.max_rounds, opts.family);
    return solver.refine(width_target);
}

Enclosure crawford_number(const ComplexMatrix& m, double width_target, const RadiusOptions& opts) {
    require_operator(m, "crawford_number");
    require_width(width_target, "crawford_number");
    if (opts.initial_grid < 2) throw std::invalid_argument("crawford_number: initial grid needs >= 2 points");
    const Eigen::Index n = m.rows();

    if (is_hermitian(m, 1e-13)) {
        const auto spec = hermitian_spectrum(m);
        const double top = spec.eigenvalues.front();
        const double bottom = spec.eigenvalues.back();
        const double value = (bottom <= 0.0 && top >= 0.0) ? 0.0 : std::min(std::abs(top), std::abs(bottom));
        const double slack = std::min(0.25 * width_target,
                                      rounding_slack(n, std::max(std::abs(top), std::abs(bottom))));
        return {std::max(0.0, value - slack), value + slack, width_target};
    }

    const double lipschitz = spectral_norm(m);
    const double slack = rounding_slack(n, lipschitz);
    if (width_target < 4.0 * slack) {
        throw std::invalid_argument("crawford_number: width_target below floating-point resolution");
    }

    struct Sample {
        double theta;
        double g;   // lambda_min(H_theta)
        Complex q;  // <M x, x> for the bottom eigenvector x
    };
    struct Interval {
        Sample a, b;
        double ub;
    };

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(n);
    auto sample = [&](double theta) {
        es.compute(hermitian_part(m, theta), Eigen::ComputeEigenvectors);
        const Eigen::VectorXcd x = es.eigenvectors().col(0);
        return Sample{theta, es.eigenvalues()(0), x.dot(m * x)};
    };
    auto bound = [&](const Sample& a, const Sample& b) {
        const double lip = 0.5 * (a.g + b.g) + 0.5 * lipschitz * (b.theta - a.theta);
        return std::min(lip, chord_bound(a.theta, b.theta, a.q, b.q));
    };

    const int grid = opts.initial_grid;
    std::vector<Sample> samples;
    for (int i = 0; i < grid; ++i) samples.push_back(sample(2.0 * kPi * i / grid));
    samples.push_back({2.0 * kPi, samples.front().g, samples.front().q});

    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) best = std::max(best, s.g);
    double retired = -std::numeric_limits<double>::infinity();
    std::vector<Interval> active;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        active.push_back({samples[i], samples[i + 1], bound(samples[i], samples[i + 1])});
    }

    const double budget = width_target - 2.0 * slack;
    for (int round = 0;; ++round) {
        const double threshold = std::max(best, 0.0) + budget;
        std::vector<Interval> keep;
        for (const auto& iv : active) {
            if (iv.ub > threshold) {
                keep.push_back(iv);
            } else {
                retired = std::max(retired, iv.ub);
            }
        }
        active.swap(keep);
        if (active.empty()) break;
        if (round >= opts.max_rounds) throw std::runtime_error("crawford_number: refinement did not converge");
        if (active.size() * 3 > kMaxActiveIntervals) {
            throw std::runtime_error("crawford_number: refinement budget exhausted");
        }
        std::vector<Interval> next;
        for (const auto& iv : active) {
            const double third = (iv.b.theta - iv.a.theta) / 3.0;
            const Sample m1 = sample(iv.a.theta + third);
            const Sample m2 = sample(iv.a.theta + 2.0 * third);
            best = std::max({best, m1.g, m2.g});
            next.push_back({iv.a, m1, bound(iv.a, m1)});
            next.push_back({m1, m2, bound(m1, m2)});
            next.push_back({m2, iv.b, bound(m2, iv.b)});
        }
        active.swap(next);
    }
    const double lo = std::max(0.0, best - slack);
    const double hi = std::max(lo, std::max({retired, best, 0.0}) + slack);
    return {lo, hi, width_target};
}

std::vector<BoundaryPoint> range_boundary(const ComplexMatrix& m, int k) {
    require_operator(m, "range_boundary");
    if (k < 3) throw std::invalid_argument("range_boundary: need k >= 3 points");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.rows());
    std::vector<BoundaryPoint> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const double theta = 2.0 * kPi * j / k;
        es.compute(hermitian_part(m, theta), Eigen::ComputeEigenvectors);
        const Eigen::VectorXcd x = es.eigenvectors().col(m.rows() - 1);
        out.push_back({theta, x.dot(m * x)});
    }
    return out;
}

}  // namespace numrad
