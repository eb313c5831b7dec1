#include "numrad/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace numrad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 60;

ComplexMatrix hermitian_from(const ComplexMatrix& v, const Eigen::VectorXd& d) {
    ComplexMatrix out = v * d.asDiagonal() * v.adjoint();
    return (out + out.adjoint()) * 0.5;
}

}  // namespace

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

Svd jacobi_svd(const ComplexMatrix& m) {
    require_operator(m, "jacobi_svd");
    const Eigen::Index n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::Identity(n, n);
    const double tol = static_cast<double>(n) * kEps;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double alpha = a.col(p).squaredNorm();
                const double beta = a.col(q).squaredNorm();
                if (alpha == 0.0 || beta == 0.0) continue;
                const Complex gamma = a.col(p).dot(a.col(q));
                const double g = std::abs(gamma);
                if (g <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
                rotated = true;

                // Rotate a_q by the phase of gamma, then apply the real
                // Jacobi rotation that orthogonalises the pair.
                // Renormalised: gamma can be subnormal once a column has
                // collapsed onto the kernel.
                Complex phase = std::conj(gamma / g);
                phase /= std::abs(phase);
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t =
                    std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (Eigen::Index i = 0; i < n; ++i) {
                    const Complex ap = a(i, p);
                    const Complex aq = a(i, q) * phase;
                    a(i, p) = c * ap - s * aq;
                    a(i, q) = s * ap + c * aq;
                    const Complex vp = v(i, p);
                    const Complex vq = v(i, q) * phase;
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) norms[j] = a.col(j).norm();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return norms[x] > norms[y]; });

    Svd out;
    out.W = ComplexMatrix::Zero(n, n);
    out.V = ComplexMatrix(n, n);
    out.sv.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index j = order[k];
        out.sv[k] = norms[j];
        out.V.col(k) = v.col(j);
        if (norms[j] > 0.0) out.W.col(k) = a.col(j) / norms[j];
    }
    return out;
}

double spectral_norm(const ComplexMatrix& m) { return jacobi_svd(m).sv.front(); }

double spectral_radius(const ComplexMatrix& m) {
    require_operator(m, "spectral_radius");
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectral_radius: eigensolver failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

PolarParts polar_decompose(const ComplexMatrix& m, std::optional<double> rank_tol) {
    require_operator(m, "polar_decompose");
    const Svd svd = jacobi_svd(m);
    const Eigen::Index n = m.rows();

    PolarParts parts;
    parts.rank_tol = rank_tol.value_or(static_cast<double>(n) * kEps * svd.sv.front());
    if (parts.rank_tol < 0.0) throw std::invalid_argument("polar_decompose: negative rank_tol");
    parts.sv = svd.sv;
    parts.V = svd.V;
    parts.rank = static_cast<int>(
        std::count_if(svd.sv.begin(), svd.sv.end(), [&](double s) { return s > parts.rank_tol; }));

    const auto r = parts.rank;
    parts.U = svd.W.leftCols(r) * svd.V.leftCols(r).adjoint();
    parts.P = hermitian_from(svd.V, Eigen::Map<const Eigen::VectorXd>(svd.sv.data(), n));
    return parts;
}

ComplexMatrix frac_power(const PolarParts& parts, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("frac_power: t must lie in [0, 1]");
    const Eigen::Index n = parts.V.rows();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < parts.rank; ++k) d(k) = (t == 0.0) ? 1.0 : std::pow(parts.sv[k], t);
    return hermitian_from(parts.V, d);
}

ComplexMatrix anticommutator_self(const ComplexMatrix& m) {
    require_operator(m, "anticommutator_self");
    ComplexMatrix p = m.adjoint() * m + m * m.adjoint();
    return (p + p.adjoint()) * 0.5;
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1.0, m.norm());
    return (m - m.adjoint()).norm() <= rel_tol * scale;
}

HermitianSpectrum hermitian_spectrum(const ComplexMatrix& m) {
    require_operator(m, "hermitian_spectrum");
    if (!is_hermitian(m, 1e-10)) throw std::invalid_argument("hermitian_spectrum: input is not Hermitian");
    const ComplexMatrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_spectrum: eigensolver failed");
    const Eigen::Index n = h.rows();
    HermitianSpectrum out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.frame.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues[k] = es.eigenvalues()(n - 1 - k);
        out.frame.col(k) = es.eigenvectors().col(n - 1 - k);
    }
    return out;
}

bool is_psd(const ComplexMatrix& m, double rel_tol) {
    if (!is_hermitian(m, rel_tol)) return false;
    const auto spec = hermitian_spectrum(m);
    const double scale = std::max(1.0, std::abs(spec.eigenvalues.front()));
    return spec.eigenvalues.back() >= -rel_tol * scale;
}

ComplexMatrix psd_power(const ComplexMatrix& a, double r) {
    const auto spec = hermitian_spectrum(a);
    const Eigen::Index n = a.rows();
    Eigen::VectorXd d(n);
    for (Eigen::Index k = 0; k < n; ++k) d(k) = std::pow(std::max(0.0, spec.eigenvalues[k]), r);
    return hermitian_from(spec.frame, d);
}

}  // namespace numrad
