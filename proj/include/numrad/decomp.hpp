#pragma once

#include <optional>
#include <vector>

#include "numrad/matrixio.hpp"

namespace numrad {

/// Thin SVD data, M = W * diag(sv) * V^*, singular values nonincreasing.
struct Svd {
    ComplexMatrix W;
    std::vector<double> sv;
    ComplexMatrix V;
};

/// One-sided (Hestenes) Jacobi SVD. Chosen over bidiagonalisation because it
/// leaves structurally zero columns exactly zero, so kernels of exactly
/// rank-deficient inputs come out with singular value 0.0, not O(eps).
Svd jacobi_svd(const ComplexMatrix& m);

/// Polar decomposition T = U|T| with ker U = ker T.
///
/// `U` is the partial isometry W * Pi_r * V^*, `P` is |T| = V Sigma V^*.
/// Singular values at or below `rank_tol` span the numerical kernel; they are
/// dropped from U and treated as exact zeros by frac_power().
struct PolarParts {
    ComplexMatrix U;
    ComplexMatrix P;
    int rank = 0;
    double rank_tol = 0.0;
    std::vector<double> sv;
    ComplexMatrix V;
};

struct HermitianSpectrum {
    std::vector<double> eigenvalues;  // nonincreasing
    ComplexMatrix frame;              // column k belongs to eigenvalues[k]
};

ComplexMatrix adjoint(const ComplexMatrix& m);
double spectral_norm(const ComplexMatrix& m);
double spectral_radius(const ComplexMatrix& m);

/// Default cutoff is dim * eps * sigma_max.
PolarParts polar_decompose(const ComplexMatrix& m, std::optional<double> rank_tol = std::nullopt);

/// |T|^t for t in [0, 1]. t = 0 yields U^*U (the projector onto the
/// numerical co-kernel), not the identity.
ComplexMatrix frac_power(const PolarParts& parts, double t);

/// T^*T + TT^*, symmetrised.
ComplexMatrix anticommutator_self(const ComplexMatrix& m);

/// Requires ||M - M^*|| <= 1e-10 max(1, ||M||).
HermitianSpectrum hermitian_spectrum(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double rel_tol);
bool is_psd(const ComplexMatrix& m, double rel_tol);

/// Functional-calculus power A^r of a PSD matrix, with A^0 = I. Eigenvalues
/// that dip below zero through rounding are clamped.
ComplexMatrix psd_power(const ComplexMatrix& a, double r);

}  // namespace numrad
