#pragma once

#include <vector>

#include "numrad/decomp.hpp"

namespace numrad {

/// terms[0] is the input; terms[k] is the t-Aluthge transform of terms[k-1].
struct AluthgeChain {
    double t = 0.5;
    std::vector<ComplexMatrix> terms;
};

/// |T|^t U |T|^(1-t), t in [0, 1].
ComplexMatrix aluthge_t(const ComplexMatrix& m, double t);

/// Same transform from an existing polar decomposition of the operator.
ComplexMatrix aluthge_t(const PolarParts& parts, double t);

AluthgeChain aluthge_iterate(const ComplexMatrix& m, double t, int n);

/// Slack in the norm estimate ||T_t|| <= ||T^2||^t ||T||^(1-2t) (t <= 1/2),
/// ||T^2||^(1-t) ||T||^(2t-1) (t >= 1/2). Zero matrix returns 0.
double nilpotent_norm_residual(const ComplexMatrix& m, double t);

}  // namespace numrad
