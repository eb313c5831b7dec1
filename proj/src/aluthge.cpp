#include "numrad/aluthge.hpp"

#include <cmath>
#include <stdexcept>

namespace numrad {

namespace {

void require_t(double t, const char* where) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument(std::string(where) + ": t must lie in [0, 1]");
    }
}

}  // namespace

ComplexMatrix aluthge_t(const PolarParts& parts, double t) {
    require_t(t, "aluthge_t");
    return frac_power(parts, t) * parts.U * frac_power(parts, 1.0 - t);
}

ComplexMatrix aluthge_t(const ComplexMatrix& m, double t) {
    require_t(t, "aluthge_t");
    return aluthge_t(polar_decompose(m), t);
}

AluthgeChain aluthge_iterate(const ComplexMatrix& m, double t, int n) {
    require_t(t, "aluthge_iterate");
    if (n < 0) throw std::invalid_argument("aluthge_iterate: n must be nonnegative");
    require_operator(m, "aluthge_iterate");
    AluthgeChain chain;
    chain.t = t;
    chain.terms.reserve(static_cast<std::size_t>(n) + 1);
    chain.terms.push_back(m);
    for (int k = 0; k < n; ++k) chain.terms.push_back(aluthge_t(chain.terms.back(), t));
    return chain;
}

double nilpotent_norm_residual(const ComplexMatrix& m, double t) {
    require_t(t, "nilpotent_norm_residual");
    require_operator(m, "nilpotent_norm_residual");
    const double norm = spectral_norm(m);
    if (norm == 0.0) return 0.0;
    const double sq = spectral_norm(m * m);
    const double claim = (t <= 0.5) ? std::pow(sq, t) * std::pow(norm, 1.0 - 2.0 * t)
                                    : std::pow(sq, 1.0 - t) * std::pow(norm, 2.0 * t - 1.0);
    return claim - spectral_norm(aluthge_t(m, t));
}

}  // namespace numrad
