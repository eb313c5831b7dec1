#include <cmath>
#include <numbers>
#include <random>

#include "numrad/matrixio.hpp"

namespace numrad {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGoldenGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Distributions are hand-rolled: std::normal_distribution and friends are
// implementation-defined, mt19937_64 itself is not.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : gen_(seed) {}

    // Uniform on (0, 1].
    double uniform() { return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; }

    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    // Standard complex Gaussian, E|z|^2 = 1, via Box-Muller.
    Complex complex_gaussian() {
        const double r = std::sqrt(-std::log(uniform()));
        const double phi = 2.0 * std::numbers::pi * uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::mt19937_64 gen_;
};

ComplexMatrix ginibre(Stream& rng, int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

// Permutation-similar to [[0, B], [0, 0]]: rows in the first block of the
// permutation, columns in the second. The square vanishes without any
// cancellation because every product term has a structural zero factor.
ComplexMatrix square_zero(Stream& rng, int n) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    if (n == 1) return m;
    const int split = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
        std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < split; ++i)
        for (int j = split; j < n; ++j) m(perm[i], perm[j]) = rng.complex_gaussian();
    return m;
}

ComplexMatrix strict_upper(Stream& rng, int n) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

ComplexMatrix normal(Stream& rng, int n) {
    const ComplexMatrix g = ginibre(rng, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Phase fix on the columns makes Q Haar distributed.
    for (int j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    Eigen::VectorXcd lambda(n);
    for (int i = 0; i < n; ++i) lambda(i) = rng.complex_gaussian();
    return q * lambda.asDiagonal() * q.adjoint();
}

}  // namespace

EnsembleKind parse_ensemble_kind(std::string_view tag) {
    if (tag == "ginibre") return EnsembleKind::Ginibre;
    if (tag == "nilpotent2") return EnsembleKind::Nilpotent2;
    if (tag == "strict-upper") return EnsembleKind::StrictUpper;
    if (tag == "normal") return EnsembleKind::Normal;
    if (tag == "paper-fixture") return EnsembleKind::PaperFixture;
    throw std::invalid_argument("unknown ensemble kind \"" + std::string(tag) + "\"");
}

std::string_view ensemble_kind_tag(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::Ginibre: return "ginibre";
        case EnsembleKind::Nilpotent2: return "nilpotent2";
        case EnsembleKind::StrictUpper: return "strict-upper";
        case EnsembleKind::Normal: return "normal";
        case EnsembleKind::PaperFixture: return "paper-fixture";
    }
    return "unknown";
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed + kGoldenGamma * (index + 1));
}

ComplexMatrix draw_ensemble_member(const EnsembleConfig& cfg, std::uint64_t index) {
    if (cfg.dim < 1) throw std::invalid_argument("ensemble dim must be >= 1");
    if (cfg.kind == EnsembleKind::PaperFixture) {
        std::vector<ComplexMatrix> matching;
        for (auto& [name, m] : paper_fixtures()) {
            if (m.rows() == cfg.dim) matching.push_back(m);
        }
        if (matching.empty()) {
            throw std::invalid_argument("no built-in fixture has dim " + std::to_string(cfg.dim));
        }
        return matching[index % matching.size()];
    }
    Stream rng(stream_seed(cfg.seed, index));
    switch (cfg.kind) {
        case EnsembleKind::Ginibre: return ginibre(rng, cfg.dim);
        case EnsembleKind::Nilpotent2: return square_zero(rng, cfg.dim);
        case EnsembleKind::StrictUpper: return strict_upper(rng, cfg.dim);
        case EnsembleKind::Normal: return normal(rng, cfg.dim);
        case EnsembleKind::PaperFixture: break;
    }
    throw std::invalid_argument("unknown ensemble kind");
}

std::vector<ComplexMatrix> make_ensemble(const EnsembleConfig& cfg) {
    if (cfg.count < 1) throw std::invalid_argument("ensemble count must be >= 1");
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(cfg.count));
    for (int i = 0; i < cfg.count; ++i) {
        out.push_back(draw_ensemble_member(cfg, static_cast<std::uint64_t>(i)));
    }
    return out;
}

}  // namespace numrad
