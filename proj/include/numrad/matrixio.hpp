#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace numrad {

using Complex = std::complex<double>;

/// Square complex matrix; the operator under study. Row/column indexing is
/// zero-based everywhere in the API.
using ComplexMatrix = Eigen::MatrixXcd;

/// Thrown for malformed matrix files. `row`/`col` are -1 when the problem is
/// not tied to a single entry.
class MatrixFormatError : public std::runtime_error {
public:
    MatrixFormatError(const std::string& what, int row = -1, int col = -1);
    int row() const noexcept { return row_; }
    int col() const noexcept { return col_; }

private:
    int row_;
    int col_;
};

/// Throws std::invalid_argument unless `m` is non-empty, square and finite.
void require_operator(const ComplexMatrix& m, std::string_view where);

ComplexMatrix parse_matrix(std::string_view text);
std::string serialize_matrix(const ComplexMatrix& m);

ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

enum class EnsembleKind { Ginibre, Nilpotent2, StrictUpper, Normal, PaperFixture };

EnsembleKind parse_ensemble_kind(std::string_view tag);
std::string_view ensemble_kind_tag(EnsembleKind kind);

struct EnsembleConfig {
    EnsembleKind kind = EnsembleKind::Ginibre;
    int dim = 2;
    int count = 1;
    std::uint64_t seed = 0;
};

/// Seed of the generator used for matrix `index` of an ensemble. Each matrix
/// owns an independent mt19937_64 stream seeded with
/// splitmix64(seed + golden_gamma * (index + 1)), so draws depend only on
/// (seed, index) and can be produced in any order.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

std::vector<ComplexMatrix> make_ensemble(const EnsembleConfig& cfg);

/// Single draw `index` of the ensemble described by cfg (cfg.count ignored).
ComplexMatrix draw_ensemble_member(const EnsembleConfig& cfg, std::uint64_t index);

using NamedMatrix = std::pair<std::string, ComplexMatrix>;

/// The five worked-example matrices A..E, in that order.
std::vector<NamedMatrix> paper_fixtures();
ComplexMatrix paper_fixture(std::string_view name);

}  // namespace numrad
