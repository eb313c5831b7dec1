#include "numrad/matrixio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace numrad {

namespace {

std::string located(const std::string& what, int row, int col) {
    if (row < 0) return what;
    std::ostringstream os;
    os << what << " (row " << row << ", col " << col << ")";
    return os.str();
}

}  // namespace

MatrixFormatError::MatrixFormatError(const std::string& what, int row, int col)
    : std::runtime_error(located(what, row, col)), row_(row), col_(col) {}

void require_operator(const ComplexMatrix& m, std::string_view where) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(where) + ": matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(where) + ": matrix has non-finite entries");
    }
}

namespace {

// DOM builder that remembers which "data" entry it is inside, so a number
// the lexer rejects as overflowing can be reported at its location.
class LocatingParser {
public:
    using json = nlohmann::json;

    explicit LocatingParser(json& doc) : dom_(doc) {}

    bool null() { return dom_.null(); }
    bool boolean(bool v) { return dom_.boolean(v); }
    bool number_integer(json::number_integer_t v) {
        note_dim(static_cast<double>(v));
        return dom_.number_integer(v);
    }
    bool number_unsigned(json::number_unsigned_t v) {
        note_dim(static_cast<double>(v));
        return dom_.number_unsigned(v);
    }
    bool number_float(json::number_float_t v, const json::string_t& s) { return dom_.number_float(v, s); }
    bool string(json::string_t& v) { return dom_.string(v); }
    bool binary(json::binary_t& v) { return dom_.binary(v); }
    bool start_object(std::size_t n) {
        ++depth_;
        return dom_.start_object(n);
    }
    bool key(json::string_t& k) {
        if (depth_ == 1) key_ = k;
        return dom_.key(k);
    }
    bool end_object() {
        --depth_;
        return dom_.end_object();
    }
    bool start_array(std::size_t n) {
        ++depth_;
        if (depth_ == 3 && key_ == "data") ++entry_;
        return dom_.start_array(n);
    }
    bool end_array() {
        --depth_;
        return dom_.end_array();
    }
    bool parse_error(std::size_t pos, const std::string& token, const nlohmann::detail::exception& e) {
        if (e.id == 406 && key_ == "data" && depth_ >= 2) {
            const long idx = std::max(entry_, 0L);
            if (dim_ > 0) throw MatrixFormatError("non-finite entry", static_cast<int>(idx / dim_), static_cast<int>(idx % dim_));
            throw MatrixFormatError("non-finite entry at data index " + std::to_string(idx));
        }
        return dom_.parse_error(pos, token, e);
    }

private:
    void note_dim(double v) {
        if (depth_ == 1 && key_ == "dim" && v >= 1.0 && v < 1e9) dim_ = static_cast<long>(v);
    }

    nlohmann::detail::json_sax_dom_parser<json> dom_;
    int depth_ = 0;
    std::string key_;
    long entry_ = -1;
    long dim_ = 0;
};

}  // namespace

ComplexMatrix parse_matrix(std::string_view text) {
    nlohmann::json doc;
    try {
        LocatingParser handler(doc);
        nlohmann::json::sax_parse(text.begin(), text.end(), &handler);
    } catch (const nlohmann::json::exception& e) {
        throw MatrixFormatError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw MatrixFormatError("top level must be an object");
    for (const auto& item : doc.items()) {
        if (item.key() != "dim" && item.key() != "data") {
            throw MatrixFormatError("unexpected key \"" + item.key() + "\"");
        }
    }
    if (!doc.contains("dim") || !doc.contains("data")) {
        throw MatrixFormatError("object needs both \"dim\" and \"data\"");
    }
    const auto& jdim = doc["dim"];
    if (!jdim.is_number_integer() || jdim.get<long long>() < 1) {
        throw MatrixFormatError("\"dim\" must be a positive integer");
    }
    const long long n = jdim.get<long long>();
    const auto& data = doc["data"];
    if (!data.is_array()) throw MatrixFormatError("\"data\" must be an array");
    if (static_cast<long long>(data.size()) != n * n) {
        std::ostringstream os;
        os << "non-square data: expected " << n * n << " entries for dim " << n << ", found "
           << data.size();
        throw MatrixFormatError(os.str());
    }

    ComplexMatrix m(n, n);
    for (long long k = 0; k < n * n; ++k) {
        const int row = static_cast<int>(k / n);
        const int col = static_cast<int>(k % n);
        const auto& entry = data[static_cast<std::size_t>(k)];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number()) {
            throw MatrixFormatError("entry must be a [re, im] pair of numbers", row, col);
        }
        const double re = entry[0].get<double>();
        const double im = entry[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw MatrixFormatError("non-finite entry", row, col);
        }
        m(row, col) = Complex(re, im);
    }
    return m;
}

std::string serialize_matrix(const ComplexMatrix& m) {
    require_operator(m, "serialize_matrix");
    nlohmann::ordered_json doc;
    doc["dim"] = m.rows();
    auto data = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            data.push_back({m(i, j).real(), m(i, j).imag()});
        }
    }
    doc["data"] = std::move(data);
    return doc.dump();
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open matrix file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_matrix(buf.str());
    } catch (const MatrixFormatError& e) {
        throw MatrixFormatError(path + ": " + e.what());
    }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write matrix file " + path);
    out << serialize_matrix(m) << '\n';
}

std::vector<NamedMatrix> paper_fixtures() {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 1) = 2.0;
    a(2, 2) = 1.0;

    ComplexMatrix b = ComplexMatrix::Zero(3, 3);
    b(0, 1) = 2.0;
    b(1, 2) = 3.0;

    ComplexMatrix c(2, 2);
    c << 1.0, 1.0, 0.0, -1.0;

    ComplexMatrix d(2, 2);
    d << 1.0, 2.0, 0.0, -1.0;

    ComplexMatrix e = ComplexMatrix::Zero(2, 2);
    e(0, 1) = 1.0;

    return {{"A", a}, {"B", b}, {"C", c}, {"D", d}, {"E", e}};
}

ComplexMatrix paper_fixture(std::string_view name) {
    for (auto& [tag, m] : paper_fixtures()) {
        if (tag == name) return m;
    }
    throw std::invalid_argument("unknown fixture " + std::string(name));
}

}  // namespace numrad
