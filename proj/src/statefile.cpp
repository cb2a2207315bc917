#include "pptbounds/statefile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pptbounds/errors.hpp"
#include "pptbounds/format.hpp"

namespace pptbounds {

std::string serialize_state(const BipartiteOperator &op) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"format_version\": 1,\n";
    os << "  \"dim_a\": " << op.dim_a << ",\n";
    os << "  \"dim_b\": " << op.dim_b << ",\n";
    os << "  \"matrix\": [\n";
    const std::size_t n = op.dim();
    for (std::size_t i = 0; i < n; ++i) {
        os << "    [";
        for (std::size_t j = 0; j < n; ++j) {
            const cdouble v = op.matrix(i, j);
            os << "{\"re\": " << fmt_exact(v.real())
               << ", \"im\": " << fmt_exact(v.imag()) << "}";
            if (j + 1 < n)
                os << ", ";
        }
        os << "]" << (i + 1 < n ? "," : "") << "\n";
    }
    os << "  ]\n";
    os << "}\n";
    return os.str();
}

StateFile parse_state(const std::string &json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("state file: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("state file: top level must be an object");
    for (const char *key : {"format_version", "dim_a", "dim_b", "matrix"})
        if (!j.contains(key))
            throw ParseError(std::string("state file: missing field '") + key + "'");

    StateFile f;
    try {
        f.format_version = j["format_version"].get<int>();
        f.dim_a = j["dim_a"].get<std::size_t>();
        f.dim_b = j["dim_b"].get<std::size_t>();
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("state file: bad header field: ") + e.what());
    }
    if (f.format_version != 1)
        throw ParseError("state file: unsupported format_version");
    if (f.dim_a == 0 || f.dim_b == 0)
        throw ValidationError("dims", "state file: dimensions must be positive");

    const auto &rows = j["matrix"];
    const std::size_t n = f.dim_a * f.dim_b;
    if (!rows.is_array() || rows.size() != n)
        throw ValidationError("square",
                              "state file: matrix must have dim_a*dim_b rows");
    f.matrix = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto &row = rows[i];
        if (!row.is_array() || row.size() != n)
            throw ValidationError("square",
                                  "state file: matrix row " + std::to_string(i) +
                                      " must have dim_a*dim_b entries");
        for (std::size_t k = 0; k < n; ++k) {
            const auto &cell = row[k];
            if (!cell.is_object() || !cell.contains("re") || !cell.contains("im"))
                throw ParseError("state file: entries must be {re, im} objects");
            double re, im;
            try {
                re = cell["re"].get<double>();
                im = cell["im"].get<double>();
            } catch (const nlohmann::json::exception &e) {
                throw ParseError(std::string("state file: bad entry: ") + e.what());
            }
            f.matrix(i, k) = cdouble(re, im);
        }
    }
    if (!f.matrix.all_finite())
        throw ValidationError("finite", "state file: non-finite entries");
    return f;
}

void write_state(const std::string &path, const BipartiteOperator &op) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw ParseError("state file: cannot open '" + path + "' for writing");
    os << serialize_state(op);
    if (!os)
        throw ParseError("state file: write to '" + path + "' failed");
}

StateFile read_state(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw ParseError("state file: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_state(buf.str());
}

DensityMatrix to_density(const StateFile &f) {
    StateTolerances tol;
    tol.hermiticity = 1e-8;
    tol.psd = 1e-8;
    tol.trace = 1e-8;
    return DensityMatrix({f.dim_a, f.dim_b, f.matrix}, tol);
}

} // namespace pptbounds
