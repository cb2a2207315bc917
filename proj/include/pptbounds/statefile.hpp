#ifndef PPTBOUNDS_STATEFILE_HPP
#define PPTBOUNDS_STATEFILE_HPP

#include <string>

#include "pptbounds/density.hpp"

namespace pptbounds {

// On-disk density matrix: JSON with format_version, dim_a, dim_b and a
// row array of {re, im} entries. Writing uses shortest round-trip float
// formatting, so write-then-read reproduces every double bit-exactly.
struct StateFile {
    int format_version = 1;
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    ComplexMatrix matrix;
};

std::string serialize_state(const BipartiteOperator &op);
StateFile parse_state(const std::string &json_text); // ParseError on bad JSON/schema

void write_state(const std::string &path, const BipartiteOperator &op);
StateFile read_state(const std::string &path);

// Validates as a state at the file-input tolerances (1e-8) and returns
// the density matrix. Throws ValidationError with the offending field
// ("square", "hermitian", "trace", "psd").
DensityMatrix to_density(const StateFile &f);

} // namespace pptbounds

#endif
