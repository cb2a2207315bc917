#ifndef PPTBOUNDS_FORMAT_HPP
#define PPTBOUNDS_FORMAT_HPP

#include <string>

namespace pptbounds {

// 9 significant digits (%.9g): the fixed formatting of every computed
// number in CSV/JSON outputs, so goldens are byte-stable.
std::string fmt_g9(double v);

// Shortest round-trip representation (state files must read back
// bit-exactly).
std::string fmt_exact(double v);

// Fixed 6 decimals for the human-readable tables.
std::string fmt_f6(double v);

} // namespace pptbounds

#endif
