#include "qsuper/lattice.hpp"

#include "qsuper/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qsuper {

std::string to_string(Statistics s) {
    return s == Statistics::fermion ? "fermion" : "boson";
}

std::string to_string(Ordering o) {
    return o == Ordering::sea ? "sea" : "empty";
}

Ordering parse_ordering(const std::string& text) {
    if (text == "sea") return Ordering::sea;
    if (text == "empty") return Ordering::empty;
    throw ConfigError("unknown ordering '" + text + "' (expected sea or empty)");
}

std::string Site::str() const {
    std::ostringstream os;
    os << twice << "/2";
    return os.str();
}

std::string ModeId::str() const {
    std::ostringstream os;
    os << (kind == Statistics::fermion ? "c" : "d") << flavor << "(" << site.str();
    if (line != 1) os << ",line " << line;
    os << ")";
    return os.str();
}

Ordering LatticeConfig::ordering_of(int line) const {
    if (line_orderings.empty()) return ordering;
    return line_orderings.at(static_cast<std::size_t>(line - 1));
}

int LatticeConfig::sea_line_count() const {
    int count = 0;
    for (int l = 1; l <= lines; ++l) count += ordering_of(l) == Ordering::sea;
    return count;
}

std::vector<Site> LatticeConfig::site_list() const {
    std::vector<Site> out;
    out.reserve(static_cast<std::size_t>(sites));
    for (int i = 0; i < sites; ++i) out.push_back(Site{1 - sites + 2 * i});
    return out;
}

std::size_t LatticeConfig::fermion_mode_count() const {
    return static_cast<std::size_t>(M) * sites * lines;
}

std::size_t LatticeConfig::boson_mode_count() const {
    return static_cast<std::size_t>(N) * sites * lines;
}

std::size_t LatticeConfig::dimension() const {
    const double est = std::pow(2.0, static_cast<double>(fermion_mode_count())) *
                       std::pow(static_cast<double>(n_max + 1), static_cast<double>(boson_mode_count()));
    if (est > static_cast<double>(dimension_cap)) {
        std::ostringstream os;
        os << "instance too large: dimension " << est << " exceeds cap " << dimension_cap;
        throw InstanceTooLarge(os.str());
    }
    std::size_t dim = std::size_t{1} << fermion_mode_count();
    for (std::size_t b = 0; b < boson_mode_count(); ++b) dim *= static_cast<std::size_t>(n_max + 1);
    return dim;
}

void LatticeConfig::validate() const {
    if (M < 1 || N < 1) throw ConfigError("M and N must be >= 1");
    if (M + N - 1 < 2) throw ConfigError("R = M+N-1 must be >= 2 (the case M = N = 1 is excluded)");
    if (sites < 2 || sites % 2 != 0) throw ConfigError("sites per line must be even and >= 2");
    if (lines < 1) throw ConfigError("lines must be >= 1");
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("tol must be positive");
    if (!line_orderings.empty() && static_cast<int>(line_orderings.size()) != lines)
        throw ConfigError("line_orderings must list one ordering per line");
    for (int n = 1; n <= n_max; ++n) {
        const Complex qn = q.qnumber(n);
        if (std::abs(qn.imag()) > 1e-12 || qn.real() <= 1e-12) {
            std::ostringstream os;
            os << "[" << n << "]_q = " << qn.real() << " is not positive for " << q.describe()
               << "; lower n_max or nu";
            throw ConfigError(os.str());
        }
    }
}

LatticeConfig LatticeConfig::with_q(const Deformation& d) const {
    LatticeConfig out = *this;
    out.q = d;
    return out;
}

} // namespace qsuper
