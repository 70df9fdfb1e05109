#pragma once

#include "qsuper/deformation.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace qsuper {

enum class Statistics { fermion, boson };

/// Normal-ordering prescription. `sea` subtracts the filled Dirac sea at
/// negative sites (central charge 1 per line), `empty` is the naive
/// prescription (central charge 0).
enum class Ordering { sea, empty };

std::string to_string(Statistics s);
std::string to_string(Ordering o);
Ordering parse_ordering(const std::string& text);

/// Half-integer lattice coordinate r, stored as 2r (always odd).
struct Site {
    int twice = 1;

    constexpr double value() const { return 0.5 * twice; }
    constexpr bool negative() const { return twice < 0; }
    constexpr Site shifted(int offset) const { return Site{twice + 2 * offset}; }
    constexpr auto operator<=>(const Site&) const = default;

    std::string str() const;
};

/// sign(t - r) with sign(0) = 0.
constexpr int site_sign(Site t, Site r) {
    return (t.twice > r.twice) - (t.twice < r.twice);
}

/// One oscillator mode. Flavor is 1-based (1..M fermions, 1..N bosons) and
/// line is 1-based (1..K).
struct ModeId {
    Statistics kind = Statistics::fermion;
    int flavor = 1;
    int line = 1;
    Site site{};

    auto operator<=>(const ModeId&) const = default;
    std::string str() const;
};

inline ModeId fermion(int flavor, Site site, int line = 1) {
    return ModeId{Statistics::fermion, flavor, line, site};
}
inline ModeId boson(int flavor, Site site, int line = 1) {
    return ModeId{Statistics::boson, flavor, line, site};
}

/// Deliberate corruptions used as negative controls. A healthy run has all
/// of these off; turning any of them on must make some relation fail.
struct FaultInjection {
    bool flip_q_alpha = false;          ///< q_alpha -> q_alpha^{-1} on the bosonic nodes
    bool drop_h0_delta = false;         ///< omit the sea constant in the affine Cartan piece
    bool flip_boson_disorder = false;   ///< bosonic disorder factor with the fermionic base sign

    bool any() const { return flip_q_alpha || drop_h0_delta || flip_boson_disorder; }
};

struct LatticeConfig {
    int M = 2;          ///< fermionic flavors
    int N = 1;          ///< bosonic flavors
    int sites = 2;      ///< sites per line, even
    int lines = 1;      ///< number of lines (1 = one-dimensional)
    int n_max = 2;      ///< bosonic occupation cutoff per mode
    Ordering ordering = Ordering::sea;
    /// Per-line override; empty means every line uses `ordering`.
    std::vector<Ordering> line_orderings;
    Deformation q = Deformation::from_nu(0.3);
    double tol = 1e-10;
    std::size_t dimension_cap = 100000;
    /// Cross-line disorder contributions use :n: (true) or bare n (false).
    bool cross_line_normal_ordered = true;
    FaultInjection faults;

    int rank() const { return M + N - 1; }
    Ordering ordering_of(int line) const;
    int sea_line_count() const;

    /// Half-integer positions -(S-1)/2, ..., (S-1)/2 in ascending order.
    std::vector<Site> site_list() const;
    Site first_site() const { return Site{1 - sites}; }
    Site last_site() const { return Site{sites - 1}; }
    bool on_lattice(Site s) const { return s.twice >= 1 - sites && s.twice <= sites - 1; }
    /// 0-based position of a site on its line.
    int site_index(Site s) const { return (s.twice + sites - 1) / 2; }

    std::size_t fermion_mode_count() const;
    std::size_t boson_mode_count() const;

    /// 2^F (n_max+1)^B, or throws InstanceTooLarge when above `dimension_cap`.
    std::size_t dimension() const;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;

    /// Same lattice with a different deformation parameter.
    LatticeConfig with_q(const Deformation& d) const;
};

} // namespace qsuper
