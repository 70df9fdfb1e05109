#pragma once

#include "qsuper/fock.hpp"
#include "qsuper/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qsuper {

enum class AnyonFamily { a, a_tilde, A, A_tilde };
std::string to_string(AnyonFamily f);

/// K (plain) vs K~ (tilde); for bosons K' vs K~'.
enum class DisorderVariant { plain, tilde };

/// Half-open range of chain positions [begin, end) the disorder sum runs over.
/// Used to build the disorder of one half of a bipartitioned lattice.
struct SiteWindow {
    int begin = 0;
    int end = 0;
    bool contains(int position) const { return position >= begin && position < end; }
};

struct DisorderSpec {
    ModeId target;
    DisorderVariant variant = DisorderVariant::plain;
    std::optional<SiteWindow> window;
};

/// X(x) = sum_y w(y, x) :n(y): over same kind and flavor, as the diagonal of
/// every basis state. Same line: w = sign(t - r). Other lines: w = -1 below,
/// +1 above. Cross-line terms use bare n when cross_line_normal_ordered is off.
std::vector<double> disorder_exponent(const FockBasis& basis, const ModeId& target,
                                      const std::optional<SiteWindow>& window = std::nullopt);

/// Fermions: K = q^{-X/2}, K~ = q^{X/2}. Bosons: K' = q^{X/2}, K~' = q^{-X/2}.
SparseOperator disorder_factor(const FockBasis& basis, const DisorderSpec& spec);

/// a = K c, a~ = K~ c, A = K' b, A~ = K~' b. The dagger is the q-conjugate
/// c+ K^{-1} (resp. b+ K'^{-1}), which is the adjoint when |q| = 1.
SparseOperator anyon(const FockBasis& basis, const ModeId& mode, AnyonFamily family, bool dagger,
                     const std::optional<SiteWindow>& window = std::nullopt);

std::vector<RelationReport> suite_braiding(const LatticeConfig& cfg);

} // namespace qsuper
