#pragma once

#include "qsuper/lattice.hpp"
#include "qsuper/sparse_operator.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qsuper {

/// Occupation-number basis of the truncated lattice.
///
/// Modes are laid out in one global order: fermions first, then bosons,
/// each block lexicographic in (line, site ascending, flavor ascending).
/// That order fixes the Jordan-Wigner sign strings. A state index encodes
/// fermion slot j as bit j and boson slot j as a base-(n_max+1) digit above
/// the fermion bits, so index <-> occupation vector is a bijection.
class FockBasis {
public:
    explicit FockBasis(const LatticeConfig& cfg);

    const LatticeConfig& config() const { return cfg_; }
    std::size_t dimension() const { return dim_; }
    std::size_t fermion_modes() const { return fermion_count_; }
    std::size_t boson_modes() const { return modes_.size() - fermion_count_; }
    std::size_t mode_count() const { return modes_.size(); }

    /// Global slot of a mode; throws OperatorError for a mode off the lattice.
    std::size_t slot(const ModeId& mode) const;
    const ModeId& mode(std::size_t slot) const { return modes_[slot]; }
    std::span<const ModeId> modes() const { return modes_; }

    int occupation(std::size_t state, std::size_t slot) const {
        return occupations_[state * modes_.size() + slot];
    }
    std::span<const std::uint8_t> occupations(std::size_t state) const {
        return {occupations_.data() + state * modes_.size(), modes_.size()};
    }
    /// Index offset of one quantum in `slot`.
    std::size_t stride(std::size_t slot) const { return strides_[slot]; }

    /// Parity (0/1) of the fermions occupying slots strictly before `fermion_slot`.
    int parity_before(std::size_t state, std::size_t fermion_slot) const;

    /// Inverse of occupations(): state index for an occupation vector.
    std::size_t index_of(std::span<const int> occupation) const;

private:
    LatticeConfig cfg_;
    std::size_t dim_ = 0;
    std::size_t fermion_count_ = 0;
    std::vector<ModeId> modes_;
    std::vector<std::size_t> strides_;
    std::vector<std::uint8_t> occupations_;
};

/// Validates the configuration and enumerates its basis.
FockBasis build_basis(const LatticeConfig& cfg);

SparseOperator fermion_annihilate(const FockBasis& basis, const ModeId& mode);
SparseOperator fermion_create(const FockBasis& basis, const ModeId& mode);
SparseOperator boson_annihilate(const FockBasis& basis, const ModeId& mode);
SparseOperator boson_create(const FockBasis& basis, const ModeId& mode);

/// Diagonal 0/1 projector onto the bulk: states whose `margin` outermost
/// sites on every line carry the vacuum occupation of that line's ordering
/// and whose bosonic occupations all stay <= n_max - headroom.
/// Throws ConfigError when nothing survives ("empty bulk").
SparseOperator bulk_projector(const FockBasis& basis, int margin, int headroom);

/// True when `site` is among the `margin` outermost sites of a line.
bool is_boundary_site(const LatticeConfig& cfg, Site site, int margin);

/// Vacuum occupation of a mode at the boundary for its line's ordering.
int vacuum_occupation(const LatticeConfig& cfg, const ModeId& mode);

/// Modes of one statistics kind in global order.
std::vector<ModeId> modes_of(const FockBasis& basis, Statistics kind);

/// Occupation of `slot` in every basis state.
std::vector<double> occupation_values(const FockBasis& basis, std::size_t slot);

/// Position along the chain that orders the whole lattice: line-major, then site.
int chain_position(const LatticeConfig& cfg, int line, Site site);

} // namespace qsuper
