#include "qsuper/fock.hpp"

#include "qsuper/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qsuper {

FockBasis::FockBasis(const LatticeConfig& cfg) : cfg_(cfg) {
    dim_ = cfg.dimension();
    const auto sites = cfg.site_list();
    for (int line = 1; line <= cfg.lines; ++line)
        for (const Site s : sites)
            for (int f = 1; f <= cfg.M; ++f) modes_.push_back(fermion(f, s, line));
    fermion_count_ = modes_.size();
    for (int line = 1; line <= cfg.lines; ++line)
        for (const Site s : sites)
            for (int k = 1; k <= cfg.N; ++k) modes_.push_back(boson(k, s, line));

    const std::size_t base = static_cast<std::size_t>(cfg.n_max + 1);
    strides_.resize(modes_.size());
    std::size_t stride = 1;
    for (std::size_t j = 0; j < modes_.size(); ++j) {
        strides_[j] = stride;
        stride *= j < fermion_count_ ? 2 : base;
    }

    const std::size_t width = modes_.size();
    occupations_.assign(dim_ * width, 0);
    for (std::size_t state = 0; state < dim_; ++state) {
        std::size_t x = state;
        std::uint8_t* row = occupations_.data() + state * width;
        for (std::size_t j = 0; j < width; ++j) {
            const std::size_t b = j < fermion_count_ ? 2 : base;
            row[j] = static_cast<std::uint8_t>(x % b);
            x /= b;
        }
    }
}

std::size_t FockBasis::slot(const ModeId& m) const {
    const bool fermionic = m.kind == Statistics::fermion;
    const int flavors = fermionic ? cfg_.M : cfg_.N;
    if (m.flavor < 1 || m.flavor > flavors || m.line < 1 || m.line > cfg_.lines || !cfg_.on_lattice(m.site) ||
        (m.site.twice % 2) == 0)
        throw OperatorError("mode " + m.str() + " is not on the lattice");
    const std::size_t per_line = static_cast<std::size_t>(cfg_.sites) * static_cast<std::size_t>(flavors);
    const std::size_t local = static_cast<std::size_t>(cfg_.site_index(m.site)) * static_cast<std::size_t>(flavors) +
                              static_cast<std::size_t>(m.flavor - 1);
    const std::size_t idx = static_cast<std::size_t>(m.line - 1) * per_line + local;
    return fermionic ? idx : fermion_count_ + idx;
}

int FockBasis::parity_before(std::size_t state, std::size_t fermion_slot) const {
    const auto occ = occupations(state);
    int p = 0;
    for (std::size_t j = 0; j < fermion_slot; ++j) p ^= occ[j];
    return p;
}

std::size_t FockBasis::index_of(std::span<const int> occupation) const {
    if (occupation.size() != modes_.size()) throw DimensionMismatch("occupation vector has wrong length");
    std::size_t idx = 0;
    for (std::size_t j = 0; j < modes_.size(); ++j) {
        const int limit = j < fermion_count_ ? 1 : cfg_.n_max;
        if (occupation[j] < 0 || occupation[j] > limit) throw OperatorError("occupation out of range");
        idx += static_cast<std::size_t>(occupation[j]) * strides_[j];
    }
    return idx;
}

FockBasis build_basis(const LatticeConfig& cfg) {
    cfg.validate();
    return FockBasis(cfg);
}

namespace {

std::size_t checked_slot(const FockBasis& basis, const ModeId& mode, Statistics want) {
    if (mode.kind != want)
        throw OperatorError("mode " + mode.str() + " has the wrong statistics for this operator");
    return basis.slot(mode);
}

} // namespace

SparseOperator fermion_annihilate(const FockBasis& basis, const ModeId& mode) {
    const std::size_t j = checked_slot(basis, mode, Statistics::fermion);
    std::vector<Entry> entries;
    entries.reserve(basis.dimension() / 2);
    for (std::size_t st = 0; st < basis.dimension(); ++st) {
        if (basis.occupation(st, j) != 1) continue;
        const double sign = basis.parity_before(st, j) ? -1.0 : 1.0;
        entries.push_back(Entry{st - basis.stride(j), st, Complex{sign, 0.0}});
    }
    return SparseOperator::from_entries(basis.dimension(), entries);
}

SparseOperator fermion_create(const FockBasis& basis, const ModeId& mode) {
    return fermion_annihilate(basis, mode).adjoint();
}

SparseOperator boson_annihilate(const FockBasis& basis, const ModeId& mode) {
    const std::size_t j = checked_slot(basis, mode, Statistics::boson);
    std::vector<Entry> entries;
    for (std::size_t st = 0; st < basis.dimension(); ++st) {
        const int n = basis.occupation(st, j);
        if (n == 0) continue;
        entries.push_back(Entry{st - basis.stride(j), st, Complex{std::sqrt(static_cast<double>(n)), 0.0}});
    }
    return SparseOperator::from_entries(basis.dimension(), entries);
}

SparseOperator boson_create(const FockBasis& basis, const ModeId& mode) {
    return boson_annihilate(basis, mode).adjoint();
}

bool is_boundary_site(const LatticeConfig& cfg, Site site, int margin) {
    const int idx = cfg.site_index(site);
    return idx < margin || idx >= cfg.sites - margin;
}

int vacuum_occupation(const LatticeConfig& cfg, const ModeId& mode) {
    if (mode.kind == Statistics::boson) return 0;
    return cfg.ordering_of(mode.line) == Ordering::sea && mode.site.negative() ? 1 : 0;
}

std::vector<ModeId> modes_of(const FockBasis& basis, Statistics kind) {
    std::vector<ModeId> out;
    for (const auto& m : basis.modes())
        if (m.kind == kind) out.push_back(m);
    return out;
}

std::vector<double> occupation_values(const FockBasis& basis, std::size_t slot) {
    std::vector<double> out(basis.dimension());
    for (std::size_t st = 0; st < out.size(); ++st) out[st] = basis.occupation(st, slot);
    return out;
}

int chain_position(const LatticeConfig& cfg, int line, Site site) {
    return (line - 1) * cfg.sites + cfg.site_index(site);
}

SparseOperator bulk_projector(const FockBasis& basis, int margin, int headroom) {
    const auto& cfg = basis.config();
    if (margin < 0) throw ConfigError("boundary margin must be >= 0");
    if (headroom < 0 || headroom > cfg.n_max) throw ConfigError("boson headroom must lie in 0..n_max");

    std::vector<std::size_t> pinned;
    std::vector<int> pinned_value;
    for (std::size_t j = 0; j < basis.mode_count(); ++j) {
        const auto& m = basis.mode(j);
        if (is_boundary_site(cfg, m.site, margin)) {
            pinned.push_back(j);
            pinned_value.push_back(vacuum_occupation(cfg, m));
        }
    }
    const int boson_limit = cfg.n_max - headroom;

    std::vector<double> mask(basis.dimension(), 0.0);
    bool any = false;
    for (std::size_t st = 0; st < basis.dimension(); ++st) {
        const auto occ = basis.occupations(st);
        bool ok = true;
        for (std::size_t p = 0; p < pinned.size() && ok; ++p) ok = occ[pinned[p]] == pinned_value[p];
        for (std::size_t j = basis.fermion_modes(); j < occ.size() && ok; ++j) ok = occ[j] <= boson_limit;
        if (ok) {
            mask[st] = 1.0;
            any = true;
        }
    }
    if (!any) throw ConfigError("empty bulk: margin " + std::to_string(margin) + ", headroom " + std::to_string(headroom));
    return SparseOperator::diagonal(std::span<const double>(mask));
}

} // namespace qsuper
