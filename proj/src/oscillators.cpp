#include "qsuper/oscillators.hpp"

#include "qsuper/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qsuper {

SparseOperator number_op(const FockBasis& basis, const ModeId& mode) {
    const auto values = occupation_values(basis, basis.slot(mode));
    return SparseOperator::diagonal(std::span<const double>(values));
}

double normal_ordering_shift(const ModeId& mode, OrderingScheme scheme) {
    if (scheme != Ordering::sea || !mode.site.negative()) return 0.0;
    return mode.kind == Statistics::fermion ? -1.0 : 1.0;
}

SparseOperator normal_ordered_number(const FockBasis& basis, const ModeId& mode, OrderingScheme scheme) {
    auto values = occupation_values(basis, basis.slot(mode));
    const double shift = normal_ordering_shift(mode, scheme);
    for (auto& v : values) v += shift;
    return SparseOperator::diagonal(std::span<const double>(values));
}

SparseOperator normal_ordered_number(const FockBasis& basis, const ModeId& mode) {
    return normal_ordered_number(basis, mode, basis.config().ordering_of(mode.line));
}

SparseOperator q_boson_annihilate(const FockBasis& basis, const ModeId& mode) {
    if (mode.kind != Statistics::boson) throw OperatorError("q-boson requires a bosonic mode, got " + mode.str());
    const std::size_t j = basis.slot(mode);
    const auto& q = basis.config().q;
    std::vector<double> root(static_cast<std::size_t>(basis.config().n_max) + 1, 0.0);
    for (int n = 1; n <= basis.config().n_max; ++n) {
        const Complex qn = q.qnumber(n);
        if (qn.real() <= 0.0 || std::abs(qn.imag()) > 1e-12)
            throw ConfigError("[" + std::to_string(n) + "]_q is not positive for " + q.describe());
        root[static_cast<std::size_t>(n)] = std::sqrt(qn.real());
    }
    std::vector<Entry> entries;
    for (std::size_t st = 0; st < basis.dimension(); ++st) {
        const int n = basis.occupation(st, j);
        if (n == 0) continue;
        entries.push_back(Entry{st - basis.stride(j), st, Complex{root[static_cast<std::size_t>(n)], 0.0}});
    }
    return SparseOperator::from_entries(basis.dimension(), entries);
}

SparseOperator q_boson_create(const FockBasis& basis, const ModeId& mode) {
    return q_boson_annihilate(basis, mode).adjoint();
}

SparseOperator qnumber_of(const SparseOperator& diag, const Deformation& q) {
    return diag_apply(diag, [&](double x) { return q.qnumber(static_cast<int>(std::lround(x))); });
}

namespace {

Params pair_params(const ModeId& x, const ModeId& y) {
    return {{"x", x.str()}, {"y", y.str()}};
}

double anticomm(const SparseOperator& a, const SparseOperator& b) {
    return residual_norm(supercommutator(a, b, 1, 1));
}

} // namespace

std::vector<RelationReport> suite_oscillators(const LatticeConfig& cfg) {
    ReportSink sink("oscillators", cfg);
    const FockBasis basis = build_basis(cfg);
    const std::size_t dim = basis.dimension();
    const auto id = SparseOperator::identity(dim);
    const auto zero = SparseOperator(dim);
    const auto full = bulk_projector(basis, 0, 0);
    const auto head1 = bulk_projector(basis, 0, std::min(1, cfg.n_max));
    const ProjectorSpec exact{0, 0};
    const ProjectorSpec h1{0, 1};
    const auto& q = cfg.q;

    const auto fermions = modes_of(basis, Statistics::fermion);
    const auto bosons = modes_of(basis, Statistics::boson);
    std::vector<SparseOperator> c, cd, d, dd, b, bd, nb;
    for (const auto& m : fermions) {
        c.push_back(fermion_annihilate(basis, m));
        cd.push_back(c.back().adjoint());
    }
    for (const auto& m : bosons) {
        d.push_back(boson_annihilate(basis, m));
        dd.push_back(d.back().adjoint());
        b.push_back(q_boson_annihilate(basis, m));
        bd.push_back(b.back().adjoint());
        nb.push_back(number_op(basis, m));
    }

    for (std::size_t x = 0; x < fermions.size(); ++x) {
        for (std::size_t y = 0; y < fermions.size(); ++y) {
            const double delta = x == y ? 1.0 : 0.0;
            double r = residual_norm(supercommutator(c[x], cd[y], 1, 1) - Complex{delta} * id);
            r = std::max({r, anticomm(c[x], c[y]), anticomm(cd[x], cd[y])});
            sink.record("eq20", pair_params(fermions[x], fermions[y]), exact, r);
        }
    }

    for (std::size_t x = 0; x < bosons.size(); ++x) {
        for (std::size_t y = 0; y < bosons.size(); ++y) {
            const Complex delta = x == y ? 1.0 : 0.0;
            double r = residual_norm(supercommutator(d[x], dd[y], 0, 0) - delta * id, head1);
            r = std::max({r, residual_norm(supercommutator(d[x], d[y], 0, 0)),
                          residual_norm(supercommutator(dd[x], dd[y], 0, 0))});
            sink.record("eq21", pair_params(bosons[x], bosons[y]), h1, r);
        }
    }

    for (std::size_t x = 0; x < fermions.size(); ++x) {
        for (std::size_t y = 0; y < bosons.size(); ++y) {
            double r = 0.0;
            for (const auto* f : {&c[x], &cd[x]})
                for (const auto* g : {&d[y], &dd[y]}) r = std::max(r, residual_norm(supercommutator(*f, *g, 1, 0)));
            sink.record("eq30", pair_params(fermions[x], bosons[y]), exact, r);
        }
    }

    for (std::size_t x = 0; x < bosons.size(); ++x) {
        const auto q_minus_n = diag_exp(nb[x], q, -1.0);
        const auto q_plus_n = diag_exp(nb[x], q, 1.0);
        for (std::size_t y = 0; y < bosons.size(); ++y) {
            const bool same = x == y;
            const auto params = pair_params(bosons[x], bosons[y]);
            const Complex qd = same ? q.value() : Complex{1.0};
            const Complex qdi = same ? q.inverse().value() : Complex{1.0};
            sink.check("eq49a", params, h1, q_commutator(b[x], bd[y], qd), same ? q_minus_n : zero, head1);
            sink.check("eq49b", params, h1, q_commutator(b[x], bd[y], qdi), same ? q_plus_n : zero, head1);
            const double rc = std::max(residual_norm(supercommutator(b[x], b[y], 0, 0)),
                                       residual_norm(supercommutator(bd[x], bd[y], 0, 0)));
            sink.record("eq49c", params, exact, rc);
            sink.check("eq49d", params, exact, supercommutator(nb[x], b[y], 0, 0), same ? -b[x] : zero, full);
            sink.check("eq49e", params, exact, supercommutator(nb[x], bd[y], 0, 0), same ? bd[x] : zero, full);
        }
    }

    for (std::size_t x = 0; x < bosons.size(); ++x) {
        sink.check("eq50", {{"x", bosons[x].str()}, {"form", "b+b"}}, exact, bd[x] * b[x], qnumber_of(nb[x], q),
                   full);
        sink.check("eq50", {{"x", bosons[x].str()}, {"form", "bb+"}}, h1, b[x] * bd[x], qnumber_of(nb[x] + id, q),
                   head1);
    }
    return sink.take();
}

} // namespace qsuper
