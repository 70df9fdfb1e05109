#include "qsuper/anyons.hpp"

#include "qsuper/errors.hpp"
#include "qsuper/oscillators.hpp"

#include <algorithm>

namespace qsuper {

std::string to_string(AnyonFamily f) {
    switch (f) {
    case AnyonFamily::a: return "a";
    case AnyonFamily::a_tilde: return "a~";
    case AnyonFamily::A: return "A";
    case AnyonFamily::A_tilde: return "A~";
    }
    return "?";
}

std::vector<double> disorder_exponent(const FockBasis& basis, const ModeId& target,
                                      const std::optional<SiteWindow>& window) {
    const auto& cfg = basis.config();
    basis.slot(target);
    std::vector<std::size_t> slots;
    std::vector<double> weights;
    std::vector<double> shifts;
    for (std::size_t j = 0; j < basis.mode_count(); ++j) {
        const auto& m = basis.mode(j);
        if (m.kind != target.kind || m.flavor != target.flavor) continue;
        if (window && !window->contains(chain_position(cfg, m.line, m.site))) continue;
        double w = 0.0;
        double shift = normal_ordering_shift(m, cfg.ordering_of(m.line));
        if (m.line == target.line) {
            w = site_sign(m.site, target.site);
        } else {
            w = m.line < target.line ? -1.0 : 1.0;
            if (!cfg.cross_line_normal_ordered) shift = 0.0;
        }
        if (w == 0.0) continue;
        slots.push_back(j);
        weights.push_back(w);
        shifts.push_back(shift);
    }
    std::vector<double> out(basis.dimension(), 0.0);
    for (std::size_t st = 0; st < out.size(); ++st) {
        const auto occ = basis.occupations(st);
        double x = 0.0;
        for (std::size_t k = 0; k < slots.size(); ++k) x += weights[k] * (occ[slots[k]] + shifts[k]);
        out[st] = x;
    }
    return out;
}

SparseOperator disorder_factor(const FockBasis& basis, const DisorderSpec& spec) {
    const auto& cfg = basis.config();
    const auto x = disorder_exponent(basis, spec.target, spec.window);
    double sign = spec.target.kind == Statistics::fermion ? -1.0 : 1.0;
    if (spec.target.kind == Statistics::boson && cfg.faults.flip_boson_disorder) sign = -1.0;
    if (spec.variant == DisorderVariant::tilde) sign = -sign;
    std::vector<Complex> values(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) values[i] = cfg.q.pow(0.5 * sign * x[i]);
    return SparseOperator::diagonal(std::span<const Complex>(values));
}

SparseOperator anyon(const FockBasis& basis, const ModeId& mode, AnyonFamily family, bool dagger,
                     const std::optional<SiteWindow>& window) {
    const bool fermionic = family == AnyonFamily::a || family == AnyonFamily::a_tilde;
    if (fermionic != (mode.kind == Statistics::fermion))
        throw OperatorError("anyon family " + to_string(family) + " does not match mode " + mode.str());
    const bool tilde = family == AnyonFamily::a_tilde || family == AnyonFamily::A_tilde;
    const DisorderVariant variant = tilde ? DisorderVariant::tilde : DisorderVariant::plain;
    const auto lower = fermionic ? fermion_annihilate(basis, mode) : q_boson_annihilate(basis, mode);
    if (!dagger) return disorder_factor(basis, DisorderSpec{mode, variant, window}) * lower;
    const DisorderVariant inverse = tilde ? DisorderVariant::plain : DisorderVariant::tilde;
    return lower.adjoint() * disorder_factor(basis, DisorderSpec{mode, inverse, window});
}

namespace {

struct AnyonOps {
    ModeId mode;
    int position = 0;
    SparseOperator x, xd, t, td;
};

std::vector<AnyonOps> build_family(const FockBasis& basis, Statistics kind) {
    const bool fermionic = kind == Statistics::fermion;
    const auto plain = fermionic ? AnyonFamily::a : AnyonFamily::A;
    const auto tilde = fermionic ? AnyonFamily::a_tilde : AnyonFamily::A_tilde;
    std::vector<AnyonOps> out;
    for (const auto& m : modes_of(basis, kind)) {
        out.push_back(AnyonOps{m, chain_position(basis.config(), m.line, m.site), anyon(basis, m, plain, false),
                               anyon(basis, m, plain, true), anyon(basis, m, tilde, false),
                               anyon(basis, m, tilde, true)});
    }
    return out;
}

Params pair_params(const AnyonOps& r, const AnyonOps& s) {
    return {{"r", r.mode.str()}, {"s", s.mode.str()}};
}

// Four braiding relations X(r)Y(s) + k Y(s)X(r) for r > s with the given
// coefficients, returned as the worst residual.
double braid4(const SparseOperator& xr, const SparseOperator& xdr, const SparseOperator& xs,
              const SparseOperator& xds, Complex k_same, Complex k_mixed, const SparseOperator& P) {
    double r = residual_norm(xr * xs + k_same * (xs * xr), P);
    r = std::max(r, residual_norm(xdr * xds + k_same * (xds * xdr), P));
    r = std::max(r, residual_norm(xdr * xs + k_mixed * (xs * xdr), P));
    r = std::max(r, residual_norm(xr * xds + k_mixed * (xds * xr), P));
    return r;
}

} // namespace

std::vector<RelationReport> suite_braiding(const LatticeConfig& cfg) {
    ReportSink sink("braiding", cfg);
    const FockBasis basis = build_basis(cfg);
    const std::size_t dim = basis.dimension();
    const auto id = SparseOperator::identity(dim);
    const auto full = bulk_projector(basis, 0, 0);
    const auto head1 = bulk_projector(basis, 0, std::min(1, cfg.n_max));
    const ProjectorSpec exact{0, 0};
    const ProjectorSpec h1{0, 1};
    const Complex q = cfg.q.value();
    const Complex qi = cfg.q.inverse().value();

    const auto fam = build_family(basis, Statistics::fermion);
    for (const auto& r : fam) {
        for (const auto& s : fam) {
            if (r.mode.flavor != s.mode.flavor) continue;
            const auto params = pair_params(r, s);
            if (r.position > s.position) {
                sink.record("eq42", params, exact, braid4(r.x, r.xd, s.x, s.xd, qi, q, full));
                sink.record("eq42-tilde", params, exact, braid4(r.t, r.td, s.t, s.td, q, qi, full));
            }
            double r44 = residual_norm(supercommutator(r.t, s.x, 1, 1));
            r44 = std::max(r44, residual_norm(supercommutator(r.td, s.xd, 1, 1)));
            sink.record("eq44", params, exact, r44);
            if (r.position != s.position) {
                double r45 = residual_norm(supercommutator(r.td, s.x, 1, 1));
                r45 = std::max(r45, residual_norm(supercommutator(r.t, s.xd, 1, 1)));
                sink.record("eq45", params, exact, r45);
            }
        }
        const auto params = Params{{"r", r.mode.str()}};
        double r43 = residual_norm(supercommutator(r.x, r.xd, 1, 1) - id);
        r43 = std::max({r43, residual_norm(r.x * r.x), residual_norm(r.xd * r.xd)});
        sink.record("eq43", params, exact, r43);
        double r43t = residual_norm(supercommutator(r.t, r.td, 1, 1) - id);
        r43t = std::max({r43t, residual_norm(r.t * r.t), residual_norm(r.td * r.td)});
        sink.record("eq43-tilde", params, exact, r43t);

        const auto x = disorder_exponent(basis, r.mode);
        std::vector<Complex> up(x.size()), down(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            up[i] = cfg.q.pow(x[i]);
            down[i] = cfg.q.pow(-x[i]);
        }
        double r46 = residual_norm(supercommutator(r.t, r.xd, 1, 1) - SparseOperator::diagonal(std::span<const Complex>(up)));
        r46 = std::max(r46, residual_norm(supercommutator(r.td, r.x, 1, 1) -
                                          SparseOperator::diagonal(std::span<const Complex>(down))));
        sink.record("eq46", params, exact, r46);

        const auto n = number_op(basis, r.mode);
        const double r47 = std::max(residual_norm(r.xd * r.x - n), residual_norm(r.td * r.t - n));
        sink.record("eq47", params, exact, r47);
    }

    const auto bos = build_family(basis, Statistics::boson);
    for (const auto& r : bos) {
        for (const auto& s : bos) {
            if (r.mode.flavor != s.mode.flavor || r.position <= s.position) continue;
            const auto params = pair_params(r, s);
            sink.record("eq53", params, h1, braid4(r.x, r.xd, s.x, s.xd, -q, -qi, head1));
            sink.record("eq53-tilde", params, h1, braid4(r.t, r.td, s.t, s.td, -qi, -q, head1));
        }
        const auto n = number_op(basis, r.mode);
        for (const bool tilde : {false, true}) {
            const auto& A = tilde ? r.t : r.x;
            const auto& Ad = tilde ? r.td : r.xd;
            double r54 = residual_norm(q_commutator(A, Ad, q) - diag_exp(n, cfg.q, -1.0), head1);
            r54 = std::max(r54, residual_norm(q_commutator(A, Ad, qi) - diag_exp(n, cfg.q, 1.0), head1));
            sink.record("eq54", {{"r", r.mode.str()}, {"family", tilde ? "A~" : "A"}}, h1, r54);
        }
    }
    return sink.take();
}

} // namespace qsuper
