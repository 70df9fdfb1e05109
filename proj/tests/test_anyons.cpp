#include "doctest.h"

#include "qsuper/anyons.hpp"
#include "qsuper/errors.hpp"
#include "qsuper/oscillators.hpp"
#include "support.hpp"

#include <set>

using namespace qsuper;
using testsupport::chain_exponent;
using testsupport::dense;
using testsupport::DenseFock;
using testsupport::diag_pow;
using testsupport::max_abs;

namespace {

LatticeConfig config(Deformation q = Deformation::from_nu(0.3), Ordering o = Ordering::sea) {
    LatticeConfig c;
    c.q = q;
    c.ordering = o;
    return c;
}

Eigen::VectorXd as_vector(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

bool gating_pass(const std::vector<RelationReport>& reports) {
    for (const auto& r : reports)
        if (r.applicable && r.gating && !r.pass) return false;
    return !reports.empty();
}

} // namespace

TEST_CASE("disorder exponent matches the direct site sum, 1D and 2D") {
    std::vector<LatticeConfig> cases;
    for (auto o : {Ordering::sea, Ordering::empty}) {
        auto c = config(Deformation::from_nu(0.3), o);
        c.sites = 4;
        c.n_max = 1;
        c.M = 2;
        cases.push_back(c);
        auto d = config(Deformation::from_nu(0.3), o);
        d.lines = 2;
        d.n_max = 1;
        cases.push_back(d);
    }
    auto mixed = config();
    mixed.lines = 2;
    mixed.n_max = 1;
    mixed.line_orderings = {Ordering::sea, Ordering::empty};
    cases.push_back(mixed);
    for (const auto& c : cases) {
        const auto basis = build_basis(c);
        const DenseFock ref(c);
        for (const auto& m : basis.modes()) {
            CAPTURE(m.str());
            const auto x = as_vector(disorder_exponent(basis, m));
            CHECK((x - chain_exponent(ref, m)).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("bare cross-line occupations when the flag is off") {
    auto c = config();
    c.lines = 2;
    c.n_max = 1;
    c.cross_line_normal_ordered = false;
    const auto basis = build_basis(c);
    const DenseFock ref(c);
    for (const auto& m : basis.modes()) {
        Eigen::VectorXd expect = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ref.dim()));
        for (const auto& y : ref.modes()) {
            if (y.kind != m.kind || y.flavor != m.flavor) continue;
            if (y.line == m.line) expect += double(site_sign(y.site, m.site)) * ref.normal_ordered(y);
            else expect += (y.line < m.line ? -1.0 : 1.0) * ref.occupation(y);
        }
        CHECK((as_vector(disorder_exponent(basis, m)) - expect).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("window restricts the disorder sum to a chain interval") {
    auto c = config();
    c.sites = 4;
    c.n_max = 1;
    const auto basis = build_basis(c);
    const DenseFock ref(c);
    const auto target = fermion(1, Site{-1});
    const SiteWindow left{0, 2};
    Eigen::VectorXd expect = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ref.dim()));
    for (int twice : {-3, -1}) {
        const auto y = fermion(1, Site{twice});
        expect += double(site_sign(y.site, target.site)) * ref.normal_ordered(y);
    }
    CHECK((as_vector(disorder_exponent(basis, target, left)) - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("disorder factors: fermions q^{-X/2}, bosons q^{+X/2}, tilde inverts") {
    for (auto q : {Deformation::from_nu(0.3), Deformation::from_real(1.3)}) {
        auto c = config(q);
        c.N = 2;
        const auto basis = build_basis(c);
        const DenseFock ref(c);
        for (const auto& m : basis.modes()) {
            const auto x = chain_exponent(ref, m);
            const double s = m.kind == Statistics::fermion ? -0.5 : 0.5;
            const auto K = disorder_factor(basis, {m, DisorderVariant::plain, std::nullopt});
            const auto Kt = disorder_factor(basis, {m, DisorderVariant::tilde, std::nullopt});
            CHECK(K.is_diagonal());
            CHECK(max_abs(dense(K) - diag_pow(q, x, s)) < 1e-14);
            CHECK(max_abs(dense(Kt) - diag_pow(q, x, -s)) < 1e-14);
            CHECK(residual_norm(K * Kt - SparseOperator::identity(basis.dimension())) < 1e-14);
        }
    }
}

TEST_CASE("empty ordering: every disorder factor is the identity on the Fock vacuum") {
    const auto basis = build_basis(config(Deformation::from_nu(0.3), Ordering::empty));
    for (const auto& m : basis.modes())
        for (auto v : {DisorderVariant::plain, DisorderVariant::tilde})
            CHECK(disorder_factor(basis, {m, v, std::nullopt}).coeff(0, 0) == Complex{1.0});
}

TEST_CASE("|q| = 1: disorder factors are unitary and the tilde factor is the adjoint") {
    const auto basis = build_basis(config(Deformation::from_nu(0.1)));
    const auto id = SparseOperator::identity(basis.dimension());
    for (const auto& m : basis.modes()) {
        const auto K = disorder_factor(basis, {m, DisorderVariant::plain, std::nullopt});
        const auto Kt = disorder_factor(basis, {m, DisorderVariant::tilde, std::nullopt});
        CHECK(residual_norm(K * K.adjoint() - id) < 1e-14);
        CHECK(residual_norm(Kt - K.adjoint()) < 1e-14);
    }
}

TEST_CASE("sea ordering, two sites: K_1(1/2) on the empty Fock state and on the filled sea") {
    // Empty state: :n_1(-1/2): = -1 and sign(-1/2 - 1/2) = -1, so X = +1 and K = q^{-1/2}.
    // Filled sea: :n_1(-1/2): = 0, so K = 1.
    const auto q = Deformation::from_nu(0.3);
    const auto c = config(q);
    const auto basis = build_basis(c);
    const auto K = disorder_factor(basis, {fermion(1, Site{1}), DisorderVariant::plain, std::nullopt});
    CHECK(std::abs(K.coeff(0, 0) - q.pow(-0.5)) < 1e-15);
    std::vector<int> occ(basis.mode_count(), 0);
    occ[basis.slot(fermion(1, Site{-1}))] = 1;
    occ[basis.slot(fermion(2, Site{-1}))] = 1;
    const auto s = basis.index_of(occ);
    CHECK(std::abs(K.coeff(s, s) - 1.0) < 1e-15);
}

TEST_CASE("all disorder factors commute") {
    auto c = config();
    c.N = 2;
    c.n_max = 1;
    const auto basis = build_basis(c);
    std::vector<SparseOperator> ks;
    for (const auto& m : basis.modes()) ks.push_back(disorder_factor(basis, {m, DisorderVariant::plain, std::nullopt}));
    for (const auto& a : ks)
        for (const auto& b : ks) CHECK(residual_norm(a * b - b * a) < 1e-14);
}

TEST_CASE("anyons are dressed oscillators; the dagger is the q-conjugate") {
    for (auto q : {Deformation::from_nu(0.3), Deformation::from_real(1.3)}) {
        const auto c = config(q);
        const auto basis = build_basis(c);
        const DenseFock ref(c);
        for (const auto& m : basis.modes()) {
            const bool f = m.kind == Statistics::fermion;
            const auto lower = f ? ref.lower(m) : ref.lower(m, [&](int n) { return q.qnumber(n).real(); });
            const auto x = chain_exponent(ref, m);
            const double s = f ? -0.5 : 0.5;
            const auto plain = f ? AnyonFamily::a : AnyonFamily::A;
            const auto tilde = f ? AnyonFamily::a_tilde : AnyonFamily::A_tilde;
            CHECK(max_abs(dense(anyon(basis, m, plain, false)) - diag_pow(q, x, s) * lower) < 1e-14);
            CHECK(max_abs(dense(anyon(basis, m, tilde, false)) - diag_pow(q, x, -s) * lower) < 1e-14);
            CHECK(max_abs(dense(anyon(basis, m, plain, true)) - lower.adjoint() * diag_pow(q, x, -s)) < 1e-14);
            CHECK(max_abs(dense(anyon(basis, m, tilde, true)) - lower.adjoint() * diag_pow(q, x, s)) < 1e-14);
            if (q.on_unit_circle())
                CHECK(residual_norm(anyon(basis, m, plain, true) - anyon(basis, m, plain, false).adjoint()) < 1e-14);
        }
    }
}

TEST_CASE("a+a = n and A+A = [n']_q exactly") {
    for (auto q : {Deformation::from_nu(0.3), Deformation::from_real(1.3)}) {
        const auto basis = build_basis(config(q));
        for (const auto& m : basis.modes()) {
            const auto n = number_op(basis, m);
            if (m.kind == Statistics::fermion) {
                for (auto fam : {AnyonFamily::a, AnyonFamily::a_tilde})
                    CHECK(residual_norm(anyon(basis, m, fam, true) * anyon(basis, m, fam, false) - n) < 1e-14);
            } else {
                for (auto fam : {AnyonFamily::A, AnyonFamily::A_tilde})
                    CHECK(residual_norm(anyon(basis, m, fam, true) * anyon(basis, m, fam, false) - qnumber_of(n, q)) <
                          1e-13);
            }
        }
    }
}

TEST_CASE("q = 1: anyons reduce to oscillators") {
    const auto basis = build_basis(config(Deformation::classical()));
    for (const auto& m : basis.modes()) {
        if (m.kind == Statistics::fermion) {
            CHECK(residual_norm(anyon(basis, m, AnyonFamily::a, false) - fermion_annihilate(basis, m)) == 0.0);
            CHECK(residual_norm(anyon(basis, m, AnyonFamily::a_tilde, true) - fermion_create(basis, m)) == 0.0);
        } else {
            CHECK(residual_norm(anyon(basis, m, AnyonFamily::A, false) - boson_annihilate(basis, m)) == 0.0);
            CHECK(residual_norm(anyon(basis, m, AnyonFamily::A_tilde, true) - boson_create(basis, m)) == 0.0);
        }
    }
}

TEST_CASE("anyon family must match the statistics of the mode") {
    const auto basis = build_basis(config());
    CHECK_THROWS_AS(anyon(basis, boson(1, Site{1}), AnyonFamily::a, false), OperatorError);
    CHECK_THROWS_AS(anyon(basis, fermion(1, Site{1}), AnyonFamily::A_tilde, true), OperatorError);
}

TEST_CASE("braiding spot checks") {
    for (auto q : {Deformation::from_nu(0.3), Deformation::from_real(1.3)}) {
        auto c = config(q);
        c.sites = 4;
        c.n_max = 1;
        const auto basis = build_basis(c);
        const Complex qv = q.value();
        const auto ar = anyon(basis, fermion(1, Site{1}), AnyonFamily::a, false);
        const auto as = anyon(basis, fermion(1, Site{-1}), AnyonFamily::a, false);
        CHECK(residual_norm(ar * as + (1.0 / qv) * (as * ar)) < 1e-13);

        const auto r = fermion(2, Site{-3});
        const auto at_d = anyon(basis, r, AnyonFamily::a_tilde, true);
        const auto a = anyon(basis, r, AnyonFamily::a, false);
        const auto rhs = diag_exp(SparseOperator::diagonal(disorder_exponent(basis, r)), q, -1.0);
        CHECK(residual_norm(at_d * a + a * at_d - rhs) < 1e-13);

        const auto b = boson(1, Site{3});
        const auto A = anyon(basis, b, AnyonFamily::A, false);
        const auto Ad = anyon(basis, b, AnyonFamily::A, true);
        const auto P = bulk_projector(basis, 0, 1);
        CHECK(residual_norm(A * Ad - qv * (Ad * A) - diag_exp(number_op(basis, b), q, -1.0), P) < 1e-13);
    }
}

TEST_CASE("braiding suite passes for nu in {0.1, 0.3} and q = 1.3") {
    for (auto q : {Deformation::from_nu(0.1), Deformation::from_nu(0.3), Deformation::from_real(1.3)}) {
        CAPTURE(q.describe());
        const auto reports = suite_braiding(config(q));
        CHECK(gating_pass(reports));
        std::set<std::string> ids;
        for (const auto& r : reports) ids.insert(r.id);
        for (const char* id : {"eq42", "eq42-tilde", "eq43", "eq43-tilde", "eq44", "eq45", "eq46", "eq47", "eq53",
                               "eq53-tilde", "eq54"})
            CHECK(ids.count(id) == 1);
    }
}

TEST_CASE("braiding suite: empty ordering, four sites, two lines, mixed lines, bare cross-line") {
    auto c = config(Deformation::from_nu(0.3), Ordering::empty);
    CHECK(gating_pass(suite_braiding(c)));
    c = config();
    c.sites = 4;
    c.n_max = 1;
    CHECK(gating_pass(suite_braiding(c)));
    c = config();
    c.lines = 2;
    c.n_max = 1;
    CHECK(gating_pass(suite_braiding(c)));
    c.line_orderings = {Ordering::sea, Ordering::empty};
    CHECK(gating_pass(suite_braiding(c)));
    c.cross_line_normal_ordered = false;
    CHECK(gating_pass(suite_braiding(c)));
}

TEST_CASE("flipping the boson disorder sign breaks the bosonic braiding") {
    auto c = config();
    c.faults.flip_boson_disorder = true;
    bool failed = false;
    for (const auto& r : suite_braiding(c))
        if (r.id.rfind("eq53", 0) == 0 && !r.pass) failed = true;
    CHECK(failed);
}
