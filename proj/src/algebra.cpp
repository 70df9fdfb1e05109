#include "qsuper/algebra.hpp"

#include "qsuper/errors.hpp"
#include "qsuper/oscillators.hpp"

#include <sstream>

namespace qsuper {

namespace {

std::string flavor_name(int index, int M) {
    return index <= M ? "eps" + std::to_string(index) : "delta" + std::to_string(index - M);
}

} // namespace

CartanData cartan_data(int M, int N) {
    if (M < 1 || N < 1) throw ConfigError("M and N must be >= 1");
    const int R = M + N - 1;
    if (R < 2) throw ConfigError("rank R = M+N-1 must be >= 2 (R = 1 is excluded)");
    CartanData c;
    c.M = M;
    c.N = N;
    c.R = R;
    const auto n = static_cast<std::size_t>(R + 1);
    c.a.assign(n, std::vector<int>(n, 0));
    auto at = [&](int i, int j) -> int& { return c.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    at(0, 1) += 1;
    at(0, R) += -1;
    for (int i = 1; i <= R; ++i) {
        at(i, i) = i == M ? 0 : 2;
        at(i, i - 1) += -1;
        at(i, (i + 1) % (R + 1)) += i == M ? 1 : -1;
    }
    c.a_tilde = c.a;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && c.a_tilde[i][j] > 0) c.a_tilde[i][j] = -1;

    c.d.resize(n);
    c.grading.resize(n);
    for (int al = 0; al <= R; ++al) {
        c.d[static_cast<std::size_t>(al)] = al <= M ? 1 : -1;
        c.grading[static_cast<std::size_t>(al)] = (al == 0 || al == M) ? 1 : 0;
    }

    for (int al = 1; al <= R; ++al) {
        const std::string root = flavor_name(al, M) + "-" + flavor_name(al + 1, M);
        const std::string back = flavor_name(al + 1, M) + "-" + flavor_name(al, M);
        c.correspondence.push_back({al, "h" + std::to_string(al) + ":m=0", root + ":m=0", back + ":m=0"});
    }
    std::ostringstream h0;
    h0 << "-gamma";
    for (int i = 1; i <= M; ++i) h0 << " + h" << i << ":m=0";
    for (int k = 1; k < N; ++k) h0 << " - h" << (M + k) << ":m=0";
    c.correspondence.insert(c.correspondence.begin(),
                            Correspondence{0, h0.str(), flavor_name(M + N, M) + "-eps1:m=1",
                                           "eps1-" + flavor_name(M + N, M) + ":m=-1"});
    return c;
}

int faulted_node(int M, int N) {
    return N >= 2 ? M + 1 : M;
}

int tail_exponent(const CartanData& cartan, const LatticeConfig& cfg, int alpha) {
    int e = alpha == 0 ? -1 : cartan.d.at(static_cast<std::size_t>(alpha));
    if (cfg.faults.flip_q_alpha && alpha == faulted_node(cartan.M, cartan.N)) e = -e;
    return e;
}

std::vector<Site> admissible_sites(const LatticeConfig& cfg, int alpha) {
    auto sites = cfg.site_list();
    if (alpha == 0) sites.pop_back();
    return sites;
}

SparseOperator local_cartan(const FockBasis& basis, int alpha, int line, Site r) {
    const auto& cfg = basis.config();
    const int M = cfg.M;
    auto nn = [&](const ModeId& m) { return normal_ordered_number(basis, m); };
    if (alpha >= 1 && alpha < M) return nn(fermion(alpha, r, line)) - nn(fermion(alpha + 1, r, line));
    if (alpha == M) return nn(fermion(M, r, line)) + nn(boson(1, r, line));
    if (alpha > M) {
        const int k = alpha - M;
        return nn(boson(k, r, line)) - nn(boson(k + 1, r, line));
    }
    auto h = nn(boson(cfg.N, r, line)) + nn(fermion(1, r.shifted(1), line));
    const bool sea_constant = cfg.ordering_of(line) == Ordering::sea && r.twice == -1 && !cfg.faults.drop_h0_delta;
    if (sea_constant) h -= SparseOperator::identity(basis.dimension());
    return h;
}

namespace {

// Lowering operator of one mode for the three realizations.
enum class Flavor { oscillator, q_boson, anyon };

struct Builder {
    const FockBasis& basis;
    Flavor flavor;
    const std::optional<SiteWindow>& window;

    SparseOperator op(const ModeId& m, bool tilde, bool dagger) const {
        if (flavor == Flavor::anyon) {
            const bool f = m.kind == Statistics::fermion;
            const AnyonFamily fam = f ? (tilde ? AnyonFamily::a_tilde : AnyonFamily::a)
                                      : (tilde ? AnyonFamily::A_tilde : AnyonFamily::A);
            return anyon(basis, m, fam, dagger, window);
        }
        SparseOperator low;
        if (m.kind == Statistics::fermion) low = fermion_annihilate(basis, m);
        else low = flavor == Flavor::q_boson ? q_boson_annihilate(basis, m) : boson_annihilate(basis, m);
        return dagger ? low.adjoint() : low;
    }

    SparseOperator piece(int alpha, int sign, int line, Site r) const {
        const auto& cfg = basis.config();
        const int M = cfg.M;
        ModeId up;
        ModeId down;
        if (alpha >= 1 && alpha < M) {
            up = fermion(alpha, r, line);
            down = fermion(alpha + 1, r, line);
        } else if (alpha == M) {
            up = fermion(M, r, line);
            down = boson(1, r, line);
        } else if (alpha > M) {
            up = boson(alpha - M, r, line);
            down = boson(alpha - M + 1, r, line);
        } else {
            up = boson(cfg.N, r, line);
            down = fermion(1, r.shifted(1), line);
        }
        // E+ = X_up^+ X_down ; E- = X~_down^+ X~_up
        if (sign > 0) return op(up, false, true) * op(down, false, false);
        return op(down, true, true) * op(up, true, false);
    }
};

} // namespace

SparseOperator local_generator(const FockBasis& basis, int alpha, int sign, int line, Site r, bool deformed,
                               const std::optional<SiteWindow>& window) {
    const Builder b{basis, deformed ? Flavor::anyon : Flavor::oscillator, window};
    return b.piece(alpha, sign, line, r);
}

SparseOperator local_q_generator(const FockBasis& basis, int alpha, int sign, int line, Site r) {
    const std::optional<SiteWindow> none;
    const Builder b{basis, Flavor::q_boson, none};
    return b.piece(alpha, sign, line, r);
}

GeneratorSet chevalley_generators(const FockBasis& basis, bool deformed) {
    const auto& cfg = basis.config();
    const CartanData cartan = cartan_data(cfg.M, cfg.N);
    const std::size_t dim = basis.dimension();
    GeneratorSet g;
    g.deformed = deformed;
    for (int al = 0; al <= cartan.R; ++al) {
        SparseOperator H(dim), Ep(dim), Em(dim);
        std::vector<LocalPiece> pieces;
        for (int line = 1; line <= cfg.lines; ++line) {
            for (const Site r : admissible_sites(cfg, al)) {
                LocalPiece p{line, r, local_cartan(basis, al, line, r), local_generator(basis, al, 1, line, r, deformed),
                             local_generator(basis, al, -1, line, r, deformed)};
                H += p.H;
                Ep += p.Ep;
                Em += p.Em;
                pieces.push_back(std::move(p));
            }
        }
        g.H.push_back(std::move(H));
        g.Ep.push_back(std::move(Ep));
        g.Em.push_back(std::move(Em));
        g.local.push_back(std::move(pieces));
    }
    return g;
}

SparseOperator central_charge_operator(const GeneratorSet& gens, const CartanData& cartan) {
    SparseOperator gamma = -gens.H.at(0);
    for (int i = 1; i <= cartan.M; ++i) gamma += gens.H.at(static_cast<std::size_t>(i));
    for (int k = 1; k < cartan.N; ++k) gamma -= gens.H.at(static_cast<std::size_t>(cartan.M + k));
    return gamma;
}

RootLabel RootLabel::parse(const std::string& text, int M, int N) {
    RootLabel out;
    std::string body = text;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        body = text.substr(0, colon);
        const std::string tail = text.substr(colon + 1);
        if (tail.rfind("m=", 0) != 0) throw ConfigError("bad mode suffix in '" + text + "'");
        try {
            std::size_t used = 0;
            out.m = std::stoi(tail.substr(2), &used);
            if (used != tail.size() - 2) throw ConfigError("bad mode number in '" + text + "'");
        } catch (const std::logic_error&) {
            throw ConfigError("bad mode number in '" + text + "'");
        }
    }
    auto parse_index = [&](const std::string& part) {
        int base = 0;
        int limit = 0;
        std::string digits;
        if (part.rfind("eps", 0) == 0) {
            digits = part.substr(3);
            limit = M;
        } else if (part.rfind("delta", 0) == 0) {
            digits = part.substr(5);
            base = M;
            limit = N;
        } else {
            throw ConfigError("unknown root component '" + part + "'");
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("unknown root component '" + part + "'");
        const int idx = std::stoi(digits);
        if (idx < 1 || idx > limit) throw ConfigError("root component '" + part + "' out of range");
        return base + idx;
    };
    if (body.size() > 1 && body[0] == 'h' && body.find('-') == std::string::npos) {
        const std::string digits = body.substr(1);
        if (digits.find_first_not_of("0123456789") != std::string::npos) throw ConfigError("bad label '" + text + "'");
        out.cartan = true;
        out.a = std::stoi(digits);
        if (out.a < 1 || out.a > M + N - 1) throw ConfigError("Cartan index out of range in '" + text + "'");
        return out;
    }
    const auto dash = body.find('-');
    if (dash == std::string::npos) throw ConfigError("bad label '" + text + "'");
    out.plus = parse_index(body.substr(0, dash));
    out.minus = parse_index(body.substr(dash + 1));
    if (out.plus == out.minus) throw ConfigError("label '" + text + "' is not a root");
    return out;
}

std::string RootLabel::str(int M) const {
    std::string head = cartan ? "h" + std::to_string(a) : flavor_name(plus, M) + "-" + flavor_name(minus, M);
    return head + ":m=" + std::to_string(m);
}

int RootLabel::degree(int M) const {
    if (cartan) return 0;
    return (plus <= M) != (minus <= M) ? 1 : 0;
}

std::vector<int> cartan_direction(int a, int M, int N) {
    std::vector<int> v(static_cast<std::size_t>(M + N), 0);
    v[static_cast<std::size_t>(a - 1)] = 1;
    v[static_cast<std::size_t>(a)] = a == M ? 1 : -1;
    return v;
}

std::vector<int> RootLabel::vector(int M, int N) const {
    if (cartan) return cartan_direction(a, M, N);
    std::vector<int> v(static_cast<std::size_t>(M + N), 0);
    v[static_cast<std::size_t>(plus - 1)] += 1;
    v[static_cast<std::size_t>(minus - 1)] -= 1;
    return v;
}

namespace {

ModeId flavor_mode(int index, int M, Site r, int line) {
    return index <= M ? fermion(index, r, line) : boson(index - M, r, line);
}

SparseOperator lower(const FockBasis& basis, const ModeId& m) {
    return m.kind == Statistics::fermion ? fermion_annihilate(basis, m) : boson_annihilate(basis, m);
}

} // namespace

SparseOperator cartan_weyl_generator(const FockBasis& basis, const RootLabel& label) {
    const auto& cfg = basis.config();
    SparseOperator out(basis.dimension());
    std::vector<std::pair<int, int>> terms;  // (flavor index, coefficient)
    if (label.cartan) {
        const auto dir = cartan_direction(label.a, cfg.M, cfg.N);
        for (std::size_t f = 0; f < dir.size(); ++f)
            if (dir[f] != 0) terms.emplace_back(static_cast<int>(f) + 1, dir[f]);
    }
    for (int line = 1; line <= cfg.lines; ++line) {
        for (const Site r : cfg.site_list()) {
            const Site s = r.shifted(label.m);
            if (!cfg.on_lattice(s)) continue;
            if (!label.cartan) {
                out += lower(basis, flavor_mode(label.plus, cfg.M, r, line)).adjoint() *
                       lower(basis, flavor_mode(label.minus, cfg.M, s, line));
                continue;
            }
            for (const auto& [f, coeff] : terms) {
                const ModeId x = flavor_mode(f, cfg.M, r, line);
                SparseOperator piece = label.m == 0
                                           ? normal_ordered_number(basis, x)
                                           : lower(basis, x).adjoint() * lower(basis, flavor_mode(f, cfg.M, s, line));
                out += Complex{static_cast<double>(coeff)} * piece;
            }
        }
    }
    return out;
}

} // namespace qsuper
