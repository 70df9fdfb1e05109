#pragma once

// Dense reference constructions for the tests. They share only the documented
// basis layout with the library (fermions first, then bosons, each ordered by
// line, site, flavor; fermion slot j is bit j, boson slots are base n_max+1
// digits above the fermion bits) and are otherwise written from scratch.

#include "qsuper/lattice.hpp"
#include "qsuper/sparse_operator.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstddef>
#include <vector>

namespace testsupport {

using qsuper::Complex;
using qsuper::ModeId;
using Dense = Eigen::MatrixXcd;

inline Dense dense(const qsuper::SparseOperator& op) { return Dense(op.matrix()); }

inline double max_abs(const Dense& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

class DenseFock {
public:
    explicit DenseFock(const qsuper::LatticeConfig& cfg) : cfg_(cfg) {
        for (auto kind : {qsuper::Statistics::fermion, qsuper::Statistics::boson}) {
            const int flavors = kind == qsuper::Statistics::fermion ? cfg.M : cfg.N;
            for (int line = 1; line <= cfg.lines; ++line)
                for (int twice = 1 - cfg.sites; twice <= cfg.sites - 1; twice += 2)
                    for (int f = 1; f <= flavors; ++f) modes_.push_back(ModeId{kind, f, line, qsuper::Site{twice}});
            if (kind == qsuper::Statistics::fermion) fermions_ = modes_.size();
        }
        dim_ = std::size_t{1} << fermions_;
        for (std::size_t b = fermions_; b < modes_.size(); ++b) dim_ *= static_cast<std::size_t>(cfg.n_max + 1);
    }

    std::size_t dim() const { return dim_; }
    const std::vector<ModeId>& modes() const { return modes_; }

    std::size_t slot(const ModeId& m) const {
        for (std::size_t i = 0; i < modes_.size(); ++i)
            if (modes_[i] == m) return i;
        return modes_.size();
    }

    std::vector<int> occupations(std::size_t state) const {
        std::vector<int> occ(modes_.size());
        for (std::size_t j = 0; j < fermions_; ++j) occ[j] = static_cast<int>((state >> j) & 1U);
        std::size_t rest = state >> fermions_;
        for (std::size_t j = fermions_; j < modes_.size(); ++j) {
            occ[j] = static_cast<int>(rest % static_cast<std::size_t>(cfg_.n_max + 1));
            rest /= static_cast<std::size_t>(cfg_.n_max + 1);
        }
        return occ;
    }

    std::size_t index(const std::vector<int>& occ) const {
        std::size_t idx = 0, mul = std::size_t{1} << fermions_;
        for (std::size_t j = 0; j < fermions_; ++j) idx |= static_cast<std::size_t>(occ[j]) << j;
        for (std::size_t j = fermions_; j < modes_.size(); ++j) {
            idx += static_cast<std::size_t>(occ[j]) * mul;
            mul *= static_cast<std::size_t>(cfg_.n_max + 1);
        }
        return idx;
    }

    /// Annihilator with Jordan-Wigner string for fermions; for bosons the
    /// amplitude is sqrt(ladder(n)) with ladder(n) = n by default.
    template <typename Ladder>
    Dense lower(const ModeId& m, Ladder ladder) const {
        Dense out = Dense::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
        const std::size_t j = slot(m);
        for (std::size_t s = 0; s < dim_; ++s) {
            auto occ = occupations(s);
            if (occ[j] == 0) continue;
            double amp = 1.0;
            if (j < fermions_) {
                amp = (std::popcount(s & ((std::size_t{1} << j) - 1)) % 2) ? -1.0 : 1.0;
            } else {
                amp = std::sqrt(ladder(occ[j]));
            }
            occ[j] -= 1;
            out(static_cast<Eigen::Index>(index(occ)), static_cast<Eigen::Index>(s)) = amp;
        }
        return out;
    }
    Dense lower(const ModeId& m) const {
        return lower(m, [](int n) { return static_cast<double>(n); });
    }

    /// Occupation of one mode on every basis state.
    Eigen::VectorXd occupation(const ModeId& m) const {
        Eigen::VectorXd v(static_cast<Eigen::Index>(dim_));
        const std::size_t j = slot(m);
        for (std::size_t s = 0; s < dim_; ++s) v(static_cast<Eigen::Index>(s)) = occupations(s)[j];
        return v;
    }

    /// :n: - n: sea subtracts one for fermions and adds one for bosons at negative sites.
    double shift(const ModeId& m) const {
        if (cfg_.ordering_of(m.line) != qsuper::Ordering::sea || m.site.twice > 0) return 0.0;
        return m.kind == qsuper::Statistics::fermion ? -1.0 : 1.0;
    }

    Eigen::VectorXd normal_ordered(const ModeId& m) const {
        return occupation(m).array() + shift(m);
    }

private:
    qsuper::LatticeConfig cfg_;
    std::vector<ModeId> modes_;
    std::size_t fermions_ = 0;
    std::size_t dim_ = 1;
};

/// q^{power * x} as a diagonal matrix on the stored branch of log q.
inline Dense diag_pow(const qsuper::Deformation& q, const Eigen::VectorXd& x, double power) {
    Eigen::VectorXcd d(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) d(i) = std::exp(power * x(i) * q.log());
    return d.asDiagonal();
}

/// [x]_q = (q^x - q^-x)/(q - q^-1) for x on a diagonal; x at q = 1.
inline Dense diag_qnumber(const qsuper::Deformation& q, const Eigen::VectorXd& x) {
    Eigen::VectorXcd d(x.size());
    const Complex qq = q.value();
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (std::abs(qq - 1.0) < 1e-15) d(i) = x(i);
        else d(i) = (std::exp(x(i) * q.log()) - std::exp(-x(i) * q.log())) / (qq - 1.0 / qq);
    }
    return d.asDiagonal();
}

/// Same-line disorder exponent sum_t sign(t - r) :n(t): for one flavor on a 1D lattice.
inline Eigen::VectorXd chain_exponent(const DenseFock& fock, const ModeId& target) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(fock.dim()));
    for (const auto& m : fock.modes()) {
        if (m.kind != target.kind || m.flavor != target.flavor) continue;
        double w = 0.0;
        if (m.line == target.line) w = (m.site.twice > target.site.twice) - (m.site.twice < target.site.twice);
        else w = m.line < target.line ? -1.0 : 1.0;
        x += w * fock.normal_ordered(m);
    }
    return x;
}

} // namespace testsupport
