#include "qsuper/sparse_operator.hpp"

#include "qsuper/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsuper {

namespace {

void require_same_dim(const SparseOperator& a, const SparseOperator& b, const char* what) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << what << ": dimension mismatch " << a.dim() << " vs " << b.dim();
        throw DimensionMismatch(os.str());
    }
}

} // namespace

namespace detail {

void require_real_diagonal(const SparseOperator& d, const char* what) {
    if (!d.is_diagonal()) throw OperatorError(std::string(what) + ": argument is not diagonal");
    for (const auto& v : d.diagonal_values()) {
        if (std::abs(v.imag()) > 1e-12)
            throw OperatorError(std::string(what) + ": diagonal has a non-real entry");
    }
}

} // namespace detail

SparseOperator::SparseOperator(std::size_t dim)
    : m_(static_cast<std::ptrdiff_t>(dim), static_cast<std::ptrdiff_t>(dim)) {}

SparseOperator::SparseOperator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionMismatch("operator must be square");
    m_.makeCompressed();
    prune();
}

SparseOperator SparseOperator::identity(std::size_t dim) {
    Matrix m(static_cast<std::ptrdiff_t>(dim), static_cast<std::ptrdiff_t>(dim));
    m.setIdentity();
    return SparseOperator(std::move(m));
}

SparseOperator SparseOperator::diagonal(std::span<const Complex> values) {
    const auto n = static_cast<std::ptrdiff_t>(values.size());
    Matrix m(n, n);
    m.reserve(Eigen::VectorXi::Constant(n, 1));
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (values[static_cast<std::size_t>(i)] != Complex{}) m.insert(i, i) = values[static_cast<std::size_t>(i)];
    }
    return SparseOperator(std::move(m));
}

SparseOperator SparseOperator::diagonal(std::span<const double> values) {
    std::vector<Complex> c(values.begin(), values.end());
    return diagonal(std::span<const Complex>(c));
}

SparseOperator SparseOperator::from_entries(std::size_t dim, std::span<const Entry> entries) {
    std::vector<Eigen::Triplet<Complex, std::ptrdiff_t>> triplets;
    triplets.reserve(entries.size());
    for (const auto& e : entries) {
        if (e.row >= dim || e.col >= dim) throw DimensionMismatch("entry index outside operator dimension");
        triplets.emplace_back(static_cast<std::ptrdiff_t>(e.row), static_cast<std::ptrdiff_t>(e.col), e.value);
    }
    Matrix m(static_cast<std::ptrdiff_t>(dim), static_cast<std::ptrdiff_t>(dim));
    m.setFromTriplets(triplets.begin(), triplets.end());
    return SparseOperator(std::move(m));
}

Complex SparseOperator::coeff(std::size_t row, std::size_t col) const {
    return m_.coeff(static_cast<std::ptrdiff_t>(row), static_cast<std::ptrdiff_t>(col));
}

std::vector<Entry> SparseOperator::entries() const {
    std::vector<Entry> out;
    out.reserve(nnz());
    for (std::ptrdiff_t r = 0; r < m_.outerSize(); ++r) {
        for (Matrix::InnerIterator it(m_, r); it; ++it) {
            out.push_back(Entry{static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()), it.value()});
        }
    }
    return out;
}

bool SparseOperator::is_diagonal() const {
    for (std::ptrdiff_t r = 0; r < m_.outerSize(); ++r) {
        for (Matrix::InnerIterator it(m_, r); it; ++it) {
            if (it.row() != it.col()) return false;
        }
    }
    return true;
}

std::vector<Complex> SparseOperator::diagonal_values() const {
    std::vector<Complex> out(dim());
    for (std::ptrdiff_t r = 0; r < m_.outerSize(); ++r) {
        for (Matrix::InnerIterator it(m_, r); it; ++it) {
            if (it.row() == it.col()) out[static_cast<std::size_t>(r)] = it.value();
        }
    }
    return out;
}

SparseOperator SparseOperator::adjoint() const {
    return SparseOperator(Matrix(m_.adjoint()));
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& other) {
    require_same_dim(*this, other, "op_add");
    m_ += other.m_;
    prune();
    return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& other) {
    require_same_dim(*this, other, "op_sub");
    m_ -= other.m_;
    prune();
    return *this;
}

SparseOperator& SparseOperator::operator*=(Complex s) {
    m_ *= s;
    prune();
    return *this;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    require_same_dim(a, b, "op_mul");
    return SparseOperator(SparseOperator::Matrix(a.m_ * b.m_));
}

void SparseOperator::prune() {
    m_.prune([](std::ptrdiff_t, std::ptrdiff_t, const Complex& v) { return std::abs(v) > kPruneThreshold; });
    m_.makeCompressed();
}

SparseOperator op_add(const SparseOperator& x, const SparseOperator& y) { return x + y; }
SparseOperator op_mul(const SparseOperator& x, const SparseOperator& y) { return x * y; }
SparseOperator op_adjoint(const SparseOperator& x) { return x.adjoint(); }
SparseOperator op_scale(const SparseOperator& x, Complex s) { return s * x; }

SparseOperator supercommutator(const SparseOperator& x, const SparseOperator& y, int grade_x, int grade_y) {
    const double sign = ((grade_x * grade_y) % 2 == 0) ? 1.0 : -1.0;
    return x * y - Complex{sign, 0.0} * (y * x);
}

SparseOperator q_commutator(const SparseOperator& x, const SparseOperator& y, Complex q) {
    return x * y - q * (y * x);
}

SparseOperator diag_exp(const SparseOperator& d, const Deformation& q, double power) {
    detail::require_real_diagonal(d, "diag_exp");
    return diag_apply(d, [&](double x) { return q.pow(power * x); });
}

double residual_norm(const SparseOperator& x) {
    double worst = 0.0;
    const auto& m = x.matrix();
    for (std::ptrdiff_t r = 0; r < m.outerSize(); ++r) {
        for (SparseOperator::Matrix::InnerIterator it(m, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    return worst;
}

double residual_norm(const SparseOperator& x, const SparseOperator& projector) {
    require_same_dim(x, projector, "residual_norm");
    if (!projector.is_diagonal()) return residual_norm(projector * x * projector);
    const auto mask = projector.diagonal_values();
    double worst = 0.0;
    const auto& m = x.matrix();
    for (std::ptrdiff_t r = 0; r < m.outerSize(); ++r) {
        const Complex pr = mask[static_cast<std::size_t>(r)];
        if (pr == Complex{}) continue;
        for (SparseOperator::Matrix::InnerIterator it(m, r); it; ++it) {
            const Complex pc = mask[static_cast<std::size_t>(it.col())];
            if (pc == Complex{}) continue;
            worst = std::max(worst, std::abs(pr * it.value() * pc));
        }
    }
    return worst;
}

} // namespace qsuper
