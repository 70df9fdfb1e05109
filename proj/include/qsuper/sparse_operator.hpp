#pragma once

#include "qsuper/deformation.hpp"

#include <Eigen/SparseCore>

#include <cstddef>
#include <span>
#include <vector>

namespace qsuper {

/// One stored entry, 0-based indices.
struct Entry {
    std::size_t row = 0;
    std::size_t col = 0;
    Complex value{};
};

/// Complex sparse square matrix on a Fock basis. Immutable in practice:
/// every combinator returns a new operator. Entries with |x| <= kPruneThreshold
/// are dropped after arithmetic.
class SparseOperator {
public:
    using Matrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor, std::ptrdiff_t>;
    static constexpr double kPruneThreshold = 1e-15;

    SparseOperator() = default;
    explicit SparseOperator(std::size_t dim);
    explicit SparseOperator(Matrix m);

    static SparseOperator identity(std::size_t dim);
    static SparseOperator diagonal(std::span<const Complex> values);
    static SparseOperator diagonal(std::span<const double> values);
    /// Duplicate coordinates are summed.
    static SparseOperator from_entries(std::size_t dim, std::span<const Entry> entries);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    std::size_t nnz() const { return static_cast<std::size_t>(m_.nonZeros()); }
    const Matrix& matrix() const { return m_; }

    Complex coeff(std::size_t row, std::size_t col) const;
    /// Row-major sorted coordinate list.
    std::vector<Entry> entries() const;
    bool is_diagonal() const;
    /// Full diagonal, length dim().
    std::vector<Complex> diagonal_values() const;

    SparseOperator adjoint() const;

    SparseOperator& operator+=(const SparseOperator& other);
    SparseOperator& operator-=(const SparseOperator& other);
    SparseOperator& operator*=(Complex s);

    friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
    friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
    friend SparseOperator operator*(Complex s, SparseOperator a) { return a *= s; }
    friend SparseOperator operator*(SparseOperator a, Complex s) { return a *= s; }
    friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator-(SparseOperator a) { return a *= Complex{-1.0, 0.0}; }

private:
    void prune();

    Matrix m_;
};

// Named combinators.

SparseOperator op_add(const SparseOperator& x, const SparseOperator& y);
SparseOperator op_mul(const SparseOperator& x, const SparseOperator& y);
SparseOperator op_adjoint(const SparseOperator& x);
SparseOperator op_scale(const SparseOperator& x, Complex s);

/// XY - (-1)^{gx gy} YX.
SparseOperator supercommutator(const SparseOperator& x, const SparseOperator& y, int grade_x, int grade_y);

/// XY - q YX.
SparseOperator q_commutator(const SparseOperator& x, const SparseOperator& y, Complex q);

/// q^{power * D} for a diagonal D with real spectrum.
SparseOperator diag_exp(const SparseOperator& d, const Deformation& q, double power);

/// Entrywise map over the (real) diagonal of D: D_ii -> f(D_ii).
template <typename F>
SparseOperator diag_apply(const SparseOperator& d, F&& f);

/// Largest absolute entry; 0 for the zero operator.
double residual_norm(const SparseOperator& x);

/// Largest absolute entry of P X P for a diagonal 0/1 projector P.
double residual_norm(const SparseOperator& x, const SparseOperator& projector);

} // namespace qsuper

#include "qsuper/detail/sparse_operator_impl.hpp"
