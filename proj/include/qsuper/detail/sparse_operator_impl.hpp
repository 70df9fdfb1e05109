#pragma once

#include "qsuper/errors.hpp"

#include <cmath>
#include <vector>

namespace qsuper {

namespace detail {
void require_real_diagonal(const SparseOperator& d, const char* what);
} // namespace detail

template <typename F>
SparseOperator diag_apply(const SparseOperator& d, F&& f) {
    detail::require_real_diagonal(d, "diag_apply");
    const auto diag = d.diagonal_values();
    std::vector<Complex> out(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) out[i] = f(diag[i].real());
    return SparseOperator::diagonal(std::span<const Complex>(out));
}

} // namespace qsuper
