#pragma once

#include "qsuper/fock.hpp"
#include "qsuper/report.hpp"

#include <vector>

namespace qsuper {

using OrderingScheme = Ordering;

/// n = c+ c or n' = d+ d, diagonal.
SparseOperator number_op(const FockBasis& basis, const ModeId& mode);

/// :n: - n for one mode. sea: -1 for fermions and +1 for bosons at r < 0.
double normal_ordering_shift(const ModeId& mode, OrderingScheme scheme);

SparseOperator normal_ordered_number(const FockBasis& basis, const ModeId& mode, OrderingScheme scheme);
/// Uses the ordering of the mode's own line.
SparseOperator normal_ordered_number(const FockBasis& basis, const ModeId& mode);

/// b|n> = sqrt([n]_q)|n-1>.
SparseOperator q_boson_annihilate(const FockBasis& basis, const ModeId& mode);
SparseOperator q_boson_create(const FockBasis& basis, const ModeId& mode);

/// [n]_q applied to the real integer spectrum of a diagonal operator.
SparseOperator qnumber_of(const SparseOperator& diag, const Deformation& q);

std::vector<RelationReport> suite_oscillators(const LatticeConfig& cfg);

} // namespace qsuper
