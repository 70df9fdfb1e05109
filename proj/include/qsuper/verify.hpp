#pragma once

#include "qsuper/algebra.hpp"
#include "qsuper/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qsuper {

/// Operator with its Z2 grade and its weight under every H_alpha.
struct GradedElement {
    SparseOperator op;
    int grade = 0;
    std::vector<int> weight;
};

/// E_alpha^{sign} q_alpha^{-H_alpha/2} with grade deg(alpha) and weight sign * a[.][alpha].
GradedElement curly_e(const CartanData& cartan, const GeneratorSet& gens, const Deformation& q, int alpha, int sign);

/// Closed-form quantum adjoint action:
///   ad_q(E_a) Y = E_a Y - (-1)^{deg a deg Y} q_a^{-w} Y E_a,  w = weight of Y under H_a.
/// When `homogeneity` is given, Y is first checked to be H_alpha-homogeneous on it
/// (OperatorError otherwise). The result carries the updated grade and weight.
GradedElement ad_q(const CartanData& cartan, const GeneratorSet& gens, const Deformation& q, int alpha, int sign,
                   const GradedElement& Y, const SparseOperator* homogeneity = nullptr, double tol = 1e-10);

/// Term-by-term coproduct/antipode evaluation: E Y + (-1)^{..} q_a^{-H} Y S(E), S(E) = -q_a^{H} E.
SparseOperator ad_q_oracle(const CartanData& cartan, const GeneratorSet& gens, const Deformation& q, int alpha,
                           int sign, const GradedElement& Y);

std::vector<RelationReport> suite_quantum(const LatticeConfig& cfg);
std::vector<RelationReport> suite_serre(const LatticeConfig& cfg);
std::vector<RelationReport> suite_undeformed(const LatticeConfig& cfg);
std::vector<RelationReport> suite_coproduct(const LatticeConfig& cfg);
std::vector<RelationReport> suite_classical_limit(const LatticeConfig& cfg);
std::vector<RelationReport> suite_central_charge(const LatticeConfig& cfg);
std::vector<RelationReport> suite_cartan_weyl(const LatticeConfig& cfg);

using SuiteFn = std::function<std::vector<RelationReport>(const LatticeConfig&)>;

/// Suite by name: oscillators, braiding, quantum, serre, undeformed,
/// coproduct, classical, central_charge, cartan_weyl.
SuiteFn suite_by_name(const std::string& name);

/// Runs the named suites, concurrently when `parallel`, and returns the
/// reports in the order of `names`.
std::vector<RelationReport> run_suites(const LatticeConfig& cfg, const std::vector<std::string>& names,
                                       bool parallel = true);

} // namespace qsuper
