#pragma once

#include "qsuper/anyons.hpp"
#include "qsuper/fock.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qsuper {

/// One row of the Chevalley / Cartan-Weyl correspondence table.
struct Correspondence {
    int alpha = 0;
    std::string h;
    std::string e_plus;
    std::string e_minus;
};

struct CartanData {
    int M = 0;
    int N = 0;
    int R = 0;
    std::vector<std::vector<int>> a;
    std::vector<std::vector<int>> a_tilde;
    /// q_alpha = q^{d_alpha}.
    std::vector<int> d;
    std::vector<int> grading;
    std::vector<Correspondence> correspondence;

    int size() const { return R + 1; }
    int deg(int alpha) const { return grading.at(static_cast<std::size_t>(alpha)); }
    int entry(int alpha, int beta) const { return a.at(static_cast<std::size_t>(alpha)).at(static_cast<std::size_t>(beta)); }
    int tilde(int alpha, int beta) const {
        return a_tilde.at(static_cast<std::size_t>(alpha)).at(static_cast<std::size_t>(beta));
    }
    Deformation q_alpha(const Deformation& q, int alpha) const { return q.power(d.at(static_cast<std::size_t>(alpha))); }
};

/// Throws ConfigError for M or N < 1 and for R = 1.
CartanData cartan_data(int M, int N);

/// The node whose q_alpha the flip_q_alpha fault inverts: M+1 when it
/// exists, otherwise M.
int faulted_node(int M, int N);

/// Exponent sign of q in the factorized tail of node alpha, with faults applied.
int tail_exponent(const CartanData& cartan, const LatticeConfig& cfg, int alpha);

struct LocalPiece {
    int line = 1;
    Site r{};
    SparseOperator H;
    SparseOperator Ep;
    SparseOperator Em;
};

struct GeneratorSet {
    bool deformed = false;
    std::vector<SparseOperator> H;
    std::vector<SparseOperator> Ep;
    std::vector<SparseOperator> Em;
    /// local[alpha] lists the pieces in chain order.
    std::vector<std::vector<LocalPiece>> local;

    const SparseOperator& E(int alpha, int sign) const {
        return sign > 0 ? Ep.at(static_cast<std::size_t>(alpha)) : Em.at(static_cast<std::size_t>(alpha));
    }
};

/// Sites r of one line at which node alpha has a local piece.
std::vector<Site> admissible_sites(const LatticeConfig& cfg, int alpha);

/// H_alpha(r) on one line, normal-ordered form with the sea constant for alpha = 0.
SparseOperator local_cartan(const FockBasis& basis, int alpha, int line, Site r);

/// E_alpha^{sign}(r): oscillators when !deformed, anyons otherwise.
SparseOperator local_generator(const FockBasis& basis, int alpha, int sign, int line, Site r, bool deformed,
                               const std::optional<SiteWindow>& window = std::nullopt);

/// e^_alpha^{sign}(r): the oscillator piece with d replaced by the q-boson b.
SparseOperator local_q_generator(const FockBasis& basis, int alpha, int sign, int line, Site r);

GeneratorSet chevalley_generators(const FockBasis& basis, bool deformed);

/// Gamma = -H_0 + sum_{i<=M} H_i - sum_{k<N} H_{M+k}.
SparseOperator central_charge_operator(const GeneratorSet& gens, const CartanData& cartan);

/// Cartan-Weyl label: a root X_p - X_q (indices 1..M are eps_i, M+1..M+N
/// are delta_k) or a Cartan direction h_a, with mode number m.
struct RootLabel {
    bool cartan = false;
    int plus = 1;
    int minus = 2;
    int a = 1;
    int m = 0;

    /// "eps1-delta1", "delta2-eps1", "h2", optionally followed by ":m=<int>".
    static RootLabel parse(const std::string& text, int M, int N);
    std::string str(int M) const;
    /// Z2 degree; Cartan labels and even roots are 0.
    int degree(int M) const;
    /// Coefficient vector over the M+N flavors (root: e_plus - e_minus).
    std::vector<int> vector(int M, int N) const;
};

/// Coefficients of h_a over the M+N flavors.
std::vector<int> cartan_direction(int a, int M, int N);

/// Operator per the oscillator Cartan-Weyl realization, truncated to the
/// lattice and summed over all lines. Empty sums return the zero operator.
SparseOperator cartan_weyl_generator(const FockBasis& basis, const RootLabel& label);

} // namespace qsuper
