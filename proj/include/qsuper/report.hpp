#pragma once

#include "qsuper/lattice.hpp"
#include "qsuper/sparse_operator.hpp"

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace qsuper {

/// Bulk projector descriptor: boundary margin in sites, boson headroom.
struct ProjectorSpec {
    int margin = 0;
    int headroom = 0;

    std::string str() const;
    bool operator==(const ProjectorSpec&) const = default;
};

using Params = std::vector<std::pair<std::string, std::string>>;

struct RelationReport {
    std::string id;
    std::string equation;
    std::string suite;
    Params params;
    ProjectorSpec projector;
    double residual = 0.0;
    double tolerance = 1e-10;
    bool pass = false;
    /// Informational reports are recorded but never decide the exit status.
    bool gating = true;
    /// False when the instance is too small for the relation.
    bool applicable = true;
    std::string note;
    double wall_ms = 0.0;

    std::string param(const std::string& key) const;
};

/// residual = max |P (lhs - rhs) P|; id/equation left for the caller.
RelationReport check_identity(const SparseOperator& lhs, const SparseOperator& rhs, const SparseOperator& projector);

struct CatalogEntry {
    std::string id;
    std::string equation;
    std::string suite;
    std::string summary;
    bool gating = true;
};

/// Every relation id the suites can emit, grouped by suite in run order.
const std::vector<CatalogEntry>& relation_catalog();
const CatalogEntry& catalog_entry(const std::string& id);
std::vector<std::string> suite_names();

/// Collects reports for one suite run. Each record() stamps the time elapsed
/// since the previous record, so operator construction is included.
class ReportSink {
public:
    ReportSink(std::string suite, const LatticeConfig& cfg);

    RelationReport& record(const std::string& id, Params params, ProjectorSpec projector, double residual,
                           double tolerance);
    RelationReport& record(const std::string& id, Params params, ProjectorSpec projector, double residual) {
        return record(id, std::move(params), projector, residual, tol_);
    }
    RelationReport& check(const std::string& id, Params params, ProjectorSpec projector, const SparseOperator& lhs,
                          const SparseOperator& rhs, const SparseOperator& projector_op);
    RelationReport& not_applicable(const std::string& id, Params params, std::string note);

    double tolerance() const { return tol_; }
    std::vector<RelationReport>& reports() { return reports_; }
    std::vector<RelationReport> take() { return std::move(reports_); }

private:
    std::string suite_;
    std::string q_label_;
    double tol_;
    std::chrono::steady_clock::time_point last_;
    std::vector<RelationReport> reports_;
};

bool all_pass(const std::vector<RelationReport>& reports);

} // namespace qsuper
