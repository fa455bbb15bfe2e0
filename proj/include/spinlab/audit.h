#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "spinlab/config.h"
#include "spinlab/operator_matrix.h"
#include "spinlab/spin_functions.h"

namespace spinlab {

inline constexpr int kAuditSchemaVersion = 1;

/// Section names in report order.
const std::vector<std::string>& auditSections();

struct AuditSummary {
  std::size_t verified = 0;
  std::size_t discrepant = 0;
};

struct AuditReport {
  int schemaVersion = kAuditSchemaVersion;
  std::string toolVersion;
  std::string timestamp;  ///< ISO-8601 UTC
  std::vector<CheckResult> entries;

  AuditSummary summary() const;
  std::vector<CheckResult> section(const std::string& name) const;
};

/// Runs every check group (in parallel where OpenMP allows) and assembles the
/// entries in fixed section order. Only the timestamp depends on wall time.
AuditReport runAudit(const RunConfig& config);

/// Individual groups, exposed for tests.
std::vector<CheckResult> classicalChecks();
std::vector<CheckResult> twoParticleChecks();
std::vector<CheckResult> dynamicsChecks(const RunConfig& config);
std::vector<CheckResult> operatorChecks();
std::vector<CheckResult> exclusionChecks();
std::vector<CheckResult> spectrumChecks(const OscillatorConfig& config);

/// Exact comparison of two ħ-graded matrices. A mismatch that is a scalar
/// multiple (possibly with a different ħ power) is noted as such.
CheckResult compareOperators(std::string section, std::string claimId, const OperatorMatrix& claimed,
                             const OperatorMatrix& computed, std::string note = {});

/// VERIFIED iff the two are nonzero scalar multiples of each other.
CheckResult compareStructure(std::string section, std::string claimId, const OperatorMatrix& claimed,
                             const OperatorMatrix& computed);

/// Vector with a common ħ grading, used for state actions.
struct GradedVector {
  ExactVector values;
  int hbarPower = 0;
};
std::string toString(const GradedVector& v);
CheckResult compareVectors(std::string section, std::string claimId, const GradedVector& claimed,
                           const GradedVector& computed, std::string note = {});

nlohmann::json toJson(const CheckResult& r);
nlohmann::json toJson(const AuditReport& r);
std::string toMarkdown(const AuditReport& r);

}  // namespace spinlab
