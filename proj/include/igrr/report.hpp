#pragma once

// Outcome record for one verified identity.  Verifiers fill these in; the
// CLI renders them as deterministic text or JSON.  A violated hypothesis is
// NOT a report — it raises PreconditionError instead.

#include <string>
#include <vector>

namespace igrr {

struct DegreeLine {
  int degree = 0;
  std::string lhs, rhs;  // rendered classes / coefficients
  bool equal = true;
  bool lhs_integral = true;
  bool rhs_integral = true;
};

struct VerificationReport {
  std::string key;        // stable identifier; reports sort by it
  std::string kind;       // e.g. "zero_section", "tensor_character"
  std::string statement;  // one-line human description of what was checked
  bool pass = false;
  bool lhs_integral = true;
  bool rhs_integral = true;
  // Unscaled rational form of the identity, checked independently of the
  // scaled one wherever both exist.
  bool rational_equal = true;
  std::vector<DegreeLine> degrees;  // per-degree trace (deterministic)
  std::string note;                 // e.g. exploratory-mode annotations
};

}  // namespace igrr
