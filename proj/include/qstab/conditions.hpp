#pragma once

// Genericity audit of the pair (V, Q) on the truncated spectrum:
//   (i)  <Q e_1, e_j> != 0 for all 2 <= j <= K,
//   (ii) λ_1 - λ_j != λ_p - λ_q for all j,p,q <= K with {1,j} != {p,q}, j != 1.
// Exact inequalities are undecidable numerically, so both checks use
// thresholds that are recorded in the report. The audit covers only the
// truncated spectrum k <= K.

#include <string>
#include <vector>

#include "qstab/operators.hpp"
#include "qstab/spectral.hpp"

namespace qstab {

struct CouplingViolation {
  int j;         // mode index, 2 <= j <= K
  double value;  // Q_1j
};

struct ResonanceViolation {
  int j, p, q;      // λ_1 - λ_j matches λ_p - λ_q within tolerance
  double mismatch;  // |(λ_1 - λ_j) - (λ_p - λ_q)|
};

struct GenericityReport {
  bool pass = false;
  double eps_coupling = 0.0;  // absolute threshold on |Q_1j|
  double eps_gap = 0.0;       // relative threshold on the gap mismatch
  int k_modes = 0;
  std::vector<CouplingViolation> coupling_violations;    // ordered by j
  std::vector<ResonanceViolation> resonance_violations;  // ordered by (j,p,q)
};

// Coupling check: |Q_1j| <= eps_coupling. Resonance check:
// |(λ_1-λ_j) - (λ_p-λ_q)| <= eps_gap * (1 + |λ_1-λ_j|), found by sorting all
// K^2 gaps and binary-searching each target (O(K^2 log K)). Always returns a
// report; verdict passes iff both violation lists are empty.
GenericityReport check_conditions(const SpectralBasis& basis,
                                  const ControlOperator& control,
                                  double eps_coupling = 1e-8,
                                  double eps_gap = 1e-6);

// JSON form used by the CLI: {verdict, eps_coupling, eps_gap,
// coupling_violations:[{j,value}], resonance_violations:[{j,p,q,mismatch}],
// k_modes, note}. Byte-deterministic for identical inputs.
std::string report_json(const GenericityReport& report);

}  // namespace qstab
