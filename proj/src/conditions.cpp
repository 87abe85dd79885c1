#include "qstab/conditions.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace qstab {

GenericityReport check_conditions(const SpectralBasis& basis,
                                  const ControlOperator& control,
                                  double eps_coupling, double eps_gap) {
  if (!(eps_coupling > 0.0) || !(eps_gap > 0.0))
    throw SpecError("check_conditions: thresholds must be positive");

  const int K = basis.k_modes;
  const Vec& lam = basis.eigenvalues;

  GenericityReport rep;
  rep.eps_coupling = eps_coupling;
  rep.eps_gap = eps_gap;
  rep.k_modes = K;

  // (i) ground-state couplings <Q e_1, e_j>, j = 2..K
  for (int j = 2; j <= K; ++j) {
    const double v = control.q_matrix(0, j - 1);
    if (std::abs(v) <= eps_coupling) rep.coupling_violations.push_back({j, v});
  }

  // (ii) spectral-gap resonances: sort all gaps λ_p - λ_q and binary-search
  // each target λ_1 - λ_j within its tolerance window
  struct Gap {
    double value;
    int p, q;
  };
  std::vector<Gap> gaps;
  gaps.reserve(static_cast<size_t>(K) * K);
  for (int p = 1; p <= K; ++p)
    for (int q = 1; q <= K; ++q) gaps.push_back({lam[p - 1] - lam[q - 1], p, q});
  std::sort(gaps.begin(), gaps.end(),
            [](const Gap& l, const Gap& r) { return l.value < r.value; });

  for (int j = 2; j <= K; ++j) {
    const double target = lam[0] - lam[j - 1];
    const double tol = eps_gap * (1.0 + std::abs(target));
    auto lo = std::lower_bound(gaps.begin(), gaps.end(), target - tol,
                               [](const Gap& g, double v) { return g.value < v; });
    for (auto it = lo; it != gaps.end() && it->value <= target + tol; ++it) {
      const int p = it->p, q = it->q;
      if ((p == 1 && q == j) || (p == j && q == 1)) continue;  // {1,j} == {p,q}
      rep.resonance_violations.push_back({j, p, q, std::abs(target - it->value)});
    }
  }
  std::sort(rep.resonance_violations.begin(), rep.resonance_violations.end(),
            [](const ResonanceViolation& l, const ResonanceViolation& r) {
              if (l.j != r.j) return l.j < r.j;
              if (l.p != r.p) return l.p < r.p;
              return l.q < r.q;
            });

  rep.pass = rep.coupling_violations.empty() && rep.resonance_violations.empty();
  return rep;
}

std::string report_json(const GenericityReport& report) {
  nlohmann::ordered_json j;
  j["verdict"] = report.pass ? "pass" : "fail";
  j["eps_coupling"] = report.eps_coupling;
  j["eps_gap"] = report.eps_gap;
  j["coupling_violations"] = nlohmann::ordered_json::array();
  for (const auto& v : report.coupling_violations)
    j["coupling_violations"].push_back({{"j", v.j}, {"value", v.value}});
  j["resonance_violations"] = nlohmann::ordered_json::array();
  for (const auto& v : report.resonance_violations)
    j["resonance_violations"].push_back(
        {{"j", v.j}, {"p", v.p}, {"q", v.q}, {"mismatch", v.mismatch}});
  j["k_modes"] = report.k_modes;
  j["note"] = "audit covers the truncated spectrum k <= k_modes only";
  return j.dump(2);
}

}  // namespace qstab
