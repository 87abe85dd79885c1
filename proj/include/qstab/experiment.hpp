#pragma once

// Reproducible experiment harness: a run is a pure function of its spec
// document. Spec files are flat INI sections
//   [grid] [potential] [control] [initial] [feedback] [integrator]
//   [conditions] [sweep] [output]
// and overrides are "section.key=value" strings applied onto the document.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qstab/conditions.hpp"
#include "qstab/feedback.hpp"
#include "qstab/integrator.hpp"
#include "qstab/specfile.hpp"

namespace qstab {

// Raw key-value document with the recognized-key registry applied.
class SpecDoc {
 public:
  static SpecDoc from_file(const std::string& path);
  static SpecDoc from_string(const std::string& text);

  // "section.key=value"; unknown keys are rejected with SpecError.
  void set(const std::string& key_eq_value);
  void set(const std::string& dotted_key, const std::string& value);

  const IniSections& sections() const { return kv_; }

  // One "section.key  description" line per recognized key.
  static std::string known_keys_help();

 private:
  IniSections kv_;
};

// Alpha selection: a literal weight or a fraction of α*(z0).
struct AlphaSpec {
  bool is_auto = false;
  double fraction = 0.5;  // used when is_auto
  double value = 0.0;     // used otherwise
};

struct ExperimentSpec {
  std::string name = "run";
  Grid grid;
  int k_modes = 32;
  std::string potential_kind = "zero";
  std::map<std::string, std::string> potential_params;
  std::string control_kind = "x";
  std::map<std::string, std::string> control_params;

  std::string initial_kind = "modes";  // modes | file | random
  std::vector<std::complex<double>> initial_coeffs;
  std::string initial_path;
  std::uint64_t seed = 0;

  AlphaSpec alpha;
  double delta = 1.0;

  double eps_coupling = 1e-8;
  double eps_gap = 1e-6;

  IntegratorConfig integrator;

  std::vector<AlphaSpec> sweep_alpha;
  std::vector<double> sweep_delta;
  std::vector<double> sweep_dt;
  std::vector<int> sweep_k_modes;

  std::string output_dir = "out";
};

// Validates and converts the document. Throws SpecError on unknown selectors,
// non-positive sizes, or malformed values.
ExperimentSpec materialize(const SpecDoc& doc);

// Building blocks shared by the runner and the CLI.
SpectralBasis basis_from_spec(const ExperimentSpec& spec);
ControlOperator control_from_spec(const ExperimentSpec& spec,
                                  const SpectralBasis& basis);
State initial_state_from_spec(const ExperimentSpec& spec,
                              const SpectralBasis& basis);

struct ResolvedFeedback {
  FeedbackParams params;
  bool alpha_auto = false;
  double alpha_star_value = 0.0;  // α*(z0) when alpha_auto
};

// Resolves alpha = auto:<fraction> against α*(z0). For random initial states
// with an explicit alpha, re-weights the ground-mode amplitude when needed so
// that V(z0) < 1 holds by construction (auto alpha already guarantees it).
ResolvedFeedback resolve_feedback(const ExperimentSpec& spec, State& z0,
                                  const SpectralBasis& basis);

struct RunResult {
  std::string summary_json;   // also written to <output_dir>/summary.json
  GenericityReport report;
  TrajectoryRecord record;
};

// Builds the basis and control, audits the conditions (a failed audit marks
// the summary verdict "non-generic" but the run proceeds), evolves the closed
// loop, and writes trajectory.csv + summary.json under spec.output_dir.
RunResult run_experiment(const ExperimentSpec& spec);

// Cartesian product over the non-empty sweep axes (order: alpha, delta, dt,
// k_modes; last axis fastest). Rows run concurrently on a bounded worker
// pool; per-run artifacts go to <output_dir>/run_NNN and the aggregate to
// <output_dir>/sweep.csv with columns
//   alpha,delta,dt,K,verdict,final_overlap,final_lyapunov,max_norm_drift,
//   cum_u2,wall_time_s
// A failing run is recorded in its row (verdict "error") and the sweep
// continues. Returns a summary JSON string.
std::string run_sweep(const ExperimentSpec& spec);

// "k,lambda_k" table for the spec's basis.
std::string eig_table(const ExperimentSpec& spec);

}  // namespace qstab
