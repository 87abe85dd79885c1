#include "qstab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qstab/profiles.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace qstab {

namespace {

struct KeyInfo {
  const char* section;
  const char* key;
  const char* desc;
};

const KeyInfo kKnownKeys[] = {
    {"grid", "a", "left endpoint (default 0)"},
    {"grid", "b", "right endpoint (default 1)"},
    {"grid", "m_points", "interior grid points (default 2000)"},
    {"grid", "k_modes", "retained eigenmodes K (default 32; rule of thumb K <= m_points/50)"},
    {"potential", "kind", "zero | constant | gaussian | cosine | file (default zero)"},
    {"potential", "value", "constant: level"},
    {"potential", "amplitude", "gaussian/cosine: amplitude"},
    {"potential", "center", "gaussian: center"},
    {"potential", "width", "gaussian: exponent weight"},
    {"potential", "cycles", "cosine: half-periods across the interval"},
    {"potential", "path", "file: node samples, one real per line"},
    {"control", "kind", "x | x2 | cosine | file (default x)"},
    {"control", "amplitude", "cosine: amplitude"},
    {"control", "cycles", "cosine: half-periods across the interval"},
    {"control", "path", "file: node samples, one real per line"},
    {"initial", "kind", "modes | file | random (default modes)"},
    {"initial", "coeffs", "modes: comma-separated complex amplitudes, normalized (e.g. 1, 1 or 0.5+0.5i)"},
    {"initial", "path", "file: k_modes lines of 're im'"},
    {"initial", "seed", "random: RNG seed (default 0)"},
    {"feedback", "alpha", "Lyapunov weight: number, 'auto' or 'auto:<fraction>' (default auto:0.5)"},
    {"feedback", "delta", "feedback gain (default 1)"},
    {"conditions", "eps_coupling", "coupling threshold, absolute (default 1e-8)"},
    {"conditions", "eps_gap", "spectral-gap threshold, relative (default 1e-6)"},
    {"integrator", "dt", "time step (default 1e-3)"},
    {"integrator", "t_final", "final time (default 10)"},
    {"integrator", "record_stride", "record every n-th step (default 1)"},
    {"integrator", "u_eval", "half_step_midpoint | start_of_step (default half_step_midpoint)"},
    {"sweep", "alpha", "comma-separated alpha values (numbers or auto:<fraction>)"},
    {"sweep", "delta", "comma-separated gains"},
    {"sweep", "dt", "comma-separated time steps"},
    {"sweep", "k_modes", "comma-separated truncations"},
    {"output", "dir", "artifact directory (default out)"},
    {"output", "name", "scenario name (default run)"},
};

bool key_known(const std::string& section, const std::string& key) {
  for (const auto& k : kKnownKeys)
    if (section == k.section && key == k.key) return true;
  return false;
}

bool section_known(const std::string& section) {
  for (const auto& k : kKnownKeys)
    if (section == k.section) return true;
  return false;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw SpecError("cannot parse " + what + " = '" + s + "' as a number");
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw SpecError("cannot parse " + what + " = '" + s + "' as an integer");
  }
}

// "1", "-2.5", "0.5i", "-i", "1+2i", "0.3-0.4i"
std::complex<double> parse_complex(const std::string& raw, const std::string& what) {
  std::string s = trim(raw);
  if (s.empty()) throw SpecError(what + ": empty complex entry");
  const bool imag_tail = (s.back() == 'i' || s.back() == 'I');
  if (!imag_tail) return {parse_double(s, what), 0.0};
  s.pop_back();
  // split at the last top-level +/- (not leading, not an exponent sign)
  size_t cut = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  auto unit = [&](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t, what);
  };
  if (cut == std::string::npos) return {0.0, unit(s)};
  return {parse_double(s.substr(0, cut), what), unit(s.substr(cut))};
}

AlphaSpec parse_alpha(const std::string& s) {
  AlphaSpec a;
  if (s == "auto") {
    a.is_auto = true;
    a.fraction = 0.5;
    return a;
  }
  if (s.rfind("auto:", 0) == 0) {
    a.is_auto = true;
    a.fraction = parse_double(s.substr(5), "alpha fraction");
    if (!(a.fraction > 0.0)) throw SpecError("alpha: auto fraction must be > 0");
    return a;
  }
  a.value = parse_double(s, "alpha");
  if (!(a.value > 0.0)) throw SpecError("alpha: require alpha > 0");
  return a;
}

std::string lookup(const IniSections& kv, const std::string& section,
                   const std::string& key, const std::string& fallback) {
  auto sit = kv.find(section);
  if (sit == kv.end()) return fallback;
  auto kit = sit->second.find(key);
  return kit == sit->second.end() ? fallback : kit->second;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SpecDoc SpecDoc::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

SpecDoc SpecDoc::from_string(const std::string& text) {
  SpecDoc doc;
  doc.kv_ = parse_ini(text);
  for (const auto& [section, entries] : doc.kv_) {
    if (!section_known(section))
      throw SpecError("unknown spec section '[" + section + "]'");
    for (const auto& [key, value] : entries)
      if (!key_known(section, key))
        throw SpecError("unknown spec key '" + section + "." + key + "'");
  }
  return doc;
}

void SpecDoc::set(const std::string& key_eq_value) {
  const auto eq = key_eq_value.find('=');
  if (eq == std::string::npos)
    throw SpecError("override '" + key_eq_value + "' is not of the form section.key=value");
  set(trim(key_eq_value.substr(0, eq)), trim(key_eq_value.substr(eq + 1)));
}

void SpecDoc::set(const std::string& dotted_key, const std::string& value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string::npos)
    throw SpecError("override key '" + dotted_key + "' is not of the form section.key");
  const std::string section = dotted_key.substr(0, dot);
  const std::string key = dotted_key.substr(dot + 1);
  if (!key_known(section, key))
    throw SpecError("unknown spec key '" + section + "." + key + "'");
  kv_[section][key] = value;
}

std::string SpecDoc::known_keys_help() {
  std::string out;
  for (const auto& k : kKnownKeys) {
    out += k.section;
    out += '.';
    out += k.key;
    size_t pad = std::strlen(k.section) + std::strlen(k.key) + 1;
    out += std::string(pad < 26 ? 26 - pad : 2, ' ');
    out += k.desc;
    out += '\n';
  }
  return out;
}

ExperimentSpec materialize(const SpecDoc& doc) {
  const IniSections& kv = doc.sections();
  ExperimentSpec s;

  s.name = lookup(kv, "output", "name", "run");
  s.output_dir = lookup(kv, "output", "dir", "out");

  const double a = parse_double(lookup(kv, "grid", "a", "0"), "grid.a");
  const double b = parse_double(lookup(kv, "grid", "b", "1"), "grid.b");
  const long long m = parse_int(lookup(kv, "grid", "m_points", "2000"), "grid.m_points");
  if (m < 1 || m > 2000000) throw SpecError("grid.m_points out of range");
  s.grid = Grid(a, b, static_cast<int>(m));
  const long long k = parse_int(lookup(kv, "grid", "k_modes", "32"), "grid.k_modes");
  if (k < 1 || k > m) throw SpecError("grid.k_modes must lie in [1, m_points]");
  s.k_modes = static_cast<int>(k);

  s.potential_kind = lookup(kv, "potential", "kind", "zero");
  if (auto it = kv.find("potential"); it != kv.end()) s.potential_params = it->second;
  s.potential_params.erase("kind");
  static const std::vector<std::string> pot_kinds = {"zero", "constant", "gaussian",
                                                     "cosine", "file"};
  if (std::find(pot_kinds.begin(), pot_kinds.end(), s.potential_kind) == pot_kinds.end())
    throw SpecError("potential.kind '" + s.potential_kind + "' is not one of zero | "
                    "constant | gaussian | cosine | file");

  s.control_kind = lookup(kv, "control", "kind", "x");
  if (auto it = kv.find("control"); it != kv.end()) s.control_params = it->second;
  s.control_params.erase("kind");
  static const std::vector<std::string> ctl_kinds = {"x", "x2", "cosine", "file"};
  if (std::find(ctl_kinds.begin(), ctl_kinds.end(), s.control_kind) == ctl_kinds.end())
    throw SpecError("control.kind '" + s.control_kind + "' is not one of x | x2 | cosine | file");

  s.initial_kind = lookup(kv, "initial", "kind", "modes");
  if (s.initial_kind == "modes") {
    // default start: the canonical ground/first-excited mixture
    const std::string coeffs = lookup(kv, "initial", "coeffs", "1, 1");
    for (const auto& item : split_list(coeffs))
      s.initial_coeffs.push_back(parse_complex(item, "initial.coeffs"));
    if (s.initial_coeffs.empty()) throw SpecError("initial.coeffs is empty");
  } else if (s.initial_kind == "file") {
    s.initial_path = lookup(kv, "initial", "path", "");
    if (s.initial_path.empty()) throw SpecError("initial.kind = file requires initial.path");
  } else if (s.initial_kind == "random") {
    s.seed = static_cast<std::uint64_t>(
        parse_int(lookup(kv, "initial", "seed", "0"), "initial.seed"));
  } else {
    throw SpecError("initial.kind '" + s.initial_kind + "' is not one of modes | file | random");
  }

  s.alpha = parse_alpha(lookup(kv, "feedback", "alpha", "auto:0.5"));
  s.delta = parse_double(lookup(kv, "feedback", "delta", "1"), "feedback.delta");
  if (!(s.delta > 0.0)) throw SpecError("feedback.delta must be > 0");

  s.eps_coupling = parse_double(lookup(kv, "conditions", "eps_coupling", "1e-8"),
                                "conditions.eps_coupling");
  s.eps_gap = parse_double(lookup(kv, "conditions", "eps_gap", "1e-6"), "conditions.eps_gap");
  if (!(s.eps_coupling > 0.0) || !(s.eps_gap > 0.0))
    throw SpecError("conditions thresholds must be > 0");

  s.integrator.dt = parse_double(lookup(kv, "integrator", "dt", "1e-3"), "integrator.dt");
  s.integrator.t_final =
      parse_double(lookup(kv, "integrator", "t_final", "10"), "integrator.t_final");
  const long long stride =
      parse_int(lookup(kv, "integrator", "record_stride", "1"), "integrator.record_stride");
  if (stride < 1) throw SpecError("integrator.record_stride must be >= 1");
  s.integrator.record_stride = static_cast<int>(stride);
  const std::string ueval = lookup(kv, "integrator", "u_eval", "half_step_midpoint");
  if (ueval == "half_step_midpoint")
    s.integrator.u_eval = UEval::half_step_midpoint;
  else if (ueval == "start_of_step")
    s.integrator.u_eval = UEval::start_of_step;
  else
    throw SpecError("integrator.u_eval '" + ueval +
                    "' is not one of half_step_midpoint | start_of_step");
  if (!(s.integrator.dt > 0.0)) throw SpecError("integrator.dt must be > 0");
  if (!(s.integrator.t_final >= s.integrator.dt))
    throw SpecError("integrator.t_final must be >= dt");

  for (const auto& item : split_list(lookup(kv, "sweep", "alpha", "")))
    s.sweep_alpha.push_back(parse_alpha(item));
  for (const auto& item : split_list(lookup(kv, "sweep", "delta", ""))) {
    const double d = parse_double(item, "sweep.delta");
    if (!(d > 0.0)) throw SpecError("sweep.delta entries must be > 0");
    s.sweep_delta.push_back(d);
  }
  for (const auto& item : split_list(lookup(kv, "sweep", "dt", ""))) {
    const double d = parse_double(item, "sweep.dt");
    if (!(d > 0.0)) throw SpecError("sweep.dt entries must be > 0");
    s.sweep_dt.push_back(d);
  }
  for (const auto& item : split_list(lookup(kv, "sweep", "k_modes", ""))) {
    const long long kk = parse_int(item, "sweep.k_modes");
    if (kk < 1) throw SpecError("sweep.k_modes entries must be >= 1");
    s.sweep_k_modes.push_back(static_cast<int>(kk));
  }
  return s;
}

SpectralBasis basis_from_spec(const ExperimentSpec& spec) {
  const Profile pot = sample_profile(spec.potential_kind, spec.potential_params, spec.grid);
  return build_basis(spec.grid, pot.values, spec.k_modes);
}

ControlOperator control_from_spec(const ExperimentSpec& spec, const SpectralBasis& basis) {
  const Profile q = sample_profile(spec.control_kind, spec.control_params, spec.grid);
  return assemble_control(q.values, basis);
}

State initial_state_from_spec(const ExperimentSpec& spec, const SpectralBasis& basis) {
  const int K = basis.k_modes;
  State z;
  z.c = CVec::Zero(K);
  if (spec.initial_kind == "modes") {
    if (static_cast<int>(spec.initial_coeffs.size()) > K)
      throw SpecError("initial.coeffs lists " + std::to_string(spec.initial_coeffs.size()) +
                      " modes, basis has " + std::to_string(K));
    for (size_t i = 0; i < spec.initial_coeffs.size(); ++i) z.c[i] = spec.initial_coeffs[i];
  } else if (spec.initial_kind == "file") {
    std::ifstream in(spec.initial_path);
    if (!in) throw SpecError("cannot open initial state file '" + spec.initial_path + "'");
    for (int i = 0; i < K; ++i) {
      double re, im;
      if (!(in >> re >> im))
        throw SpecError("initial state file '" + spec.initial_path + "' needs " +
                        std::to_string(K) + " lines of 're im'");
      z.c[i] = {re, im};
    }
  } else {  // random: seeded complex Gaussians (hand-rolled Box-Muller so the
            // stream is identical across platforms)
    std::mt19937_64 rng(spec.seed);
    auto uniform = [&rng]() {
      return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
    };
    auto gauss_pair = [&](double& g1, double& g2) {
      const double r = std::sqrt(-2.0 * std::log(uniform()));
      const double th = 2.0 * M_PI * uniform();
      g1 = r * std::cos(th);
      g2 = r * std::sin(th);
    };
    for (int i = 0; i < K; ++i) {
      double re, im;
      gauss_pair(re, im);
      z.c[i] = {re, im};
    }
  }
  const double n = z.norm();
  if (!(n > 0.0)) throw SpecError("initial state is identically zero");
  z.c /= n;
  return z;
}

ResolvedFeedback resolve_feedback(const ExperimentSpec& spec, State& z0,
                                  const SpectralBasis& basis) {
  ResolvedFeedback out;
  if (spec.alpha.is_auto) {
    out.alpha_auto = true;
    out.alpha_star_value = alpha_star(z0, basis);
    out.params = FeedbackParams(spec.alpha.fraction * out.alpha_star_value, spec.delta);
    return out;  // V(z0) = 1 - (1-f)|c_1|^2 < 1 holds by construction for f < 1
  }
  out.params = FeedbackParams(spec.alpha.value, spec.delta);
  if (spec.initial_kind == "random" && lyapunov(z0, basis, out.params) >= 1.0) {
    // re-weight the ground-mode amplitude so that V(z0) < 1
    CVec tail = z0.c;
    tail[0] = 0.0;
    const double tn = tail.norm();
    if (tn > 0.0) {
      double S = 0.0;
      for (int k = 1; k < basis.k_modes; ++k) {
        const double lam = basis.eigenvalues[k];
        S += lam * lam * std::norm(tail[k] / tn);
      }
      const double aS = out.params.alpha * S;
      const double w2 = 2.0 * aS / (1.0 + 2.0 * aS);  // then V = (1+aS)/(1+2aS) < 1
      const double w = std::sqrt(w2);
      std::complex<double> phase = 1.0;
      if (std::abs(z0.c[0]) > 0.0) phase = z0.c[0] / std::abs(z0.c[0]);
      const double tail_scale = std::sqrt(1.0 - w2) / tn;
      z0.c = tail_scale * tail;
      z0.c[0] = w * phase;
    }
  }
  return out;
}

namespace {

ordered_json summarize(const ExperimentSpec& spec, const ResolvedFeedback& fb,
                       const GenericityReport& report, const TrajectoryRecord& rec,
                       double initial_lyapunov, long long n_steps) {
  ordered_json j;
  j["t_final"] = n_steps * spec.integrator.dt;
  j["dt"] = spec.integrator.dt;
  j["alpha"] = fb.params.alpha;
  j["delta"] = fb.params.delta;
  j["K"] = spec.k_modes;
  j["m_points"] = spec.grid.m_points;
  j["final_overlap"] = rec.final_overlap;
  j["final_lyapunov"] = rec.final_lyapunov;
  j["max_norm_drift"] = rec.max_norm_drift;
  j["monotonicity_violations"] = rec.monotonicity_violations;
  j["verdict"] = report.pass ? "generic" : "non-generic";
  j["scenario"] = spec.name;
  j["cum_u2"] = rec.cum_u2;
  j["initial_lyapunov"] = initial_lyapunov;
  j["alpha_mode"] = fb.alpha_auto ? "auto" : "literal";
  if (fb.alpha_auto) j["alpha_star"] = fb.alpha_star_value;
  j["conditions"] = ordered_json::parse(report_json(report));
  j["warnings"] = rec.warnings;
  j["artifacts"] = {{"trajectory_csv", "trajectory.csv"}, {"summary_json", "summary.json"}};
  return j;
}

}  // namespace

RunResult run_experiment(const ExperimentSpec& spec) {
  const SpectralBasis basis = basis_from_spec(spec);
  const ControlOperator control = control_from_spec(spec, basis);
  const GenericityReport report =
      check_conditions(basis, control, spec.eps_coupling, spec.eps_gap);

  State z0 = initial_state_from_spec(spec, basis);
  const ResolvedFeedback fb = resolve_feedback(spec, z0, basis);
  const double V0 = lyapunov(z0, basis, fb.params);

  TrajectoryRecord rec = evolve_closed_loop(z0, fb.params, spec.integrator, basis, control);
  const long long n_steps = static_cast<long long>(rec.applied_u.size());

  RunResult result;
  result.report = report;
  ordered_json j = summarize(spec, fb, report, rec, V0, n_steps);
  result.summary_json = j.dump(2) + "\n";

  fs::create_directories(spec.output_dir);
  write_file(fs::path(spec.output_dir) / "trajectory.csv", trajectory_csv(rec));
  write_file(fs::path(spec.output_dir) / "summary.json", result.summary_json);
  result.record = std::move(rec);
  return result;
}

std::string run_sweep(const ExperimentSpec& spec) {
  if (spec.sweep_alpha.empty() && spec.sweep_delta.empty() && spec.sweep_dt.empty() &&
      spec.sweep_k_modes.empty())
    throw SpecError("sweep: at least one non-empty axis is required");

  const std::vector<AlphaSpec> alphas =
      spec.sweep_alpha.empty() ? std::vector<AlphaSpec>{spec.alpha} : spec.sweep_alpha;
  const std::vector<double> deltas =
      spec.sweep_delta.empty() ? std::vector<double>{spec.delta} : spec.sweep_delta;
  const std::vector<double> dts =
      spec.sweep_dt.empty() ? std::vector<double>{spec.integrator.dt} : spec.sweep_dt;
  const std::vector<int> ks =
      spec.sweep_k_modes.empty() ? std::vector<int>{spec.k_modes} : spec.sweep_k_modes;

  struct Row {
    ExperimentSpec spec;
    bool ok = false;
    double alpha = std::nan(""), final_overlap = std::nan("");
    double final_lyapunov = std::nan(""), max_norm_drift = std::nan("");
    double cum_u2 = std::nan("");
    std::string verdict = "error";
    double wall_s = 0.0;
  };

  std::vector<Row> rows;
  int idx = 0;
  for (const auto& al : alphas)
    for (const double de : deltas)
      for (const double dt : dts)
        for (const int kk : ks) {
          Row r;
          r.spec = spec;
          r.spec.alpha = al;
          r.spec.delta = de;
          r.spec.integrator.dt = dt;
          r.spec.k_modes = kk;
          char sub[32];
          std::snprintf(sub, sizeof sub, "run_%03d", idx++);
          r.spec.output_dir = (fs::path(spec.output_dir) / sub).string();
          rows.push_back(std::move(r));
        }

  auto do_run = [](Row& r) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      RunResult res = run_experiment(r.spec);
      const ordered_json j = ordered_json::parse(res.summary_json);
      r.alpha = j["alpha"].get<double>();
      r.final_overlap = j["final_overlap"].get<double>();
      r.final_lyapunov = j["final_lyapunov"].get<double>();
      r.max_norm_drift = j["max_norm_drift"].get<double>();
      r.cum_u2 = j["cum_u2"].get<double>();
      r.verdict = j["verdict"].get<std::string>();
      r.ok = true;
      // rows that report success must satisfy the per-run invariants
      if (j["monotonicity_violations"].get<long long>() != 0 || r.max_norm_drift > 1e-10) {
        r.ok = false;
        r.verdict = "error";
        fs::create_directories(r.spec.output_dir);
        write_file(fs::path(r.spec.output_dir) / "error.txt",
                   "run violated the monotonicity/unitarity invariants\n");
      }
    } catch (const std::exception& e) {
      r.ok = false;
      r.verdict = "error";
      std::error_code ec;
      fs::create_directories(r.spec.output_dir, ec);
      if (!ec) {
        std::ofstream out(fs::path(r.spec.output_dir) / "error.txt");
        out << e.what() << "\n";
      }
    }
    r.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  const unsigned workers = std::max(
      1u, std::min({std::thread::hardware_concurrency(), static_cast<unsigned>(rows.size()), 8u}));
  if (workers <= 1) {
    for (auto& r : rows) do_run(r);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
          do_run(rows[i]);
      });
    for (auto& t : pool) t.join();
  }

  std::string csv =
      "alpha,delta,dt,K,verdict,final_overlap,final_lyapunov,max_norm_drift,cum_u2,"
      "wall_time_s\n";
  size_t ok_count = 0;
  for (const auto& r : rows) {
    csv += g17(r.alpha) + "," + g17(r.spec.delta) + "," + g17(r.spec.integrator.dt) + "," +
           std::to_string(r.spec.k_modes) + "," + r.verdict + "," + g17(r.final_overlap) +
           "," + g17(r.final_lyapunov) + "," + g17(r.max_norm_drift) + "," + g17(r.cum_u2) +
           "," + g17(r.wall_s) + "\n";
    if (r.ok) ++ok_count;
  }
  fs::create_directories(spec.output_dir);
  write_file(fs::path(spec.output_dir) / "sweep.csv", csv);

  ordered_json j;
  j["runs"] = rows.size();
  j["succeeded"] = ok_count;
  j["failed"] = rows.size() - ok_count;
  j["sweep_csv"] = (fs::path(spec.output_dir) / "sweep.csv").string();
  j["output_dir"] = spec.output_dir;
  return j.dump(2) + "\n";
}

std::string eig_table(const ExperimentSpec& spec) {
  return eigenvalue_csv(basis_from_spec(spec));
}

}  // namespace qstab
