#include "qstab/qstab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "qstab/errors.hpp"
#include "qstab/experiment.hpp"

// Opaque handle: a raw spec document plus any overrides applied onto it.
struct qstab_spec {
  qstab::SpecDoc doc;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) {
  g_last_error = msg;
  // keep the message machine-parseable: one line
  for (char& c : g_last_error)
    if (c == '\n' || c == '\r') c = ' ';
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return QSTAB_OK;
  } catch (const qstab::SpecError& e) {
    set_error(e.what());
    return QSTAB_ERR_SPEC;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QSTAB_ERR_RUNTIME;
  } catch (...) {
    set_error("unknown error");
    return QSTAB_ERR_RUNTIME;
  }
}

int require(bool cond, const char* msg) {
  if (cond) return QSTAB_OK;
  set_error(msg);
  return QSTAB_ERR_SPEC;
}

}  // namespace

extern "C" {

const char* qstab_version(void) { return "0.1.0"; }

const char* qstab_last_error(void) { return g_last_error.c_str(); }

void qstab_string_free(char* s) { std::free(s); }

const char* qstab_spec_keys(void) {
  static const std::string keys = qstab::SpecDoc::known_keys_help();
  return keys.c_str();
}

int qstab_spec_load(const char* path, qstab_spec** out) {
  if (int rc = require(path && out, "qstab_spec_load: null argument")) return rc;
  *out = nullptr;
  return guarded([&] { *out = new qstab_spec{qstab::SpecDoc::from_file(path)}; });
}

int qstab_spec_parse(const char* text, qstab_spec** out) {
  if (int rc = require(text && out, "qstab_spec_parse: null argument")) return rc;
  *out = nullptr;
  return guarded([&] { *out = new qstab_spec{qstab::SpecDoc::from_string(text)}; });
}

int qstab_spec_set(qstab_spec* spec, const char* key_eq_value) {
  if (int rc = require(spec && key_eq_value, "qstab_spec_set: null argument")) return rc;
  return guarded([&] { spec->doc.set(key_eq_value); });
}

void qstab_spec_free(qstab_spec* spec) { delete spec; }

int qstab_eig_table(const qstab_spec* spec, char** csv_out) {
  if (int rc = require(spec && csv_out, "qstab_eig_table: null argument")) return rc;
  *csv_out = nullptr;
  return guarded([&] {
    const auto s = qstab::materialize(spec->doc);
    *csv_out = dup_string(qstab::eig_table(s));
  });
}

int qstab_check_conditions(const qstab_spec* spec, char** json_out) {
  if (int rc = require(spec && json_out, "qstab_check_conditions: null argument")) return rc;
  *json_out = nullptr;
  return guarded([&] {
    const auto s = qstab::materialize(spec->doc);
    const auto basis = qstab::basis_from_spec(s);
    const auto control = qstab::control_from_spec(s, basis);
    const auto report =
        qstab::check_conditions(basis, control, s.eps_coupling, s.eps_gap);
    *json_out = dup_string(qstab::report_json(report) + "\n");
  });
}

int qstab_simulate(const qstab_spec* spec, char** summary_json_out) {
  if (int rc = require(spec && summary_json_out, "qstab_simulate: null argument")) return rc;
  *summary_json_out = nullptr;
  return guarded([&] {
    const auto s = qstab::materialize(spec->doc);
    *summary_json_out = dup_string(qstab::run_experiment(s).summary_json);
  });
}

int qstab_sweep(const qstab_spec* spec, char** summary_json_out) {
  if (int rc = require(spec && summary_json_out, "qstab_sweep: null argument")) return rc;
  *summary_json_out = nullptr;
  return guarded([&] {
    const auto s = qstab::materialize(spec->doc);
    *summary_json_out = dup_string(qstab::run_sweep(s));
  });
}

}  // extern "C"
