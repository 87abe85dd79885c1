// qstab command-line tool. Talks to the library exclusively through the C API
// in qstab/qstab.h; status codes map straight onto exit codes:
//   0 success, 1 runtime/numerical error, 2 usage/spec error.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <qstab/qstab.h>

namespace {

struct SpecDeleter {
  void operator()(qstab_spec* s) const { qstab_spec_free(s); }
};
using SpecPtr = std::unique_ptr<qstab_spec, SpecDeleter>;

struct StringDeleter {
  void operator()(char* s) const { qstab_string_free(s); }
};
using CStr = std::unique_ptr<char, StringDeleter>;

int fail(int rc) {
  std::fprintf(stderr, "error: %s: %s\n", rc == QSTAB_ERR_SPEC ? "spec" : "runtime",
               qstab_last_error());
  return rc;
}

int load_spec(const std::string& path, const std::vector<std::string>& overrides,
              SpecPtr& out) {
  qstab_spec* raw = nullptr;
  if (int rc = qstab_spec_load(path.c_str(), &raw)) return rc;
  out.reset(raw);
  for (const auto& kv : overrides)
    if (int rc = qstab_spec_set(out.get(), kv.c_str())) return rc;
  return QSTAB_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("qstab ") + qstab_version() +
               " - Lyapunov feedback stabilization of the bilinear Schrodinger "
               "equation on an interval"};
  app.require_subcommand(1);

  const std::string footer =
      std::string("Recognized spec keys (section.key):\n") + qstab_spec_keys();

  struct Sub {
    CLI::App* cmd = nullptr;
    std::string spec_path;
    std::vector<std::string> overrides;
  };
  auto add_sub = [&](const char* name, const char* desc) {
    auto sub = std::make_shared<Sub>();
    sub->cmd = app.add_subcommand(name, desc);
    sub->cmd->add_option("spec", sub->spec_path, "experiment spec file (INI)")
        ->required();
    sub->cmd->add_option("--set", sub->overrides, "override, section.key=value");
    sub->cmd->add_option("overrides", sub->overrides,
                         "positional overrides, section.key=value");
    sub->cmd->footer(footer);
    return sub;
  };

  auto eig = add_sub("eig", "print the k,lambda_k eigenvalue table");
  auto check = add_sub("check-conditions", "audit the (V,Q) genericity conditions");
  auto simulate = add_sub("simulate", "run the closed loop and write artifacts");
  auto sweep = add_sub("sweep", "run the parameter sweep and write artifacts");
  app.footer(footer);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return QSTAB_ERR_SPEC;
  }

  const Sub& sub = *(eig->cmd->parsed()        ? eig
                     : check->cmd->parsed()    ? check
                     : simulate->cmd->parsed() ? simulate
                                               : sweep);
  SpecPtr spec;
  if (int rc = load_spec(sub.spec_path, sub.overrides, spec)) return fail(rc);

  char* out = nullptr;
  int rc = QSTAB_OK;
  if (eig->cmd->parsed())
    rc = qstab_eig_table(spec.get(), &out);
  else if (check->cmd->parsed())
    rc = qstab_check_conditions(spec.get(), &out);
  else if (simulate->cmd->parsed())
    rc = qstab_simulate(spec.get(), &out);
  else
    rc = qstab_sweep(spec.get(), &out);

  if (rc != QSTAB_OK) return fail(rc);
  CStr owned(out);
  std::fputs(owned.get(), stdout);
  return QSTAB_OK;
}
