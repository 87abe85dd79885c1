// Exercises the shared-library surface exactly as an external client would:
// only qstab/qstab.h, opaque handles, status codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>
#include <qstab/qstab.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SpecGuard {
  qstab_spec* p = nullptr;
  ~SpecGuard() { qstab_spec_free(p); }
};

struct StrGuard {
  char* p = nullptr;
  ~StrGuard() { qstab_string_free(p); }
};

const char* kTinySpec =
    "[grid]\n"
    "m_points = 300\nk_modes = 6\n"
    "[potential]\n"
    "kind = gaussian\namplitude = 20\ncenter = 0.4\nwidth = 50\n"
    "[initial]\n"
    "coeffs = 1, 1\n"
    "[integrator]\n"
    "dt = 1e-3\nt_final = 0.1\n"
    "[output]\n"
    "dir = capi_test_out/run\n";

}  // namespace

TEST_CASE("version and key listing are available") {
  CHECK(std::string(qstab_version()) == "0.1.0");
  const std::string keys = qstab_spec_keys();
  CHECK(keys.find("grid.m_points") != std::string::npos);
  CHECK(keys.find("feedback.alpha") != std::string::npos);
  CHECK(keys.find("integrator.u_eval") != std::string::npos);
}

TEST_CASE("null arguments are rejected with a spec error") {
  CHECK(qstab_spec_load(nullptr, nullptr) == QSTAB_ERR_SPEC);
  CHECK(std::string(qstab_last_error()).size() > 0);
  CHECK(qstab_eig_table(nullptr, nullptr) == QSTAB_ERR_SPEC);
  qstab_string_free(nullptr);  // no-op
  qstab_spec_free(nullptr);    // no-op
}

TEST_CASE("loading a missing file fails with a spec error") {
  qstab_spec* spec = nullptr;
  CHECK(qstab_spec_load("no_such_file.ini", &spec) == QSTAB_ERR_SPEC);
  CHECK(spec == nullptr);
  CHECK(std::string(qstab_last_error()).find("no_such_file.ini") != std::string::npos);
}

TEST_CASE("malformed documents and unknown keys fail with a spec error") {
  qstab_spec* raw = nullptr;
  CHECK(qstab_spec_parse("not an ini\n", &raw) == QSTAB_ERR_SPEC);
  CHECK(qstab_spec_parse("[grid]\nbogus = 1\n", &raw) == QSTAB_ERR_SPEC);

  SpecGuard spec;
  REQUIRE(qstab_spec_parse(kTinySpec, &spec.p) == QSTAB_OK);
  CHECK(qstab_spec_set(spec.p, "grid.bogus=1") == QSTAB_ERR_SPEC);
  CHECK(qstab_spec_set(spec.p, "no_equals") == QSTAB_ERR_SPEC);
}

TEST_CASE("eig table through the C API") {
  SpecGuard spec;
  REQUIRE(qstab_spec_parse(kTinySpec, &spec.p) == QSTAB_OK);
  REQUIRE(qstab_spec_set(spec.p, "grid.k_modes=4") == QSTAB_OK);
  StrGuard csv;
  REQUIRE(qstab_eig_table(spec.p, &csv.p) == QSTAB_OK);
  const std::string table(csv.p);
  CHECK(table.rfind("k,lambda_k\n1,", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 5);
}

TEST_CASE("condition audit through the C API") {
  SpecGuard spec;
  REQUIRE(qstab_spec_parse(kTinySpec, &spec.p) == QSTAB_OK);
  REQUIRE(qstab_spec_set(spec.p, "potential.kind=zero") == QSTAB_OK);
  StrGuard out;
  REQUIRE(qstab_check_conditions(spec.p, &out.p) == QSTAB_OK);
  const json j = json::parse(std::string(out.p));
  CHECK(j["verdict"] == "fail");  // flat well with Q = x
  CHECK(j["k_modes"] == 6);
  CHECK(j["coupling_violations"].size() >= 1);
}

TEST_CASE("simulate through the C API writes artifacts and returns the summary") {
  fs::remove_all("capi_test_out");
  SpecGuard spec;
  REQUIRE(qstab_spec_parse(kTinySpec, &spec.p) == QSTAB_OK);
  StrGuard out;
  REQUIRE(qstab_simulate(spec.p, &out.p) == QSTAB_OK);
  const json j = json::parse(std::string(out.p));
  CHECK(j["verdict"] == "generic");
  CHECK(j["final_overlap"].get<double>() > 0.0);
  CHECK(fs::exists("capi_test_out/run/trajectory.csv"));
  CHECK(fs::exists("capi_test_out/run/summary.json"));
}

TEST_CASE("numerical failures map to the runtime status") {
  SpecGuard spec;
  REQUIRE(qstab_spec_parse(kTinySpec, &spec.p) == QSTAB_OK);
  // second excited mode alone: alpha_star is undefined (c_1 = 0)
  REQUIRE(qstab_spec_set(spec.p, "initial.coeffs=0, 1") == QSTAB_OK);
  StrGuard out;
  CHECK(qstab_simulate(spec.p, &out.p) == QSTAB_ERR_RUNTIME);
  CHECK(std::string(qstab_last_error()).size() > 0);
}

TEST_CASE("sweep through the C API") {
  SpecGuard spec;
  REQUIRE(qstab_spec_parse(kTinySpec, &spec.p) == QSTAB_OK);
  REQUIRE(qstab_spec_set(spec.p, "sweep.delta=0.5, 1") == QSTAB_OK);
  REQUIRE(qstab_spec_set(spec.p, "output.dir=capi_test_out/sweep") == QSTAB_OK);
  StrGuard out;
  REQUIRE(qstab_sweep(spec.p, &out.p) == QSTAB_OK);
  const json j = json::parse(std::string(out.p));
  CHECK(j["runs"] == 2);
  CHECK(j["succeeded"] == 2);
  CHECK(fs::exists("capi_test_out/sweep/sweep.csv"));
}
