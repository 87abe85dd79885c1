#include "qstab/profiles.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qstab {

namespace {

double param_or(const std::map<std::string, std::string>& params,
                const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw SpecError("profile: cannot parse " + key + " = '" + it->second + "'");
  }
}

Vec load_samples(const std::string& path, int m) {
  std::ifstream in(path);
  if (!in) throw SpecError("profile: cannot open sample file '" + path + "'");
  Vec v(m);
  std::string line;
  int i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (i >= m)
      throw SpecError("profile: '" + path + "' has more than " + std::to_string(m) +
                      " samples");
    try {
      v[i++] = std::stod(line);
    } catch (const std::exception&) {
      throw SpecError("profile: bad sample '" + line + "' in '" + path + "'");
    }
  }
  if (i != m)
    throw SpecError("profile: '" + path + "' has " + std::to_string(i) +
                    " samples, expected " + std::to_string(m));
  return v;
}

}  // namespace

Profile sample_profile(const std::string& kind,
                       const std::map<std::string, std::string>& params,
                       const Grid& grid) {
  const int m = grid.m_points;
  Profile p;
  auto fill = [&](auto&& f) {
    p.values.resize(m);
    for (int i = 0; i < m; ++i) p.values[i] = f(grid.x(i));
    p.has_boundary = true;
    p.left = f(grid.a);
    p.right = f(grid.b);
  };

  if (kind == "zero") {
    fill([](double) { return 0.0; });
  } else if (kind == "constant") {
    const double c = param_or(params, "value", 0.0);
    fill([c](double) { return c; });
  } else if (kind == "gaussian") {
    const double amp = param_or(params, "amplitude", 1.0);
    const double ctr = param_or(params, "center", 0.5 * (grid.a + grid.b));
    const double wid = param_or(params, "width", 1.0);
    fill([=](double x) { return amp * std::exp(-wid * (x - ctr) * (x - ctr)); });
  } else if (kind == "cosine") {
    const double amp = param_or(params, "amplitude", 1.0);
    const double cyc = param_or(params, "cycles", 1.0);
    const double L = grid.b - grid.a;
    fill([=](double x) { return amp * std::cos(cyc * M_PI * (x - grid.a) / L); });
  } else if (kind == "x") {
    fill([](double x) { return x; });
  } else if (kind == "x2") {
    fill([](double x) { return x * x; });
  } else if (kind == "file") {
    auto it = params.find("path");
    if (it == params.end()) throw SpecError("profile 'file': missing path");
    p.values = load_samples(it->second, m);
    p.has_boundary = false;
    // linear extrapolation for derivative stencils at the first/last node
    if (m >= 2) {
      p.left = 2.0 * p.values[0] - p.values[1];
      p.right = 2.0 * p.values[m - 1] - p.values[m - 2];
    } else {
      p.left = p.right = p.values[0];
    }
  } else {
    throw SpecError("profile: unknown kind '" + kind + "'");
  }
  return p;
}

}  // namespace qstab
