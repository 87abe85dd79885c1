#include "qstab/specfile.hpp"

#include <sstream>

#include "qstab/errors.hpp"

namespace qstab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

IniSections parse_ini(const std::string& text) {
  IniSections out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw SpecError("spec line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw SpecError("spec line " + std::to_string(lineno) + ": empty section name");
      out[section];  // register even if empty
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SpecError("spec line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw SpecError("spec line " + std::to_string(lineno) + ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw SpecError("spec line " + std::to_string(lineno) + ": empty key");
    auto& sec = out[section];
    if (sec.count(key))
      throw SpecError("spec line " + std::to_string(lineno) + ": duplicate key '" + section +
                      "." + key + "'");
    sec[key] = value;
  }
  return out;
}

}  // namespace qstab
