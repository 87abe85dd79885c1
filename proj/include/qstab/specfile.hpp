#pragma once

// Flat INI-style spec documents: [section] headers, key = value lines,
// '#' or ';' comments. Duplicate keys within a section are rejected.

#include <map>
#include <string>

namespace qstab {

using IniSections = std::map<std::string, std::map<std::string, std::string>>;

// Throws SpecError on malformed lines, keys outside a section, or duplicates.
IniSections parse_ini(const std::string& text);

}  // namespace qstab
