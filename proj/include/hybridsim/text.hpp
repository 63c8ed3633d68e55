#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hybridsim {

// Minimal INI dialect shared by experiment configs and provider catalogs:
// lines starting with '#' or ';' are comments (no inline comments; values
// may contain either character), blank lines ignored, 'key = value' pairs,
// and '[section name]' headers. Keys before any header land in an unnamed
// section. Duplicate keys within a section are an error.
struct IniEntry {
    std::string key;
    std::string value;
    int line = 0;
};

struct IniSection {
    std::string name;  // empty for the leading unnamed section
    int line = 0;
    std::vector<IniEntry> entries;

    const IniEntry* find(const std::string& key) const;
};

std::vector<IniSection> parse_ini(const std::filesystem::path& path);

std::string trim(const std::string& s);
std::vector<std::string> split_list(const std::string& s, char sep = ',');

// Parse helpers that name the key in their error message.
long long parse_int(const std::string& value, const std::string& key);
double parse_double(const std::string& value, const std::string& key);
bool parse_bool(const std::string& value, const std::string& key);

// Shortest decimal form with 10 significant digits; used everywhere a cost
// or time value is serialized so reruns are byte-identical.
std::string format_sig10(double v);

}  // namespace hybridsim
