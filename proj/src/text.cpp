#include "hybridsim/text.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hybridsim {

const IniEntry* IniSection::find(const std::string& key) const {
    for (const IniEntry& e : entries) {
        if (e.key == key) return &e;
    }
    return nullptr;
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    for (char c : s) {
        if (c == sep) {
            std::string t = trim(item);
            if (!t.empty()) out.push_back(t);
            item.clear();
        } else {
            item += c;
        }
    }
    std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
    return out;
}

std::vector<IniSection> parse_ini(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::vector<IniSection> sections;
    sections.push_back(IniSection{"", 0, {}});
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        // Whole-line comments only; '#'/';' inside a value stay part of it
        // (exit lists use ';' as their pair separator).
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                         ": unterminated section header");
            }
            sections.push_back(IniSection{trim(line.substr(1, line.size() - 2)), lineno, {}});
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        }
        IniEntry entry{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
        if (entry.key.empty()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": empty key");
        }
        IniSection& section = sections.back();
        if (section.find(entry.key)) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": duplicate key '" + entry.key + "'");
        }
        section.entries.push_back(std::move(entry));
    }
    return sections;
}

long long parse_int(const std::string& value, const std::string& key) {
    long long out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw std::runtime_error("key '" + key + "': '" + value + "' is not an integer");
    }
    return out;
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        size_t used = 0;
        double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw std::runtime_error("key '" + key + "': '" + value + "' is not a number");
    }
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw std::runtime_error("key '" + key + "': '" + value + "' is not a boolean");
}

std::string format_sig10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace hybridsim
