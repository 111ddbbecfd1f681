#include "shapesphere/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "shapesphere/errors.hpp"

namespace shapesphere {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError("config: malformed section header: " + t);
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("config: expected key = value: " + t);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        cfg.kv_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string RunConfig::serialize() const {
    std::string out;
    std::string section;
    bool first = true;
    for (const auto& [key, value] : kv_) {
        const auto dot = key.find('.');
        const std::string sec = (dot == std::string::npos) ? "" : key.substr(0, dot);
        const std::string name = (dot == std::string::npos) ? key : key.substr(dot + 1);
        if (sec != section || first) {
            if (!first) out += "\n";
            if (!sec.empty()) out += "[" + sec + "]\n";
            section = sec;
            first = false;
        }
        out += name + " = " + value + "\n";
    }
    return out;
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    return std::strtod(it->second.c_str(), nullptr);
}

long long RunConfig::get_int(const std::string& key, long long fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    return std::strtoll(it->second.c_str(), nullptr, 10);
}

void RunConfig::set_double(const std::string& key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    kv_[key] = buf;
}

void RunConfig::set_int(const std::string& key, long long value) {
    kv_[key] = std::to_string(value);
}

MassDistribution RunConfig::masses() const {
    return {get_double("masses.m1", 1.0 / 3.0), get_double("masses.m2", 1.0 / 3.0),
            get_double("masses.m3", 1.0 / 3.0)};
}

int env_thread_count() {
    if (const char* env = std::getenv("SHAPESPHERE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace shapesphere
