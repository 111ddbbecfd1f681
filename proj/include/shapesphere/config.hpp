#pragma once

#include <map>
#include <string>

#include "shapesphere/masses.hpp"

namespace shapesphere {

// Flat-section key/value configuration. Keys are stored as "section.key";
// serialization is canonical (sections and keys sorted, fixed float format),
// so serialize(parse(x)) is a fixed point.
class RunConfig {
  public:
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);
    std::string serialize() const;

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    void set_double(const std::string& key, double value);
    void set_int(const std::string& key, long long value);

    MassDistribution masses() const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

int env_thread_count(); // SHAPESPHERE_THREADS, defaults to hardware concurrency

} // namespace shapesphere
