#include "classforge/harness/cache.hpp"

#include "classforge/error.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace classforge::harness {

ResultCache::ResultCache(std::string path) : path_(std::move(path)) {
  if (path_.empty())
    return;
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j["key"].is_string() || !j.contains("value")) {
      ++corrupt_;
      continue;
    }
    entries_.insert_or_assign(j["key"].get<std::string>(), j["value"]);
  }
}

std::optional<nlohmann::json> ResultCache::find(const std::string &key) const {
  auto it = entries_.find(key);
  if (it == entries_.end())
    return std::nullopt;
  return it->second;
}

void ResultCache::put(const std::string &key, const nlohmann::json &value) {
  if (!enabled())
    return;
  entries_.insert_or_assign(key, value);
  pending_.push_back(nlohmann::json{{"key", key}, {"value", value}}.dump());
}

void ResultCache::flush() {
  if (!enabled() || pending_.empty())
    return;
  std::ofstream out(path_, std::ios::app);
  if (!out)
    throw Error("cannot append to cache " + path_);
  for (const auto &line : pending_)
    out << line << '\n';
  out.flush();
  if (!out)
    throw Error("write to cache " + path_ + " failed");
  pending_.clear();
}

std::string cache_path_from_env(const std::string &fallback) {
  const char *v = std::getenv("CLASSFORGE_CACHE");
  return v ? std::string(v) : fallback;
}

std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string curve_hash(const jactor::HyperCurve &C) {
  std::ostringstream os;
  os << std::hex << fnv1a(jactor::to_json(C).dump());
  return os.str();
}

std::string class_key(const Int &D, unsigned long m) { return "class:" + D.get_str() + ":" + std::to_string(m); }

std::string jacobian_key(const jactor::HyperCurve &C, u64 p) {
  return "jacobian:" + curve_hash(C) + ":" + std::to_string(p);
}

std::string spec_digest(const constructions::FamilySpec &spec) {
  // Ranges and sampling choose points; they do not change a point's result.
  nlohmann::json j = constructions::to_json(spec);
  for (const char *k : {"lo", "hi", "N", "sample", "seed"})
    j["params"].erase(k);
  std::ostringstream os;
  os << std::hex << fnv1a(j.dump());
  return os.str();
}

std::string point_key(const std::string &digest, const std::vector<Int> &point) {
  std::string key = "point:" + digest;
  for (const auto &v : point)
    key += ':' + v.get_str();
  return key;
}

std::string point_key(const constructions::FamilySpec &spec, const std::vector<Int> &point) {
  return point_key(spec_digest(spec), point);
}

} // namespace classforge::harness
