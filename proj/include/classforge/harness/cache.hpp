#ifndef CLASSFORGE_HARNESS_CACHE_HPP
#define CLASSFORGE_HARNESS_CACHE_HPP

#include "classforge/constructions/family.hpp"
#include "classforge/jactor/curve.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace classforge::harness {

using exactmath::Int;
using exactmath::u64;

/* Append-only line-JSON store, one {"key": ..., "value": ...} object per
 * line. Lines that do not parse are skipped and counted. Lookups see the
 * file as it was when the cache was opened plus this process's own puts;
 * one owner calls put and flush. */
class ResultCache {
public:
  // An empty path disables the cache.
  explicit ResultCache(std::string path = {});

  bool enabled() const { return !path_.empty(); }
  const std::string &path() const { return path_; }
  std::size_t corrupt_lines() const { return corrupt_; }
  std::size_t size() const { return entries_.size(); }

  std::optional<nlohmann::json> find(const std::string &key) const;
  void put(const std::string &key, const nlohmann::json &value);
  // Appends the pending puts to the file.
  void flush();

private:
  std::string path_;
  std::map<std::string, nlohmann::json> entries_;
  std::vector<std::string> pending_;
  std::size_t corrupt_ = 0;
};

// CLASSFORGE_CACHE when set, otherwise the given fallback.
std::string cache_path_from_env(const std::string &fallback);

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string &s);
std::string curve_hash(const jactor::HyperCurve &C);

std::string class_key(const Int &D, unsigned long m);
std::string jacobian_key(const jactor::HyperCurve &C, u64 p);
// Hash of the spec without its range and sampling parameters.
std::string spec_digest(const constructions::FamilySpec &spec);
std::string point_key(const std::string &digest, const std::vector<Int> &point);
std::string point_key(const constructions::FamilySpec &spec, const std::vector<Int> &point);

} // namespace classforge::harness

#endif
