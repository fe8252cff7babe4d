#pragma once

// Artifact documents (conjugacy class data, character tables) as canonical
// JSON, plus a file-backed result cache keyed by the canonical group spec,
// the artifact kind, and the engine version. Loaded payloads re-validate
// before use; anything that fails is discarded and recomputed.

#include <optional>
#include <string>

#include "cforge/chartab.hpp"
#include "cforge/zoo.hpp"
#include "json.hpp"

namespace cforge {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bumping this invalidates every cache entry: the version participates in
// the key hash as well as the stored envelope.
inline constexpr const char* kEngineVersion = "1.0.0";

// "<kind>-<16 hex digits>", hashing the canonical (sorted-key, compact)
// spec JSON so whitespace or key order in the user's input cannot split
// the cache.
std::string cache_key(const GroupSpec& spec, const std::string& kind);

struct CacheEntry {
  std::string key;
  std::string kind;  // "classes" | "chartab"
  nlohmann::json payload;
  std::string engine = kEngineVersion;
};

// One directory of <key>.json envelopes. An empty dir disables the cache:
// load always misses and store is a no-op.
class ResultCache {
 public:
  // warn receives one line per discarded entry; pass the CLI's stderr
  // stream so summaries and warnings end up in the same place.
  explicit ResultCache(std::string dir, std::ostream* warn = nullptr);

  bool enabled() const { return !dir_.empty(); }
  std::string path_for(const std::string& key) const;

  // Envelope checks (engine version, key echo, kind) plus the payload
  // validator for the kind. Any failure removes the file and returns
  // nullopt so the caller recomputes.
  std::optional<CacheEntry> load(const std::string& key) const;

  // Atomic: the envelope is written to a temp file in the same directory
  // and renamed over the target.
  void store(const CacheEntry& entry) const;

 private:
  std::string dir_;
  std::ostream* warn_;
};

// Class-list document: group identity, order, degree, and per class the
// size, element order, centralizer order, and representative (0-based
// image array).
nlohmann::json classes_document(const GroupMeta& meta, const ClassTable& t);

// Character-table document: class data columns plus exact values. Integer
// values are stored as numbers; irrational ones as {"zeta": e, "mults":
// [...]}, the coefficient vector over the e-th roots of unity.
nlohmann::json chartab_document(const GroupMeta& meta, const CharTable& ct);

// Internal consistency of a classes payload: class sizes sum to the group
// order and each size times its centralizer order gives the order back.
bool validate_classes_document(const nlohmann::json& doc);

// Sum of squared degrees equals the group order, and the orthogonality
// norm of three columns (chosen by a generator seeded from the spec, so
// re-validation is reproducible) equals the centralizer order.
bool validate_chartab_document(const nlohmann::json& doc);

}  // namespace cforge
