#include "cforge/cache.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cforge {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// FNV-1a, 64 bit. Stable across platforms, unlike std::hash.
u64 fnv1a(const std::string& s) {
  u64 h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex16(u64 h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

Cyclo value_from_json(const json& v, u32 e) {
  if (v.is_number_integer()) return Cyclo::integer(e, v.get<i64>());
  if (!v.is_object() || !v.contains("zeta") || !v.contains("mults"))
    throw IoError("malformed character value");
  if (v["zeta"].get<u32>() != e)
    throw IoError("character value conductor mismatch");
  Cyclo c(e);
  auto ms = v["mults"].get<std::vector<i64>>();
  if (ms.size() != e) throw IoError("character value length mismatch");
  c.mults = std::move(ms);
  return c;
}

json value_to_json(const Cyclo& v, const CycloCtx& ctx) {
  if (auto n = cyclo_as_integer(v, ctx)) return *n;
  json o;
  o["zeta"] = v.e;
  o["mults"] = v.mults;
  return o;
}

}  // namespace

std::string cache_key(const GroupSpec& spec, const std::string& kind) {
  std::string material = kind + "\n" + spec_to_json(spec) + "\n" + kEngineVersion;
  return kind + "-" + hex16(fnv1a(material));
}

ResultCache::ResultCache(std::string dir, std::ostream* warn)
    : dir_(std::move(dir)), warn_(warn ? warn : &std::cerr) {
  if (dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory " + dir_ + ": " +
                        ec.message());
}

std::string ResultCache::path_for(const std::string& key) const {
  return (fs::path(dir_) / (key + ".json")).string();
}

std::optional<CacheEntry> ResultCache::load(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  auto path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;  // plain miss
  std::ostringstream buf;
  buf << in.rdbuf();

  auto discard = [&](const std::string& why) -> std::optional<CacheEntry> {
    *warn_ << "[cache] discarding " << key << ": " << why << "\n";
    std::error_code ec;
    fs::remove(path, ec);
    return std::nullopt;
  };

  json env = json::parse(buf.str(), nullptr, false);
  if (env.is_discarded() || !env.is_object()) return discard("unreadable JSON");
  for (const char* field : {"engine", "key", "kind", "payload"})
    if (!env.contains(field)) return discard("incomplete envelope");
  if (env["engine"] != kEngineVersion) return discard("engine version mismatch");
  if (env["key"] != key) return discard("key mismatch");

  CacheEntry e;
  e.key = key;
  e.kind = env["kind"].get<std::string>();
  e.payload = env["payload"];
  e.engine = env["engine"].get<std::string>();
  try {
    bool ok = e.kind == "classes"   ? validate_classes_document(e.payload)
              : e.kind == "chartab" ? validate_chartab_document(e.payload)
                                    : false;
    if (!ok) return discard("payload failed re-validation");
  } catch (const std::exception& ex) {
    return discard(std::string("payload failed re-validation: ") + ex.what());
  }
  return e;
}

void ResultCache::store(const CacheEntry& entry) const {
  if (!enabled()) return;
  json env;
  env["engine"] = entry.engine;
  env["key"] = entry.key;
  env["kind"] = entry.kind;
  env["payload"] = entry.payload;

  auto path = path_for(entry.key);
  auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << env.dump() << "\n";
    if (!out) throw IoError("short write to " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + ": " + ec.message());
}

json classes_document(const GroupMeta& meta, const ClassTable& t) {
  json doc;
  doc["command"] = "classes";
  doc["spec"] = json::parse(spec_to_json(meta.spec));
  doc["name"] = meta.name;
  doc["order"] = t.group().order();
  doc["degree"] = t.group().degree();
  doc["action"] = meta.action;
  doc["class_count"] = t.count();
  json cs = json::array();
  for (u32 i = 0; i < t.count(); ++i) {
    json c;
    c["index"] = i;
    c["size"] = t.size(i);
    c["element_order"] = t.element_order(i);
    c["centralizer_order"] = t.centralizer_order(i);
    c["rep"] = std::vector<u32>(t.rep(i).begin(), t.rep(i).end());
    cs.push_back(std::move(c));
  }
  doc["classes"] = std::move(cs);
  return doc;
}

json chartab_document(const GroupMeta& meta, const CharTable& ct) {
  const ClassTable& t = ct.classes();
  json doc;
  doc["command"] = "chartab";
  doc["spec"] = json::parse(spec_to_json(meta.spec));
  doc["name"] = meta.name;
  doc["order"] = t.group().order();
  doc["class_count"] = t.count();
  doc["conductor"] = ct.conductor();
  json sizes = json::array(), orders = json::array(), cents = json::array();
  for (u32 j = 0; j < t.count(); ++j) {
    sizes.push_back(t.size(j));
    orders.push_back(t.element_order(j));
    cents.push_back(t.centralizer_order(j));
  }
  doc["sizes"] = std::move(sizes);
  doc["element_orders"] = std::move(orders);
  doc["centralizer_orders"] = std::move(cents);
  json degs = json::array();
  for (u32 r = 0; r < ct.rows(); ++r) degs.push_back(ct.degree(r));
  doc["degrees"] = std::move(degs);
  json rows = json::array();
  for (u32 r = 0; r < ct.rows(); ++r) {
    json row = json::array();
    for (u32 j = 0; j < t.count(); ++j)
      row.push_back(value_to_json(ct.value(r, j), ct.ctx()));
    rows.push_back(std::move(row));
  }
  doc["values"] = std::move(rows);
  return doc;
}

bool validate_classes_document(const json& doc) {
  for (const char* f : {"order", "degree", "class_count", "classes"})
    if (!doc.contains(f)) return false;
  u64 order = doc["order"].get<u64>();
  u32 degree = doc["degree"].get<u32>();
  const auto& cs = doc["classes"];
  if (!cs.is_array() || cs.size() != doc["class_count"].get<u64>()) return false;
  if (cs.empty()) return false;
  u64 sum = 0;
  for (const auto& c : cs) {
    u64 size = c["size"].get<u64>();
    if (size == 0 || order % size != 0) return false;
    if (size * c["centralizer_order"].get<u64>() != order) return false;
    if (c["rep"].size() != degree) return false;
    sum += size;
  }
  if (sum != order) return false;
  // class 0 is always the identity
  return cs[0]["size"] == 1 && cs[0]["element_order"] == 1;
}

bool validate_chartab_document(const json& doc) {
  for (const char* f :
       {"order", "class_count", "conductor", "centralizer_orders", "degrees",
        "values", "spec"})
    if (!doc.contains(f)) return false;
  u64 order = doc["order"].get<u64>();
  u32 k = doc["class_count"].get<u32>();
  u32 e = doc["conductor"].get<u32>();
  const auto& degs = doc["degrees"];
  const auto& rows = doc["values"];
  if (degs.size() != k || rows.size() != k) return false;

  u64 sq = 0;
  for (const auto& d : degs) {
    u64 dd = d.get<u64>();
    sq += dd * dd;
  }
  if (sq != order) return false;

  std::vector<std::vector<Cyclo>> vals(k, std::vector<Cyclo>(k));
  for (u32 r = 0; r < k; ++r) {
    if (rows[r].size() != k) return false;
    for (u32 j = 0; j < k; ++j) vals[r][j] = value_from_json(rows[r][j], e);
  }

  // Column-norm spot check on three columns. The picks are seeded from
  // the spec so repeated validations of one entry agree.
  CycloCtx ctx(e);
  Rng rng(fnv1a(doc["spec"].dump() + ":chartab-validate"));
  for (int pick = 0; pick < 3; ++pick) {
    u32 j = (u32)rng.below(k);
    Cyclo norm = Cyclo::integer(e, 0);
    for (u32 r = 0; r < k; ++r)
      norm = cyclo_add(norm, cyclo_mul(vals[r][j], cyclo_conj(vals[r][j])));
    auto n = cyclo_as_integer(norm, ctx);
    if (!n || (u64)*n != doc["centralizer_orders"][j].get<u64>()) return false;
  }
  return true;
}

}  // namespace cforge
