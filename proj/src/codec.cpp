#include "forcelab/codec.hpp"

#include <charconv>

#include "forcelab/errors.hpp"

namespace forcelab {

namespace {

std::string label_key(Label l) { return std::to_string(l); }

Label parse_label(const std::string& key) {
  Label out = 0;
  const auto* end = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(key.data(), end, out);
  if (key.empty() || ec != std::errc{} || ptr != end || (key.size() > 1 && key[0] == '0')) {
    throw DecodeError("label key \"" + key + "\" is not a decimal natural number");
  }
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw DecodeError(std::string("expected an object holding \"") + name + "\"");
  auto it = j.find(name);
  if (it == j.end()) throw DecodeError(std::string("missing field \"") + name + "\"");
  return *it;
}

std::uint64_t natural(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) {
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
    throw DecodeError(std::string(what) + ": expected a natural number");
  }
  return j.get<std::uint64_t>();
}

const Json& object(const Json& j, const char* what) {
  if (!j.is_object()) throw DecodeError(std::string(what) + ": expected an object");
  return j;
}

template <class V, class Fn>
LabelMap<V> decode_label_map(const Json& j, const char* what, Fn&& fn) {
  LabelMap<V> out;
  for (const auto& [key, value] : object(j, what).items()) {
    const Label l = parse_label(key);
    if (!out.emplace(l, fn(value)).second) throw DecodeError(std::string(what) + ": duplicate label " + key);
  }
  return out;
}

template <class V, class Fn>
Json encode_label_map(const LabelMap<V>& m, Fn&& fn) {
  Json out = Json::object();
  for (const auto& [label, v] : m) out[label_key(label)] = fn(v);
  return out;
}

}  // namespace

Json encode(const TSeq& t) {
  Json out = Json::array();
  for (auto v : t) out.push_back(v);
  return out;
}

Json encode(const BSeq& x) { return x.to_string(); }

Json encode(const Q0Condition& p) {
  Json out;
  out["ht"] = p.ht;
  out["entries"] = encode_label_map(p.entries, [](const TSeq& t) { return encode(t); });
  return out;
}

Json encode(const AtomicSentence& s) {
  Json out;
  out["alpha"] = s.alpha();
  out["i"] = s.level();
  out["j"] = s.value();
  return out;
}

Json encode(const LevelMap& f) {
  Json out = Json::array();
  for (std::size_t i = 0; i < f.height(); ++i) {
    Json level = Json::object();
    const auto values = f.level(i);
    for (std::size_t r = 0; r < values.size(); ++r) level[BSeq::from_rank(i, r).to_string()] = values[r];
    out.push_back(std::move(level));
  }
  return out;
}

Json encode(const StpQPair& a) {
  Json out;
  out["p"] = encode(a.p);
  out["f"] = encode(a.q.f);
  out["x"] = encode_label_map(a.q.x, [](const BSeq& x) { return encode(x); });
  return out;
}

Json encode(const StpPPair& a) {
  Json out;
  out["f"] = encode(a.f);
  out["entries"] = encode_label_map(a.entries, [](const P1Entry& e) {
    Json entry;
    entry["x"] = encode(e.x);
    entry["t"] = encode(e.t);
    return entry;
  });
  return out;
}

Json encode(const LabelSet& s) {
  Json out = Json::array();
  for (Label l : s) out.push_back(l);
  return out;
}

Json encode(const FilterTrace& tr) {
  Json out;
  out["chain"] = Json::array();
  for (const auto& d : tr.chain) out["chain"].push_back(encode(d));
  out["entry_height"] = encode_label_map(tr.entry_height, [](std::uint32_t h) { return Json(h); });
  return out;
}

Json encode(const GenericObjects& g) {
  Json out;
  out["f"] = encode(g.f);
  out["x"] = encode_label_map(g.x, [](const BSeq& x) { return encode(x); });
  out["t"] = encode_label_map(g.t, [](const TSeq& t) { return encode(t); });
  out["entry_height"] = encode_label_map(g.entry_height, [](std::uint32_t h) { return Json(h); });
  return out;
}

Json encode(const GenericReport& r) {
  Json out;
  out["checks"] = r.checks;
  out["violations"] = Json::array();
  for (const auto& v : r.violations) {
    Json e;
    e["kind"] = v.kind;
    e["alpha"] = v.alpha;
    if (v.beta) e["beta"] = *v.beta;
    e["level"] = v.level;
    out["violations"].push_back(std::move(e));
  }
  Json levels = Json::array();
  for (const auto& d : r.divergence_levels) levels.push_back(Json{{"alpha", d.alpha}, {"beta", d.beta}, {"level", d.level}});
  out["stats"]["divergence_levels"] = std::move(levels);
  return out;
}

Json encode(const IsoReport& r) {
  Json out;
  out["checked_pairs"] = r.checked_pairs;
  out["failures"] = Json::array();
  for (const auto& f : r.failures) {
    Json e;
    e["kind"] = f.kind;
    e["a"] = encode(f.a);
    if (f.b) e["b"] = encode(*f.b);
    e["leq_p"] = f.leq_p;
    e["leq_q"] = f.leq_q;
    out["failures"].push_back(std::move(e));
  }
  return out;
}

Json encode(const OrderLawReport& r) {
  Json out;
  out["checks"] = r.checks;
  out["violations"] = r.violation_count;
  out["examples"] = Json::array();
  for (const auto& v : r.violations) out["examples"].push_back(Json{{"law", v.law}, {"a", v.a}, {"b", v.b}, {"c", v.c}});
  return out;
}

Json encode(const ValidationResult& v) {
  Json out;
  out["ok"] = v.ok;
  out["violations"] = v.violations;
  return out;
}

std::string dump(const Json& j) { return j.dump(); }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("malformed JSON: ") + e.what());
  }
}

template <>
TSeq decode<TSeq>(const Json& j) {
  if (!j.is_array()) throw DecodeError("TSeq: expected an array of naturals");
  TSeq out;
  for (const auto& v : j) out.push_back(natural(v, "TSeq"));
  return out;
}

template <>
BSeq decode<BSeq>(const Json& j) {
  if (!j.is_string()) throw DecodeError("BSeq: expected a string of 0 and 1");
  try {
    return BSeq::parse(j.get<std::string>());
  } catch (const PreconditionError& e) {
    throw DecodeError(std::string("BSeq: ") + e.what());
  }
}

template <>
Q0Condition decode<Q0Condition>(const Json& j) {
  Q0Condition out;
  const auto ht = natural(field(j, "ht"), "Q0Condition.ht");
  if (ht > kMaxLevel) throw DecodeError("Q0Condition.ht: too large");
  out.ht = static_cast<std::uint32_t>(ht);
  out.entries = decode_label_map<TSeq>(field(j, "entries"), "Q0Condition.entries",
                                       [](const Json& v) { return decode<TSeq>(v); });
  return out;
}

template <>
AtomicSentence decode<AtomicSentence>(const Json& j) {
  const auto alpha = natural(field(j, "alpha"), "AtomicSentence.alpha");
  const auto i = natural(field(j, "i"), "AtomicSentence.i");
  const auto v = natural(field(j, "j"), "AtomicSentence.j");
  if (i > kMaxLevel) throw DecodeError("AtomicSentence.i: too large");
  try {
    return AtomicSentence(alpha, static_cast<std::uint32_t>(i), v);
  } catch (const Error& e) {
    throw DecodeError(std::string("AtomicSentence: ") + e.what());
  }
}

template <>
LevelMap decode<LevelMap>(const Json& j) {
  if (!j.is_array()) throw DecodeError("LevelMap: expected an array of levels");
  if (j.size() > 24) throw DecodeError("LevelMap: too many levels");
  std::vector<std::vector<std::uint64_t>> levels;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& level = object(j[i], "LevelMap level");
    const auto nodes = level_size(static_cast<std::uint32_t>(i));
    if (level.size() != nodes) throw DecodeError("LevelMap: level " + std::to_string(i) + " must have 2^i nodes");
    std::vector<std::uint64_t> values(nodes);
    std::vector<bool> seen(nodes, false);
    for (const auto& [key, value] : level.items()) {
      const auto node = decode<BSeq>(Json(key));
      if (node.size() != i) throw DecodeError("LevelMap: node \"" + key + "\" is on the wrong level");
      seen[node.rank()] = true;
      values[node.rank()] = natural(value, "LevelMap value");
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw DecodeError("LevelMap: level " + std::to_string(i) + " misses a node");
    }
    levels.push_back(std::move(values));
  }
  return LevelMap(std::move(levels));
}

template <>
StpQPair decode<StpQPair>(const Json& j) {
  StpQPair out;
  out.p = decode<Q0Condition>(field(j, "p"));
  out.q.f = decode<LevelMap>(field(j, "f"));
  out.q.x = decode_label_map<BSeq>(field(j, "x"), "StpQPair.x", [](const Json& v) { return decode<BSeq>(v); });
  return out;
}

template <>
StpPPair decode<StpPPair>(const Json& j) {
  StpPPair out;
  out.f = decode<LevelMap>(field(j, "f"));
  out.entries = decode_label_map<P1Entry>(field(j, "entries"), "StpPPair.entries", [](const Json& v) {
    return P1Entry{decode<BSeq>(field(v, "x")), decode<TSeq>(field(v, "t"))};
  });
  return out;
}

template <>
LabelSet decode<LabelSet>(const Json& j) {
  if (!j.is_array()) throw DecodeError("labels: expected an array of naturals");
  LabelSet out;
  for (const auto& v : j) out.insert(natural(v, "label"));
  return out;
}

template <>
GenericObjects decode<GenericObjects>(const Json& j) {
  GenericObjects out;
  out.f = decode<LevelMap>(field(j, "f"));
  out.x = decode_label_map<BSeq>(field(j, "x"), "objects.x", [](const Json& v) { return decode<BSeq>(v); });
  out.t = decode_label_map<TSeq>(field(j, "t"), "objects.t", [](const Json& v) { return decode<TSeq>(v); });
  out.entry_height = decode_label_map<std::uint32_t>(field(j, "entry_height"), "objects.entry_height", [](const Json& v) {
    const auto h = natural(v, "entry height");
    if (h > kMaxLevel) throw DecodeError("entry height too large");
    return static_cast<std::uint32_t>(h);
  });
  return out;
}

template <>
DQElement decode<DQElement>(const Json& j) {
  auto pair = decode<StpQPair>(j);
  if (!is_dq(pair)) throw DecodeError("not an element of D_Q");
  return DQElement(std::move(pair));
}

template <>
DPElement decode<DPElement>(const Json& j) {
  auto pair = decode<StpPPair>(j);
  if (!is_dp(pair)) throw DecodeError("not an element of D_P");
  return DPElement(std::move(pair));
}

template <>
DPStarElement decode<DPStarElement>(const Json& j) {
  auto pair = decode<StpPPair>(j);
  if (!is_dp_star(pair)) throw DecodeError("not an element of DP*");
  return DPStarElement(DPElement(std::move(pair)));
}

}  // namespace forcelab
