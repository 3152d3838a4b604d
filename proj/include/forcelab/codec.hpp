#pragma once

// JSON encoding of every domain value. Object keys come out in a fixed order (labels
// ascending, tree nodes by rank), so encoding the same value twice gives the same bytes.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "forcelab/forcing.hpp"
#include "forcelab/generic_sim.hpp"
#include "forcelab/isomorphism.hpp"
#include "forcelab/iteration_p.hpp"
#include "forcelab/iteration_q.hpp"
#include "forcelab/order_check.hpp"
#include "forcelab/q0.hpp"

namespace forcelab {

using Json = nlohmann::ordered_json;

Json encode(const TSeq& t);
Json encode(const BSeq& x);
Json encode(const Q0Condition& p);
Json encode(const AtomicSentence& s);
Json encode(const LevelMap& f);
Json encode(const StpQPair& a);
Json encode(const StpPPair& a);
inline Json encode(const DQElement& d) { return encode(d.pair()); }
inline Json encode(const DPElement& d) { return encode(d.pair()); }
inline Json encode(const DPStarElement& d) { return encode(d.pair()); }
Json encode(const LabelSet& s);
Json encode(const FilterTrace& tr);
Json encode(const GenericObjects& g);
Json encode(const GenericReport& r);
Json encode(const IsoReport& r);
Json encode(const OrderLawReport& r);
Json encode(const ValidationResult& v);

/// Compact, deterministic text.
std::string dump(const Json& j);

/// Parses text; throws DecodeError on malformed JSON.
Json parse_json(std::string_view text);

/// Structural decoding. Throws DecodeError on wrong shapes, bad bit strings, non-numeric
/// label keys or values that do not fit. Semantic validity is left to validate_*.
template <class T>
T decode(const Json& j);

template <> TSeq decode<TSeq>(const Json& j);
template <> BSeq decode<BSeq>(const Json& j);
template <> Q0Condition decode<Q0Condition>(const Json& j);
template <> AtomicSentence decode<AtomicSentence>(const Json& j);
template <> LevelMap decode<LevelMap>(const Json& j);
template <> StpQPair decode<StpQPair>(const Json& j);
template <> StpPPair decode<StpPPair>(const Json& j);
template <> LabelSet decode<LabelSet>(const Json& j);
template <> GenericObjects decode<GenericObjects>(const Json& j);
/// These also check membership and throw DecodeError when it fails.
template <> DQElement decode<DQElement>(const Json& j);
template <> DPElement decode<DPElement>(const Json& j);
template <> DPStarElement decode<DPStarElement>(const Json& j);

template <class T>
T decode_text(std::string_view text) {
  return decode<T>(parse_json(text));
}

}  // namespace forcelab
