#pragma once

#include <string>

#include <json.hpp>

#include "hgv/covers.hpp"
#include "hgv/hypergraph.hpp"
#include "hgv/protocol.hpp"

namespace hgv {

using Json = nlohmann::ordered_json;

/// {"dim":2,"vertices":6,"edges":[{"v":[0,1,2],"m":1}]}; "dim" and "m" optional.
Hypergraph hypergraph_from_json(const nlohmann::json &j);
Json hypergraph_to_json(const Hypergraph &hg);

/// {"sets":[[0,2],[1,3]],"weights":["1/2","1/2"]}; weights may also be numbers.
WeightedCover cover_from_json(const nlohmann::json &j);
Json cover_to_json(const WeightedCover &cover);
WeightedCover load_cover_file(const std::string &path);

/// Accepts "p/q" strings, integers, and decimal numbers (read exactly from
/// their JSON text).
Rational rational_from_json(const nlohmann::json &j);

/// "auto", "none", "nu/e", or a number in [0, 1).
HedgeSpec hedge_from_json(const nlohmann::json &j);
HedgeSpec parse_hedge(std::string_view text);

/// Protocol file: {"hypergraph": {...} | "hypergraph_file": "path",
/// "cover": {...} | "greedy" | "chromatic" | "gamma", "hedge": ...}.
ProtocolSpec protocol_from_json(const nlohmann::json &j, const std::string &base_dir = ".");

/// Real values are emitted as JSON numbers rounded to double.
double json_number(const Real &value);

}  // namespace hgv
