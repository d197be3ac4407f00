#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "twspin/graph.hpp"
#include "twspin/picard.hpp"

namespace twspin {

using Json = nlohmann::ordered_json;

/// Whole file, or all of stdin when path is "-".
std::string read_input(const std::string& path);

/// Graph from `{"vertices":[{"genus":g,"legs":[...]}],"edges":[{"tail":t,"head":h,"stabilizer":l}]}`.
/// Syntax errors report line and column; schema errors report a JSON pointer.
DualGraph parse_graph(std::string_view text);
DualGraph graph_from_json(const Json& j);
Json graph_to_json(const DualGraph& g);
std::string emit_graph(const DualGraph& g);

/// `{"int_part":[...],"mult":[...]}` on the given graph.
LineBundleData parse_bundle(GraphPtr graph, std::string_view text);
Json bundle_to_json(const LineBundleData& L);

/// "omega:k=K[,h=ID:VAL,...]" or "trivial".
LineBundleData bundle_from_spec(GraphPtr graph, std::string_view spec);

/// Comma-separated positive integers, e.g. "2,1".
MultiIndex parse_multi_index(std::string_view text);

}  // namespace twspin
