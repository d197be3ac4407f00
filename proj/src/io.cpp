#include "twspin/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "twspin/errors.hpp"

namespace twspin {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) schema_error(path + "/" + key, "unknown field");
  }
}

std::int64_t get_int(const Json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "/" + key, "missing field");
  if (!it->is_number_integer()) schema_error(path + "/" + key, "expected an integer");
  return it->get<std::int64_t>();
}

std::vector<std::int64_t> get_int_array(const Json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) schema_error(path + "/" + std::to_string(i), "expected an integer");
    out.push_back(v[i].get<std::int64_t>());
  }
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                           ": malformed JSON");
  }
}

std::int64_t parse_int(std::string_view s, const std::string& what) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw Error(ErrorKind::ParseError, "expected an integer for " + what + ", got '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DualGraph graph_from_json(const Json& j) {
  if (!j.is_object()) schema_error("", "expected an object");
  check_keys(j, "", {"vertices", "edges"});
  const auto vit = j.find("vertices");
  if (vit == j.end()) schema_error("/vertices", "missing field");
  if (!vit->is_array()) schema_error("/vertices", "expected an array");
  std::vector<Vertex> vertices;
  for (std::size_t i = 0; i < vit->size(); ++i) {
    const auto path = "/vertices/" + std::to_string(i);
    const auto& v = (*vit)[i];
    if (!v.is_object()) schema_error(path, "expected an object");
    check_keys(v, path, {"genus", "legs"});
    Vertex vx;
    vx.genus = get_int(v, "genus", path);
    if (vx.genus < 0) schema_error(path + "/genus", "genus must be nonnegative");
    if (auto lit = v.find("legs"); lit != v.end()) vx.legs = get_int_array(*lit, path + "/legs");
    vertices.push_back(std::move(vx));
  }
  std::vector<Edge> edges;
  if (auto eit = j.find("edges"); eit != j.end()) {
    if (!eit->is_array()) schema_error("/edges", "expected an array");
    for (std::size_t i = 0; i < eit->size(); ++i) {
      const auto path = "/edges/" + std::to_string(i);
      const auto& e = (*eit)[i];
      if (!e.is_object()) schema_error(path, "expected an object");
      check_keys(e, path, {"tail", "head", "stabilizer"});
      Edge ed;
      const auto tail = get_int(e, "tail", path);
      const auto head = get_int(e, "head", path);
      for (auto [name, idx] : {std::pair{"tail", tail}, std::pair{"head", head}}) {
        if (idx < 0 || idx >= static_cast<std::int64_t>(vertices.size())) {
          throw Error(ErrorKind::BadIndex, "at " + path + "/" + name + ": vertex " + std::to_string(idx) + " of " +
                                               std::to_string(vertices.size()));
        }
      }
      ed.tail = static_cast<int>(tail);
      ed.head = static_cast<int>(head);
      ed.stabilizer = e.contains("stabilizer") ? get_int(e, "stabilizer", path) : 1;
      if (ed.stabilizer < 1) schema_error(path + "/stabilizer", "stabilizer must be positive");
      edges.push_back(ed);
    }
  }
  return DualGraph(std::move(vertices), std::move(edges));
}

DualGraph parse_graph(std::string_view text) { return graph_from_json(parse_json(text)); }

Json graph_to_json(const DualGraph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : g.vertices()) {
    Json vj;
    vj["genus"] = v.genus;
    vj["legs"] = v.legs;
    j["vertices"].push_back(std::move(vj));
  }
  j["edges"] = Json::array();
  for (const auto& e : g.edges()) {
    Json ej;
    ej["tail"] = e.tail;
    ej["head"] = e.head;
    ej["stabilizer"] = e.stabilizer;
    j["edges"].push_back(std::move(ej));
  }
  return j;
}

std::string emit_graph(const DualGraph& g) { return graph_to_json(g).dump(); }

LineBundleData parse_bundle(GraphPtr graph, std::string_view text) {
  const auto j = parse_json(text);
  if (!j.is_object()) schema_error("", "expected an object");
  check_keys(j, "", {"int_part", "mult"});
  for (const char* key : {"int_part", "mult"}) {
    if (!j.contains(key)) schema_error(std::string("/") + key, "missing field");
  }
  return LineBundleData(std::move(graph), get_int_array(j["int_part"], "/int_part"), get_int_array(j["mult"], "/mult"));
}

Json bundle_to_json(const LineBundleData& L) {
  Json j;
  j["int_part"] = L.int_part();
  j["mult"] = L.mult();
  return j;
}

LineBundleData bundle_from_spec(GraphPtr graph, std::string_view spec) {
  if (spec == "trivial") return LineBundleData::trivial(std::move(graph));
  constexpr std::string_view prefix = "omega:";
  if (!spec.starts_with(prefix)) {
    throw Error(ErrorKind::ParseError, "bundle spec must be 'trivial' or 'omega:k=K[,h=ID:VAL,...]'");
  }
  spec.remove_prefix(prefix.size());
  std::optional<std::int64_t> k;
  std::map<std::int64_t, std::int64_t> twists;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const auto item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.starts_with("k=")) {
      if (k) throw Error(ErrorKind::ParseError, "k given twice");
      k = parse_int(item.substr(2), "k");
    } else if (item.starts_with("h=")) {
      const auto body = item.substr(2);
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) throw Error(ErrorKind::ParseError, "twist must read h=ID:VAL");
      const auto id = parse_int(body.substr(0, colon), "marking id");
      if (!twists.emplace(id, parse_int(body.substr(colon + 1), "twist value")).second) {
        throw Error(ErrorKind::ParseError, "marking " + std::to_string(id) + " twisted twice");
      }
    } else {
      throw Error(ErrorKind::ParseError, "unknown bundle spec item '" + std::string(item) + "'");
    }
  }
  if (!k) throw Error(ErrorKind::ParseError, "bundle spec needs k=K");
  return omega_twisted(std::move(graph), *k, twists);
}

MultiIndex parse_multi_index(std::string_view text) {
  MultiIndex l;
  while (true) {
    const auto comma = text.find(',');
    const auto v = parse_int(text.substr(0, comma), "multi-index entry");
    if (v < 1) throw Error(ErrorKind::ParseError, "multi-index entries must be positive");
    l.entries.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return l;
}

}  // namespace twspin
