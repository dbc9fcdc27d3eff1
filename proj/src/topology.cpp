#include "groom/topology.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "groom/errors.hpp"

namespace groom {

NodeIndex Topology::add_node(std::string name, GeoPoint position) {
  if (find_node(name)) throw ContractViolation("duplicate node id " + name);
  nodes_.push_back({std::move(name), position});
  return nodes_.size() - 1;
}

std::size_t Topology::add_link(std::string name, NodeIndex a, NodeIndex b, double length_km) {
  if (a >= nodes_.size() || b >= nodes_.size()) throw ContractViolation("link endpoint out of range");
  if (a == b) throw ContractViolation("self-loop link " + name);
  if (!(length_km > 0.0)) throw ContractViolation("link " + name + " must have positive length");
  links_.push_back({std::move(name), a, b, length_km});
  return links_.size() - 1;
}

std::optional<NodeIndex> Topology::find_node(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return i;
  }
  return std::nullopt;
}

NodeIndex Topology::node_index(std::string_view name) const {
  if (auto n = find_node(name)) return *n;
  throw ContractViolation("unknown node " + std::string(name));
}

std::vector<FiberId> Topology::fibers_from(NodeIndex node) const {
  std::vector<FiberId> out;
  for (std::size_t l = 0; l < links_.size(); ++l) {
    if (links_[l].a == node) out.push_back({static_cast<std::uint32_t>(l), 0});
    if (links_[l].b == node) out.push_back({static_cast<std::uint32_t>(l), 1});
  }
  return out;
}

std::optional<FiberId> Topology::fiber_between(NodeIndex u, NodeIndex v) const {
  std::optional<FiberId> best;
  for (auto f : fibers_from(u)) {
    if (fiber_to(f) != v) continue;
    if (!best || fiber_length(f) < fiber_length(*best)) best = f;
  }
  return best;
}

std::string Topology::fiber_label(FiberId f) const {
  return nodes_.at(fiber_from(f)).name + "->" + nodes_.at(fiber_to(f)).name;
}

double great_circle_km(GeoPoint a, GeoPoint b) {
  constexpr double kEarthRadiusKm = 6371.0;
  constexpr double kDeg = std::numbers::pi / 180.0;
  const double phi1 = a.latitude * kDeg;
  const double phi2 = b.latitude * kDeg;
  const double dphi = (b.latitude - a.latitude) * kDeg;
  const double dlambda = (b.longitude - a.longitude) * kDeg;
  const double h = std::sin(dphi / 2) * std::sin(dphi / 2) +
                   std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  bool line_start = true;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      line_start = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#' || (c == '?' && line_start)) {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    line_start = false;
    if (c == '(' || c == ')') {
      out.push_back({std::string(1, c), line});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
           text[j] != ')' && text[j] != '#') {
      ++j;
    }
    out.push_back({std::string(text.substr(i, j - i)), line});
    i = j;
  }
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const {
    if (done()) throw ParseError(last_line(), "unexpected end of input");
    return tokens_[pos_];
  }
  Token next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  void expect(std::string_view what) {
    Token t = next();
    if (t.text != what) {
      throw ParseError(t.line, fmt::format("expected '{}' but found '{}'", what, t.text));
    }
  }
  std::size_t last_line() const { return tokens_.empty() ? 0 : tokens_.back().line; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::optional<double> to_number(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

double expect_number(TokenStream& ts) {
  Token t = ts.next();
  auto v = to_number(t.text);
  if (!v) throw ParseError(t.line, "expected a number but found '" + t.text + "'");
  return *v;
}

bool is_identifier(const Token& t) { return t.text != "(" && t.text != ")"; }

void skip_balanced(TokenStream& ts) {
  ts.expect("(");
  int depth = 1;
  while (depth > 0) {
    Token t = ts.next();
    if (t.text == "(") ++depth;
    if (t.text == ")") --depth;
  }
}

void parse_nodes(TokenStream& ts, Topology& topo) {
  ts.expect("(");
  while (ts.peek().text != ")") {
    Token name = ts.next();
    if (!is_identifier(name)) throw ParseError(name.line, "expected node id");
    if (topo.find_node(name.text)) throw ParseError(name.line, "duplicate node id " + name.text);
    ts.expect("(");
    const double lon = expect_number(ts);
    const double lat = expect_number(ts);
    ts.expect(")");
    if (lat < -90.0 || lat > 90.0 || lon < -180.0 || lon > 180.0) {
      throw ParseError(name.line, "coordinates out of range for node " + name.text);
    }
    topo.add_node(name.text, {lat, lon});
  }
  ts.expect(")");
}

void parse_links(TokenStream& ts, Topology& topo) {
  std::set<std::string> seen;
  ts.expect("(");
  while (ts.peek().text != ")") {
    Token name = ts.next();
    if (!is_identifier(name)) throw ParseError(name.line, "expected link id");
    if (!seen.insert(name.text).second) throw ParseError(name.line, "duplicate link id " + name.text);
    ts.expect("(");
    Token src = ts.next();
    Token dst = ts.next();
    ts.expect(")");
    auto a = topo.find_node(src.text);
    if (!a) throw ParseError(src.line, "unknown endpoint " + src.text);
    auto b = topo.find_node(dst.text);
    if (!b) throw ParseError(dst.line, "unknown endpoint " + dst.text);
    if (*a == *b) throw ParseError(src.line, "link " + name.text + " is a self-loop");

    // SNDlib capacity/cost fields and the module list are accepted and ignored.
    std::optional<double> length;
    while (true) {
      const Token& t = ts.peek();
      if (t.text == "(") {
        skip_balanced(ts);
      } else if (t.text == "length") {
        ts.next();
        length = expect_number(ts);
        if (!(*length > 0.0)) throw ParseError(t.line, "link " + name.text + " length must be positive");
      } else if (to_number(t.text)) {
        ts.next();
      } else {
        break;
      }
    }
    double km = length.value_or(great_circle_km(topo.nodes()[*a].position, topo.nodes()[*b].position));
    if (!(km > 0.0)) throw ParseError(name.line, "link " + name.text + " has zero length");
    topo.add_link(name.text, *a, *b, km);
  }
  ts.expect(")");
}

}  // namespace

Topology parse_sndlib(std::string_view text) {
  TokenStream ts(tokenize(text));
  Topology topo;
  bool have_nodes = false;
  while (!ts.done()) {
    Token section = ts.next();
    if (section.text == "NODES") {
      if (have_nodes) throw ParseError(section.line, "duplicate NODES section");
      parse_nodes(ts, topo);
      have_nodes = true;
    } else if (section.text == "LINKS") {
      if (!have_nodes) throw ParseError(section.line, "LINKS section before NODES");
      parse_links(ts, topo);
    } else if (is_identifier(section) && !ts.done() && ts.peek().text == "(") {
      skip_balanced(ts);
    } else {
      throw ParseError(section.line, "malformed section '" + section.text + "'");
    }
  }
  if (!have_nodes) throw ParseError(ts.last_line(), "missing NODES section");
  return topo;
}

std::string serialize_sndlib(const Topology& topology, std::string_view network_name) {
  std::string out;
  out += "?SNDlib native format; type: network; version: 1.0\n";
  out += fmt::format("# network {}\n\nNODES (\n", network_name);
  for (const auto& n : topology.nodes()) {
    out += fmt::format("  {} ( {} {} )\n", n.name, n.position.longitude, n.position.latitude);
  }
  out += ")\n\nLINKS (\n";
  for (const auto& l : topology.links()) {
    out += fmt::format("  {} ( {} {} ) length {}\n", l.name, topology.nodes()[l.a].name,
                       topology.nodes()[l.b].name, l.length_km);
  }
  out += ")\n";
  return out;
}

Topology load_sndlib_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open topology file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sndlib(buf.str());
}

}  // namespace groom
