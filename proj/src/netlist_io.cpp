#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "adderkit/error.hpp"
#include "adderkit/netlist.hpp"

namespace adderkit {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

template <typename T>
std::optional<T> parse_uint(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

bool is_plain_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '$')) return false;
  }
  return true;
}

std::string_view verilog_primitive(CellKind kind) {
  switch (kind) {
    case CellKind::INV: return "not";
    case CellKind::AND2:
    case CellKind::AND3:
    case CellKind::AND4: return "and";
    case CellKind::OR2:
    case CellKind::OR3:
    case CellKind::OR4: return "or";
    case CellKind::XOR2: return "xor";
  }
  return "?";
}

}  // namespace

void write_netlist(std::ostream& out, const Netlist& netlist) {
  const auto& nets = netlist.nets();
  out << "width " << netlist.width() << '\n';
  for (const Gate& g : netlist.gates()) {
    out << 'g' << g.id << ' ' << to_string(g.kind);
    for (NetId in : g.inputs) out << ' ' << nets[in].name;
    out << " -> " << nets[g.output].name << '\n';
  }
  out << "outputs";
  for (NetId id : netlist.primary_outputs()) out << ' ' << nets[id].name;
  out << '\n';
}

std::string to_text(const Netlist& netlist) {
  std::ostringstream ss;
  write_netlist(ss, netlist);
  return ss.str();
}

Netlist read_netlist(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) fail(1, "empty input, expected 'width <N>'");
  auto header = split_ws(line);
  std::size_t width = 0;
  if (header.size() != 2 || header[0] != "width") fail(line_no, "expected 'width <N>'");
  if (auto w = parse_uint<std::size_t>(header[1]); w && *w > 0) {
    width = *w;
  } else {
    fail(line_no, "width must be a positive integer");
  }

  std::vector<Net> nets;
  std::unordered_map<std::string, NetId> by_name;
  std::map<NetId, std::size_t> unresolved;  // forward reference -> first line seen
  std::vector<bool> driven;
  auto intern = [&](std::string_view name) -> NetId {
    auto [it, inserted] = by_name.try_emplace(std::string(name), static_cast<NetId>(nets.size()));
    if (inserted) {
      nets.push_back(Net{it->second, std::string(name)});
      driven.push_back(false);
    }
    return it->second;
  };
  for (std::size_t i = 0; i < width; ++i) intern("a[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < width; ++i) intern("b[" + std::to_string(i) + "]");
  intern("cin");
  const std::size_t pi_count = nets.size();

  std::vector<Gate> gates;
  bool saw_outputs = false;
  std::vector<NetId> sums;
  NetId cout = 0;
  std::vector<NetId> carries;

  while (next_line()) {
    auto tokens = split_ws(line);
    if (tokens.empty()) {
      if (saw_outputs) continue;
      fail(line_no, "blank line inside netlist body");
    }
    if (saw_outputs) fail(line_no, "content after 'outputs' line");

    if (tokens[0] == "outputs") {
      saw_outputs = true;
      if (tokens.size() < width + 2) fail(line_no, "expected sum[0.." + std::to_string(width - 1) + "] and cout");
      for (std::size_t i = 0; i < width; ++i) {
        if (tokens[1 + i] != "sum[" + std::to_string(i) + "]") {
          fail(line_no, "expected sum[" + std::to_string(i) + "], got '" + std::string(tokens[1 + i]) + "'");
        }
        sums.push_back(intern(tokens[1 + i]));
      }
      if (tokens[1 + width] != "cout") fail(line_no, "expected cout after the sum outputs");
      cout = intern("cout");
      for (std::size_t i = width + 2; i < tokens.size(); ++i) {
        const auto& tok = tokens[i];
        if (tok.size() < 2 || tok[0] != 'c' || !parse_uint<std::size_t>(tok.substr(1))) {
          fail(line_no, "expected lookahead carry name c<k>, got '" + std::string(tok) + "'");
        }
        if (!by_name.contains(std::string(tok))) fail(line_no, "carry output '" + std::string(tok) + "' is never driven");
        carries.push_back(intern(tok));
      }
      continue;
    }

    if (tokens[0].size() < 2 || tokens[0][0] != 'g') fail(line_no, "expected gate line 'g<id> ...' or 'outputs'");
    auto id = parse_uint<GateId>(tokens[0].substr(1));
    if (!id || *id != gates.size()) {
      fail(line_no, "expected gate id g" + std::to_string(gates.size()) + ", got '" + std::string(tokens[0]) + "'");
    }
    if (tokens.size() < 4) fail(line_no, "truncated gate line");
    auto kind = parse_cell_kind(tokens[1]);
    if (!kind) fail(line_no, "unknown cell kind '" + std::string(tokens[1]) + "'");
    if (tokens[tokens.size() - 2] != "->") fail(line_no, "expected '-> <net>' at end of gate line");

    Gate g;
    g.id = *id;
    g.kind = *kind;
    for (std::size_t i = 2; i + 2 < tokens.size(); ++i) {
      const NetId in = intern(tokens[i]);
      if (in >= pi_count && !driven[in]) unresolved.try_emplace(in, line_no);
      g.inputs.push_back(in);
    }
    if (g.inputs.empty()) fail(line_no, "gate has no inputs");
    g.output = intern(tokens.back());
    driven[g.output] = true;
    unresolved.erase(g.output);
    gates.push_back(std::move(g));
  }

  if (!saw_outputs) fail(line_no + 1, "unexpected end of file, expected 'outputs' line");
  if (!unresolved.empty()) {
    const auto& [net, where] = *unresolved.begin();
    fail(where, "net '" + nets[net].name + "' is read but never driven");
  }
  return Netlist::from_parts(width, std::move(nets), std::move(gates), std::move(sums), cout, std::move(carries));
}

Netlist parse_netlist(std::string_view text) {
  std::istringstream ss{std::string(text)};
  return read_netlist(ss);
}

void write_verilog(std::ostream& out, const Netlist& netlist, std::string_view module_name) {
  const auto& nets = netlist.nets();
  const std::size_t msb = netlist.width() - 1;
  auto ref = [&](NetId id) -> std::string {
    const std::string& name = nets[id].name;
    if (netlist.is_primary_input(id) || is_plain_identifier(name)) return name;
    for (NetId s : netlist.sums()) {
      if (s == id) return name;
    }
    return "\\" + name + " ";
  };

  out << "module " << module_name << " (a, b, cin, sum, cout";
  for (NetId c : netlist.carries()) out << ", " << ref(c);
  out << ");\n";
  out << "  input [" << msb << ":0] a;\n";
  out << "  input [" << msb << ":0] b;\n";
  out << "  input cin;\n";
  out << "  output [" << msb << ":0] sum;\n";
  out << "  output cout;\n";
  for (NetId c : netlist.carries()) out << "  output " << ref(c) << ";\n";
  for (const Gate& g : netlist.gates()) {
    if (!netlist.is_primary_output(g.output)) out << "  wire " << ref(g.output) << ";\n";
  }
  out << '\n';
  for (const Gate& g : netlist.gates()) {
    out << "  " << verilog_primitive(g.kind) << " g" << g.id << " (" << ref(g.output);
    for (NetId in : g.inputs) out << ", " << ref(in);
    out << ");\n";
  }
  out << "endmodule\n";
}

}  // namespace adderkit
