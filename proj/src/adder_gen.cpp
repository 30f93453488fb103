#include "adderkit/adder_gen.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "adderkit/error.hpp"

namespace adderkit {

namespace {

constexpr std::size_t kMaxBlockWidth = 1024;

enum class Family { And, Or };

CellKind cell_for(Family family, std::size_t fan_in) {
  static constexpr CellKind kAnd[] = {CellKind::AND2, CellKind::AND3, CellKind::AND4};
  static constexpr CellKind kOr[] = {CellKind::OR2, CellKind::OR3, CellKind::OR4};
  return family == Family::And ? kAnd[fan_in - 2] : kOr[fan_in - 2];
}

// Minimum-depth reduction with fan-in <= 4: each level groups the operands
// four at a time, and a lone leftover operand passes through to the next
// level unchanged.
NetId reduce(NetlistBuilder& builder, Family family, std::vector<NetId> operands) {
  while (operands.size() > 1) {
    std::vector<NetId> next;
    for (std::size_t i = 0; i < operands.size(); i += 4) {
      const std::size_t n = std::min<std::size_t>(4, operands.size() - i);
      if (n == 1) {
        next.push_back(operands[i]);
      } else {
        next.push_back(builder.add_gate(cell_for(family, n), std::span<const NetId>(operands).subspan(i, n)));
      }
    }
    operands = std::move(next);
  }
  return operands.front();
}

// Emits C_k over bits [0, k) and returns (carry, product terms).
SectionCarry carry_cone(NetlistBuilder& builder, const PGBundle& pg, NetId c0, std::size_t k) {
  SectionCarry out;
  // j = k-1 down to 0: P_{k-1} .. P_{j+1} G_j
  for (std::size_t j = k; j-- > 0;) {
    std::vector<NetId> literals;
    for (std::size_t i = k - 1; i > j; --i) literals.push_back(pg.p[i]);
    literals.push_back(pg.g[j]);
    out.terms.push_back(reduce(builder, Family::And, std::move(literals)));
  }
  std::vector<NetId> literals;
  for (std::size_t i = k; i-- > 0;) literals.push_back(pg.p[i]);
  literals.push_back(c0);
  out.terms.push_back(reduce(builder, Family::And, std::move(literals)));
  out.carry = reduce(builder, Family::Or, out.terms);
  return out;
}

void require_same_width(std::span<const NetId> a, std::span<const NetId> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::ArityMismatch,
                "operand widths differ (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

void require_lookahead_width(std::string_view what, std::size_t m) {
  if (m < 2) {
    throw Error(ErrorCode::InvalidBlockWidth, std::string(what) + " block needs at least 2 bits, got " + std::to_string(m));
  }
}

std::string lower_no_space(std::string_view text) {
  std::string out;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

std::optional<std::size_t> parse_count(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::RCA: return "rca";
    case BlockKind::CCLA: return "ccla";
    case BlockKind::SCBCLA: return "scbcla";
  }
  return "?";
}

std::size_t ArchitectureSpec::total_width() const {
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.width;
  return total;
}

ArchitectureSpec parse_arch_spec(std::string_view text) {
  const std::string clean = lower_no_space(text);
  if (clean.empty()) throw Error(ErrorCode::ParseError, "empty architecture spec");

  ArchitectureSpec spec;
  std::size_t start = 0;
  while (start <= clean.size()) {
    std::size_t end = clean.find(',', start);
    if (end == std::string::npos) end = clean.size();
    const std::string_view term = std::string_view(clean).substr(start, end - start);
    const std::string quoted = "'" + std::string(term) + "'";
    if (term.empty()) throw Error(ErrorCode::ParseError, "empty term at offset " + std::to_string(start));

    const auto colon = term.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "term " + quoted + " lacks ':'");
    const auto kind_text = term.substr(0, colon);
    BlockKind kind;
    if (kind_text == "rca") {
      kind = BlockKind::RCA;
    } else if (kind_text == "ccla") {
      kind = BlockKind::CCLA;
    } else if (kind_text == "scbcla") {
      kind = BlockKind::SCBCLA;
    } else {
      throw Error(ErrorCode::ParseError, "term " + quoted + " has unknown block kind");
    }

    auto rest = term.substr(colon + 1);
    std::size_t repeat = 1;
    if (const auto x = rest.find('x'); x != std::string_view::npos) {
      auto r = parse_count(rest.substr(x + 1));
      if (!r) throw Error(ErrorCode::ParseError, "term " + quoted + " has a malformed repeat count");
      repeat = *r;
      rest = rest.substr(0, x);
    }
    auto width = parse_count(rest);
    if (!width) throw Error(ErrorCode::ParseError, "term " + quoted + " has a malformed width");
    if (*width == 0) throw Error(ErrorCode::InvalidBlockWidth, "term " + quoted + " has zero width");
    if (repeat == 0) throw Error(ErrorCode::InvalidBlockWidth, "term " + quoted + " has zero repeat count");
    if (kind != BlockKind::RCA && *width < 2) {
      throw Error(ErrorCode::InvalidBlockWidth, "term " + quoted + ": lookahead blocks need width >= 2");
    }
    if (*width > kMaxBlockWidth || repeat > kMaxBlockWidth) {
      throw Error(ErrorCode::InvalidBlockWidth, "term " + quoted + " exceeds " + std::to_string(kMaxBlockWidth));
    }
    spec.blocks.insert(spec.blocks.end(), repeat, BlockSpec{kind, *width});
    start = end + 1;
  }
  return spec;
}

std::string to_string(const ArchitectureSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.blocks.size();) {
    std::size_t run = 1;
    while (i + run < spec.blocks.size() && spec.blocks[i + run] == spec.blocks[i]) ++run;
    if (!out.empty()) out += ',';
    out += std::string(to_string(spec.blocks[i].kind)) + ":" + std::to_string(spec.blocks[i].width);
    if (run > 1) out += "x" + std::to_string(run);
    i += run;
  }
  return out;
}

namespace {

// Designs 3-6 are plausible readings of the heterogeneous SCBCLA figures;
// the published text does not pin their internal partitioning.
const std::map<std::string, std::string, std::less<>>& preset_table() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"design1", "ccla:2,ccla:3x10"},
      {"design2", "rca:2,ccla:3x10"},
      {"design3", "scbcla:2,scbcla:3x10"},
      {"design4", "rca:2,scbcla:3x10"},
      {"design5", "rca:1,scbcla:3x9,scbcla:4"},
      {"design6", "rca:2,rca:1,scbcla:3x9,scbcla:2"},
      {"rca32", "rca:32"},
  };
  return table;
}

}  // namespace

ArchitectureSpec preset(std::string_view name) {
  const auto& table = preset_table();
  auto it = table.find(lower_no_space(name));
  if (it == table.end()) throw Error(ErrorCode::UnknownPreset, "no preset named '" + std::string(name) + "'");
  return parse_arch_spec(it->second);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : preset_table()) out.push_back(name);
    return out;
  }();
  return names;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

std::pair<NetId, NetId> gen_full_adder(NetlistBuilder& builder, NetId a, NetId b, NetId cin) {
  const NetId p = builder.add_gate(CellKind::XOR2, {a, b});
  const NetId sum = builder.add_gate(CellKind::XOR2, {p, cin});
  const NetId g = builder.add_gate(CellKind::AND2, {a, b});
  const NetId t = builder.add_gate(CellKind::AND2, {p, cin});
  const NetId cout = builder.add_gate(CellKind::OR2, {g, t});
  return {sum, cout};
}

PGBundle gen_pg(NetlistBuilder& builder, std::span<const NetId> a, std::span<const NetId> b) {
  require_same_width(a, b);
  PGBundle pg;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pg.g.push_back(builder.add_gate(CellKind::AND2, {a[i], b[i]}));
    pg.p.push_back(builder.add_gate(CellKind::XOR2, {a[i], b[i]}));
  }
  return pg;
}

LookaheadCarries gen_cclg(NetlistBuilder& builder, const PGBundle& pg, NetId c0) {
  if (pg.g.size() != pg.p.size()) throw Error(ErrorCode::ArityMismatch, "generate/propagate bundle widths differ");
  if (pg.width() == 0) throw Error(ErrorCode::InvalidBlockWidth, "lookahead generator needs at least 1 bit");
  LookaheadCarries out;
  for (std::size_t k = 1; k <= pg.width(); ++k) {
    auto cone = carry_cone(builder, pg, c0, k);
    out.carries.push_back(cone.carry);
    out.terms.push_back(std::move(cone.terms));
  }
  return out;
}

SectionCarry gen_scclg(NetlistBuilder& builder, const PGBundle& pg, NetId c0) {
  if (pg.g.size() != pg.p.size()) throw Error(ErrorCode::ArityMismatch, "generate/propagate bundle widths differ");
  if (pg.width() == 0) throw Error(ErrorCode::InvalidBlockWidth, "section carry generator needs at least 1 bit");
  return carry_cone(builder, pg, c0, pg.width());
}

BlockPorts gen_ccla_block(NetlistBuilder& builder, std::span<const NetId> a, std::span<const NetId> b, NetId cin) {
  require_same_width(a, b);
  require_lookahead_width("ccla", a.size());
  const PGBundle pg = gen_pg(builder, a, b);
  const LookaheadCarries lookahead = gen_cclg(builder, pg, cin);
  BlockPorts ports;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const NetId carry_in = i == 0 ? cin : lookahead.carries[i - 1];
    ports.sum.push_back(builder.add_gate(CellKind::XOR2, {pg.p[i], carry_in}));
  }
  ports.cout = lookahead.carries.back();
  ports.lookahead = lookahead.carries;
  return ports;
}

BlockPorts gen_scbcla_block(NetlistBuilder& builder, std::span<const NetId> a, std::span<const NetId> b, NetId cin) {
  require_same_width(a, b);
  require_lookahead_width("scbcla", a.size());
  const std::size_t m = a.size();
  const PGBundle pg = gen_pg(builder, a, b);
  const SectionCarry section = gen_scclg(builder, pg, cin);

  BlockPorts ports;
  NetId ripple = cin;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    ports.sum.push_back(builder.add_gate(CellKind::XOR2, {pg.p[i], ripple}));
    const NetId t = builder.add_gate(CellKind::AND2, {pg.p[i], ripple});
    ripple = builder.add_gate(CellKind::OR2, {pg.g[i], t});
  }
  // a^b^carry: the first XOR2 is the shared propagate P_{m-1}.
  ports.sum.push_back(builder.add_gate(CellKind::XOR2, {pg.p[m - 1], ripple}));
  ports.cout = section.carry;
  ports.lookahead = {section.carry};
  return ports;
}

BlockPorts gen_rca_block(NetlistBuilder& builder, std::span<const NetId> a, std::span<const NetId> b, NetId cin) {
  require_same_width(a, b);
  if (a.empty()) throw Error(ErrorCode::InvalidBlockWidth, "rca block needs at least 1 bit");
  BlockPorts ports;
  NetId carry = cin;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [sum, cout] = gen_full_adder(builder, a[i], b[i], carry);
    ports.sum.push_back(sum);
    carry = cout;
  }
  ports.cout = carry;
  return ports;
}

BlockPorts gen_block(NetlistBuilder& builder, const BlockSpec& block, std::span<const NetId> a,
                     std::span<const NetId> b, NetId cin) {
  if (a.size() != block.width) {
    throw Error(ErrorCode::ArityMismatch, "block width " + std::to_string(block.width) + " does not match " +
                                              std::to_string(a.size()) + " operand bits");
  }
  switch (block.kind) {
    case BlockKind::RCA: return gen_rca_block(builder, a, b, cin);
    case BlockKind::CCLA: return gen_ccla_block(builder, a, b, cin);
    case BlockKind::SCBCLA: return gen_scbcla_block(builder, a, b, cin);
  }
  throw Error(ErrorCode::ParseError, "unknown block kind");
}

Netlist compose(const ArchitectureSpec& spec, ComposeOptions options) {
  if (spec.blocks.empty()) throw Error(ErrorCode::InvalidBlockWidth, "architecture has no blocks");
  NetlistBuilder builder(spec.total_width());
  const auto a = builder.a_bits();
  const auto b = builder.b_bits();

  NetId carry = builder.cin();
  std::size_t offset = 0;
  for (std::size_t index = 0; index < spec.blocks.size(); ++index) {
    const BlockSpec& block = spec.blocks[index];
    const bool last = index + 1 == spec.blocks.size();
    const auto ports = gen_block(builder, block, std::span(a).subspan(offset, block.width),
                                 std::span(b).subspan(offset, block.width), carry);
    for (std::size_t i = 0; i < block.width; ++i) builder.bind_sum(offset + i, ports.sum[i]);

    if (options.expose_carries) {
      // Lookahead carries are C_{m-L+1}..C_m of the block.
      const std::size_t first = block.width - ports.lookahead.size() + 1;
      for (std::size_t j = 0; j < ports.lookahead.size(); ++j) {
        if (last && ports.lookahead[j] == ports.cout) continue;
        builder.expose_carry(offset + first + j, ports.lookahead[j]);
      }
    }
    if (last) builder.bind_cout(ports.cout);
    carry = ports.cout;
    offset += block.width;
  }
  return std::move(builder).finalize();
}

Netlist block_netlist(const BlockSpec& block, ComposeOptions options) {
  return compose(ArchitectureSpec{{block}}, options);
}

}  // namespace adderkit
