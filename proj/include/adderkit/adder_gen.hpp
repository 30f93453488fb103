#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adderkit/netlist.hpp"

namespace adderkit {

enum class BlockKind { RCA, CCLA, SCBCLA };

std::string_view to_string(BlockKind kind);

struct BlockSpec {
  BlockKind kind = BlockKind::RCA;
  std::size_t width = 1;

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

// Blocks ordered LSB-first.
struct ArchitectureSpec {
  std::vector<BlockSpec> blocks;

  std::size_t total_width() const;
  friend bool operator==(const ArchitectureSpec&, const ArchitectureSpec&) = default;
};

// Grammar: term ("," term)*, term := kind ":" width ["x" repeat], kind in
// {rca, ccla, scbcla} (case-insensitive). Whitespace is ignored.
ArchitectureSpec parse_arch_spec(std::string_view text);

// Canonical spelling with runs of identical blocks folded into "xN".
std::string to_string(const ArchitectureSpec& spec);

// design1..design6 and rca32.
ArchitectureSpec preset(std::string_view name);
const std::vector<std::string>& preset_names();

struct PGBundle {
  std::vector<NetId> g;
  std::vector<NetId> p;

  std::size_t width() const { return g.size(); }
};

// Carry outputs of a lookahead generator together with the product terms
// OR-ed into each carry (a single-literal term is the literal net itself).
struct LookaheadCarries {
  std::vector<NetId> carries;                  // C_1..C_m
  std::vector<std::vector<NetId>> terms;       // terms[k-1] belong to C_k
};

struct SectionCarry {
  NetId carry = 0;           // C_m
  std::vector<NetId> terms;  // product terms of C_m
};

struct BlockPorts {
  std::vector<NetId> sum;
  NetId cout = 0;
  // Lookahead carries the block produces. CCLA: C_1..C_m, SCBCLA: C_m
  // only, RCA: none. The last entry, when present, is cout.
  std::vector<NetId> lookahead;
};

// p = XOR2(a,b), sum = XOR2(p,cin), g = AND2(a,b), t = AND2(p,cin),
// cout = OR2(g,t).
std::pair<NetId, NetId> gen_full_adder(NetlistBuilder& builder, NetId a, NetId b, NetId cin);

// One AND2 (generate) and one XOR2 (propagate) per bit.
PGBundle gen_pg(NetlistBuilder& builder, std::span<const NetId> a, std::span<const NetId> b);

// Conventional lookahead generator. Every C_k is emitted in its flattened
// disjoint sum of products
//   C_k = G_{k-1} + P_{k-1}G_{k-2} + ... + P_{k-1}..P_1 G_0 + P_{k-1}..P_0 C_0
// as AND trees feeding an OR tree, both with fan-in at most 4. Carries do
// not share logic.
LookaheadCarries gen_cclg(NetlistBuilder& builder, const PGBundle& pg, NetId c0);

// Section-carry generator: the cone of C_m alone, built exactly as
// gen_cclg builds it.
SectionCarry gen_scclg(NetlistBuilder& builder, const PGBundle& pg, NetId c0);

BlockPorts gen_ccla_block(NetlistBuilder& builder, std::span<const NetId> a, std::span<const NetId> b, NetId cin);
BlockPorts gen_scbcla_block(NetlistBuilder& builder, std::span<const NetId> a, std::span<const NetId> b, NetId cin);
BlockPorts gen_rca_block(NetlistBuilder& builder, std::span<const NetId> a, std::span<const NetId> b, NetId cin);

BlockPorts gen_block(NetlistBuilder& builder, const BlockSpec& block, std::span<const NetId> a,
                     std::span<const NetId> b, NetId cin);

struct ComposeOptions {
  // Name lookahead carries c<k> (k = global bit position of the carry) and
  // list them as primary outputs. The final block's carry stays cout.
  bool expose_carries = false;
};

Netlist compose(const ArchitectureSpec& spec, ComposeOptions options = {});

// Builds one block as a standalone netlist of the block's width.
Netlist block_netlist(const BlockSpec& block, ComposeOptions options = {});

}  // namespace adderkit
