#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adderkit {

using NetId = std::uint32_t;
using GateId = std::uint32_t;

inline constexpr std::uint32_t kNoGate = 0xFFFFFFFFu;

enum class CellKind : std::uint8_t { INV, AND2, AND3, AND4, OR2, OR3, OR4, XOR2 };

inline constexpr std::size_t kCellKindCount = 8;
inline constexpr std::array<CellKind, kCellKindCount> kAllCellKinds = {
    CellKind::INV, CellKind::AND2, CellKind::AND3, CellKind::AND4,
    CellKind::OR2, CellKind::OR3,  CellKind::OR4,  CellKind::XOR2};

constexpr std::size_t arity(CellKind kind) {
  switch (kind) {
    case CellKind::INV: return 1;
    case CellKind::AND2:
    case CellKind::OR2:
    case CellKind::XOR2: return 2;
    case CellKind::AND3:
    case CellKind::OR3: return 3;
    case CellKind::AND4:
    case CellKind::OR4: return 4;
  }
  return 0;
}

constexpr std::size_t index_of(CellKind kind) { return static_cast<std::size_t>(kind); }

std::string_view to_string(CellKind kind);
std::optional<CellKind> parse_cell_kind(std::string_view text);

struct Net {
  NetId id = 0;
  std::string name;
};

struct Gate {
  GateId id = 0;
  CellKind kind = CellKind::INV;
  std::vector<NetId> inputs;
  NetId output = 0;
};

// A sink pin: gate `gate` reads the net on input position `pin`.
struct Sink {
  GateId gate = 0;
  std::uint32_t pin = 0;
};

class NetlistBuilder;

// Immutable gate-level adder netlist.
//
// Net layout is fixed: a[0..w) occupy ids [0, w), b[0..w) occupy [w, 2w),
// cin is 2w. Nets created afterwards follow in creation order. The primary
// outputs are sum[0..w), cout and any exposed lookahead carries.
class Netlist {
 public:
  // Assembles a netlist without checking any structural invariant. Used by
  // the text reader and by tests that need deliberately broken netlists;
  // run validate() before trusting the result.
  static Netlist from_parts(std::size_t width, std::vector<Net> nets, std::vector<Gate> gates,
                            std::vector<NetId> sums, NetId cout, std::vector<NetId> carries);

  std::size_t width() const noexcept { return width_; }
  const std::vector<Net>& nets() const noexcept { return nets_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const Net& net(NetId id) const { return nets_.at(id); }
  const Gate& gate(GateId id) const { return gates_.at(id); }

  NetId a(std::size_t bit) const { return static_cast<NetId>(bit); }
  NetId b(std::size_t bit) const { return static_cast<NetId>(width_ + bit); }
  NetId cin() const { return static_cast<NetId>(2 * width_); }
  std::size_t primary_input_count() const noexcept { return 2 * width_ + 1; }
  bool is_primary_input(NetId id) const noexcept { return id <= cin(); }

  const std::vector<NetId>& sums() const noexcept { return sums_; }
  NetId cout() const noexcept { return cout_; }
  // Exposed lookahead carries other than cout, in export order.
  const std::vector<NetId>& carries() const noexcept { return carries_; }
  // sum[0..w), cout, carries...
  std::vector<NetId> primary_outputs() const;
  bool is_primary_output(NetId id) const;

  // First gate driving the net, or kNoGate for primary inputs and undriven
  // nets.
  GateId driver(NetId id) const { return drivers_.at(id); }
  std::span<const Sink> sinks(NetId id) const { return sinks_.at(id); }
  std::optional<NetId> find_net(std::string_view name) const;

  // Copy with one gate's cell kind replaced; the arities must agree.
  Netlist with_gate_kind(GateId id, CellKind kind) const;

 private:
  Netlist() = default;
  void index();

  std::size_t width_ = 0;
  std::vector<Net> nets_;
  std::vector<Gate> gates_;
  std::vector<NetId> sums_;
  NetId cout_ = 0;
  std::vector<NetId> carries_;
  std::vector<GateId> drivers_;
  std::vector<std::vector<Sink>> sinks_;
  std::vector<bool> is_output_;

  friend class NetlistBuilder;
};

// Append-only construction of a netlist. Gate output nets receive sequential
// ids right after the primary inputs, and those ids stay valid in the
// finalized Netlist.
class NetlistBuilder {
 public:
  explicit NetlistBuilder(std::size_t width);

  std::size_t width() const noexcept { return width_; }
  NetId a(std::size_t bit) const;
  NetId b(std::size_t bit) const;
  NetId cin() const { return static_cast<NetId>(2 * width_); }
  std::vector<NetId> a_bits() const;
  std::vector<NetId> b_bits() const;
  std::size_t net_count() const noexcept { return net_count_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  NetId add_gate(CellKind kind, std::span<const NetId> inputs);
  NetId add_gate(CellKind kind, std::initializer_list<NetId> inputs) {
    return add_gate(kind, std::span<const NetId>(inputs.begin(), inputs.size()));
  }

  // Output bindings name the bound net at finalize time. A bound net must
  // be a gate output and may carry only one output name.
  void bind_sum(std::size_t bit, NetId net);
  void bind_cout(NetId net);
  // Exposes a lookahead carry under the name c<index>.
  void expose_carry(std::size_t index, NetId net);

  // Unbound sum/cout ports become undriven nets so validate() can report
  // them.
  Netlist finalize() &&;

 private:
  void check_bindable(NetId net) const;

  std::size_t width_;
  std::size_t net_count_;
  std::vector<Gate> gates_;
  std::vector<std::optional<NetId>> sum_bindings_;
  std::optional<NetId> cout_binding_;
  std::vector<std::pair<std::size_t, NetId>> carry_bindings_;
};

enum class ViolationKind {
  ArityMismatch,
  DanglingInput,
  MultipleDrivers,
  UndrivenOutput,
  DanglingNet,
  DuplicateName,
  CycleDetected,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;  // net or gate name the violation refers to

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Empty result means the netlist is acyclic, single-driver, arity-correct,
// has every output driven and no unread internal nets.
std::vector<Violation> validate(const Netlist& netlist);

// Kahn order with ties broken on ascending gate id. Throws CycleDetected.
std::vector<GateId> topo_order(const Netlist& netlist);

struct Census {
  std::array<std::size_t, kCellKindCount> counts{};
  std::size_t total = 0;

  std::size_t operator[](CellKind kind) const { return counts[index_of(kind)]; }
  friend bool operator==(const Census&, const Census&) = default;
};

Census census(std::span<const Gate> gates);
inline Census census(const Netlist& netlist) { return census(netlist.gates()); }

// Line-oriented text format:
//   width <N>
//   g<id> <KIND> <in> ... -> <out>
//   outputs sum[0] ... sum[N-1] cout [c<k> ...]
void write_netlist(std::ostream& out, const Netlist& netlist);
std::string to_text(const Netlist& netlist);
// Throws ParseError with the offending line number.
Netlist read_netlist(std::istream& in);
Netlist parse_netlist(std::string_view text);

// Structural Verilog with one primitive instance per gate.
void write_verilog(std::ostream& out, const Netlist& netlist, std::string_view module_name);

}  // namespace adderkit
