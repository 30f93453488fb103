#include "adderkit/netlist.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "adderkit/error.hpp"

namespace adderkit {

namespace {

std::string indexed(std::string_view base, std::size_t i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

std::string gate_label(GateId id) { return "g" + std::to_string(id); }

}  // namespace

std::string_view to_string(CellKind kind) {
  switch (kind) {
    case CellKind::INV: return "INV";
    case CellKind::AND2: return "AND2";
    case CellKind::AND3: return "AND3";
    case CellKind::AND4: return "AND4";
    case CellKind::OR2: return "OR2";
    case CellKind::OR3: return "OR3";
    case CellKind::OR4: return "OR4";
    case CellKind::XOR2: return "XOR2";
  }
  return "?";
}

std::optional<CellKind> parse_cell_kind(std::string_view text) {
  for (CellKind kind : kAllCellKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::ArityMismatch: return "ArityMismatch";
    case ViolationKind::DanglingInput: return "DanglingInput";
    case ViolationKind::MultipleDrivers: return "MultipleDrivers";
    case ViolationKind::UndrivenOutput: return "UndrivenOutput";
    case ViolationKind::DanglingNet: return "DanglingNet";
    case ViolationKind::DuplicateName: return "DuplicateName";
    case ViolationKind::CycleDetected: return "CycleDetected";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Netlist
// ---------------------------------------------------------------------------

Netlist Netlist::from_parts(std::size_t width, std::vector<Net> nets, std::vector<Gate> gates,
                            std::vector<NetId> sums, NetId cout, std::vector<NetId> carries) {
  Netlist n;
  n.width_ = width;
  n.nets_ = std::move(nets);
  n.gates_ = std::move(gates);
  n.sums_ = std::move(sums);
  n.cout_ = cout;
  n.carries_ = std::move(carries);
  n.index();
  return n;
}

void Netlist::index() {
  const std::size_t count = nets_.size();
  drivers_.assign(count, kNoGate);
  sinks_.assign(count, {});
  is_output_.assign(count, false);
  for (const Gate& g : gates_) {
    if (g.output < count && drivers_[g.output] == kNoGate) drivers_[g.output] = g.id;
    for (std::uint32_t pin = 0; pin < g.inputs.size(); ++pin) {
      if (g.inputs[pin] < count) sinks_[g.inputs[pin]].push_back({g.id, pin});
    }
  }
  for (NetId id : primary_outputs()) {
    if (id < count) is_output_[id] = true;
  }
}

std::vector<NetId> Netlist::primary_outputs() const {
  std::vector<NetId> out(sums_);
  out.push_back(cout_);
  out.insert(out.end(), carries_.begin(), carries_.end());
  return out;
}

bool Netlist::is_primary_output(NetId id) const { return id < is_output_.size() && is_output_[id]; }

std::optional<NetId> Netlist::find_net(std::string_view name) const {
  for (const Net& n : nets_) {
    if (n.name == name) return n.id;
  }
  return std::nullopt;
}

Netlist Netlist::with_gate_kind(GateId id, CellKind kind) const {
  if (id >= gates_.size()) throw Error(ErrorCode::DanglingInput, "no gate " + gate_label(id));
  if (arity(gates_[id].kind) != arity(kind)) {
    throw Error(ErrorCode::ArityMismatch, gate_label(id) + " cannot become " + std::string(to_string(kind)));
  }
  Netlist copy(*this);
  copy.gates_[id].kind = kind;
  return copy;
}

// ---------------------------------------------------------------------------
// NetlistBuilder
// ---------------------------------------------------------------------------

NetlistBuilder::NetlistBuilder(std::size_t width)
    : width_(width), net_count_(2 * width + 1), sum_bindings_(width) {
  if (width == 0) throw Error(ErrorCode::InvalidWidth, "adder width must be at least 1");
}

NetId NetlistBuilder::a(std::size_t bit) const {
  if (bit >= width_) throw Error(ErrorCode::DanglingInput, indexed("a", bit));
  return static_cast<NetId>(bit);
}

NetId NetlistBuilder::b(std::size_t bit) const {
  if (bit >= width_) throw Error(ErrorCode::DanglingInput, indexed("b", bit));
  return static_cast<NetId>(width_ + bit);
}

std::vector<NetId> NetlistBuilder::a_bits() const {
  std::vector<NetId> out(width_);
  for (std::size_t i = 0; i < width_; ++i) out[i] = a(i);
  return out;
}

std::vector<NetId> NetlistBuilder::b_bits() const {
  std::vector<NetId> out(width_);
  for (std::size_t i = 0; i < width_; ++i) out[i] = b(i);
  return out;
}

NetId NetlistBuilder::add_gate(CellKind kind, std::span<const NetId> inputs) {
  if (inputs.size() != arity(kind)) {
    throw Error(ErrorCode::ArityMismatch, std::string(to_string(kind)) + " takes " +
                                              std::to_string(arity(kind)) + " inputs, got " +
                                              std::to_string(inputs.size()));
  }
  for (NetId in : inputs) {
    if (in >= net_count_) throw Error(ErrorCode::DanglingInput, "net id " + std::to_string(in) + " does not exist");
  }
  const auto out = static_cast<NetId>(net_count_++);
  gates_.push_back(Gate{static_cast<GateId>(gates_.size()), kind, {inputs.begin(), inputs.end()}, out});
  return out;
}

void NetlistBuilder::check_bindable(NetId net) const {
  if (net <= cin() || net >= net_count_) {
    throw Error(ErrorCode::InvalidBinding, "net id " + std::to_string(net) + " is not a gate output");
  }
  auto bound = [net](const std::optional<NetId>& b) { return b && *b == net; };
  if (std::any_of(sum_bindings_.begin(), sum_bindings_.end(), bound) || bound(cout_binding_) ||
      std::any_of(carry_bindings_.begin(), carry_bindings_.end(),
                  [net](const auto& c) { return c.second == net; })) {
    throw Error(ErrorCode::InvalidBinding, "net id " + std::to_string(net) + " already carries an output name");
  }
}

void NetlistBuilder::bind_sum(std::size_t bit, NetId net) {
  if (bit >= width_) throw Error(ErrorCode::InvalidBinding, indexed("sum", bit) + " is out of range");
  if (sum_bindings_[bit]) throw Error(ErrorCode::InvalidBinding, indexed("sum", bit) + " bound twice");
  check_bindable(net);
  sum_bindings_[bit] = net;
}

void NetlistBuilder::bind_cout(NetId net) {
  if (cout_binding_) throw Error(ErrorCode::InvalidBinding, "cout bound twice");
  check_bindable(net);
  cout_binding_ = net;
}

void NetlistBuilder::expose_carry(std::size_t index, NetId net) {
  for (const auto& [k, _] : carry_bindings_) {
    if (k == index) throw Error(ErrorCode::InvalidBinding, "c" + std::to_string(index) + " bound twice");
  }
  check_bindable(net);
  carry_bindings_.emplace_back(index, net);
}

Netlist NetlistBuilder::finalize() && {
  std::vector<std::string> names(net_count_);
  for (std::size_t i = 0; i < width_; ++i) {
    names[a(i)] = indexed("a", i);
    names[b(i)] = indexed("b", i);
  }
  names[cin()] = "cin";

  std::vector<NetId> sums(width_);
  std::vector<std::pair<std::size_t, std::string>> undriven;  // (slot, name)
  for (std::size_t i = 0; i < width_; ++i) {
    if (sum_bindings_[i]) {
      names[*sum_bindings_[i]] = indexed("sum", i);
      sums[i] = *sum_bindings_[i];
    } else {
      undriven.emplace_back(i, indexed("sum", i));
    }
  }
  if (cout_binding_) {
    names[*cout_binding_] = "cout";
  } else {
    undriven.emplace_back(width_, "cout");
  }
  std::vector<NetId> carries;
  for (const auto& [k, net] : carry_bindings_) {
    names[net] = "c" + std::to_string(k);
    carries.push_back(net);
  }

  std::size_t internal = 0;
  for (auto& name : names) {
    if (name.empty()) name = "n" + std::to_string(internal++);
  }

  std::vector<Net> nets;
  nets.reserve(net_count_ + undriven.size());
  for (std::size_t id = 0; id < net_count_; ++id) nets.push_back(Net{static_cast<NetId>(id), std::move(names[id])});

  NetId cout = cout_binding_.value_or(0);
  for (auto& [slot, name] : undriven) {
    const auto id = static_cast<NetId>(nets.size());
    nets.push_back(Net{id, std::move(name)});
    if (slot == width_) {
      cout = id;
    } else {
      sums[slot] = id;
    }
  }

  return Netlist::from_parts(width_, std::move(nets), std::move(gates_), std::move(sums), cout,
                             std::move(carries));
}

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

namespace {

// Kahn's algorithm over gates; returns the ordered prefix it could schedule.
std::vector<GateId> kahn(const Netlist& netlist) {
  const auto& gates = netlist.gates();
  const std::size_t net_count = netlist.nets().size();
  std::vector<std::size_t> pending(gates.size(), 0);
  for (const Gate& g : gates) {
    for (NetId in : g.inputs) {
      if (in < net_count && netlist.driver(in) != kNoGate) ++pending[g.id];
    }
  }
  std::priority_queue<GateId, std::vector<GateId>, std::greater<>> ready;
  for (const Gate& g : gates) {
    if (pending[g.id] == 0) ready.push(g.id);
  }
  std::vector<GateId> order;
  order.reserve(gates.size());
  while (!ready.empty()) {
    const GateId id = ready.top();
    ready.pop();
    order.push_back(id);
    const NetId out = gates[id].output;
    if (out >= net_count || netlist.driver(out) != id) continue;
    for (const Sink& s : netlist.sinks(out)) {
      if (--pending[s.gate] == 0) ready.push(s.gate);
    }
  }
  return order;
}

}  // namespace

std::vector<GateId> topo_order(const Netlist& netlist) {
  auto order = kahn(netlist);
  if (order.size() != netlist.gates().size()) {
    std::vector<bool> seen(netlist.gates().size(), false);
    for (GateId id : order) seen[id] = true;
    const auto first = static_cast<GateId>(std::find(seen.begin(), seen.end(), false) - seen.begin());
    throw Error(ErrorCode::CycleDetected, gate_label(first) + " lies on or behind a combinational cycle");
  }
  return order;
}

std::vector<Violation> validate(const Netlist& netlist) {
  std::vector<Violation> out;
  const auto& nets = netlist.nets();
  const std::size_t net_count = nets.size();
  auto net_name = [&](NetId id) { return id < net_count ? nets[id].name : "#" + std::to_string(id); };

  std::unordered_set<std::string_view> names;
  for (const Net& n : nets) {
    if (!names.insert(n.name).second) out.push_back({ViolationKind::DuplicateName, n.name});
  }

  std::vector<std::size_t> drive_count(net_count, 0);
  for (const Gate& g : netlist.gates()) {
    if (g.inputs.size() != arity(g.kind)) out.push_back({ViolationKind::ArityMismatch, gate_label(g.id)});
    for (NetId in : g.inputs) {
      if (in >= net_count || (!netlist.is_primary_input(in) && netlist.driver(in) == kNoGate)) {
        out.push_back({ViolationKind::DanglingInput, net_name(in)});
      }
    }
    if (g.output >= net_count) {
      out.push_back({ViolationKind::DanglingInput, net_name(g.output)});
    } else {
      ++drive_count[g.output];
    }
  }
  for (NetId id = 0; id < net_count; ++id) {
    const std::size_t extra = netlist.is_primary_input(id) ? 1 : 0;
    if (drive_count[id] + extra > 1) out.push_back({ViolationKind::MultipleDrivers, nets[id].name});
  }

  for (NetId id : netlist.primary_outputs()) {
    if (id >= net_count || (drive_count[id] == 0 && !netlist.is_primary_input(id))) {
      out.push_back({ViolationKind::UndrivenOutput, net_name(id)});
    }
  }
  for (NetId id = 0; id < net_count; ++id) {
    if (netlist.is_primary_input(id) || drive_count[id] == 0) continue;
    if (netlist.sinks(id).empty() && !netlist.is_primary_output(id)) {
      out.push_back({ViolationKind::DanglingNet, nets[id].name});
    }
  }

  if (kahn(netlist).size() != netlist.gates().size()) out.push_back({ViolationKind::CycleDetected, "netlist"});
  return out;
}

Census census(std::span<const Gate> gates) {
  Census c;
  for (const Gate& g : gates) ++c.counts[index_of(g.kind)];
  c.total = gates.size();
  return c;
}

}  // namespace adderkit
