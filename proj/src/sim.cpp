#include "adderkit/sim.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

#include "adderkit/error.hpp"

namespace adderkit {

namespace {

std::uint64_t low_mask(std::size_t bits) { return bits >= 64 ? ~0ULL : (1ULL << bits) - 1; }

void check_sim_width(const Netlist& netlist) {
  if (netlist.width() > kMaxSimWidth) {
    throw Error(ErrorCode::InvalidWidth, "simulation supports widths up to " + std::to_string(kMaxSimWidth) +
                                             ", got " + std::to_string(netlist.width()));
  }
}

void check_vector(const Netlist& netlist, const InputVector& v) {
  const std::uint64_t mask = low_mask(netlist.width());
  if ((v.a & ~mask) != 0 || (v.b & ~mask) != 0) {
    throw Error(ErrorCode::InvalidWidth, "input vector exceeds " + std::to_string(netlist.width()) + " bits");
  }
}

std::uint64_t gate_word(CellKind kind, const std::vector<NetId>& in, const std::vector<std::uint64_t>& w) {
  switch (kind) {
    case CellKind::INV: return ~w[in[0]];
    case CellKind::AND2: return w[in[0]] & w[in[1]];
    case CellKind::AND3: return w[in[0]] & w[in[1]] & w[in[2]];
    case CellKind::AND4: return w[in[0]] & w[in[1]] & w[in[2]] & w[in[3]];
    case CellKind::OR2: return w[in[0]] | w[in[1]];
    case CellKind::OR3: return w[in[0]] | w[in[1]] | w[in[2]];
    case CellKind::OR4: return w[in[0]] | w[in[1]] | w[in[2]] | w[in[3]];
    case CellKind::XOR2: return w[in[0]] ^ w[in[1]];
  }
  return 0;
}

struct Expected {
  std::uint64_t sum;
  bool cout;
};

Expected add_oracle(const InputVector& v, std::size_t width) {
  const unsigned __int128 total =
      static_cast<unsigned __int128>(v.a) + static_cast<unsigned __int128>(v.b) + (v.cin ? 1u : 0u);
  return {static_cast<std::uint64_t>(total) & low_mask(width), ((total >> width) & 1) != 0};
}

struct Mismatch {
  std::size_t lane;
  Counterexample example;
};

// Compares the lanes of the last evaluation against the oracle.
std::optional<Mismatch> first_mismatch(const PackedEvaluator& eval, std::span<const InputVector> batch) {
  const std::size_t width = eval.netlist().width();
  for (unsigned lane = 0; lane < batch.size(); ++lane) {
    const Expected want = add_oracle(batch[lane], width);
    const std::uint64_t got_sum = eval.sum_lane(lane);
    const bool got_cout = eval.cout_lane(lane);
    if (got_sum != want.sum || got_cout != want.cout) {
      return Mismatch{lane, Counterexample{batch[lane], want.sum, want.cout, got_sum, got_cout}};
    }
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

PackedEvaluator::PackedEvaluator(const Netlist& netlist)
    : netlist_(&netlist), order_(topo_order(netlist)), words_(netlist.nets().size(), 0) {
  check_sim_width(netlist);
}

void PackedEvaluator::propagate() {
  const auto& gates = netlist_->gates();
  for (GateId id : order_) {
    const Gate& g = gates[id];
    words_[g.output] = gate_word(g.kind, g.inputs, words_);
  }
}

std::span<const std::uint64_t> PackedEvaluator::run(std::span<const InputVector> batch) {
  if (batch.size() > 64) throw Error(ErrorCode::InvalidWidth, "at most 64 vectors per packed batch");
  const std::size_t width = netlist_->width();
  std::fill(words_.begin(), words_.end(), 0);
  for (unsigned lane = 0; lane < batch.size(); ++lane) {
    const InputVector& v = batch[lane];
    check_vector(*netlist_, v);
    const std::uint64_t bit = 1ULL << lane;
    for (std::size_t i = 0; i < width; ++i) {
      if ((v.a >> i) & 1) words_[netlist_->a(i)] |= bit;
      if ((v.b >> i) & 1) words_[netlist_->b(i)] |= bit;
    }
    if (v.cin) words_[netlist_->cin()] |= bit;
  }
  propagate();
  return words_;
}

std::span<const std::uint64_t> PackedEvaluator::run_words(std::span<const std::uint64_t> input_words) {
  if (input_words.size() != netlist_->primary_input_count()) {
    throw Error(ErrorCode::ArityMismatch, "expected one word per primary input");
  }
  std::fill(words_.begin(), words_.end(), 0);
  std::copy(input_words.begin(), input_words.end(), words_.begin());
  propagate();
  return words_;
}

std::uint64_t PackedEvaluator::sum_lane(unsigned lane) const {
  std::uint64_t sum = 0;
  const auto& sums = netlist_->sums();
  for (std::size_t i = 0; i < sums.size(); ++i) sum |= ((words_[sums[i]] >> lane) & 1) << i;
  return sum;
}

bool PackedEvaluator::cout_lane(unsigned lane) const { return ((words_[netlist_->cout()] >> lane) & 1) != 0; }

Evaluation evaluate(const Netlist& netlist, const InputVector& vector) {
  PackedEvaluator eval(netlist);
  const auto words = eval.run(std::span(&vector, 1));
  Evaluation out;
  out.sum = eval.sum_lane(0);
  out.cout = eval.cout_lane(0);
  out.net_values.reserve(words.size());
  for (std::uint64_t w : words) out.net_values.push_back(static_cast<std::uint8_t>(w & 1));
  return out;
}

// ---------------------------------------------------------------------------
// Stimulus
// ---------------------------------------------------------------------------

XorShift64Star::XorShift64Star(std::uint64_t seed) : state_(seed ^ 0x9E3779B97F4A7C15ULL) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t XorShift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

VectorGenerator::VectorGenerator(std::uint64_t seed, std::size_t width) : rng_(seed), width_(width) {
  if (width == 0 || width > kMaxSimWidth) {
    throw Error(ErrorCode::InvalidWidth, "vector width must be in [1, " + std::to_string(kMaxSimWidth) + "]");
  }
}

InputVector VectorGenerator::next() {
  const std::size_t bits = 2 * width_ + 1;
  std::vector<std::uint64_t> words((bits + 63) / 64);
  for (auto& w : words) w = rng_.next();
  std::size_t cursor = 0;
  auto take = [&](std::size_t n) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < n; ++i, ++cursor) {
      const std::uint64_t bit = (words[cursor / 64] >> (63 - cursor % 64)) & 1;
      value = (value << 1) | bit;
    }
    return value;
  };
  InputVector v;
  v.a = take(width_);
  v.b = take(width_);
  v.cin = take(1) != 0;
  return v;
}

std::vector<InputVector> generate_vectors(std::size_t width, std::size_t count, std::uint64_t seed) {
  VectorGenerator gen(seed, width);
  std::vector<InputVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.next());
  return out;
}

// ---------------------------------------------------------------------------
// Activity
// ---------------------------------------------------------------------------

ToggleStats collect_toggles(const Netlist& netlist, std::span<const InputVector> vectors, double interval_ns) {
  if (vectors.size() < 2) throw Error(ErrorCode::InsufficientVectors, "toggle counting needs at least 2 vectors");
  if (!(interval_ns > 0.0)) throw Error(ErrorCode::InvalidMetric, "vector interval must be positive");

  PackedEvaluator eval(netlist);
  ToggleStats stats;
  stats.per_net_toggles.assign(netlist.nets().size(), 0);
  stats.vectors_applied = vectors.size();
  stats.interval_ns = interval_ns;

  std::vector<std::uint8_t> previous;  // last lane of the preceding batch
  for (std::size_t start = 0; start < vectors.size(); start += 64) {
    const auto batch = vectors.subspan(start, std::min<std::size_t>(64, vectors.size() - start));
    const auto words = eval.run(batch);
    const std::size_t lanes = batch.size();
    // Bit i of (w ^ w >> 1) compares lane i with lane i + 1.
    const std::uint64_t inner = low_mask(lanes - 1);
    for (std::size_t n = 0; n < words.size(); ++n) {
      const std::uint64_t w = words[n];
      std::uint64_t count = static_cast<std::uint64_t>(std::popcount((w ^ (w >> 1)) & inner));
      if (!previous.empty() && previous[n] != (w & 1)) ++count;
      stats.per_net_toggles[n] += count;
    }
    previous.resize(words.size());
    for (std::size_t n = 0; n < words.size(); ++n) previous[n] = static_cast<std::uint8_t>((words[n] >> (lanes - 1)) & 1);
  }
  return stats;
}

ToggleStats run_vectors(const Netlist& netlist, std::size_t count, std::uint64_t seed, double interval_ns) {
  if (count < 2) throw Error(ErrorCode::InsufficientVectors, "toggle counting needs at least 2 vectors");
  check_sim_width(netlist);
  const auto vectors = generate_vectors(netlist.width(), count, seed);
  return collect_toggles(netlist, vectors, interval_ns);
}

void dump_values(std::ostream& out, const Netlist& netlist, std::span<const InputVector> vectors) {
  PackedEvaluator eval(netlist);
  for (std::size_t start = 0; start < vectors.size(); start += 64) {
    const auto batch = vectors.subspan(start, std::min<std::size_t>(64, vectors.size() - start));
    const auto words = eval.run(batch);
    for (unsigned lane = 0; lane < batch.size(); ++lane) {
      std::string line(words.size(), '0');
      for (std::size_t n = 0; n < words.size(); ++n) {
        if ((words[n] >> lane) & 1) line[n] = '1';
      }
      out << line << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

VerifyResult verify_exhaustive(const Netlist& netlist) {
  const std::size_t width = netlist.width();
  if (width > kMaxExhaustiveWidth) {
    throw Error(ErrorCode::InvalidWidth, "exhaustive verification supports widths up to " +
                                             std::to_string(kMaxExhaustiveWidth) + ", got " + std::to_string(width));
  }
  PackedEvaluator eval(netlist);
  const std::size_t input_bits = 2 * width + 1;
  const std::uint64_t rows = 1ULL << input_bits;

  // Row r drives primary input k with bit k of r, where inputs are ordered
  // cin, a[0..w), b[0..w). Lane bits 0..5 of r vary inside a batch.
  static constexpr std::uint64_t kLanePattern[6] = {
      0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
      0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
  std::vector<std::size_t> row_bit_to_net(input_bits);
  row_bit_to_net[0] = netlist.cin();
  for (std::size_t i = 0; i < width; ++i) {
    row_bit_to_net[1 + i] = netlist.a(i);
    row_bit_to_net[1 + width + i] = netlist.b(i);
  }

  VerifyResult result;
  std::vector<std::uint64_t> inputs(netlist.primary_input_count());
  std::vector<InputVector> batch;
  for (std::uint64_t base = 0; base < rows; base += 64) {
    const std::size_t lanes = static_cast<std::size_t>(std::min<std::uint64_t>(64, rows - base));
    for (std::size_t k = 0; k < input_bits; ++k) {
      inputs[row_bit_to_net[k]] = k < 6 ? kLanePattern[k] : (((base >> k) & 1) ? ~0ULL : 0ULL);
    }
    eval.run_words(inputs);

    batch.clear();
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      const std::uint64_t r = base + lane;
      batch.push_back(InputVector{(r >> 1) & low_mask(width), (r >> (width + 1)) & low_mask(width), (r & 1) != 0});
    }
    if (auto bad = first_mismatch(eval, batch)) {
      result.rows_checked += bad->lane + 1;
      result.counterexample = bad->example;
      return result;
    }
    result.rows_checked += lanes;
  }
  return result;
}

VerifyResult verify_exhaustive(const ArchitectureSpec& spec, std::size_t width) {
  if (spec.total_width() != width) {
    throw Error(ErrorCode::InvalidWidth, "architecture covers " + std::to_string(spec.total_width()) +
                                             " bits, requested " + std::to_string(width));
  }
  return verify_exhaustive(compose(spec));
}

VerifyResult verify_random(const Netlist& netlist, std::uint64_t count, std::uint64_t seed) {
  check_sim_width(netlist);
  PackedEvaluator eval(netlist);
  VectorGenerator gen(seed, netlist.width());
  VerifyResult result;
  std::vector<InputVector> batch;
  while (result.rows_checked < count) {
    const std::size_t lanes = static_cast<std::size_t>(std::min<std::uint64_t>(64, count - result.rows_checked));
    batch.clear();
    for (std::size_t i = 0; i < lanes; ++i) batch.push_back(gen.next());
    eval.run(batch);
    if (auto bad = first_mismatch(eval, batch)) {
      result.rows_checked += bad->lane + 1;
      result.counterexample = bad->example;
      return result;
    }
    result.rows_checked += lanes;
  }
  return result;
}

}  // namespace adderkit
