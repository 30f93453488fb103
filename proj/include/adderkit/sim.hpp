#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "adderkit/adder_gen.hpp"
#include "adderkit/netlist.hpp"

namespace adderkit {

inline constexpr std::size_t kMaxSimWidth = 64;
inline constexpr std::size_t kMaxExhaustiveWidth = 12;
inline constexpr std::size_t kDefaultVectorCount = 1024;
inline constexpr double kDefaultIntervalNs = 5.0;

struct InputVector {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool cin = false;

  friend bool operator==(const InputVector&, const InputVector&) = default;
};

struct Evaluation {
  std::uint64_t sum = 0;
  bool cout = false;
  std::vector<std::uint8_t> net_values;  // indexed by net id
};

// Settled value of every net for one input vector. Undriven nets read 0.
Evaluation evaluate(const Netlist& netlist, const InputVector& vector);

// Evaluates up to 64 vectors at once, one vector per bit lane.
class PackedEvaluator {
 public:
  explicit PackedEvaluator(const Netlist& netlist);

  const Netlist& netlist() const noexcept { return *netlist_; }

  // Lane i of every returned word belongs to batch[i].
  std::span<const std::uint64_t> run(std::span<const InputVector> batch);
  // Drives the primary inputs directly: one word per primary input net.
  std::span<const std::uint64_t> run_words(std::span<const std::uint64_t> input_words);

  std::uint64_t sum_lane(unsigned lane) const;
  bool cout_lane(unsigned lane) const;

 private:
  void propagate();

  const Netlist* netlist_;
  std::vector<GateId> order_;
  std::vector<std::uint64_t> words_;
};

// xorshift64* generator: state ^= state >> 12; state ^= state << 25;
// state ^= state >> 27; output = state * 0x2545F4914F6CDD1D. The initial
// state is seed ^ 0x9E3779B97F4A7C15 (that constant again if the result
// is zero).
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed);
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// Uniform vectors for a given operand width. Each vector draws
// ceil((2w+1)/64) fresh words and reads their bits MSB-first: the first w
// bits are a (most significant first), the next w are b, then cin.
class VectorGenerator {
 public:
  VectorGenerator(std::uint64_t seed, std::size_t width);
  InputVector next();

 private:
  XorShift64Star rng_;
  std::size_t width_;
};

std::vector<InputVector> generate_vectors(std::size_t width, std::size_t count, std::uint64_t seed);

struct ToggleStats {
  std::vector<std::uint64_t> per_net_toggles;  // indexed by net id
  std::uint64_t vectors_applied = 0;
  double interval_ns = kDefaultIntervalNs;

  friend bool operator==(const ToggleStats&, const ToggleStats&) = default;
};

// Zero-delay activity: a net toggles at a vector boundary when its settled
// value differs from the previous vector's.
ToggleStats collect_toggles(const Netlist& netlist, std::span<const InputVector> vectors,
                            double interval_ns = kDefaultIntervalNs);
ToggleStats run_vectors(const Netlist& netlist, std::size_t count, std::uint64_t seed,
                        double interval_ns = kDefaultIntervalNs);

// One line per vector, one '0'/'1' character per net in net-id order.
void dump_values(std::ostream& out, const Netlist& netlist, std::span<const InputVector> vectors);

struct Counterexample {
  InputVector input;
  std::uint64_t expected_sum = 0;
  bool expected_cout = false;
  std::uint64_t actual_sum = 0;
  bool actual_cout = false;
};

struct VerifyResult {
  std::optional<Counterexample> counterexample;  // first mismatch
  std::uint64_t rows_checked = 0;

  bool pass() const noexcept { return !counterexample.has_value(); }
};

// Every (a, b, cin) row, in order of the row index cin | a << 1 | b << (w+1).
VerifyResult verify_exhaustive(const Netlist& netlist);
VerifyResult verify_exhaustive(const ArchitectureSpec& spec, std::size_t width);
VerifyResult verify_random(const Netlist& netlist, std::uint64_t count, std::uint64_t seed);

}  // namespace adderkit
