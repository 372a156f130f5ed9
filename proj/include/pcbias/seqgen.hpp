#pragma once

#include "pcbias/boolean_function.hpp"
#include "pcbias/dyadic.hpp"
#include "pcbias/parity_check.hpp"

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace pcbias {

/// One period of an explicit sequence, repeated forever.
struct ExplicitSequence {
  std::vector<std::uint8_t> bits;
};

/// Fibonacci LFSR. State bit i is s_{t+i}; the output is state bit 0 and the
/// new bit s_{t+L} is the parity of state & taps. x^3 + x + 1 is
/// {length 3, taps 0b011}.
struct Lfsr {
  int length = 0;
  std::uint32_t taps = 0;
  std::uint32_t state = 0;
};

/// Shift register with s_{t+L} = feedback(s_t, ..., s_{t+L-1}); variable i of
/// the feedback function is state bit i.
struct Nlfsr {
  int length = 0;
  BooleanFunction feedback{1};
  std::uint32_t state = 0;
};

using DeviceSpec = std::variant<ExplicitSequence, Lfsr, Nlfsr>;

inline constexpr int kMaxRegisterLength = 20;

/// Least period of the device output. Throws ValidationError for empty
/// sequences, all-zero or oversized registers, and registers whose start
/// state is not on a cycle.
std::uint64_t least_period(const DeviceSpec& device);

/// A device together with one cached period of its output.
class PeriodicDevice {
 public:
  explicit PeriodicDevice(DeviceSpec spec);

  const DeviceSpec& spec() const { return spec_; }
  std::uint64_t period() const { return cycle_.size(); }
  bool bit(std::uint64_t t) const { return cycle_[t % cycle_.size()] != 0; }

 private:
  DeviceSpec spec_;
  std::vector<std::uint8_t> cycle_;
};

/// n independent devices combined by an n-variable function.
class Generator {
 public:
  Generator(std::vector<PeriodicDevice> devices, BooleanFunction combiner);

  const std::vector<PeriodicDevice>& devices() const { return devices_; }
  const BooleanFunction& combiner() const { return combiner_; }
  std::vector<std::uint64_t> periods() const;

  /// Keystream bit at time t with every device started at `phases`.
  bool output(std::uint64_t t, std::span<const std::uint64_t> phases = {}) const;

 private:
  std::vector<PeriodicDevice> devices_;
  BooleanFunction combiner_;
};

/// s(t) = f(x_1(t), ..., x_n(t)) for t = 0 .. length-1.
std::vector<std::uint8_t> keystream(const Generator& generator, std::size_t length);

/// XOR of stream[t + tau] over tau in T, for each t. Throws ValidationError
/// when an index runs past the stream.
std::vector<std::uint8_t> parity_check_samples(std::span<const std::uint8_t> stream,
                                               const ParityCheckSpec& spec,
                                               std::span<const std::uint64_t> t_values);

enum class Estimator {
  /// Fresh uniform period content for every device in every trial, read at
  /// uniform random phases. This is the ensemble the exact formulas average
  /// over; only the devices' periods are used.
  random_sequences,
  /// The generator's own device sequences at uniform random phases.
  random_phases,
  /// One keystream (all phases zero) read at t = 0, 1, 2, ...
  sliding_window,
};

std::string_view to_string(Estimator estimator);

struct BiasEstimate {
  double mean = 0;
  double standard_error = 0;
  double interval_low = 0;   // 99% normal interval
  double interval_high = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t signed_sum = 0;  // sum of (-1)^PC over the trials
  Estimator estimator = Estimator::random_sequences;
};

/// Trials per RNG stream. Stream b covers trials [b * kTrialsPerStream,
/// (b + 1) * kTrialsPerStream) and runs std::mt19937_64 seeded with
/// std::seed_seq{seed_lo, seed_hi, b_lo, b_hi} (32-bit halves), so estimates
/// do not depend on the worker count.
inline constexpr std::uint64_t kTrialsPerStream = 1 << 16;

/// Monte Carlo estimate of the relation bias, deterministic in `seed`. The
/// spec's periods must equal the device periods.
BiasEstimate empirical_bias(const Generator& generator, const ParityCheckSpec& spec,
                            std::uint64_t trials, std::uint64_t seed,
                            Estimator estimator = Estimator::random_sequences,
                            unsigned threads = 0);

/// Distinguisher cost for a relation of bias epsilon.
struct AttackCost {
  BigInt time;  // ceil(eps^-2) * 2^s
  BigInt data;  // ceil(eps^-2) + max T
};

/// Throws ValidationError unless 0 < epsilon <= 1.
AttackCost attack_cost(const DyadicRational& epsilon, const ParityCheckSpec& spec);

}  // namespace pcbias
