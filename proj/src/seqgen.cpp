#include "pcbias/seqgen.hpp"

#include "pcbias/error.hpp"
#include "pcbias/threads.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <random>

namespace pcbias {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

std::vector<std::uint8_t> explicit_cycle(const ExplicitSequence& seq) {
  const std::size_t len = seq.bits.size();
  if (len == 0) throw ValidationError("explicit sequence is empty");
  for (const std::uint8_t b : seq.bits)
    if (b > 1) throw ValidationError("explicit sequence entries must be 0 or 1");
  for (std::size_t d = 1; d <= len; ++d) {
    if (len % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < len && periodic; ++i) periodic = seq.bits[i] == seq.bits[i - d];
    if (periodic) return {seq.bits.begin(), seq.bits.begin() + static_cast<std::ptrdiff_t>(d)};
  }
  return seq.bits;
}

// Walks the register from its start state until a state repeats. The output
// period equals the state-cycle length because a state is a window of
// consecutive outputs.
template <class Step>
std::vector<std::uint8_t> register_cycle(int length, std::uint32_t state, Step step) {
  if (length < 1 || length > kMaxRegisterLength)
    throw ValidationError("register length must be 1.." + std::to_string(kMaxRegisterLength));
  if (state == 0) throw ValidationError("register state must be nonzero");
  if (state >> length) throw ValidationError("register state has bits beyond its length");
  std::vector<std::uint32_t> first_seen(std::size_t{1} << length, 0);  // step index + 1
  std::vector<std::uint8_t> out;
  std::uint32_t current = state;
  for (std::uint32_t t = 1;; ++t) {
    if (first_seen[current] != 0) {
      if (current != state) throw ValidationError("register start state is not on a cycle");
      return out;
    }
    first_seen[current] = t;
    out.push_back(current & 1U);
    current = step(current);
  }
}

std::vector<std::uint8_t> device_cycle(const DeviceSpec& spec) {
  return std::visit(
      Overloaded{
          [](const ExplicitSequence& seq) { return explicit_cycle(seq); },
          [](const Lfsr& r) {
            if (r.length >= 1 && r.length <= kMaxRegisterLength && (r.taps >> r.length) != 0)
              throw ValidationError("LFSR taps exceed the register length");
            return register_cycle(r.length, r.state, [&r](std::uint32_t s) {
              const std::uint32_t feedback = std::popcount(s & r.taps) & 1U;
              return (s >> 1) | (feedback << (r.length - 1));
            });
          },
          [](const Nlfsr& r) {
            if (r.feedback.variables() != r.length)
              throw ValidationError("NLFSR feedback must have one variable per register bit");
            return register_cycle(r.length, r.state, [&r](std::uint32_t s) {
              const std::uint32_t feedback = r.feedback(s) ? 1U : 0U;
              return (s >> 1) | (feedback << (r.length - 1));
            });
          },
      },
      spec);
}

}  // namespace

std::uint64_t least_period(const DeviceSpec& device) { return device_cycle(device).size(); }

PeriodicDevice::PeriodicDevice(DeviceSpec spec) : spec_(std::move(spec)), cycle_(device_cycle(spec_)) {}

Generator::Generator(std::vector<PeriodicDevice> devices, BooleanFunction combiner)
    : devices_(std::move(devices)), combiner_(std::move(combiner)) {
  if (static_cast<int>(devices_.size()) != combiner_.variables())
    throw ValidationError("combiner has " + std::to_string(combiner_.variables()) + " variables for " +
                          std::to_string(devices_.size()) + " devices");
}

std::vector<std::uint64_t> Generator::periods() const {
  std::vector<std::uint64_t> out;
  for (const auto& d : devices_) out.push_back(d.period());
  return out;
}

bool Generator::output(std::uint64_t t, std::span<const std::uint64_t> phases) const {
  std::uint32_t x = 0;
  for (std::size_t j = 0; j < devices_.size(); ++j) {
    const std::uint64_t phase = phases.empty() ? 0 : phases[j];
    x |= static_cast<std::uint32_t>(devices_[j].bit(phase + t)) << j;
  }
  return combiner_(x);
}

std::vector<std::uint8_t> keystream(const Generator& generator, std::size_t length) {
  std::vector<std::uint8_t> out(length);
  for (std::size_t t = 0; t < length; ++t) out[t] = generator.output(t);
  return out;
}

std::vector<std::uint8_t> parity_check_samples(std::span<const std::uint8_t> stream, const ParityCheckSpec& spec,
                                               std::span<const std::uint64_t> t_values) {
  std::vector<std::uint8_t> out;
  out.reserve(t_values.size());
  for (const std::uint64_t t : t_values) {
    if (t > stream.size() || stream.size() - t <= spec.max_offset())
      throw ValidationError("sample at t = " + std::to_string(t) + " reads past the end of the stream");
    std::uint8_t bit = 0;
    for (const std::uint64_t tau : spec.offsets()) bit ^= stream[t + tau];
    out.push_back(bit);
  }
  return out;
}

std::string_view to_string(Estimator estimator) {
  switch (estimator) {
    case Estimator::random_sequences: return "random-sequences";
    case Estimator::random_phases: return "random-phases";
    case Estimator::sliding_window: return "sliding-window";
  }
  return "?";
}

namespace {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Free-bit layout of one relation evaluation: device j reads bit
// group[j][c] of its own word at term c.
struct TermLayout {
  std::vector<std::vector<std::uint32_t>> group;
  std::vector<std::uint32_t> words;  // 64-bit words per device
};

TermLayout term_layout(const ParityCheckSpec& spec) {
  TermLayout layout;
  for (int j = 0; j < spec.variables(); ++j) {
    std::map<std::uint64_t, std::uint32_t> seen;
    std::vector<std::uint32_t> g;
    for (const std::uint64_t tau : spec.offsets()) {
      const auto [it, inserted] = seen.try_emplace(tau % spec.periods()[j], static_cast<std::uint32_t>(seen.size()));
      g.push_back(it->second);
    }
    layout.words.push_back(static_cast<std::uint32_t>((seen.size() + 63) / 64));
    layout.group.push_back(std::move(g));
  }
  return layout;
}

}  // namespace

BiasEstimate empirical_bias(const Generator& generator, const ParityCheckSpec& spec, std::uint64_t trials,
                            std::uint64_t seed, Estimator estimator, unsigned threads) {
  if (trials == 0) throw ValidationError("at least one trial is required");
  const std::vector<std::uint64_t> periods = generator.periods();
  if (static_cast<int>(periods.size()) != spec.variables())
    throw ValidationError("spec and generator disagree on the number of devices");
  for (std::size_t j = 0; j < periods.size(); ++j)
    if (periods[j] != spec.periods()[j])
      throw ValidationError("spec period " + std::to_string(spec.periods()[j]) + " of x" + std::to_string(j + 1) +
                            " differs from the device period " + std::to_string(periods[j]));

  const BooleanFunction& f = generator.combiner();
  const auto offsets = spec.offsets();
  const int n = spec.variables();
  const TermLayout layout = term_layout(spec);
  const std::uint64_t streams = (trials + kTrialsPerStream - 1) / kTrialsPerStream;
  if (threads == 0) threads = worker_count();

  auto run_streams = [&](std::uint64_t first, std::uint64_t last) {
    std::int64_t sum = 0;
    std::vector<std::vector<std::uint64_t>> content(n);
    for (int j = 0; j < n; ++j) content[j].resize(layout.words[j]);
    std::vector<std::uint64_t> phases(n, 0);
    for (std::uint64_t b = first; b < last; ++b) {
      std::mt19937_64 rng = stream_rng(seed, b);
      const std::uint64_t begin = b * kTrialsPerStream;
      const std::uint64_t end = std::min(trials, begin + kTrialsPerStream);
      for (std::uint64_t trial = begin; trial < end; ++trial) {
        bool relation = false;
        switch (estimator) {
          case Estimator::random_sequences:
            // Fresh content makes the phase irrelevant: only the distinct
            // positions the terms read are drawn.
            for (int j = 0; j < n; ++j)
              for (auto& w : content[j]) w = rng();
            for (std::size_t c = 0; c < offsets.size(); ++c) {
              std::uint32_t x = 0;
              for (int j = 0; j < n; ++j) {
                const std::uint32_t g = layout.group[j][c];
                x |= static_cast<std::uint32_t>((content[j][g >> 6] >> (g & 63)) & 1U) << j;
              }
              relation ^= f(x);
            }
            break;
          case Estimator::random_phases:
            for (int j = 0; j < n; ++j) phases[j] = std::uniform_int_distribution<std::uint64_t>(0, periods[j] - 1)(rng);
            for (const std::uint64_t tau : offsets) relation ^= generator.output(tau, phases);
            break;
          case Estimator::sliding_window:
            for (const std::uint64_t tau : offsets) relation ^= generator.output(trial + tau);
            break;
        }
        sum += relation ? -1 : 1;
      }
    }
    return sum;
  };

  std::int64_t sum = 0;
  for (const std::int64_t part : parallel_ranges(streams, threads, run_streams)) sum += part;

  BiasEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.estimator = estimator;
  est.signed_sum = sum;
  est.mean = static_cast<double>(sum) / static_cast<double>(trials);
  const double variance =
      trials > 1 ? (1.0 - est.mean * est.mean) * static_cast<double>(trials) / static_cast<double>(trials - 1) : 0.0;
  est.standard_error = std::sqrt(std::max(0.0, variance) / static_cast<double>(trials));
  constexpr double z99 = 2.5758293035489004;
  est.interval_low = est.mean - z99 * est.standard_error;
  est.interval_high = est.mean + z99 * est.standard_error;
  return est;
}

AttackCost attack_cost(const DyadicRational& epsilon, const ParityCheckSpec& spec) {
  if (epsilon.sign() <= 0 || epsilon > DyadicRational(1))
    throw ValidationError("bias must satisfy 0 < epsilon <= 1, got " + epsilon.to_string());
  const BigInt square = epsilon.numerator() * epsilon.numerator();
  const BigInt scale = BigInt{1} << (2 * epsilon.log2_denominator());
  const BigInt inverse_square = (scale + square - 1) / square;
  return {inverse_square << spec.block_count(), inverse_square + spec.max_offset()};
}

}  // namespace pcbias
