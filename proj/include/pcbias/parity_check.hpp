#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pcbias {

enum class Independence {
  pass,       // no pairwise offset difference is a multiple of a free period
  pass_weak,  // only the offsets themselves avoid the free periods
  fail,
};

std::string_view to_string(Independence verdict);

struct IndependenceReport {
  Independence verdict = Independence::pass;
  std::vector<std::string> reasons;
};

/// The offset set T = { sum_i c_i M_i : c_i in {0,1} } of a 2^s-term
/// parity-check relation over a generator with n periodic inputs.
///
/// Block i is a set of variable indices (0-based) whose sequences all have
/// M_i = q_i * lcm(T_j : j in block i) as a period. The k block variables
/// are relabeled, block by block, to positions 0..k-1; the remaining n-k
/// variables follow in increasing order.
///
/// Term c (0 <= c < 2^s) has offset tau_c = sum_i bit(c, i) * M_i.
class ParityCheckSpec {
 public:
  ParityCheckSpec(std::vector<std::uint64_t> periods, std::vector<std::vector<int>> blocks,
                  std::vector<std::uint64_t> multipliers);

  int variables() const { return static_cast<int>(periods_.size()); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int fixed_variables() const { return static_cast<int>(block_of_position_.size()); }
  std::uint32_t term_count() const { return std::uint32_t{1} << block_count(); }

  std::span<const std::uint64_t> periods() const { return periods_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  std::span<const std::uint64_t> multipliers() const { return multipliers_; }
  std::span<const std::uint64_t> block_moduli() const { return moduli_; }

  /// tau_c for c = 0 .. 2^s - 1.
  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::uint64_t max_offset() const { return offsets_.back(); }

  /// variable_order()[p] is the original variable at relabeled position p.
  std::span<const int> variable_order() const { return order_; }
  /// Block (0-based) of relabeled position p < k.
  int block_of_position(int p) const { return block_of_position_[p]; }
  bool is_fixed(int variable) const;

  const IndependenceReport& independence() const { return independence_; }

 private:
  std::vector<std::uint64_t> periods_;
  std::vector<std::vector<int>> blocks_;
  std::vector<std::uint64_t> multipliers_;
  std::vector<std::uint64_t> moduli_;
  std::vector<std::uint64_t> offsets_;
  std::vector<int> order_;
  std::vector<int> block_of_position_;
  IndependenceReport independence_;
};

/// Checks that the sequences outside the blocks take independent values at
/// every offset, and that the block sequences repeat only along their own
/// M_i. The verdict is also cached on the spec.
IndependenceReport validate_independence(const ParityCheckSpec& spec);

/// The k * 2^(s-1) free bits that determine the block-variable values of all
/// 2^s terms. Sub-word j holds the 2^(s-1) values of relabeled position j;
/// bit m of sub-word j is bit j * 2^(s-1) + m of the word.
class AlphaWord {
 public:
  AlphaWord(std::uint64_t bits, int k, int s);

  int fixed_variables() const { return k_; }
  int block_count() const { return s_; }
  int length() const { return k_ << (s_ - 1); }
  std::uint64_t bits() const { return bits_; }
  bool bit(int position, int m) const { return (bits_ >> (position * (1 << (s_ - 1)) + m)) & 1U; }

 private:
  std::uint64_t bits_;
  int k_;
  int s_;
};

/// Index m such that chi_j(c, alpha) = alpha_{j, m} for a variable in block
/// `block` (0-based): c with bit `block` deleted. Terms differing only in that
/// bit share the value; all other terms read distinct bits.
constexpr std::uint32_t chi_source(std::uint32_t c, int block) {
  const std::uint32_t low = c & ((std::uint32_t{1} << block) - 1);
  return ((c >> (block + 1)) << block) | low;
}

/// Values of the k block variables (bit p = relabeled position p) in term c.
std::uint32_t chi(std::uint32_t c, const AlphaWord& alpha, const ParityCheckSpec& spec);

/// For every term c and position p, the alpha bit index read by chi.
/// Precomputed form of chi used by the enumeration kernels.
struct ChiMap {
  int k = 0;
  int s = 0;
  int alpha_bits = 0;
  std::vector<std::uint32_t> source;  // source[c * k + p]

  explicit ChiMap(const ParityCheckSpec& spec);
  std::uint32_t terms() const { return std::uint32_t{1} << s; }
};

}  // namespace pcbias
