#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace nbldpc {

/// Tally of executed operations by class. Bitwise ops (XOR, AND) count as additions.
struct OpTally {
  std::uint64_t additions = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t divisions = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t memory = 0;

  std::uint64_t operations() const noexcept { return additions + multiplications + divisions + comparisons; }

  OpTally& operator+=(const OpTally& o) noexcept {
    additions += o.additions;
    multiplications += o.multiplications;
    divisions += o.divisions;
    comparisons += o.comparisons;
    memory += o.memory;
    return *this;
  }
  friend OpTally operator+(OpTally a, const OpTally& b) noexcept { return a += b; }
  friend bool operator==(const OpTally&, const OpTally&) = default;
};

/// Processing blocks of both decoders. The FFT-SPA blocks come first, then the
/// Min-Max blocks, then blocks outside the per-iteration model.
enum class Block : std::uint8_t {
  kPermutation,
  kFft,
  kCnpProduct,
  kInverseFft,
  kDepermutation,
  kVnp,
  kFbFirstEdge,
  kFbRemainingEdges,
  kBetaFirstLastEdge,
  kBetaRemainingEdges,
  kMinMaxVnp,
  kFixedRenormalization,
  kDecision,
  kCount,
};

inline constexpr std::size_t kBlockCount = static_cast<std::size_t>(Block::kCount);

std::string_view block_name(Block b);

/// One block's tallies: the algorithmic operations, and separately the loop
/// increments/tests that drive it.
struct BlockTally {
  OpTally ops;
  OpTally loop_control;

  BlockTally& operator+=(const BlockTally& o) noexcept {
    ops += o.ops;
    loop_control += o.loop_control;
    return *this;
  }
  friend bool operator==(const BlockTally&, const BlockTally&) = default;
};

using BlockTallies = std::array<BlockTally, kBlockCount>;

inline BlockTallies& operator+=(BlockTallies& a, const BlockTallies& b) noexcept {
  for (std::size_t i = 0; i < kBlockCount; ++i) a[i] += b[i];
  return a;
}

/// Decoder tallies. per_iteration holds the message-passing blocks of each
/// iteration; hard decisions are added to total only (Block::kDecision).
struct OpCounters {
  BlockTallies total{};
  std::vector<BlockTallies> per_iteration;
  std::uint64_t barriers = 0;
  /// Vectors that summed to zero during normalisation and were reset.
  std::uint64_t zero_sum_fallbacks = 0;

  const BlockTally& operator[](Block b) const noexcept { return total[static_cast<std::size_t>(b)]; }
};

/// Counting sink threaded through decoder blocks. A null sink disables counting.
class Tally {
 public:
  explicit Tally(BlockTallies* sink) noexcept : sink_(sink) {}

  bool enabled() const noexcept { return sink_ != nullptr; }
  OpTally& ops(Block b) noexcept { return (*sink_)[static_cast<std::size_t>(b)].ops; }
  OpTally& loops(Block b) noexcept { return (*sink_)[static_cast<std::size_t>(b)].loop_control; }

  /// A loop executed `trips` times: one increment and one test per trip.
  void loop(Block b, std::uint64_t trips) noexcept {
    if (!sink_) return;
    auto& lc = loops(b);
    lc.additions += trips;
    lc.comparisons += trips;
  }

 private:
  BlockTallies* sink_;
};

}  // namespace nbldpc
