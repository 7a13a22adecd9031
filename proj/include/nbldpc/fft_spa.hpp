#pragma once

#include <atomic>
#include <span>
#include <vector>

#include "nbldpc/decoder.hpp"

namespace nbldpc {

/// out(x) = in(a^-1 x): the distribution of a*c given the distribution of c.
void multiply_distribution(std::span<const double> in, std::span<double> out, Symbol a, const Field& field);

/// Variable-to-check permutation by the edge coefficient h.
std::vector<double> permute(std::span<const double> p, Symbol h, const Field& field);
/// Check-to-variable permutation, the inverse of permute().
std::vector<double> depermute(std::span<const double> p, Symbol h, const Field& field);

/// In-place Walsh-Hadamard transform over GF(2^q). Length must be a power of two.
void fft_gf(std::span<double> v);
/// Inverse transform: fft_gf followed by division by the length.
void ifft_gf(std::span<double> v);

/// One check-node update in the probability domain: for each edge j,
/// v_j(x) = P(h_j c_j = x ... ) as the extrinsic configuration sum over the
/// other edges. `u[j]` is the variable-to-check message on edge j.
std::vector<std::vector<double>> check_node_update(const std::vector<std::vector<double>>& u,
                                                   std::span<const Symbol> h, const Field& field);

/// FFT-SPA decoder state. Banks are edge-major, g values per edge.
template <class A>
class FftSpaEngine final : public DecoderEngine {
 public:
  using Value = typename A::Value;
  using Wide = typename A::Wide;

  FftSpaEngine(const TannerGraph& graph, const DecodeConfig& config);

  Algorithm algorithm() const override { return Algorithm::kFftSpa; }
  Arithmetic arithmetic() const override { return A::kMode; }
  void load(const SymbolPriors& priors) override;
  void iterate(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& tally) override;
  void decide(Codeword& out, Tally& tally) override;
  std::size_t barriers_per_iteration() const override { return 4 * static_cast<std::size_t>(q_) + 8; }
  std::uint64_t zero_sum_fallbacks() const override { return fallbacks_.load(std::memory_order_relaxed); }

  /// Permutation through inverse transform and depermutation.
  void check_phase(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& tally);
  void variable_phase(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& tally);

  std::span<const Value> to_check(std::size_t e) const { return {u_.data() + e * g_, g_}; }
  std::span<const Value> to_variable(std::size_t e) const { return {v_.data() + e * g_, g_}; }
  std::span<const Value> prior(std::size_t n) const { return {prior_.data() + n * g_, g_}; }

 private:
  void permute_gather(std::size_t eb, std::size_t ee, Tally& t);
  void wide_commit(std::size_t eb, std::size_t ee);
  void snapshot(std::vector<Wide>& bank, std::size_t eb, std::size_t ee);
  void transform_stage(std::vector<Wide>& bank, std::size_t bit, std::size_t eb, std::size_t ee, Block b,
                       Tally& t);
  void cnp_product(std::size_t eb, std::size_t ee, Tally& t);
  void inverse_scale(std::size_t eb, std::size_t ee, Tally& t);
  void depermute_gather(std::size_t eb, std::size_t ee, Tally& t);
  void depermute_commit(std::size_t eb, std::size_t ee, Tally& t);
  void vnp_product(std::size_t eb, std::size_t ee, Tally& t);
  void vnp_normalize(std::size_t eb, std::size_t ee, Tally& t);
  void normalize(Value* row, Block b, Tally& t);

  const TannerGraph& graph_;
  std::size_t g_;
  int q_;
  std::vector<const Symbol*> to_check_map_;     // out[x] = in[map[x]], map = mul_row(h^-1)
  std::vector<const Symbol*> to_variable_map_;  // map = mul_row(h)
  std::vector<Value> prior_;
  std::vector<Value> u_;
  std::vector<Value> v_;
  std::vector<Wide> w_;
  std::vector<Wide> prod_;
  std::vector<Wide> scratch_w_;
  std::vector<Value> scratch_v_;
  std::atomic<std::uint64_t> fallbacks_{0};
};

extern template class FftSpaEngine<Float64Arith>;
extern template class FftSpaEngine<Fixed32Arith>;
extern template class FftSpaEngine<Fixed8Arith>;

/// Sequential FFT-SPA decode of one frame from probability-mode priors.
DecodeResult decode_fft_spa(const TannerGraph& graph, const SymbolPriors& priors, const DecodeConfig& config);

}  // namespace nbldpc
