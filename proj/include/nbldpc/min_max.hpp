#pragma once

#include <span>
#include <vector>

#include "nbldpc/decoder.hpp"

namespace nbldpc {

/// Forward and backward min-max partials of one check node, d_c rows of g.
template <class T>
struct FBWorkspace {
  std::size_t degree = 0;
  std::size_t order = 0;
  std::vector<T> forward;
  std::vector<T> backward;

  std::span<const T> f(std::size_t j) const { return {forward.data() + j * order, order}; }
  std::span<const T> b(std::size_t j) const { return {backward.data() + j * order, order}; }
};

/// alpha[j] is the variable-to-check LLR row of edge j, h[j] its coefficient.
template <class T>
FBWorkspace<T> forward_backward(const std::vector<std::vector<T>>& alpha, std::span<const Symbol> h,
                                const Field& field);

/// Extrinsic check-to-variable rows, one per edge.
template <class T>
std::vector<std::vector<T>> beta_extract(const FBWorkspace<T>& ws, std::span<const Symbol> h, const Field& field);

/// Min-Max decoder state. T is double, int32_t or int8_t; all LLRs are >= 0.
template <class A>
class MinMaxEngine final : public DecoderEngine {
 public:
  using Value = typename A::Value;
  using Wide = typename A::Wide;

  MinMaxEngine(const TannerGraph& graph, const DecodeConfig& config);

  Algorithm algorithm() const override { return Algorithm::kMinMax; }
  Arithmetic arithmetic() const override { return A::kMode; }
  /// Accepts delta-LLR priors, or probability priors converted with llr_init_minmax.
  void load(const SymbolPriors& priors) override;
  void iterate(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& tally) override;
  void decide(Codeword& out, Tally& tally) override;
  std::size_t barriers_per_iteration() const override { return barriers_; }
  std::uint64_t zero_sum_fallbacks() const override { return 0; }

  void check_phase(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& tally);
  void variable_phase(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& tally);

  std::span<const Value> to_check(std::size_t e) const { return {alpha_.data() + e * g_, g_}; }
  std::span<const Value> to_variable(std::size_t e) const { return {beta_.data() + e * g_, g_}; }
  std::span<const Value> gamma(std::size_t n) const { return {gamma_.data() + n * g_, g_}; }

 private:
  const TannerGraph& graph_;
  std::size_t g_;
  double scale_;
  std::size_t barriers_;
  std::vector<Value> gamma_;
  std::vector<Value> alpha_;
  std::vector<Value> beta_;
  std::vector<Value> fwd_;  // max_dc x g, shared by all workers for the current check node
  std::vector<Value> bwd_;
};

extern template class MinMaxEngine<Float64Arith>;
extern template class MinMaxEngine<Fixed32Arith>;
extern template class MinMaxEngine<Fixed8Arith>;

/// Sequential Min-Max decode of one frame from delta-LLR priors.
DecodeResult decode_min_max(const TannerGraph& graph, const SymbolPriors& gamma, const DecodeConfig& config);

}  // namespace nbldpc
