#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "nbldpc/error.hpp"
#include "nbldpc/fft_spa.hpp"
#include "nbldpc/perf.hpp"
#include "support/oracles.hpp"

using namespace nbldpc;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

SymbolPriors noiseless_priors(const Code& code, const Codeword& cw) {
  const auto signal = modulate_bpsk(cw, code.pcm.field());
  return symbol_priors(add_awgn_noiseless(signal, 4.0, code.rate()), code.pcm.field());
}

}  // namespace

TEST(Transform, KnownVectors) {
  std::vector<double> delta{1, 0, 0, 0};
  fft_gf(delta);
  EXPECT_EQ(delta, (std::vector<double>{1, 1, 1, 1}));
  std::vector<double> v{1, 2, 3, 4};
  fft_gf(v);
  EXPECT_EQ(v, (std::vector<double>{10, -2, -4, 0}));
  ifft_gf(v);
  EXPECT_EQ(v, (std::vector<double>{1, 2, 3, 4}));
}

TEST(Transform, Involution) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t g = 4; g <= 256; g *= 2) {
    for (int t = 0; t < 20; ++t) {
      std::vector<double> v(g);
      for (auto& x : v) x = u(rng);
      auto w = v;
      fft_gf(w);
      fft_gf(w);
      for (std::size_t i = 0; i < g; ++i) ASSERT_NEAR(w[i], static_cast<double>(g) * v[i], 1e-12 * static_cast<double>(g));
    }
  }
  std::vector<double> bad(6);
  EXPECT_THROW(fft_gf(bad), Error);
}

TEST(Permutation, DirectionOnToyEdge) {
  const Field f = Field::build(2);
  const Symbol alpha = f.exp(1);
  // A message certain of symbol 1 on an edge with coefficient alpha becomes
  // certain of alpha on the check side, and back.
  const std::vector<double> one_hot{0, 1, 0, 0};
  const auto to_check = permute(one_hot, alpha, f);
  EXPECT_EQ(to_check, (std::vector<double>{0, 0, 1, 0}));
  EXPECT_EQ(depermute(to_check, alpha, f), one_hot);
  for (Symbol h = 1; h < 4; ++h) {
    const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    const auto pp = permute(p, h, f);
    EXPECT_DOUBLE_EQ(pp[0], p[0]);
    for (Symbol x = 0; x < 4; ++x) EXPECT_DOUBLE_EQ(pp[f.mul(h, x)], p[x]);
  }
}

TEST(CheckNode, MatchesConfigurationSum) {
  std::mt19937_64 rng(2);
  for (int q : {2, 3, 4}) {
    const Field f = Field::build(q);
    const auto g = static_cast<std::size_t>(f.order());
    for (std::size_t d : {2U, 3U, 4U}) {
      for (int t = 0; t < 20; ++t) {
        std::vector<std::vector<double>> u;
        for (std::size_t j = 0; j < d; ++j) u.push_back(oracle::random_distribution(g, rng));
        const auto h = oracle::random_coeffs(d, f, rng);
        const auto got = check_node_update(u, h, f);
        const auto want = oracle::cn_convolution(u, h, f);
        for (std::size_t j = 0; j < d; ++j) {
          for (std::size_t x = 0; x < g; ++x) ASSERT_LE(rel_err(got[j][x], want[j][x]), 1e-9);
        }
      }
    }
  }
}

TEST(CheckNode, DegreeTwoIsPermutedCopy) {
  const Field f = Field::build(2);
  const std::vector<std::vector<double>> u{{0.7, 0.1, 0.1, 0.1}, {0.1, 0.2, 0.3, 0.4}};
  const std::vector<Symbol> h{2, 3};
  const auto v = check_node_update(u, h, f);
  // v_0(x) = u_1(x1) with h_1 x1 = h_0 x.
  for (Symbol x = 0; x < 4; ++x) EXPECT_NEAR(v[0][x], u[1][f.div(f.mul(2, x), 3)], 1e-15);
}

TEST(FixedPoint, CheckNodeTracksFloat) {
  std::mt19937_64 rng(3);
  const Field f = Field::build(3);
  const std::vector<Symbol> h{1, 5, 6};
  std::vector<PcmEntry> entries{{0, 0, 1}, {0, 1, 5}, {0, 2, 6}};
  const TannerGraph graph(ParityCheckMatrix(f, 1, 3, entries));
  SymbolPriors p{PriorMode::kProbability, 3, 8, {}};
  for (int j = 0; j < 3; ++j) {
    const auto row = oracle::random_distribution(8, rng);
    p.values.insert(p.values.end(), row.begin(), row.end());
  }
  FftSpaEngine<Float64Arith> fl(graph, DecodeConfig{});
  FftSpaEngine<Fixed32Arith> fx(graph, DecodeConfig{});
  fl.load(p);
  fx.load(p);
  Tally off(nullptr);
  fl.check_phase(nullptr, 0, 1, off);
  fx.check_phase(nullptr, 0, 1, off);
  for (std::size_t e = 0; e < 3; ++e) {
    const auto a = fl.to_variable(e);
    const auto b = fx.to_variable(e);
    const double s = std::accumulate(a.begin(), a.end(), 0.0);
    std::int64_t sb = 0;
    for (auto v : b) {
      EXPECT_GE(v, 0);
      sb += v;
    }
    EXPECT_LE(sb, 65536);
    EXPECT_GT(sb, 65536 - 8);
    for (std::size_t x = 0; x < 8; ++x) EXPECT_NEAR(b[x] / 65536.0, a[x] / s, 2e-3);
  }
}

TEST(FftSpaDecoder, NoiselessAllModes) {
  std::mt19937_64 rng(5);
  for (int q : {2, 4, 8}) {
    const Code code(gen_regular_code(16, 8, 4, 2, Field::build(q), 17));
    std::uniform_int_distribution<int> sym(0, code.pcm.field().order() - 1);
    for (auto arith : {Arithmetic::kFloat64, Arithmetic::kFixed32, Arithmetic::kFixed8}) {
      Decoder dec(Algorithm::kFftSpa, code.graph, DecodeConfig(1, true, arith));
      for (int t = 0; t < 10; ++t) {
        Codeword msg(code.encoder.k());
        for (auto& s : msg) s = static_cast<Symbol>(sym(rng));
        const auto cw = code.encoder.encode(msg);
        const auto r = dec.decode(noiseless_priors(code, cw));
        EXPECT_TRUE(r.syndrome_ok);
        EXPECT_EQ(r.decoded, cw) << "q=" << q << " arith=" << to_string(arith);
        EXPECT_EQ(r.iterations, 1);
      }
    }
  }
}

TEST(FftSpaDecoder, FixedIterationsWhenEarlyStopOff) {
  const Code code(toy_code());
  const auto r = decode_fft_spa(code.graph, noiseless_priors(code, Codeword(6, 0)),
                                DecodeConfig(7, false, Arithmetic::kFloat64, true));
  EXPECT_EQ(r.iterations, 7);
  EXPECT_TRUE(r.syndrome_ok);
  const auto& c = measured_counts(r);
  ASSERT_EQ(c.per_iteration.size(), 7U);
  for (std::size_t b = 0; b < kBlockCount; ++b) {
    if (static_cast<Block>(b) == Block::kDecision) continue;
    EXPECT_EQ(c.total[b].ops.operations(), 7 * c.per_iteration[0][b].ops.operations());
  }
}

TEST(FftSpaDecoder, RejectsBadInputs) {
  EXPECT_THROW(DecodeConfig(0), Error);
  const Code code(toy_code());
  SymbolPriors wrong{PriorMode::kProbability, 5, 4, std::vector<double>(20, 0.25)};
  EXPECT_THROW(decode_fft_spa(code.graph, wrong, DecodeConfig{}), Error);
  const Field f = Field::build(2);
  const TannerGraph degenerate(ParityCheckMatrix(f, 2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 1, 2}}));
  EXPECT_THROW(make_engine(Algorithm::kFftSpa, degenerate, DecodeConfig{}), Error);
  const auto r = decode_fft_spa(code.graph, noiseless_priors(code, Codeword(6, 0)), DecodeConfig{});
  EXPECT_THROW(measured_counts(r), Error);
}

TEST(FftSpaDecoder, ZeroSumFallback) {
  // Contradictory certain priors on a degree-2 check force an all-zero message.
  const Field f = Field::build(2);
  const Code code(ParityCheckMatrix(f, 2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 2}}));
  SymbolPriors p{PriorMode::kProbability, 2, 4, {0, 1, 0, 0, 0, 0, 1, 0}};
  for (auto arith : {Arithmetic::kFloat64, Arithmetic::kFixed32}) {
    const auto r = decode_fft_spa(code.graph, p, DecodeConfig(2, false, arith));
    EXPECT_GT(r.zero_sum_fallbacks, 0U);
  }
}
