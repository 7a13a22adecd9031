#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "nbldpc/code.hpp"
#include "nbldpc/error.hpp"
#include "support/oracles.hpp"

using namespace nbldpc;

namespace {

ParityCheckMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_alist(in);
}

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kCountersDisabled;
}

}  // namespace

TEST(ToyCode, MatchesPrintedMatrix) {
  const auto h = toy_code();
  ASSERT_EQ(h.rows(), 3U);
  ASSERT_EQ(h.cols(), 6U);
  const std::vector<std::vector<std::string>> expected{
      {"α", "0", "1", "α", "0", "1"}, {"α^2", "α", "0", "1", "1", "0"}, {"0", "α", "α^2", "0", "α^2", "1"}};
  const auto dense = h.dense();
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(h.field().format_power(dense[r * 6 + c]), expected[r][c]);
  }
  EXPECT_EQ(h.row_degrees(), (std::vector<std::size_t>{4, 4, 4}));
  EXPECT_EQ(h.col_degrees(), (std::vector<std::size_t>{2, 2, 2, 2, 2, 2}));
}

TEST(ToyCode, TannerGraphAdjacency) {
  const TannerGraph g(toy_code());
  EXPECT_EQ(g.num_checks(), 3U);
  EXPECT_EQ(g.num_variables(), 6U);
  EXPECT_EQ(g.num_edges(), 12U);
  // CN0 connects VN0, VN2, VN3, VN5; VN0 -> CN0 carries alpha.
  const auto cn0 = g.check_edges(0);
  ASSERT_EQ(cn0.size(), 4U);
  EXPECT_EQ(cn0[0].node, 0U);
  EXPECT_EQ(cn0[0].coeff, g.field().exp(1));
  EXPECT_EQ(cn0[3].node, 5U);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    bool found = false;
    for (const auto& ref : g.variable_edges(g.edge_variable(e))) {
      if (ref.edge == e) {
        found = true;
        EXPECT_EQ(ref.node, g.edge_check(e));
        EXPECT_EQ(ref.coeff, g.edge_coeff(e));
      }
    }
    EXPECT_TRUE(found) << "edge " << e;
  }
}

TEST(Alist, RoundTrip) {
  const auto h = toy_code();
  std::ostringstream out;
  write_alist(out, h);
  EXPECT_EQ(parse(out.str()), h);

  const Field f = Field::build(5, 0b111101);
  const auto h2 = gen_regular_code(20, 10, 4, 2, f, 3);
  std::ostringstream out2;
  write_alist(out2, h2);
  const auto back = parse(out2.str());
  EXPECT_EQ(back, h2);
  EXPECT_EQ(back.field().poly(), 0b111101U);
}

TEST(Alist, CommentsAndErrors) {
  const std::string ok =
      "# toy\n"
      "2 1 4\n"
      "1 2\n"
      "1 1   # column degrees\n"
      "2\n"
      "1:1\n"
      "1:3\n";
  const auto h = parse(ok);
  EXPECT_EQ(h.cols(), 2U);
  EXPECT_EQ(h.entries()[1].coeff, 3);

  try {
    parse("2 1 4\n1 2\n1 1\n2\n1:0\n1:3\n");
    FAIL() << "zero coefficient accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5U);
    EXPECT_EQ(e.column(), 3U);
  }
  EXPECT_EQ(parse_error_kind("2 1 4\n1 2\n1 1\n2\n1:1\n1:4\n"), ErrorKind::kFieldMismatch);
  EXPECT_EQ(parse_error_kind("2 2 4\n1 2\n1 1\n2 0\n1:1\n1:2\n"), ErrorKind::kParseError);
  EXPECT_EQ(parse_error_kind("2 1 6\n1 2\n1 1\n2\n1:1\n1:2\n"), ErrorKind::kParseError);
  EXPECT_EQ(parse_error_kind("2 1 4\n1 2\n1 1\n2\n1:1\n"), ErrorKind::kParseError);
  EXPECT_EQ(parse_error_kind("2 1 4\n1 2\n1 1\n2\n1:1\n1:2\n9\n"), ErrorKind::kParseError);
  EXPECT_EQ(parse_error_kind(""), ErrorKind::kParseError);
}

TEST(Generator, RegularAndDuplicateFree) {
  const struct {
    std::size_t n, m, dc, dv;
    int q;
  } shapes[] = {{16, 8, 4, 2, 4}, {64, 32, 4, 2, 6}, {48, 24, 6, 3, 2}, {6, 3, 4, 2, 2}};
  for (const auto& s : shapes) {
    const Field f = Field::build(s.q);
    const auto h = gen_regular_code(s.n, s.m, s.dc, s.dv, f, 11);
    for (auto d : h.row_degrees()) EXPECT_EQ(d, s.dc);
    for (auto d : h.col_degrees()) EXPECT_EQ(d, s.dv);
    std::set<std::pair<std::uint32_t, std::uint32_t>> cells;
    for (const auto& e : h.entries()) {
      EXPECT_TRUE(cells.insert({e.row, e.col}).second);
      EXPECT_NE(e.coeff, 0);
    }
    EXPECT_EQ(h, gen_regular_code(s.n, s.m, s.dc, s.dv, f, 11)) << "deterministic under seed";
  }
}

TEST(Generator, AvoidsFourCyclesWhenRoomy) {
  const auto h = gen_regular_code(64, 32, 4, 2, Field::build(4), 5);
  EXPECT_EQ(count_four_cycles(h), 0U);
}

TEST(Generator, InfeasibleDegrees) {
  try {
    gen_regular_code(16, 8, 4, 3, Field::build(4), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInfeasibleDegrees);
  }
}

TEST(Encoder, ProducesCodewords) {
  std::mt19937_64 rng(9);
  for (int q : {2, 4, 8}) {
    const Field f = Field::build(q);
    const auto h = gen_regular_code(32, 16, 4, 2, f, static_cast<std::uint64_t>(q));
    const Encoder enc(h);
    EXPECT_EQ(enc.k(), h.cols() - enc.rank());
    std::uniform_int_distribution<int> sym(0, f.order() - 1);
    for (int t = 0; t < 20; ++t) {
      Codeword msg(enc.k());
      for (auto& s : msg) s = static_cast<Symbol>(sym(rng));
      const auto cw = enc.encode(msg);
      EXPECT_TRUE(syndrome(h, cw).is_zero);
      EXPECT_TRUE(syndrome_is_zero(TannerGraph(h), cw));
      for (std::size_t j = 0; j < enc.k(); ++j) EXPECT_EQ(cw[enc.info_columns()[j]], msg[j]);
    }
  }
}

TEST(Encoder, ToyCodebook) {
  const auto h = toy_code();
  const auto book = oracle::all_codewords(h);
  EXPECT_EQ(book.size(), 64U);
  std::set<Codeword> distinct(book.begin(), book.end());
  EXPECT_EQ(distinct.size(), 64U);
  for (const auto& c : book) EXPECT_TRUE(syndrome(h, c).is_zero);
}

TEST(Syndrome, DetectsErrorsAndLength) {
  const auto h = toy_code();
  Codeword zero(6, 0);
  EXPECT_TRUE(syndrome(h, zero).is_zero);
  zero[2] = 1;
  const auto s = syndrome(h, zero);
  EXPECT_FALSE(s.is_zero);
  EXPECT_EQ(s.values, (std::vector<Symbol>{1, 0, h.field().exp(2)}));
  try {
    syndrome(h, Codeword(5, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLengthMismatch);
  }
}
