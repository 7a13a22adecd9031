#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nbldpc/gf.hpp"

namespace nbldpc {

using Codeword = std::vector<Symbol>;

struct PcmEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  Symbol coeff = 0;

  friend bool operator==(const PcmEntry&, const PcmEntry&) = default;
};

/// Sparse M x N parity-check matrix over GF(2^q). Entries are kept sorted
/// row-major; every coefficient is nonzero and no (row, col) repeats.
class ParityCheckMatrix {
 public:
  /// Validates and canonicalises the entry list.
  /// Throws Error{kFieldMismatch} for out-of-field or zero coefficients,
  /// Error{kInvalidConfig} for out-of-range indices or duplicates.
  ParityCheckMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<PcmEntry> entries);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const PcmEntry> entries() const noexcept { return entries_; }

  std::vector<std::size_t> row_degrees() const;
  std::vector<std::size_t> col_degrees() const;

  /// Dense row-major copy (rows x cols), zeros included.
  std::vector<Symbol> dense() const;

  friend bool operator==(const ParityCheckMatrix& a, const ParityCheckMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<PcmEntry> entries_;
};

/// The 3 x 6 GF(4) example matrix with rows
///   [α 0 1 α 0 1; α² α 0 1 1 0; 0 α α² 0 α² 1].
ParityCheckMatrix toy_code();

// ---------------------------------------------------------------------------
// Non-binary alist text format
//
//   N M g [poly]          poly optional, decimal, only when not the default
//   dv_max dc_max
//   <N column degrees>
//   <M row degrees>
//   then one line per column: "row:coeff" pairs, rows 1-based, coeff in [1, g)
//
// '#' starts a comment running to end of line.

ParityCheckMatrix read_alist(std::istream& in);
ParityCheckMatrix load_code(const std::filesystem::path& path);
void write_alist(std::ostream& out, const ParityCheckMatrix& pcm);
void save_code(const std::filesystem::path& path, const ParityCheckMatrix& pcm);

/// Random (d_v, d_c)-regular code. Duplicate edges are never produced;
/// length-4 cycles are avoided with a budget of 100 draws per edge.
/// Throws Error{kInfeasibleDegrees} when N*d_v != M*d_c or d_c > N or d_v > M.
ParityCheckMatrix gen_regular_code(std::size_t n, std::size_t m, std::size_t dc, std::size_t dv,
                                   const Field& field, std::uint64_t seed);

/// Number of 4-cycles (pairs of rows sharing two or more columns, counted per pair).
std::size_t count_four_cycles(const ParityCheckMatrix& pcm);

// ---------------------------------------------------------------------------

/// Edge-indexed Tanner graph. Edge ids are assigned CN-major: the edges of
/// check node m occupy [cn_offset(m), cn_offset(m + 1)) in column order.
class TannerGraph {
 public:
  struct EdgeRef {
    std::uint32_t node = 0;  // the node on the other side
    Symbol coeff = 0;
    std::uint32_t edge = 0;
  };

  explicit TannerGraph(const ParityCheckMatrix& pcm);

  const Field& field() const noexcept { return field_; }
  std::size_t num_checks() const noexcept { return cn_offsets_.size() - 1; }
  std::size_t num_variables() const noexcept { return vn_offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return edge_cn_.size(); }

  std::span<const EdgeRef> check_edges(std::size_t m) const noexcept {
    return {cn_list_.data() + cn_offsets_[m], cn_offsets_[m + 1] - cn_offsets_[m]};
  }
  std::span<const EdgeRef> variable_edges(std::size_t n) const noexcept {
    return {vn_list_.data() + vn_offsets_[n], vn_offsets_[n + 1] - vn_offsets_[n]};
  }
  std::size_t cn_offset(std::size_t m) const noexcept { return cn_offsets_[m]; }
  std::size_t check_degree(std::size_t m) const noexcept { return cn_offsets_[m + 1] - cn_offsets_[m]; }
  std::size_t variable_degree(std::size_t n) const noexcept { return vn_offsets_[n + 1] - vn_offsets_[n]; }

  std::uint32_t edge_check(std::size_t e) const noexcept { return edge_cn_[e]; }
  std::uint32_t edge_variable(std::size_t e) const noexcept { return edge_vn_[e]; }
  Symbol edge_coeff(std::size_t e) const noexcept { return edge_coeff_[e]; }

  std::size_t max_check_degree() const noexcept { return max_dc_; }
  std::size_t max_variable_degree() const noexcept { return max_dv_; }

 private:
  Field field_;
  std::vector<std::size_t> cn_offsets_;
  std::vector<EdgeRef> cn_list_;
  std::vector<std::size_t> vn_offsets_;
  std::vector<EdgeRef> vn_list_;
  std::vector<std::uint32_t> edge_cn_;
  std::vector<std::uint32_t> edge_vn_;
  std::vector<Symbol> edge_coeff_;
  std::size_t max_dc_ = 0;
  std::size_t max_dv_ = 0;
};

inline TannerGraph build_tanner(const ParityCheckMatrix& pcm) { return TannerGraph(pcm); }

struct Syndrome {
  std::vector<Symbol> values;
  bool is_zero = true;
};

/// s_m = sum_n h_{m,n} c_n. Throws Error{kLengthMismatch}.
Syndrome syndrome(const ParityCheckMatrix& pcm, std::span<const Symbol> codeword);
bool syndrome_is_zero(const TannerGraph& graph, std::span<const Symbol> codeword);

/// Systematic encoder from a reduced row-echelon form of H. The message is
/// placed on the non-pivot (information) columns; pivot columns are solved.
class Encoder {
 public:
  explicit Encoder(const ParityCheckMatrix& pcm);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return info_cols_.size(); }
  std::size_t rank() const noexcept { return pivot_cols_.size(); }
  /// True when rank(H) < M; the encoder then works with K = N - rank.
  bool rank_deficient() const noexcept { return rank() < m_; }
  double rate() const noexcept { return static_cast<double>(k()) / static_cast<double>(n_); }

  std::span<const std::uint32_t> info_columns() const noexcept { return info_cols_; }

  /// Throws Error{kLengthMismatch} or Error{kFieldMismatch}.
  Codeword encode(std::span<const Symbol> message) const;

 private:
  Field field_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint32_t> pivot_cols_;
  std::vector<std::uint32_t> info_cols_;
  // coeffs_[r * k + j]: contribution of info column j to pivot row r.
  std::vector<Symbol> coeffs_;
};

inline Codeword encode_systematic(const ParityCheckMatrix& pcm, std::span<const Symbol> message) {
  return Encoder(pcm).encode(message);
}

}  // namespace nbldpc
