#include "nbldpc/code.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "nbldpc/error.hpp"

namespace nbldpc {

ParityCheckMatrix::ParityCheckMatrix(Field field, std::size_t rows, std::size_t cols,
                                     std::vector<PcmEntry> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.row >= rows_ || e.col >= cols_) {
      throw Error(ErrorKind::kInvalidConfig, "entry (" + std::to_string(e.row) + ", " +
                                                 std::to_string(e.col) + ") outside " +
                                                 std::to_string(rows_) + " x " + std::to_string(cols_));
    }
    if (e.coeff == 0 || !field_.contains(e.coeff)) {
      throw Error(ErrorKind::kFieldMismatch, "coefficient " + std::to_string(e.coeff) + " at (" +
                                                 std::to_string(e.row) + ", " + std::to_string(e.col) +
                                                 ") is not a nonzero element of GF(" +
                                                 std::to_string(field_.order()) + ")");
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const PcmEntry& a, const PcmEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  auto dup = std::adjacent_find(entries_.begin(), entries_.end(), [](const PcmEntry& a, const PcmEntry& b) {
    return a.row == b.row && a.col == b.col;
  });
  if (dup != entries_.end()) {
    throw Error(ErrorKind::kInvalidConfig,
                "duplicate entry (" + std::to_string(dup->row) + ", " + std::to_string(dup->col) + ")");
  }
}

std::vector<std::size_t> ParityCheckMatrix::row_degrees() const {
  std::vector<std::size_t> d(rows_, 0);
  for (const auto& e : entries_) ++d[e.row];
  return d;
}

std::vector<std::size_t> ParityCheckMatrix::col_degrees() const {
  std::vector<std::size_t> d(cols_, 0);
  for (const auto& e : entries_) ++d[e.col];
  return d;
}

std::vector<Symbol> ParityCheckMatrix::dense() const {
  std::vector<Symbol> h(rows_ * cols_, 0);
  for (const auto& e : entries_) h[e.row * cols_ + e.col] = e.coeff;
  return h;
}

ParityCheckMatrix toy_code() {
  const Field f = Field::build(2);
  // Power indices: 0 -> 0, 1 -> 1, 2 -> α, 3 -> α².
  constexpr std::uint32_t kPowers[3][6] = {
      {2, 0, 1, 2, 0, 1},
      {3, 2, 0, 1, 1, 0},
      {0, 2, 3, 0, 3, 1},
  };
  std::vector<PcmEntry> entries;
  for (std::uint32_t m = 0; m < 3; ++m) {
    for (std::uint32_t n = 0; n < 6; ++n) {
      if (kPowers[m][n] != 0) entries.push_back({m, n, f.from_power_index(kPowers[m][n])});
    }
  }
  return ParityCheckMatrix(f, 3, 6, std::move(entries));
}

// ---------------------------------------------------------------------------
// alist

namespace {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Splits the input into lines of tokens with comments stripped; blank lines dropped.
std::vector<std::vector<Token>> tokenize(std::istream& in) {
  std::vector<std::vector<Token>> lines;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      tokens.push_back({raw.substr(start, i - start), line_no, start + 1});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

std::uint64_t parse_uint(const Token& t, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    throw ParseError(t.line, t.column, "expected " + std::string(what) + ", got '" + t.text + "'");
  }
  return v;
}

class TokenStream {
 public:
  TokenStream(const std::vector<std::vector<Token>>& lines, std::size_t first_line) {
    for (std::size_t l = first_line; l < lines.size(); ++l) {
      for (const auto& t : lines[l]) tokens_.push_back(&t);
    }
  }

  const Token& next(std::string_view what, const Token& context) {
    if (pos_ >= tokens_.size()) {
      throw ParseError(context.line, context.column, "unexpected end of file, expected " + std::string(what));
    }
    return *tokens_[pos_++];
  }

  const Token* peek() const { return pos_ < tokens_.size() ? tokens_[pos_] : nullptr; }

 private:
  std::vector<const Token*> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ParityCheckMatrix read_alist(std::istream& in) {
  const auto lines = tokenize(in);
  if (lines.empty()) throw ParseError(1, 1, "empty code file");

  const auto& head = lines[0];
  if (head.size() < 3 || head.size() > 4) {
    throw ParseError(head[0].line, head[0].column, "header must be 'N M g [poly]'");
  }
  const auto n = parse_uint(head[0], "N");
  const auto m = parse_uint(head[1], "M");
  const auto g = parse_uint(head[2], "g");
  if (n == 0 || m == 0) throw ParseError(head[0].line, head[0].column, "N and M must be positive");
  if (!std::has_single_bit(g) || g < 4 || g > 256) {
    throw ParseError(head[2].line, head[2].column, "g must be a power of two in [4, 256]");
  }
  const int q = std::countr_zero(g);
  std::optional<std::uint32_t> poly;
  if (head.size() == 4) poly = static_cast<std::uint32_t>(parse_uint(head[3], "primitive polynomial"));
  const Field field = Field::build(q, poly);

  if (lines.size() < 2 || lines[1].size() != 2) {
    const auto& t = lines.size() < 2 ? head.back() : lines[1][0];
    throw ParseError(t.line, t.column, "second line must be 'dv_max dc_max'");
  }
  const auto dv_max = parse_uint(lines[1][0], "dv_max");
  const auto dc_max = parse_uint(lines[1][1], "dc_max");

  TokenStream ts(lines, 2);
  const Token& ctx = lines[1][1];
  std::vector<std::size_t> col_deg(n), row_deg(m);
  for (auto& d : col_deg) {
    const auto& t = ts.next("column degree", ctx);
    d = parse_uint(t, "column degree");
    if (d > dv_max) throw ParseError(t.line, t.column, "column degree exceeds dv_max");
  }
  for (std::size_t r = 0; r < m; ++r) {
    const auto& t = ts.next("row degree", ctx);
    row_deg[r] = parse_uint(t, "row degree");
    if (row_deg[r] == 0) throw ParseError(t.line, t.column, "row " + std::to_string(r + 1) + " is empty");
    if (row_deg[r] > dc_max) throw ParseError(t.line, t.column, "row degree exceeds dc_max");
  }

  std::vector<PcmEntry> entries;
  std::vector<std::size_t> seen_row_deg(m, 0);
  for (std::uint32_t col = 0; col < n; ++col) {
    for (std::size_t k = 0; k < col_deg[col]; ++k) {
      const auto& t = ts.next("row:coeff pair", ctx);
      const auto colon = t.text.find(':');
      if (colon == std::string::npos) throw ParseError(t.line, t.column, "expected row:coeff, got '" + t.text + "'");
      Token row_tok{t.text.substr(0, colon), t.line, t.column};
      Token coeff_tok{t.text.substr(colon + 1), t.line, t.column + colon + 1};
      const auto row = parse_uint(row_tok, "row index");
      const auto coeff = parse_uint(coeff_tok, "coefficient");
      if (row == 0 || row > m) throw ParseError(t.line, t.column, "row index " + row_tok.text + " outside [1, M]");
      if (coeff == 0) throw ParseError(coeff_tok.line, coeff_tok.column, "zero coefficient");
      if (coeff >= g) {
        throw Error(ErrorKind::kFieldMismatch, "line " + std::to_string(t.line) + ", column " +
                                                   std::to_string(coeff_tok.column) + ": coefficient " +
                                                   coeff_tok.text + " >= g = " + std::to_string(g));
      }
      ++seen_row_deg[row - 1];
      entries.push_back({static_cast<std::uint32_t>(row - 1), col, static_cast<Symbol>(coeff)});
    }
  }
  if (const Token* extra = ts.peek()) throw ParseError(extra->line, extra->column, "trailing data");
  for (std::size_t r = 0; r < m; ++r) {
    if (seen_row_deg[r] != row_deg[r]) {
      throw ParseError(lines[0][0].line, 1, "row " + std::to_string(r + 1) + " declares degree " +
                                                 std::to_string(row_deg[r]) + " but has " +
                                                 std::to_string(seen_row_deg[r]) + " entries");
    }
  }
  try {
    return ParityCheckMatrix(field, m, n, std::move(entries));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInvalidConfig) throw ParseError(1, 1, e.what());
    throw;
  }
}

ParityCheckMatrix load_code(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidConfig, "cannot open " + path.string());
  return read_alist(in);
}

void write_alist(std::ostream& out, const ParityCheckMatrix& pcm) {
  const auto& f = pcm.field();
  const auto col_deg = pcm.col_degrees();
  const auto row_deg = pcm.row_degrees();
  out << pcm.cols() << ' ' << pcm.rows() << ' ' << f.order();
  if (f.poly() != default_primitive_polynomial(f.q())) out << ' ' << f.poly();
  out << '\n';
  out << *std::max_element(col_deg.begin(), col_deg.end()) << ' '
      << *std::max_element(row_deg.begin(), row_deg.end()) << '\n';
  for (std::size_t i = 0; i < col_deg.size(); ++i) out << (i ? " " : "") << col_deg[i];
  out << '\n';
  for (std::size_t i = 0; i < row_deg.size(); ++i) out << (i ? " " : "") << row_deg[i];
  out << '\n';

  std::vector<std::vector<const PcmEntry*>> by_col(pcm.cols());
  for (const auto& e : pcm.entries()) by_col[e.col].push_back(&e);  // row-sorted already
  for (const auto& col : by_col) {
    for (std::size_t i = 0; i < col.size(); ++i) {
      out << (i ? " " : "") << (col[i]->row + 1) << ':' << col[i]->coeff;
    }
    out << '\n';
  }
}

void save_code(const std::filesystem::path& path, const ParityCheckMatrix& pcm) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInvalidConfig, "cannot write " + path.string());
  write_alist(out, pcm);
}

// ---------------------------------------------------------------------------
// Regular code construction

namespace {

constexpr int kGirthRetries = 100;
constexpr int kMaxRestarts = 1000;

bool closes_four_cycle(const std::vector<std::vector<std::uint32_t>>& row_cols,
                       const std::vector<std::vector<std::uint32_t>>& col_rows, std::uint32_t m, std::uint32_t n) {
  for (auto other_col : row_cols[m]) {
    for (auto other_row : col_rows[other_col]) {
      if (other_row == m) continue;
      if (std::find(col_rows[n].begin(), col_rows[n].end(), other_row) != col_rows[n].end()) return true;
    }
  }
  return false;
}

}  // namespace

ParityCheckMatrix gen_regular_code(std::size_t n, std::size_t m, std::size_t dc, std::size_t dv,
                                   const Field& field, std::uint64_t seed) {
  if (n == 0 || m == 0 || dc == 0 || dv == 0 || n * dv != m * dc || dc > n || dv > m) {
    throw Error(ErrorKind::kInfeasibleDegrees, "N*dv = " + std::to_string(n * dv) + ", M*dc = " +
                                                   std::to_string(m * dc) + " (N=" + std::to_string(n) +
                                                   ", M=" + std::to_string(m) + ", dc=" + std::to_string(dc) +
                                                   ", dv=" + std::to_string(dv) + ")");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff_dist(1, field.order() - 1);

  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    std::vector<std::uint32_t> pool;
    pool.reserve(n * dv);
    for (std::uint32_t v = 0; v < n; ++v) pool.insert(pool.end(), dv, v);
    std::vector<std::vector<std::uint32_t>> row_cols(m), col_rows(n);
    std::vector<PcmEntry> entries;
    entries.reserve(n * dv);
    bool stuck = false;

    for (std::uint32_t row = 0; row < m && !stuck; ++row) {
      for (std::size_t slot = 0; slot < dc; ++slot) {
        auto is_dup = [&](std::uint32_t col) {
          return std::find(row_cols[row].begin(), row_cols[row].end(), col) != row_cols[row].end();
        };
        std::ptrdiff_t chosen = -1, fallback = -1;
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int t = 0; t < kGirthRetries; ++t) {
          const auto i = static_cast<std::ptrdiff_t>(pick(rng));
          const auto col = pool[static_cast<std::size_t>(i)];
          if (is_dup(col)) continue;
          if (fallback < 0) fallback = i;
          if (!closes_four_cycle(row_cols, col_rows, row, col)) {
            chosen = i;
            break;
          }
        }
        if (chosen < 0) chosen = fallback;
        if (chosen < 0) {
          for (std::size_t i = 0; i < pool.size(); ++i) {
            if (!is_dup(pool[i])) {
              chosen = static_cast<std::ptrdiff_t>(i);
              break;
            }
          }
        }
        if (chosen < 0) {
          stuck = true;
          break;
        }
        const auto col = pool[static_cast<std::size_t>(chosen)];
        pool[static_cast<std::size_t>(chosen)] = pool.back();
        pool.pop_back();
        row_cols[row].push_back(col);
        col_rows[col].push_back(row);
        entries.push_back({row, col, static_cast<Symbol>(coeff_dist(rng))});
      }
    }
    if (!stuck) return ParityCheckMatrix(field, m, n, std::move(entries));
  }
  throw Error(ErrorKind::kInfeasibleDegrees, "no regular arrangement found after restarts");
}

std::size_t count_four_cycles(const ParityCheckMatrix& pcm) {
  std::vector<std::vector<std::uint32_t>> row_cols(pcm.rows());
  for (const auto& e : pcm.entries()) row_cols[e.row].push_back(e.col);
  std::size_t cycles = 0;
  for (std::size_t a = 0; a < pcm.rows(); ++a) {
    for (std::size_t b = a + 1; b < pcm.rows(); ++b) {
      std::size_t shared = 0;
      for (auto c : row_cols[a]) {
        shared += std::count(row_cols[b].begin(), row_cols[b].end(), c);
      }
      if (shared >= 2) cycles += shared * (shared - 1) / 2;
    }
  }
  return cycles;
}

// ---------------------------------------------------------------------------

TannerGraph::TannerGraph(const ParityCheckMatrix& pcm) : field_(pcm.field()) {
  const auto entries = pcm.entries();
  const std::size_t e_count = entries.size();
  cn_offsets_.assign(pcm.rows() + 1, 0);
  vn_offsets_.assign(pcm.cols() + 1, 0);
  for (const auto& e : entries) {
    ++cn_offsets_[e.row + 1];
    ++vn_offsets_[e.col + 1];
  }
  for (std::size_t i = 0; i < pcm.rows(); ++i) {
    max_dc_ = std::max(max_dc_, cn_offsets_[i + 1]);
    cn_offsets_[i + 1] += cn_offsets_[i];
  }
  for (std::size_t i = 0; i < pcm.cols(); ++i) {
    max_dv_ = std::max(max_dv_, vn_offsets_[i + 1]);
    vn_offsets_[i + 1] += vn_offsets_[i];
  }

  // Entries are row-major sorted, so their position is already the CN-major edge id.
  cn_list_.resize(e_count);
  vn_list_.resize(e_count);
  edge_cn_.resize(e_count);
  edge_vn_.resize(e_count);
  edge_coeff_.resize(e_count);
  std::vector<std::size_t> vn_fill(vn_offsets_.begin(), vn_offsets_.end() - 1);
  for (std::uint32_t id = 0; id < e_count; ++id) {
    const auto& e = entries[id];
    cn_list_[id] = {e.col, e.coeff, id};
    vn_list_[vn_fill[e.col]++] = {e.row, e.coeff, id};
    edge_cn_[id] = e.row;
    edge_vn_[id] = e.col;
    edge_coeff_[id] = e.coeff;
  }
}

Syndrome syndrome(const ParityCheckMatrix& pcm, std::span<const Symbol> codeword) {
  if (codeword.size() != pcm.cols()) {
    throw Error(ErrorKind::kLengthMismatch,
                "codeword has " + std::to_string(codeword.size()) + " symbols, expected " + std::to_string(pcm.cols()));
  }
  const auto& f = pcm.field();
  Syndrome s;
  s.values.assign(pcm.rows(), 0);
  for (const auto& e : pcm.entries()) s.values[e.row] ^= f.mul(e.coeff, codeword[e.col]);
  s.is_zero = std::all_of(s.values.begin(), s.values.end(), [](Symbol v) { return v == 0; });
  return s;
}

bool syndrome_is_zero(const TannerGraph& graph, std::span<const Symbol> codeword) {
  const auto& f = graph.field();
  for (std::size_t m = 0; m < graph.num_checks(); ++m) {
    Symbol acc = 0;
    for (const auto& ref : graph.check_edges(m)) acc ^= f.mul(ref.coeff, codeword[ref.node]);
    if (acc != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Encoder::Encoder(const ParityCheckMatrix& pcm) : field_(pcm.field()), n_(pcm.cols()), m_(pcm.rows()) {
  auto h = pcm.dense();
  const auto& f = field_;
  auto at = [&](std::size_t r, std::size_t c) -> Symbol& { return h[r * n_ + c]; };

  std::size_t r = 0;
  std::vector<bool> is_pivot(n_, false);
  for (std::size_t c = 0; c < n_ && r < m_; ++c) {
    std::size_t p = r;
    while (p < m_ && at(p, c) == 0) ++p;
    if (p == m_) continue;
    if (p != r) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(p, j), at(r, j));
    }
    const Symbol scale = f.inv(at(r, c));
    for (std::size_t j = 0; j < n_; ++j) at(r, j) = f.mul(at(r, j), scale);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const Symbol factor = at(i, c);
      for (std::size_t j = 0; j < n_; ++j) at(i, j) ^= f.mul(factor, at(r, j));
    }
    pivot_cols_.push_back(static_cast<std::uint32_t>(c));
    is_pivot[c] = true;
    ++r;
  }
  for (std::uint32_t c = 0; c < n_; ++c) {
    if (!is_pivot[c]) info_cols_.push_back(c);
  }
  const std::size_t k = info_cols_.size();
  coeffs_.resize(pivot_cols_.size() * k);
  for (std::size_t i = 0; i < pivot_cols_.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) coeffs_[i * k + j] = at(i, info_cols_[j]);
  }
}

Codeword Encoder::encode(std::span<const Symbol> message) const {
  const std::size_t k = info_cols_.size();
  if (message.size() != k) {
    throw Error(ErrorKind::kLengthMismatch,
                "message has " + std::to_string(message.size()) + " symbols, expected " + std::to_string(k));
  }
  Codeword cw(n_, 0);
  for (std::size_t j = 0; j < k; ++j) {
    if (!field_.contains(message[j])) {
      throw Error(ErrorKind::kFieldMismatch, "message symbol " + std::to_string(message[j]) + " outside field");
    }
    cw[info_cols_[j]] = message[j];
  }
  // Row i of the RREF reads c_pivot + sum_j a_ij c_info_j = 0; in characteristic 2 minus is plus.
  for (std::size_t i = 0; i < pivot_cols_.size(); ++i) {
    Symbol acc = 0;
    const Symbol* row = coeffs_.data() + i * k;
    for (std::size_t j = 0; j < k; ++j) acc ^= field_.mul(row[j], message[j]);
    cw[pivot_cols_[i]] = acc;
  }
  return cw;
}

}  // namespace nbldpc
