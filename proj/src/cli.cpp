#include "nbldpc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "nbldpc/error.hpp"
#include "nbldpc/perf.hpp"

namespace nbldpc {

namespace {

constexpr int kExitInput = 2;
constexpr int kExitEngine = 3;

struct CodeOptions {
  std::string file;
  std::size_t n = 16;
  std::size_t m = 8;
  std::size_t dc = 4;
  std::size_t dv = 2;
  int q = 4;
  std::uint32_t poly = 0;
};

struct DecodeOptions {
  std::string algo = "fft-spa";
  std::string arith = "f64";
  int iters = 10;
  bool early_stop = false;
  double scale = 0.0;
};

struct Common {
  std::uint64_t seed = 1;
  std::string out;
};

void add_code_options(CLI::App* app, CodeOptions& o) {
  app->add_option("--code", o.file, "alist code file (overrides the generator options)")->check(CLI::ExistingFile);
  app->add_option("--n", o.n, "code length N")->check(CLI::PositiveNumber);
  app->add_option("--m", o.m, "number of checks M")->check(CLI::PositiveNumber);
  app->add_option("--dc", o.dc, "check node degree")->check(CLI::PositiveNumber);
  app->add_option("--dv", o.dv, "variable node degree")->check(CLI::PositiveNumber);
  app->add_option("--q", o.q, "field GF(2^q)")->check(CLI::Range(2, 8));
  app->add_option("--poly", o.poly, "primitive polynomial (default per q)");
}

void add_decode_options(CLI::App* app, DecodeOptions& o) {
  app->add_option("--algo", o.algo, "fft-spa | min-max")->check(CLI::IsMember({"fft-spa", "min-max"}));
  app->add_option("--arith", o.arith, "f64 | i32 | i8")->check(CLI::IsMember({"f64", "i32", "i8"}));
  app->add_option("--iters", o.iters, "maximum iterations")->check(CLI::PositiveNumber);
  app->add_flag("--early-stop", o.early_stop, "stop once the syndrome is zero");
  app->add_option("--scale", o.scale, "Min-Max fixed-point LLR scale")->check(CLI::NonNegativeNumber);
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "random seed")->envname("NBLDPC_SEED");
  app->add_option("--out", c.out, "output file (default stdout)");
}

Field make_field(const CodeOptions& o) {
  return o.poly ? Field::build(o.q, o.poly) : Field::build(o.q);
}

ParityCheckMatrix make_pcm(const CodeOptions& o, std::uint64_t seed) {
  if (!o.file.empty()) return load_code(o.file);
  return gen_regular_code(o.n, o.m, o.dc, o.dv, make_field(o), seed);
}

Algorithm parse_algo(const std::string& s) { return s == "min-max" ? Algorithm::kMinMax : Algorithm::kFftSpa; }

Arithmetic parse_arith(const std::string& s) {
  if (s == "i32") return Arithmetic::kFixed32;
  if (s == "i8") return Arithmetic::kFixed8;
  return Arithmetic::kFloat64;
}

DecodeConfig make_config(const DecodeOptions& o) {
  DecodeConfig c(o.iters, o.early_stop, parse_arith(o.arith));
  c.llr_scale = o.scale;
  return c;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.emplace(path);
      if (!*file_) throw Error(ErrorKind::kInvalidConfig, "cannot open " + path);
    }
  }
  std::ostream& get(std::ostream& fallback) { return file_ ? *file_ : fallback; }

 private:
  std::optional<std::ofstream> file_;
};

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

int exit_code(ErrorKind kind, bool running) {
  if (running && kind != ErrorKind::kInvalidRate) return kExitEngine;
  switch (kind) {
    case ErrorKind::kLengthMismatch:
    case ErrorKind::kDivisionByZero:
    case ErrorKind::kCountersDisabled:
      return kExitEngine;
    default:
      return kExitInput;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-binary LDPC decoding toolkit", "nbldpc"};
  app.require_subcommand(1);

  CodeOptions code_opts;
  DecodeOptions dec_opts;
  Common common;

  auto* gen = app.add_subcommand("gen", "generate a regular code");
  CodeOptions gen_opts;
  gen->add_option("--n", gen_opts.n, "code length N")->required()->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_opts.m, "number of checks M")->required()->check(CLI::PositiveNumber);
  gen->add_option("--dc", gen_opts.dc, "check node degree")->required()->check(CLI::PositiveNumber);
  gen->add_option("--dv", gen_opts.dv, "variable node degree")->required()->check(CLI::PositiveNumber);
  gen->add_option("--q", gen_opts.q, "field GF(2^q)")->required()->check(CLI::Range(2, 8));
  gen->add_option("--poly", gen_opts.poly, "primitive polynomial (default per q)");
  add_common(gen, common);

  auto* sim = app.add_subcommand("simulate", "frame and bit error rates over an Eb/N0 grid");
  std::vector<double> ebn0{1.0, 2.0, 3.0, 4.0};
  std::size_t frames = 1000;
  std::size_t workers = 1;
  bool noiseless = false;
  bool progress = false;
  add_code_options(sim, code_opts);
  add_decode_options(sim, dec_opts);
  add_common(sim, common);
  sim->add_option("--ebn0", ebn0, "Eb/N0 points in dB")->delimiter(',');
  sim->add_option("--frames", frames, "frames per point")->check(CLI::PositiveNumber);
  sim->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  sim->add_flag("--noiseless", noiseless, "transmit without noise");
  sim->add_flag("--progress", progress, "per-point status on stderr");

  auto* bench = app.add_subcommand("bench", "multicodeword throughput over worker counts");
  std::vector<std::size_t> worker_list{1, 2, 4};
  double bench_ebn0 = 3.0;
  std::size_t bench_frames = 256;
  add_code_options(bench, code_opts);
  add_decode_options(bench, dec_opts);
  add_common(bench, common);
  bench->add_option("--workers", worker_list, "worker counts")->delimiter(',')->check(CLI::PositiveNumber);
  bench->add_option("--frames", bench_frames, "frames per run")->check(CLI::PositiveNumber);
  bench->add_option("--ebn0", bench_ebn0, "Eb/N0 in dB");

  auto* analyze = app.add_subcommand("analyze", "predicted vs measured operation counts");
  std::string analyze_algo = "all";
  std::vector<int> qs{2, 3, 4, 5, 6, 7, 8};
  CodeShape shape{32, 64, 4, 2, 0};
  analyze->add_option("--algo", analyze_algo, "fft-spa | min-max | all")
      ->check(CLI::IsMember({"fft-spa", "min-max", "all"}));
  analyze->add_option("--q", qs, "field sizes")->delimiter(',')->check(CLI::Range(2, 8));
  analyze->add_option("--m", shape.m, "number of checks M")->check(CLI::PositiveNumber);
  analyze->add_option("--n", shape.n, "code length N")->check(CLI::PositiveNumber);
  analyze->add_option("--dc", shape.dc, "check node degree")->check(CLI::PositiveNumber);
  analyze->add_option("--dv", shape.dv, "variable node degree")->check(CLI::PositiveNumber);
  add_common(analyze, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : kExitInput;
  }

  bool running = false;
  try {
    Output sink(common.out);
    std::ostream& os = sink.get(out);

    if (gen->parsed()) {
      const auto pcm = gen_regular_code(gen_opts.n, gen_opts.m, gen_opts.dc, gen_opts.dv, make_field(gen_opts),
                                        common.seed);
      std::ostream& summary = common.out.empty() ? err : out;
      write_alist(os, pcm);
      summary << "N=" << pcm.cols() << " M=" << pcm.rows() << " dc=" << gen_opts.dc << " dv=" << gen_opts.dv
              << " g=" << pcm.field().order() << " seed=" << common.seed
              << " four_cycles=" << count_four_cycles(pcm) << "\n";
      return 0;
    }

    if (analyze->parsed()) {
      os << "g,block,predicted,measured,residual\n";
      std::vector<Algorithm> algos;
      if (analyze_algo != "min-max") algos.push_back(Algorithm::kFftSpa);
      if (analyze_algo != "fft-spa") algos.push_back(Algorithm::kMinMax);
      for (Algorithm a : algos) {
        for (int q : qs) {
          for (const auto& r : complexity_report(a, shape, q, common.seed)) {
            os << r.g << ',' << r.block << ',' << num(r.predicted) << ',' << num(r.measured) << ','
               << num(r.residual()) << '\n';
          }
        }
      }
      return 0;
    }

    const Code code(make_pcm(code_opts, common.seed));
    const Algorithm algo = parse_algo(dec_opts.algo);
    const DecodeConfig config = make_config(dec_opts);
    const double bits = static_cast<double>(code.graph.num_variables()) * code.pcm.field().q();
    if (code.encoder.k() == 0) throw Error(ErrorKind::kInvalidRate, "code has no information symbols");
    running = true;

    if (sim->parsed()) {
      if (ebn0.empty()) throw Error(ErrorKind::kInvalidConfig, "empty Eb/N0 grid");
      os << "ebn0_db,frames,frame_errors,symbol_errors,bit_errors,fer,ber,avg_iters\n";
      for (double point : ebn0) {
        const auto r = run_batch(code, algo, config, {point, noiseless}, frames, workers, common.seed);
        const double fer = static_cast<double>(r.failures) / static_cast<double>(frames);
        const double ber = static_cast<double>(r.bit_errors) / (static_cast<double>(frames) * bits);
        os << num(point) << ',' << frames << ',' << r.failures << ',' << r.symbol_errors << ',' << r.bit_errors << ','
           << num(fer) << ',' << num(ber) << ',' << num(r.avg_iters) << '\n';
        if (progress) err << "ebn0=" << point << " frames=" << frames << " fer=" << fer << "\n";
      }
      return 0;
    }

    if (bench->parsed()) {
      os << "workers,frames,wall_s,throughput_bps,speedup_vs_1\n";
      double base = 0.0;
      for (std::size_t w : worker_list) {
        const auto r = run_batch(code, algo, config, {bench_ebn0, false}, bench_frames, w, common.seed);
        if (base == 0.0 || w == 1) base = r.throughput_bps;
        os << w << ',' << bench_frames << ',' << num(r.wall_s) << ',' << num(r.throughput_bps) << ','
           << num(base > 0.0 ? r.throughput_bps / base : 0.0) << '\n';
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind(), running);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitEngine;
  }
  return 0;
}

}  // namespace nbldpc
