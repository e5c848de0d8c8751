#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scissor/cost.hpp"
#include "scissor/error.hpp"
#include "scissor/harness.hpp"
#include "scissor/pipeline.hpp"
#include "scissor/vtok.hpp"

namespace scissor::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Failure while writing a result file.
struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename F>
void write_output(F&& write) {
  try {
    write();
  } catch (const Error& e) {
    if (e.code() == Errc::Io) throw OutputError(e.what());
    throw;
  }
}

/// Similarity FLOPs actually spent by this configuration: the per-frame
/// n 2m^2 d term for scc, 2 k1^2 d when the temporal step runs and
/// 2 n m k2 d when the final merge runs.
double overhead_flops(const VideoTokens& video, const PipelineConfig& cfg, std::size_t k1,
                      std::size_t k2) {
  OverheadConfig oc;
  oc.frames = video.frames();
  oc.per_frame = video.tokens_per_frame();
  oc.hidden = video.dims();
  const double d = static_cast<double>(oc.hidden);
  const double full = compression_flops(oc);  // spatial term only (k1 = k2 = 0)
  double total = cfg.selector == Selector::Scc ? full : 0.0;
  if (cfg.selector == Selector::Scc && cfg.enable_temporal) {
    total += 2.0 * static_cast<double>(k1) * static_cast<double>(k1) * d;
  }
  if (cfg.enable_final_merge) {
    total += 2.0 * static_cast<double>(video.total_tokens()) * static_cast<double>(k2) * d;
  }
  return total;
}

struct CompressArgs {
  std::string in;
  std::string out;
  double tau = 0.9;
  std::optional<double> tau_temporal;
  double epsilon = 0.05;
  std::optional<std::uint64_t> seed;
  bool no_temporal = false;
  bool no_merge = false;
  std::string selector = "scc";
  std::optional<std::size_t> target_count;
  std::optional<double> target_ratio;
  bool no_timing = false;
};

struct SweepArgs {
  std::string in;
  std::vector<double> taus;
  std::vector<double> epsilons;
  double tau = 0.9;
  double epsilon = 0.05;
  std::size_t runs = 1;
  std::optional<std::uint64_t> seed;
};

struct FlopsArgs {
  LlmCostConfig llm;
  std::vector<std::uint64_t> overhead;
  std::vector<double> ratios;
};

struct GenArgs {
  std::string out;
  SyntheticSpec spec;
  std::optional<std::uint64_t> seed;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SCISSOR_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 10);
      if (used == std::strlen(env)) return v;
    } catch (const std::exception&) {
    }
    throw Usage(std::string("SCISSOR_SEED is not an unsigned integer: '") + env + "'");
  }
  return 0;
}

VideoTokens read_input(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(Errc::Format, "input file " + path + " does not exist");
  }
  return vtok::read_file(path);
}

int cmd_compress(const CompressArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const VideoTokens video = read_input(a.in);

  PipelineConfig cfg = PipelineConfig::with_defaults(static_cast<float>(a.tau), a.epsilon,
                                                     resolve_seed(a.seed));
  if (a.tau_temporal) cfg.temporal.tau = static_cast<float>(*a.tau_temporal);
  cfg.enable_temporal = !a.no_temporal;
  cfg.enable_final_merge = !a.no_merge;
  cfg.selector = parse_selector(a.selector);
  cfg.target_count = a.target_count;

  double tau_spatial = a.tau;
  double tau_temporal = a.tau_temporal.value_or(a.tau);
  CompressionResult result = [&] {
    if (!a.target_ratio) return compress_video(video, cfg);
    auto search = tune_tau(video, cfg, *a.target_ratio);
    tau_spatial = tau_temporal = static_cast<double>(search.tau);
    err << "scissor: tau search " << (search.converged ? "converged" : "did not converge")
        << " at tau=" << search.tau << " after " << search.iterations << " iterations\n";
    return std::move(search.result);
  }();

  write_output([&] { vtok::write_file(a.out, VideoTokens({result.final})); });

  std::size_t k1 = 0;
  for (auto c : result.spatial_counts) k1 += c;
  const double overhead = overhead_flops(video, cfg, k1, result.temporal_count);

  const auto stop = std::chrono::steady_clock::now();
  Json stats;
  stats["input_tokens"] = result.input_count;
  stats["retained_tokens"] = result.temporal_count;
  stats["retention_ratio"] = result.retention_ratio;
  stats["tau_spatial"] = tau_spatial;
  stats["tau_temporal"] = tau_temporal;
  stats["epsilon"] = a.epsilon;
  stats["seed"] = cfg.spatial.seed;
  stats["spatial_counts"] = result.spatial_counts;
  stats["flops_overhead"] = overhead;
  stats["elapsed_ms"] =
      a.no_timing ? 0.0 : std::chrono::duration<double, std::milli>(stop - start).count();
  stats["selector"] = std::string(to_string(cfg.selector));
  stats["temporal_step"] = cfg.enable_temporal;
  stats["final_merge"] = cfg.enable_final_merge;
  out << stats.dump() << '\n';
  return kOk;
}

void print_number(std::ostream& os, double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  os << s.str();
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const bool by_tau = !a.taus.empty();
  if (by_tau == !a.epsilons.empty()) {
    throw Usage("exactly one of --tau-list or --epsilon-list is required");
  }
  const VideoTokens video = read_input(a.in);
  const std::uint64_t seed = resolve_seed(a.seed);
  const SweepCurve curve = by_tau ? sweep_tau(video, a.taus, a.epsilon, a.runs, seed)
                                  : sweep_epsilon(video, a.tau, a.epsilons, a.runs, seed);
  out << "param,mean_count,std_count,runs\n";
  for (std::size_t i = 0; i < curve.params.size(); ++i) {
    print_number(out, curve.params[i]);
    out << ',';
    print_number(out, curve.mean_count[i]);
    out << ',';
    print_number(out, curve.std_count[i]);
    out << ',' << curve.runs << '\n';
  }
  if (curve.floor_count) err << "scissor: full-sampling count " << *curve.floor_count << '\n';
  return kOk;
}

int cmd_flops(const FlopsArgs& a, std::ostream& out) {
  if (a.llm.tokens == 0) throw Usage("--tokens must be >= 1");
  a.llm.validate();
  FlopsReport rep = llm_flops(a.llm);
  if (!a.overhead.empty()) {
    if (a.overhead.size() != 5) throw Usage("--overhead expects n,m,d,k1,k2");
    const OverheadConfig oc{a.overhead[0], a.overhead[1], a.overhead[2], a.overhead[3],
                            a.overhead[4]};
    rep.overhead = compression_flops(oc);
    rep.total += rep.overhead;
  }
  Json j;
  j["layers"] = a.llm.layers;
  j["hidden"] = a.llm.hidden;
  j["ffn"] = a.llm.ffn;
  j["tokens"] = a.llm.tokens;
  j["decode_len"] = a.llm.decode_len;
  j["prefill"] = rep.prefill;
  j["decode"] = rep.decode;
  j["overhead"] = rep.overhead;
  j["total"] = rep.total;
  if (!a.ratios.empty()) {
    const std::vector<OverheadConfig> none(a.ratios.size());
    Json rows = Json::array();
    for (const auto& r : scenario_table(a.llm, a.ratios, none)) {
      rows.push_back({{"retention_ratio", r.retention_ratio},
                      {"tokens", r.tokens},
                      {"flops", r.total},
                      {"flops_ratio", r.flops_ratio}});
    }
    j["scenarios"] = rows;
  }
  out << j.dump() << '\n';
  return kOk;
}

int cmd_gen(GenArgs a, std::ostream& out) {
  a.spec.seed = resolve_seed(a.seed);
  const SyntheticVideo syn = gen_synthetic_video(a.spec);
  write_output([&] { vtok::write_file(a.out, syn.video); });

  Json side;
  side["frames"] = a.spec.n_frames;
  side["tokens_per_frame"] = a.spec.tokens_per_frame;
  side["dims"] = a.spec.dims;
  side["clusters"] = a.spec.n_clusters;
  side["sigma"] = a.spec.noise_sigma;
  side["drift"] = a.spec.temporal_drift;
  side["seed"] = a.spec.seed;
  side["margin"] = syn.margin;
  side["min_intra_cosine"] = syn.min_intra_cosine;
  side["max_inter_cosine"] = syn.max_inter_cosine;
  side["labels"] = syn.labels;
  Json cents = Json::array();
  for (std::size_t c = 0; c < syn.centroids.rows(); ++c) {
    const auto r = syn.centroids.row(c);
    cents.push_back(std::vector<float>(r.begin(), r.end()));
  }
  side["centroids"] = cents;

  const std::string sidecar = a.out + ".labels.json";
  std::ofstream os(sidecar, std::ios::trunc);
  if (!os) throw OutputError("cannot open " + sidecar + " for writing");
  os << side.dump(1) << '\n';
  os.close();
  if (!os) throw OutputError("failed writing " + sidecar);

  Json summary{{"out", a.out}, {"labels", sidecar}, {"margin", syn.margin}};
  out << summary.dump() << '\n';
  return kOk;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Format:
    case Errc::UnsupportedVersion:
    case Errc::NonFiniteInput:
    case Errc::ZeroNormRow:
      return kMalformedInput;
    case Errc::Io:
      return kMalformedInput;
    default:
      return kInvalidParameters;
  }
}

const CLI::Validator kNumber(
    [](std::string& v) -> std::string {
      double x = 0.0;
      if (!v.empty() && CLI::detail::lexical_cast(v, x)) return {};
      return "not a number: '" + v + "'";
    },
    "NUMBER");

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Training-free video token compression via semantic connected components",
               "scissor"};
  app.require_subcommand(1);

  CompressArgs ca;
  auto* compress = app.add_subcommand("compress", "compress a VTOK file");
  compress->add_option("input", ca.in, "input VTOK file")->required();
  compress->add_option("output", ca.out, "output VTOK file (1 frame of M tokens)")->required();
  compress->add_option("--tau", ca.tau, "similarity threshold in [0, 1)");
  compress->add_option("--tau-temporal", ca.tau_temporal, "temporal threshold (default: --tau)");
  compress->add_option("--epsilon", ca.epsilon, "sampling error tolerance");
  compress->add_option("--seed", ca.seed, "random seed (default: $SCISSOR_SEED or 0)");
  compress->add_flag("--no-temporal", ca.no_temporal, "skip the temporal step");
  compress->add_flag("--no-merge", ca.no_merge, "skip the final merge");
  compress->add_option("--selector", ca.selector, "scc | random | uniform | l2norm");
  compress->add_option("--target-count", ca.target_count, "token budget for baseline selectors");
  compress->add_option("--target-ratio", ca.target_ratio, "search tau for this retention ratio");
  compress->add_flag("--no-timing", ca.no_timing, "report elapsed_ms as 0");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "retained-token statistics over tau or epsilon");
  sweep->add_option("input", sa.in, "input VTOK file")->required();
  sweep->add_option("--tau-list", sa.taus, "comma-separated tau values")
      ->delimiter(',')
      ->check(kNumber);
  sweep->add_option("--epsilon-list", sa.epsilons, "comma-separated epsilon values")
      ->delimiter(',')
      ->check(kNumber);
  sweep->add_option("--tau", sa.tau, "fixed tau for an epsilon sweep");
  sweep->add_option("--epsilon", sa.epsilon, "fixed epsilon for a tau sweep");
  sweep->add_option("--runs", sa.runs, "seeds per point")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sa.seed, "base seed (default: $SCISSOR_SEED or 0)");

  FlopsArgs fa;
  auto* flops = app.add_subcommand("flops", "language-model and compression FLOPs");
  flops->add_option("--layers", fa.llm.layers, "transformer layers");
  flops->add_option("--hidden", fa.llm.hidden, "hidden size");
  flops->add_option("--ffn", fa.llm.ffn, "FFN intermediate size");
  flops->add_option("--tokens", fa.llm.tokens, "visual tokens fed to the model");
  flops->add_option("--decode-len", fa.llm.decode_len, "generated tokens");
  flops->add_option("--overhead", fa.overhead, "n,m,d,k1,k2 for the compression cost")
      ->delimiter(',')
      ->expected(5);
  flops->add_option("--ratios", fa.ratios, "retention ratios for a scenario table")
      ->delimiter(',')
      ->check(kNumber);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "write a planted-cluster synthetic VTOK fixture");
  gen->add_option("output", ga.out, "output VTOK file")->required();
  gen->add_option("--frames", ga.spec.n_frames, "frames");
  gen->add_option("--tokens", ga.spec.tokens_per_frame, "tokens per frame");
  gen->add_option("--dims", ga.spec.dims, "embedding dimension");
  gen->add_option("--clusters", ga.spec.n_clusters, "planted clusters (<= dims)");
  gen->add_option("--sigma", ga.spec.noise_sigma, "gaussian noise sigma");
  gen->add_option("--drift", ga.spec.temporal_drift, "per-frame centroid drift");
  gen->add_option("--seed", ga.seed, "seed (default: $SCISSOR_SEED or 0)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "scissor: " << e.what() << '\n';
    return kInvalidParameters;
  }

  try {
    if (compress->parsed()) return cmd_compress(ca, out, err);
    if (sweep->parsed()) return cmd_sweep(sa, out, err);
    if (flops->parsed()) return cmd_flops(fa, out);
    if (gen->parsed()) return cmd_gen(ga, out);
  } catch (const OutputError& e) {
    err << "scissor: " << e.what() << '\n';
    return kIoError;
  } catch (const Usage& e) {
    err << "scissor: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const Error& e) {
    err << "scissor: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kInvalidParameters;
}

}  // namespace scissor::cli
