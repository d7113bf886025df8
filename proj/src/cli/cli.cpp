#include "vsait/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>

#include "vsait/error.hpp"
#include "vsait/feature_maps.hpp"
#include "vsait/flip_bench.hpp"
#include "vsait/losses.hpp"
#include "vsait/lsh.hpp"
#include "vsait/mapping.hpp"
#include "vsait/patch_features.hpp"

namespace vsait::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20221023;

const std::map<std::string, Quantize> kQuantizeNames{{"none", Quantize::kNone},
                                                     {"sign", Quantize::kSign}};
const std::map<std::string, NormScope> kNormScopeNames{{"vector", NormScope::kVector},
                                                       {"per_layer", NormScope::kPerLayer}};
const std::map<std::string, GanVariant> kVariantNames{{"nll", GanVariant::kNll},
                                                      {"hinge", GanVariant::kHinge}};

template <typename Enum>
std::string name_of(const std::map<std::string, Enum>& names, Enum value) {
  for (const auto& [name, v] : names) {
    if (v == value) return name;
  }
  return "unknown";
}

struct Settings {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;

  // encode
  std::string in_path;
  std::string out_path;
  std::size_t dim = kDefaultHypervectorDim;
  std::vector<std::size_t> patch_sizes;
  std::size_t dilation = 1;
  Quantize quantize = Quantize::kNone;
  NormScope norm_scope = NormScope::kVector;

  // map / apply
  std::string src_path;
  std::string tgt_path;
  std::string mode = "paired";
  std::string mapping_path;

  // loss
  std::string x_path;
  std::string cycled_path;
  std::string real_path;
  std::string fake_translated_path;
  std::string fake_mapped_path;
  double lambda = kLambdaDefault;
  GanVariant variant = GanVariant::kHinge;
  std::vector<double> weights{1.0, 1.0};

  // bench
  std::string axis = "dim";
  std::vector<std::string> grid{"128", "4096"};
  std::size_t k = 2;
  std::size_t objects = 32;
  std::size_t trials = 100;
  std::string mapping = "ground_truth";
};

Seed resolve_seed(const Settings& s) {
  if (s.seed) return Seed{*s.seed};
  if (const char* env = std::getenv("VSAIT_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    require(end != nullptr && *end == '\0', ErrorCode::kConfig,
            std::string("VSAIT_SEED is not an unsigned integer: '") + env + "'");
    return Seed{value};
  }
  return Seed{kDefaultSeed};
}

// Options whose value is given on the command line, by long name.
std::set<std::string> flags_present(const std::vector<std::string>& args) {
  std::set<std::string> present;
  for (const std::string& arg : args) {
    if (arg.rfind("--", 0) != 0) continue;
    present.insert(arg.substr(2, arg.find('=') == std::string::npos ? std::string::npos
                                                                     : arg.find('=') - 2));
  }
  return present;
}

std::optional<std::string> config_path_in(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

std::string json_to_arg(const std::string& key, const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number()) return value.dump();
  if (value.is_array()) {
    std::string joined;
    for (const json& item : value) {
      require(!item.is_array() && !item.is_object(), ErrorCode::kConfig,
              "config key '" + key + "' must be a flat list");
      joined += (joined.empty() ? "" : ",") + json_to_arg(key, item);
    }
    return joined;
  }
  fail(ErrorCode::kConfig, "config key '" + key + "' has an unsupported value type");
}

// Turns the JSON config file into extra arguments for every key the command
// line does not already set, so flags override file values.
std::vector<std::string> config_args(const std::string& path, const CLI::App& command,
                                     const std::set<std::string>& present) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kConfig, "cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfig, "config file '" + path + "': " + e.what());
  }
  require(doc.is_object(), ErrorCode::kConfig, "config file must hold a JSON object");

  std::vector<std::string> extra;
  for (const auto& [key, value] : doc.items()) {
    require(key != "config", ErrorCode::kConfig, "config files cannot nest --config");
    require(command.get_option_no_throw("--" + key) != nullptr, ErrorCode::kConfig,
            "config key '" + key + "' is not an option of '" + command.get_name() + "'");
    if (present.contains(key)) continue;
    extra.push_back("--" + key);
    extra.push_back(json_to_arg(key, value));
  }
  return extra;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot open '" + tmp.string() + "'");
    out << text;
    out.close();
    require(static_cast<bool>(out), ErrorCode::kIo, "error writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::vector<Hypervector> read_hypervectors(const std::string& path) {
  return hypervectors_from_feature_maps(read_feature_file(path));
}

ScoreBatch read_scores(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open score file '" + path + "'");
  std::vector<double> scores;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == token.size(), ErrorCode::kInvalidArgument,
            "score file '" + path + "': not a number: '" + token + "'");
    scores.push_back(value);
  }
  try {
    return ScoreBatch(std::move(scores));
  } catch (const Error& e) {
    throw Error(e.code(), "score file '" + path + "': " + e.what());
  }
}

void echo_config(std::ostream& err, const std::string& command, const json& config) {
  err << "effective config (" << command << "): " << config.dump() << '\n';
}

int cmd_encode(const Settings& s, std::ostream& out, std::ostream& err) {
  require(!s.patch_sizes.empty(), ErrorCode::kConfig, "encode: --patch-sizes is required");
  require(s.dim >= 1, ErrorCode::kConfig, "encode: --dim must be >= 1");
  require(s.dilation >= 1, ErrorCode::kConfig, "encode: --dilation must be >= 1");
  const Seed seed = resolve_seed(s);
  echo_config(err, "encode",
              {{"in", s.in_path}, {"out", s.out_path}, {"dim", s.dim}, {"seed", seed.value},
               {"patch-sizes", s.patch_sizes}, {"dilation", s.dilation},
               {"quantize", name_of(kQuantizeNames, s.quantize)},
               {"norm-scope", name_of(kNormScopeNames, s.norm_scope)}});

  const FeatureMapSet fm = read_feature_file(s.in_path);
  PatchFeatureSet patches;
  try {
    patches = assemble_patches(fm, PatchSpec{s.patch_sizes, s.dilation});
  } catch (const Error& e) {
    // Every assembly failure means the patch spec does not fit this file.
    throw Error(ErrorCode::kConfig, e.what());
  }
  normalize_blocks(patches, s.norm_scope);
  const LshProjector projector(patches.m, s.dim, seed);
  const std::vector<Hypervector> hvs = project_batch(projector, patches, s.quantize, s.threads);
  write_feature_file(hypervectors_to_feature_maps(hvs, "hypervectors"), s.out_path);
  out << json{{"patch_count", patches.patch_count()}, {"m", patches.m}, {"n", s.dim}}.dump()
      << '\n';
  return kExitOk;
}

int cmd_map(const Settings& s, std::ostream& out, std::ostream& err) {
  require(s.mode == "paired" || s.mode == "random", ErrorCode::kConfig,
          "map: --mode must be paired or random");
  require(s.mode == "random" || !s.tgt_path.empty(), ErrorCode::kConfig,
          "map: paired mode needs --tgt");
  const Seed seed = resolve_seed(s);
  echo_config(err, "map",
              {{"src", s.src_path}, {"tgt", s.tgt_path}, {"mode", s.mode},
               {"quantize", name_of(kQuantizeNames, s.quantize)}, {"seed", seed.value},
               {"out", s.out_path}});

  const std::vector<Hypervector> src = read_hypervectors(s.src_path);
  std::optional<HypervectorMapping> mapping;
  if (s.mode == "paired") {
    const std::vector<Hypervector> tgt = read_hypervectors(s.tgt_path);
    mapping.emplace(estimate_mapping_paired(src, tgt, s.quantize));
  } else {
    mapping.emplace(random_mapping(src.size(), src.front().dim(), seed));
  }
  write_feature_file(hypervectors_to_feature_maps(mapping->per_patch(), "mapping"), s.out_path);
  out << json{{"patch_count", mapping->patch_count()}, {"dim", mapping->dim()}, {"mode", s.mode}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_apply(const Settings& s, std::ostream& out, std::ostream& err) {
  echo_config(err, "apply", {{"in", s.in_path}, {"mapping", s.mapping_path}, {"out", s.out_path}});
  const std::vector<Hypervector> vs = read_hypervectors(s.in_path);
  const HypervectorMapping u(read_hypervectors(s.mapping_path));
  const std::vector<Hypervector> mapped = apply_mapping(vs, u);
  write_feature_file(hypervectors_to_feature_maps(mapped, "hypervectors"), s.out_path);
  out << json{{"patch_count", mapped.size()}, {"dim", u.dim()}}.dump() << '\n';
  return kExitOk;
}

int cmd_loss(const Settings& s, std::ostream& out, std::ostream& err) {
  require(s.weights.size() == 2, ErrorCode::kConfig, "loss: --weights takes two values");
  LossConfig cfg;
  cfg.lambda = s.lambda;
  cfg.translated_weight = s.weights[0];
  cfg.mapped_weight = s.weights[1];
  cfg.variant = s.variant;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  const int score_files = static_cast<int>(!s.real_path.empty()) +
                          static_cast<int>(!s.fake_translated_path.empty()) +
                          static_cast<int>(!s.fake_mapped_path.empty());
  require(score_files == 0 || score_files == 3, ErrorCode::kConfig,
          "loss: --real, --fake-translated and --fake-mapped go together");

  const json config{{"lambda", cfg.lambda},
                    {"variant", name_of(kVariantNames, cfg.variant)},
                    {"weights", {cfg.translated_weight, cfg.mapped_weight}}};
  echo_config(err, "loss", config);

  const double vsa = vsa_cyclic_loss(read_hypervectors(s.x_path), read_hypervectors(s.cycled_path));
  json result{{"vsa", vsa}, {"gan_d", nullptr}, {"gan_g", nullptr}};
  double gan = 0.0;
  if (score_files == 3) {
    const GanLoss g = gan_loss(read_scores(s.real_path), read_scores(s.fake_translated_path),
                               read_scores(s.fake_mapped_path), cfg);
    result["gan_d"] = g.discriminator;
    result["gan_g"] = g.generator;
    gan = g.generator;
  }
  result["total"] = total_loss(gan, vsa, cfg);
  result["config"] = config;
  out << result.dump() << '\n';
  return kExitOk;
}

int cmd_bench(const Settings& s, std::ostream& out, std::ostream& err) {
  BenchConfig base;
  SweepAxis axis{};
  try {
    axis = parse_sweep_axis(s.axis);
    base.dim = s.dim;
    base.k = s.k;
    base.objects = s.objects;
    base.trials = s.trials;
    base.mapping = {parse_mapping_kind(s.mapping), 1.0};
    base.seed = resolve_seed(s);
    base.threads = s.threads;
    base.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  echo_config(err, "bench",
              {{"axis", s.axis}, {"grid", s.grid}, {"dim", base.dim}, {"k", base.k},
               {"objects", base.objects}, {"trials", base.trials}, {"mapping", s.mapping},
               {"seed", base.seed.value}, {"threads", base.threads}, {"out", s.out_path}});

  std::vector<BenchReport> reports;
  try {
    reports = run_sweep(axis, s.grid, base);
  } catch (const Error& e) {
    throw Error(e.code() == ErrorCode::kInvalidArgument ? ErrorCode::kConfig : e.code(), e.what());
  }
  std::ostringstream csv;
  write_csv(reports, csv);
  if (s.out_path.empty()) {
    out << csv.str();
  } else {
    write_text_file(s.out_path, csv.str());
  }
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::kConfig ? kExitConfig : kExitData;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Vector-symbolic hypervector toolkit: encode features, build mappings, score losses, "
               "run the semantic-flipping bench.",
               "vsait"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--config", s.config_path, "JSON file with option values (flags win)");
    cmd->add_option("--seed", s.seed, "RNG seed (falls back to $VSAIT_SEED)");
  };
  auto quantize = [&](CLI::App* cmd) {
    cmd->add_option("--quantize", s.quantize, "none or sign")
        ->transform(CLI::CheckedTransformer(kQuantizeNames, CLI::ignore_case));
  };
  auto threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", s.threads, "worker threads, 0 = all cores");
  };

  CLI::App* encode = app.add_subcommand("encode", "Project patch features into hypervectors");
  common(encode);
  quantize(encode);
  threads(encode);
  encode->add_option("--in", s.in_path, "VSAF feature map file")->required();
  encode->add_option("--out", s.out_path, "VSAF hypervector output")->required();
  encode->add_option("--dim", s.dim, "hypervector dimension");
  encode->add_option("--patch-sizes", s.patch_sizes, "patch side per layer")->delimiter(',');
  encode->add_option("--dilation", s.dilation, "spacing between sampled locations");
  encode->add_option("--norm-scope", s.norm_scope, "vector or per_layer")
      ->transform(CLI::CheckedTransformer(kNormScopeNames, CLI::ignore_case));

  CLI::App* map = app.add_subcommand("map", "Estimate or sample a hypervector mapping");
  common(map);
  quantize(map);
  map->add_option("--src", s.src_path, "VSAF source hypervectors")->required();
  map->add_option("--tgt", s.tgt_path, "VSAF target hypervectors (paired mode)");
  map->add_option("--mode", s.mode, "paired or random");
  map->add_option("--out", s.out_path, "VSAF mapping output")->required();

  CLI::App* apply = app.add_subcommand("apply", "Bind hypervectors with a mapping");
  common(apply);
  apply->add_option("--in", s.in_path, "VSAF hypervectors")->required();
  apply->add_option("--mapping", s.mapping_path, "VSAF mapping")->required();
  apply->add_option("--out", s.out_path, "VSAF output")->required();

  CLI::App* loss = app.add_subcommand("loss", "Compute cyclic, adversarial and total losses");
  common(loss);
  loss->add_option("--x", s.x_path, "VSAF source hypervectors")->required();
  loss->add_option("--cycled", s.cycled_path, "VSAF cycled hypervectors")->required();
  loss->add_option("--real", s.real_path, "scores for target hypervectors");
  loss->add_option("--fake-translated", s.fake_translated_path, "scores for translated hypervectors");
  loss->add_option("--fake-mapped", s.fake_mapped_path, "scores for mapped source hypervectors");
  loss->add_option("--lambda", s.lambda, "cyclic loss weight");
  loss->add_option("--variant", s.variant, "nll or hinge")
      ->transform(CLI::CheckedTransformer(kVariantNames, CLI::ignore_case));
  loss->add_option("--weights", s.weights, "weights of the two fake terms")->delimiter(',');

  CLI::App* bench = app.add_subcommand("bench", "Run the semantic-flipping bench sweep");
  common(bench);
  threads(bench);
  bench->add_option("--axis", s.axis, "dim, k, mapping_kind or lambda_proxy");
  bench->add_option("--grid", s.grid, "comma-separated sweep values")->delimiter(',');
  bench->add_option("--dim", s.dim, "hypervector dimension");
  bench->add_option("--k", s.k, "object/attribute pairs per scene");
  bench->add_option("--objects", s.objects, "object vocabulary size");
  bench->add_option("--trials", s.trials, "Monte-Carlo trials per grid point");
  bench->add_option("--mapping", s.mapping, "ground_truth or random");
  bench->add_option("--out", s.out_path, "CSV output (stdout when omitted)");

  std::vector<std::string> full_args = args;
  try {
    if (const auto path = config_path_in(args); path && !args.empty()) {
      const CLI::App* command = app.get_subcommand_no_throw(args.front());
      require(command != nullptr, ErrorCode::kConfig, "--config needs a subcommand first");
      const std::vector<std::string> extra = config_args(*path, *command, flags_present(args));
      full_args.insert(full_args.begin() + 1, extra.begin(), extra.end());
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }

  std::vector<const char*> argv{"vsait"};
  for (const std::string& a : full_args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (encode->parsed()) return cmd_encode(s, out, err);
    if (map->parsed()) return cmd_map(s, out, err);
    if (apply->parsed()) return cmd_apply(s, out, err);
    if (loss->parsed()) return cmd_loss(s, out, err);
    if (bench->parsed()) return cmd_bench(s, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error (io): " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace vsait::cli
