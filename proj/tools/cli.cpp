#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "slotprobe/activation_store.hpp"
#include "slotprobe/behavior.hpp"
#include "slotprobe/binary_io.hpp"
#include "slotprobe/checkpoint.hpp"
#include "slotprobe/evaluation.hpp"
#include "slotprobe/interventions.hpp"
#include "slotprobe/prompt_kit.hpp"
#include "slotprobe/random.hpp"
#include "slotprobe/render.hpp"
#include "slotprobe/slot_analysis.hpp"
#include "slotprobe/synthetic.hpp"
#include "slotprobe/training.hpp"

namespace slotprobe::cli {
namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "1..7" or "1,2,4".
std::vector<std::size_t> parse_slot_counts(const std::string& s) {
  std::vector<std::size_t> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const auto lo = parse_int(s.substr(0, dots)), hi = parse_int(s.substr(dots + 2));
    require(lo >= 1 && hi >= lo && hi - lo < 64, ErrorCode::invalid_argument, "bad slot range '" + s + "'");
    for (auto k = lo; k <= hi; ++k) out.push_back(static_cast<std::size_t>(k));
    return out;
  }
  for (const auto& item : split_list(s)) {
    const auto k = parse_int(item);
    require(k >= 1, ErrorCode::invalid_argument, "slot counts must be >= 1");
    out.push_back(static_cast<std::size_t>(k));
  }
  require(!out.empty(), ErrorCode::invalid_argument, "no slot counts given");
  return out;
}

void emit(const KvDocument& doc, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-")
    out << doc.to_string();
  else
    doc.write_file(path);
}

struct Context {
  std::uint64_t seed = 0;
  std::ostream* out = nullptr;
};

// ---------------------------------------------------------------------------

struct GenSynth {
  std::string out;
  std::size_t dim = 64, traits = 15, entities = 8, tokens = 4, prompts = 2000;
  double sigma = 0.1, position_gain = 1.0, base_norm = 1.0;
  std::string schemes = "current,prior";
  std::optional<std::uint64_t> bank_seed, data_seed;
  std::int64_t layer = 0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("gen-synth", "Generate a synthetic activation dataset with planted slot schemes");
    c->add_option("--out", out, "Output dataset path")->required();
    c->add_option("--dim", dim, "Hidden dimension")->capture_default_str();
    c->add_option("--traits", traits, "Trait vocabulary size")->capture_default_str();
    c->add_option("--entities", entities, "Entities per prompt")->capture_default_str();
    c->add_option("--tokens", tokens, "Tokens per entity")->capture_default_str();
    c->add_option("--prompts", prompts, "Number of prompts")->capture_default_str();
    c->add_option("--sigma", sigma, "Gaussian noise sigma")->capture_default_str();
    c->add_option("--schemes", schemes, "Comma list of current, prior, first-entity, same-role-history")
        ->capture_default_str();
    c->add_option("--position-gain", position_gain, "Gain on per-entity position directions")->capture_default_str();
    c->add_option("--base-norm", base_norm, "Norm of the shared base offset")->capture_default_str();
    c->add_option("--bank-seed", bank_seed, "Seed for planted directions (default derived from --seed)");
    c->add_option("--data-seed", data_seed, "Seed for labels and noise (default derived from --seed)");
    c->add_option("--layer", layer, "Layer index recorded in metadata")->capture_default_str();
  }

  void run(const Context& ctx) const {
    std::vector<Placement> placements;
    for (const auto& s : split_list(schemes)) placements.push_back(parse_placement(s));
    SlotBankOptions bo;
    bo.noise_sigma = sigma;
    bo.position_slots = position_gain != 0.0 ? entities : 0;
    bo.base_offset_norm = base_norm;
    const auto bank = make_slot_bank(dim, traits, placements, bank_seed.value_or(derive_seed(ctx.seed, 1)), bo);
    SyntheticConfig cfg;
    cfg.num_prompts = prompts;
    cfg.entities = entities;
    cfg.tokens_per_entity = tokens;
    cfg.dim = dim;
    cfg.traits = traits;
    cfg.seed = data_seed.value_or(derive_seed(ctx.seed, 2));
    cfg.position_gain = position_gain;
    cfg.layer_index = layer;
    const auto ds = generate_synthetic(cfg, bank);
    write_dataset(ds, out);
    *ctx.out << "wrote " << ds.num_prompts() << " prompts (d=" << dim << ", N=" << entities << ", T=" << tokens
             << ") to " << out << "\n";
  }
};

struct GenPrompts {
  std::string family = "probe-list", condition = "main", corpus, out;
  std::size_t count = 100;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("gen-prompts", "Generate a prompt set");
    c->add_option("--family", family,
                  "probe-list | conversation | self-description | sequence-retrieval | presence | binding | conflict | "
                  "dual-binding")
        ->capture_default_str();
    c->add_option("--count", count, "Prompts, pairs, or dual-binding bases to generate")->capture_default_str();
    c->add_option("--condition", condition, "Dual-binding condition: main | separated | flipped")->capture_default_str();
    c->add_option("--corpus", corpus, "Description corpus file replacing the bundled one");
    c->add_option("--out", out, "Output promptset path (stdout when omitted)");
  }

  PromptSet build(std::uint64_t seed) const {
    const PromptFamily f = parse_family(family);
    PromptSet set;
    switch (f) {
      case PromptFamily::probe_list:
      case PromptFamily::conversation:
      case PromptFamily::self_description: {
        const ProbeVariant v = f == PromptFamily::probe_list     ? ProbeVariant::user_only
                               : f == PromptFamily::conversation ? ProbeVariant::conversation
                                                                 : ProbeVariant::self_description;
        if (corpus.empty()) return make_probe_prompts(count, v, seed);
        return make_probe_prompts(count, v, seed, parse_description_corpus(binary::read_all(corpus)));
      }
      case PromptFamily::sequence_retrieval:
      case PromptFamily::presence:
      case PromptFamily::binding: {
        const ListTask task = parse_list_task(family);
        for (std::size_t i = 0; i < count; ++i) {
          auto pair = make_list_prompt_pair(task, seed, {}, i);
          set.prompts.push_back(std::move(pair.target));
          set.prompts.push_back(std::move(pair.source));
        }
        return set;
      }
      case PromptFamily::conflict:
        for (std::size_t i = 0; i < count; ++i) set.prompts.push_back(make_conflict_prompt(seed, {}, i));
        return set;
      case PromptFamily::dual_binding:
        return make_dual_binding_prompts(count, parse_dual_condition(condition), seed);
    }
    return set;
  }

  void run(const Context& ctx) const {
    const auto set = build(ctx.seed);
    emit(promptset_to_document(set), out, *ctx.out);
    if (!out.empty()) *ctx.out << "wrote " << set.prompts.size() << " prompts to " << out << "\n";
  }
};

struct Split {
  std::string data, out;
  double train_fraction = 0.8;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("split", "Assign prompts to train and test splits");
    c->add_option("--data", data, "Dataset path")->required();
    c->add_option("--train-fraction", train_fraction, "Fraction of prompts used for training")->capture_default_str();
    c->add_option("--out", out, "Output split path (stdout when omitted)");
  }

  void run(const Context& ctx) const {
    const auto ds = read_dataset(data);
    emit(split_to_document(split_dataset(ds, train_fraction, ctx.seed)), out, *ctx.out);
  }
};

struct TrainOptions {
  TrainConfig cfg;
  void add(CLI::App* c) {
    c->add_option("--lr", cfg.learning_rate, "Adam learning rate")->capture_default_str();
    c->add_option("--epochs", cfg.epochs, "Training epochs")->capture_default_str();
    c->add_option("--batch", cfg.batch_size, "Token positions per step")->capture_default_str();
    c->add_option("--restarts", cfg.restarts, "Independent initializations; lowest training loss wins")
        ->capture_default_str();
    c->add_flag("--slot-bias", cfg.slot_bias, "Add per-slot trait biases");
    c->add_flag("--router-bias", cfg.router_bias, "Add router biases");
  }
};

struct Train {
  std::string data, split, out;
  TrainOptions opts;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("train", "Train a multi-slot probe");
    c->add_option("--data", data, "Dataset path")->required();
    c->add_option("--split", split, "Split path")->required();
    c->add_option("--slots", opts.cfg.slots, "Number of slots K")->capture_default_str();
    opts.add(c);
    c->add_option("--out", out, "Checkpoint path")->required();
  }

  void run(const Context& ctx) const {
    const auto ds = read_dataset(data);
    const auto sp = split_from_document(KvDocument::read_file(split));
    TrainConfig cfg = opts.cfg;
    cfg.seed = ctx.seed;
    const auto result = train_probe<float>(cfg, ds, sp);
    ProbeCheckpoint ck{result.probe, ds.meta.trait_vocab, {}};
    ck.extra.set("seed", std::to_string(cfg.seed));
    ck.extra.set("learning_rate", cfg.learning_rate);
    ck.extra.set("epochs", cfg.epochs);
    ck.extra.set("batch_size", cfg.batch_size);
    ck.extra.set("restarts", cfg.restarts);
    ck.extra.set("selected_restart", result.restart);
    ck.extra.set("steps", result.steps);
    ck.extra.set("final_loss", result.loss_history.back());
    write_checkpoint(ck, out);
    *ctx.out << "trained K=" << cfg.slots << " probe, final training loss " << format_double(result.loss_history.back())
             << ", wrote " << out << "\n";
  }
};

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

struct Eval {
  std::string data, split, checkpoint, out, routing_out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("eval", "Evaluate a probe on the test split");
    c->add_option("--data", data, "Dataset path")->required();
    c->add_option("--split", split, "Split path")->required();
    c->add_option("--checkpoint", checkpoint, "Checkpoint path")->required();
    c->add_option("--out", out, "Accuracy heatmap document (stdout when omitted)");
    c->add_option("--routing-out", routing_out, "Routing heatmap path; one file per slot with a .slotK suffix");
  }

  void run(const Context& ctx) const {
    const auto ds = read_dataset(data);
    const auto sp = split_from_document(KvDocument::read_file(split));
    const auto ck = read_checkpoint(checkpoint);
    const auto test = prompt_indices(ds, sp.test_prompt_ids);
    const auto hm = evaluate_heatmap(ck.probe, ds, test);
    emit(accuracy_to_document(hm), out, *ctx.out);
    if (!routing_out.empty()) {
      const auto routing = routing_heatmap(ck.probe, ds, test);
      for (std::size_t k = 0; k < routing.slots(); ++k)
        heatmap_to_document(routing.mass[k], routing.layout, "routing")
            .write_file(with_suffix(routing_out, ".slot" + std::to_string(k)));
    }
    if (!out.empty()) *ctx.out << "overall accuracy " << format_double(hm.overall()) << "\n";
  }
};

struct SweepK {
  std::string data, split, k = "1..7", out;
  TrainOptions opts{default_sweep_config()};

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("sweep-k", "Train probes for a range of slot counts and report overall accuracy");
    c->add_option("--data", data, "Dataset path")->required();
    c->add_option("--split", split, "Split path")->required();
    c->add_option("--k", k, "Slot counts, as a range 1..7 or a list 1,2,3")->capture_default_str();
    opts.add(c);
    c->add_option("--out", out, "Sweep result document (stdout when omitted)");
  }

  void run(const Context& ctx) const {
    const auto ds = read_dataset(data);
    const auto sp = split_from_document(KvDocument::read_file(split));
    TrainConfig cfg = opts.cfg;
    cfg.seed = ctx.seed;
    const auto ks = parse_slot_counts(k);
    const auto rows = sweep_slot_counts<float>(cfg, ds, sp, ks);
    KvDocument doc;
    doc.set("format", "slotprobe-sweep");
    doc.set("version", 1);
    doc.set("rows", rows.size());
    std::string table = "K:  ";
    std::string accs = "acc:";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string p = "row." + std::to_string(i) + ".";
      doc.set(p + "slots", rows[i].slots);
      doc.set(p + "overall_accuracy", rows[i].overall_accuracy);
      doc.set(p + "train_loss", rows[i].train_loss);
      doc.set(p + "restart", rows[i].restart);
      char buf[32];
      std::snprintf(buf, sizeof buf, " %6zu", rows[i].slots);
      table += buf;
      std::snprintf(buf, sizeof buf, " %6.1f", 100.0 * rows[i].overall_accuracy);
      accs += buf;
    }
    emit(doc, out, *ctx.out);
    if (!out.empty()) *ctx.out << table << "\n" << accs << "\n";
  }
};

struct AnalyzeSlots {
  std::string data, split, checkpoint, out, probe_out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("analyze-slots", "Assign slot roles and compare current and prior slot weights");
    c->add_option("--data", data, "Dataset path")->required();
    c->add_option("--split", split, "Split path")->required();
    c->add_option("--checkpoint", checkpoint, "Checkpoint path")->required();
    c->add_option("--out", out, "Analysis document (stdout when omitted)");
    c->add_option("--canonical-out", probe_out, "Write the checkpoint with slots in canonical order");
  }

  void run(const Context& ctx) const {
    const auto ds = read_dataset(data);
    const auto sp = split_from_document(KvDocument::read_file(split));
    auto ck = read_checkpoint(checkpoint);
    const auto routing = routing_heatmap(ck.probe, ds, prompt_indices(ds, sp.test_prompt_ids));
    const auto report = analyze_slots(ck.probe, routing);
    emit(slot_report_to_document(report), out, *ctx.out);
    if (!probe_out.empty()) {
      ck.probe = apply_slot_order(ck.probe, report.assignment.order);
      write_checkpoint(ck, probe_out);
    }
  }
};

struct Means {
  std::string data, out;
  std::size_t min_samples = 1;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("means", "Compute prior and current condition means from trait-token activations");
    c->add_option("--data", data, "Dataset path")->required();
    c->add_option("--min-samples", min_samples, "Minimum entity occurrences per trait")->capture_default_str();
    c->add_option("--out", out, "Means document (stdout when omitted)");
  }

  void run(const Context& ctx) const {
    emit(means_to_document(compute_condition_means(read_dataset(data), min_samples)), out, *ctx.out);
  }
};

struct PlanSteer {
  std::string prompts, prompt_id, family = "prior", site = "mlp-input", out;
  std::vector<std::string> means;
  double lambda = kDefaultSteeringLambda;
  int sign = 1;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("plan-steer", "Build a steering plan for a conflict prompt");
    c->add_option("--prompts", prompts, "Promptset path")->required();
    c->add_option("--prompt-id", prompt_id, "Conflict prompt id")->required();
    c->add_option("--means", means, "Means document, one per steered layer")->required();
    c->add_option("--family", family, "prior | current")->capture_default_str();
    c->add_option("--lambda", lambda, "Steering scale")->capture_default_str();
    c->add_option("--sign", sign, "+1 or -1")->capture_default_str();
    c->add_option("--site", site, "mlp-input | key-value")->capture_default_str();
    c->add_option("--out", out, "Plan path (stdout when omitted)");
  }

  void run(const Context& ctx) const {
    const auto set = read_promptset(prompts);
    std::vector<ConditionMeans> layers;
    for (const auto& m : means) layers.push_back(means_from_document(KvDocument::read_file(m)));
    const auto plan = build_steering_plan(find_prompt(set, prompt_id), layers, parse_slot_family(family), lambda, sign,
                                          parse_steering_site(site));
    emit(steering_plan_to_document(plan), out, *ctx.out);
  }
};

struct PlanPatch {
  std::string prompts, pair, condition = "current", target = "keys+values", layers, out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("plan-patch", "Build a patch plan for a source/target prompt pair");
    c->add_option("--prompts", prompts, "Promptset path")->required();
    c->add_option("--pair", pair, "Pair id")->required();
    c->add_option("--condition", condition, "current | prior")->capture_default_str();
    c->add_option("--target", target, "keys | values | keys+values")->capture_default_str();
    c->add_option("--layers", layers, "Comma list of layers (all when omitted)");
    c->add_option("--out", out, "Plan path (stdout when omitted)");
  }

  void run(const Context& ctx) const {
    const auto set = read_promptset(prompts);
    const PromptSpec *src = nullptr, *tgt = nullptr;
    for (const auto& p : set.prompts) {
      if (p.pair_id != pair) continue;
      if (p.condition == "source") src = &p;
      if (p.condition == "target") tgt = &p;
    }
    require(src && tgt, ErrorCode::invalid_argument, "pair '" + pair + "' needs a source and a target prompt");
    std::vector<std::int64_t> ls;
    for (const auto& l : split_list(layers)) ls.push_back(parse_int(l));
    const auto plan = build_patch_plan(*src, *tgt, parse_patch_condition(condition), parse_patch_target(target), ls);
    emit(patch_plan_to_document(plan), out, *ctx.out);
  }
};

struct ScoreIntervention {
  std::string records, metric = "sequence", condition, out;
  ScoreOptions opts;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("score-intervention", "Score intervention effects from logit records");
    c->add_option("--records", records, "Logit record file")->required();
    c->add_option("--metric", metric, "sequence | binding | presence | conflict | conflict-bidirectional")
        ->capture_default_str();
    c->add_option("--condition", condition, "Only score intervened records with this condition tag");
    c->add_option("--baseline-run", opts.baseline_run, "Run name of unpatched records")->capture_default_str();
    c->add_option("--run", opts.intervened_run, "Run name of intervened records")->capture_default_str();
    c->add_option("--positive-run", opts.positive_run, "Run name for positive steering")->capture_default_str();
    c->add_option("--negative-run", opts.negative_run, "Run name for negative steering")->capture_default_str();
    c->add_option("--resamples", opts.bootstrap_resamples, "Bootstrap resamples")->capture_default_str();
    c->add_option("--out", out, "Effect report (stdout when omitted)");
  }

  void run(const Context& ctx) const {
    auto recs = logit_records_from_document(KvDocument::read_file(records));
    if (!condition.empty())
      std::erase_if(recs, [&](const LogitRecord& r) { return r.run != opts.baseline_run && r.condition != condition; });
    ScoreOptions o = opts;
    o.seed = ctx.seed;
    const auto rep = score_intervention(recs, parse_effect_metric(metric), o);
    emit(effect_report_to_document(rep), out, *ctx.out);
    if (!out.empty())
      *ctx.out << to_string(rep.metric) << ": mean " << format_double(rep.mean) << " [" << format_double(rep.ci_low)
               << ", " << format_double(rep.ci_high) << "] over " << rep.trials.size() << " trials\n";
  }
};

struct ScoreBehavior {
  std::string prompts, responses, out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("score-behavior", "Score dual-binding responses");
    c->add_option("--prompts", prompts, "Promptset path")->required();
    c->add_option("--responses", responses, "Response log file")->required();
    c->add_option("--out", out, "Report document");
  }

  void run(const Context& ctx) const {
    const auto reports = score_behavior(read_promptset(prompts), response_logs_from_document(KvDocument::read_file(responses)));
    if (!out.empty()) behavior_report_to_document(reports).write_file(out);
    *ctx.out << behavior_table(reports);
  }
};

// Heatmap documents or CSV rows, "-" marking masked cells.
HeatmapRender load_render_input(const std::string& path, double lo, double hi) {
  const std::string text = binary::read_all(path);
  if (text.starts_with("format=")) {
    const auto hm = heatmap_from_document(KvDocument::parse(text));
    HeatmapRender r{hm.values, std::vector<bool>(hm.mask.size()), lo, hi};
    for (std::size_t i = 0; i < hm.mask.size(); ++i) r.mask[i] = hm.mask[i] == 0;
    return r;
  }
  std::vector<std::vector<std::string>> cells;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    cells.push_back(std::move(row));
  }
  require(!cells.empty(), ErrorCode::parse_error, "empty matrix file");
  const std::size_t cols = cells[0].size();
  HeatmapRender r{Matrix<double>(cells.size(), cols), std::vector<bool>(cells.size() * cols, false), lo, hi};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    require(cells[i].size() == cols, ErrorCode::parse_error, "ragged matrix row " + std::to_string(i));
    for (std::size_t j = 0; j < cols; ++j) {
      if (cells[i][j] == "-")
        r.mask[i * cols + j] = true;
      else
        r.values(i, j) = parse_double(cells[i][j]);
    }
  }
  return r;
}

struct Render {
  std::string input, out, format = "bmp";
  double vmin = 0.0, vmax = 1.0;
  std::size_t cell = 16;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("render", "Render a heatmap as a bitmap or a text grid");
    c->add_option("--input", input, "Heatmap document or CSV matrix")->required();
    c->add_option("--format", format, "bmp | text")->capture_default_str();
    c->add_option("--vmin", vmin, "Value mapped to the low end of the ramp")->capture_default_str();
    c->add_option("--vmax", vmax, "Value mapped to the high end of the ramp")->capture_default_str();
    c->add_option("--cell", cell, "Pixels per cell")->capture_default_str();
    c->add_option("--out", out, "Output path (text goes to stdout when omitted)");
  }

  void run(const Context& ctx) const {
    const auto r = load_render_input(input, vmin, vmax);
    if (format == "text") {
      const auto text = render_text(r);
      if (out.empty())
        *ctx.out << text;
      else
        binary::write_all(out, text);
      return;
    }
    require(format == "bmp", ErrorCode::invalid_argument, "format must be bmp or text");
    require(!out.empty(), ErrorCode::invalid_argument, "bmp output needs --out");
    binary::write_all(out, render_bmp(r, cell));
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-slot probing toolkit", "slotprobe"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Config file with the same keys as the flags; flags win");
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Global seed (falls back to SLOTPROBE_SEED)")->envname("SLOTPROBE_SEED");

  GenSynth gen_synth;
  GenPrompts gen_prompts;
  Split split;
  Train train;
  Eval eval;
  SweepK sweep;
  AnalyzeSlots analyze;
  Means means;
  PlanSteer plan_steer;
  PlanPatch plan_patch;
  ScoreIntervention score_int;
  ScoreBehavior score_beh;
  Render render;
  gen_synth.add(app);
  gen_prompts.add(app);
  split.add(app);
  train.add(app);
  eval.add(app);
  sweep.add(app);
  analyze.add(app);
  means.add(app);
  plan_steer.add(app);
  plan_patch.add(app);
  score_int.add(app);
  score_beh.add(app);
  render.add(app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Context ctx{seed, &out};
  const std::string name = app.get_subcommands().front()->get_name();
  const std::map<std::string, std::function<void()>> handlers{
      {"gen-synth", [&] { gen_synth.run(ctx); }},
      {"gen-prompts", [&] { gen_prompts.run(ctx); }},
      {"split", [&] { split.run(ctx); }},
      {"train", [&] { train.run(ctx); }},
      {"eval", [&] { eval.run(ctx); }},
      {"sweep-k", [&] { sweep.run(ctx); }},
      {"analyze-slots", [&] { analyze.run(ctx); }},
      {"means", [&] { means.run(ctx); }},
      {"plan-steer", [&] { plan_steer.run(ctx); }},
      {"plan-patch", [&] { plan_patch.run(ctx); }},
      {"score-intervention", [&] { score_int.run(ctx); }},
      {"score-behavior", [&] { score_beh.run(ctx); }},
      {"render", [&] { render.run(ctx); }},
  };
  try {
    handlers.at(name)();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace slotprobe::cli
