#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bsa/core/error.hpp"
#include "bsa/core/random.hpp"
#include "bsa/metrics/bootstrap.hpp"
#include "bsa/metrics/report.hpp"
#include "bsa/model/checkpoint.hpp"
#include "bsa/model/synthetic.hpp"
#include "bsa/model/trainer.hpp"
#include "commands.hpp"

namespace bsa::cli {

namespace {

struct TrainOpts {
  std::vector<int> class_counts{200, 200, 200};
  int frames = 8, size = 32, square = 8;
  double sensor_noise = 0.1;
  int patch = 8, dim = 32, depth = 1, heads = 2;
  int dominant = 0;
  bool no_dual_head = false;
  int epochs = 20, batch = 6, anneal = 10;
  double lr = 0.005, momentum = 0.9, wd = 0.001;
  std::uint64_t seed = 0, data_seed = 0;
  double test_fraction = 0.2;
  std::string out, scores_out;
};

int run_train(const TrainOpts& o) {
  model::MotionDatasetSpec spec;
  spec.frames = o.frames;
  spec.size = o.size;
  spec.square = o.square;
  spec.sensor_noise = o.sensor_noise;
  spec.class_counts = o.class_counts;
  spec.seed = o.data_seed;

  auto cfg = model::toy_config(o.frames, o.size, o.size, o.patch, o.dim, o.depth, o.heads);
  cfg.n_classes = 3;
  cfg.dominant_index = o.dominant;
  cfg.dual_head = !o.no_dual_head;
  cfg.validate();

  model::TrainConfig tc;
  tc.epochs = o.epochs;
  tc.batch_size = o.batch;
  tc.anneal_epochs = o.anneal;
  tc.sgd = {o.lr, o.momentum, o.wd};
  tc.seed = o.seed;

  echo_config("train", {{"model", model::to_json(cfg)},
                        {"train", model::to_json(tc)},
                        {"data", {{"class_counts", o.class_counts}, {"frames", o.frames}, {"size", o.size},
                                  {"square", o.square}, {"sensor_noise", o.sensor_noise}, {"seed", o.data_seed},
                                  {"test_fraction", o.test_fraction}}}});

  const auto data = model::make_motion_dataset(spec);
  const auto n_test = static_cast<std::size_t>(o.test_fraction * static_cast<double>(data.size()));
  const std::span<const model::LabeledClip> all(data);
  const auto train = all.subspan(0, data.size() - n_test);
  const auto test = all.subspan(data.size() - n_test);

  auto result = model::train_toy(train, cfg, tc, [](const model::EpochStats& s) {
    std::printf("{\"epoch\":%d,\"mean_loss\":%.6f,\"train_accuracy\":%.6f}\n", s.epoch, s.mean_loss, s.train_accuracy);
    std::fflush(stdout);
  });

  nlohmann::json summary{{"train_clips", train.size()}, {"test_clips", test.size()}};
  if (!test.empty()) summary["test_accuracy"] = model::accuracy(test, result.params, cfg);
  std::cout << summary.dump() << '\n';

  if (!o.out.empty()) {
    model::Checkpoint ck{model::kCheckpointVersion, cfg, result.params, {{"train", model::to_json(tc)}}};
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& h : result.history) hist.push_back({{"epoch", h.epoch}, {"mean_loss", h.mean_loss}});
    ck.metadata["history"] = hist;
    model::save_checkpoint(o.out, ck);
  }
  if (!o.scores_out.empty()) {
    metrics::ScoreMatrix sm;
    sm.n_classes = cfg.n_classes;
    for (std::size_t i = 0; i < test.size(); ++i) {
      const auto out = model::forward(test[i].clip, result.params, cfg);
      sm.rows.push_back({"test" + std::to_string(i), test[i].label, "", -1, out.probabilities});
    }
    std::ofstream f(o.scores_out);
    if (!f) throw Error(Errc::IoError, "cannot write " + o.scores_out);
    metrics::write_scores(f, sm);
  }
  return kOk;
}

struct EvalOpts {
  std::string scores;
  int resamples = metrics::kDefaultResamples;
  std::uint64_t seed = 0;
  std::string group;
  std::string out_dir;
};

void write_to(const std::filesystem::path& p, const std::function<void(std::ostream&)>& fn) {
  std::ofstream f(p);
  if (!f) throw Error(Errc::IoError, "cannot write " + p.string());
  fn(f);
}

int run_evaluate(const EvalOpts& o) {
  echo_config("evaluate", {{"scores", o.scores}, {"resamples", o.resamples}, {"seed", o.seed}, {"group", o.group},
                           {"out_dir", o.out_dir}, {"ci_method", metrics::kCiMethod}});
  const auto scores = metrics::read_scores_file(o.scores);
  const auto report = metrics::evaluate_scores(scores, o.resamples, o.seed);
  metrics::write_class_csv(std::cout, report);

  std::optional<metrics::GroupTable> groups;
  if (!o.group.empty()) {
    const auto key = metrics::parse_group_key(o.group);
    // Macro one-vs-all AUROC over the classes present in the group.
    auto stat = [](const metrics::ScoreMatrix& s) {
      double sum = 0.0;
      int n = 0;
      for (int k = 0; k < s.n_classes; ++k) {
        try {
          sum += metrics::auroc(metrics::roc_curve_ova(s, k));
          ++n;
        } catch (const Error& e) {
          if (e.code() != Errc::DegenerateClass) throw;
        }
      }
      if (n == 0) throw Error(Errc::DegenerateClass, "no class has both positives and negatives");
      return sum / n;
    };
    // Per-class rows take that class's sensitivity at argmax instead, since a
    // single-label subset has no negatives.
    auto recall = [](const metrics::ScoreMatrix& s) {
      const auto pred = s.predictions();
      std::size_t hit = 0;
      for (std::size_t i = 0; i < s.size(); ++i) hit += pred[i] == s.rows[i].label;
      return static_cast<double>(hit) / static_cast<double>(s.size());
    };
    const bool by_action = key == metrics::GroupKey::Action;
    groups = metrics::groupwise(by_action ? metrics::Statistic(recall) : metrics::Statistic(stat), scores, key,
                                o.resamples, o.seed);
    std::cout << '\n';
    metrics::write_group_csv(std::cout, *groups, by_action ? "recall" : "macro_auroc");
  }

  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    const std::filesystem::path d(o.out_dir);
    write_to(d / "per_class.csv", [&](std::ostream& f) { metrics::write_class_csv(f, report); });
    write_to(d / "confusion.csv", [&](std::ostream& f) { metrics::write_confusion_csv(f, report.confusion); });
    if (groups) {
      write_to(d / "groups.csv", [&](std::ostream& f) {
        metrics::write_group_csv(f, *groups, groups->key == metrics::GroupKey::Action ? "recall" : "macro_auroc");
      });
    }
  }
  return kOk;
}

}  // namespace

void register_model(CLI::App& app, Action& action) {
  auto t = std::make_shared<TrainOpts>();
  auto* tr = app.add_subcommand("train", "Train the toy classifier on synthetic motion clips");
  tr->add_option("--class-counts", t->class_counts, "Clips per class: translating blinking static")
      ->expected(3)
      ->capture_default_str();
  tr->add_option("--frames", t->frames, "Frames per clip")->capture_default_str();
  tr->add_option("--size", t->size, "Frame height and width")->capture_default_str();
  tr->add_option("--square", t->square, "Square side in pixels")->capture_default_str();
  tr->add_option("--sensor-noise", t->sensor_noise, "Per-pixel noise amplitude")->capture_default_str();
  tr->add_option("--patch", t->patch, "Patch size")->capture_default_str();
  tr->add_option("--dim", t->dim, "Embedding width")->capture_default_str();
  tr->add_option("--depth", t->depth, "Number of blocks")->capture_default_str();
  tr->add_option("--heads", t->heads, "Attention heads")->capture_default_str();
  tr->add_option("--dominant", t->dominant, "Index of the dominant class for the dual head")->capture_default_str();
  tr->add_flag("--no-dual-head", t->no_dual_head, "Fix w_p = w_c = 1 (ablation)");
  tr->add_option("--epochs", t->epochs, "Epochs")->capture_default_str();
  tr->add_option("--batch", t->batch, "Batch size")->capture_default_str();
  tr->add_option("--anneal", t->anneal, "Epochs to ramp the KL weight to 1")->capture_default_str();
  tr->add_option("--lr", t->lr, "Learning rate")->capture_default_str();
  tr->add_option("--momentum", t->momentum, "Momentum")->capture_default_str();
  tr->add_option("--weight-decay", t->wd, "Weight decay")->capture_default_str();
  tr->add_option("--seed", t->seed, "Initialization and shuffling seed")->required();
  tr->add_option("--data-seed", t->data_seed, "Synthetic data seed")->capture_default_str();
  tr->add_option("--test-fraction", t->test_fraction, "Held-out share of the clips")
      ->check(CLI::Range(0.0, 0.9))
      ->capture_default_str();
  tr->add_option("--out", t->out, "Checkpoint path (JSON)");
  tr->add_option("--scores-out", t->scores_out, "Held-out class probabilities (JSONL)");
  tr->callback([t, &action] { action = [t] { return run_train(*t); }; });

  auto e = std::make_shared<EvalOpts>();
  auto* ev = app.add_subcommand("evaluate", "ROC, Youden thresholds, confusion matrix and bootstrap CIs");
  ev->add_option("--scores", e->scores, "Scores file (JSONL)")->required()->check(CLI::ExistingFile);
  ev->add_option("--resamples", e->resamples, "Bootstrap resamples")->capture_default_str();
  ev->add_option("--seed", e->seed, "Bootstrap seed")->required();
  ev->add_option("--group", e->group, "Also report per group: surgery or action");
  ev->add_option("--out-dir", e->out_dir, "Write per_class.csv, confusion.csv and groups.csv here");
  ev->callback([e, &action] { action = [e] { return run_evaluate(*e); }; });
}

}  // namespace bsa::cli
