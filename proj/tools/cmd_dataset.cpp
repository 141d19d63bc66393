#include <fstream>

#include "bsa/core/error.hpp"
#include "bsa/core/folds.hpp"
#include "bsa/core/manifest.hpp"
#include "bsa/core/validation.hpp"
#include "commands.hpp"

namespace bsa::cli {

namespace {

struct DatasetOpts {
  std::string manifest;
  int k = 5;
  std::uint64_t seed = 0;
  std::string out;
};

int run_validate(const DatasetOpts& o) {
  echo_config("dataset validate", {{"manifest", o.manifest}});
  Manifest m;
  try {
    m = read_manifest_file(o.manifest);
    m.check();
  } catch (const Error& e) {
    std::cout << e.what() << '\n';
    return kValidationFailure;
  }
  std::size_t violations = 0;
  for (const auto& r : m.records) {
    std::vector<Violation> v;
    try {
      v = validate_clip(r);
    } catch (const Error& e) {
      std::cout << r.clip_id << ' ' << e.what() << '\n';
      ++violations;
      continue;
    }
    for (auto x : v) std::cout << r.clip_id << ' ' << violation_name(x) << '\n';
    violations += v.size();
  }
  const auto h = class_histogram(m);
  std::cout << m.records.size() << " records, " << h.total() << " clips counted, " << violations << " violations\n";
  return violations == 0 ? kOk : kValidationFailure;
}

int run_folds(const DatasetOpts& o) {
  echo_config("dataset folds", {{"manifest", o.manifest}, {"k", o.k}, {"seed", o.seed}, {"out", o.out}});
  const auto m = read_manifest_file(o.manifest);
  const auto f = split_folds(m, o.k, o.seed);
  if (o.out.empty()) {
    write_folds(std::cout, f);
  } else {
    std::ofstream out(o.out);
    if (!out) throw Error(Errc::IoError, "cannot write " + o.out);
    write_folds(out, f);
  }
  const auto counts = f.clip_counts(m);
  for (std::size_t i = 0; i < counts.size(); ++i) std::cerr << "fold " << i << ": " << counts[i] << " clips\n";
  return kOk;
}

}  // namespace

void register_dataset(CLI::App& app, Action& action) {
  auto opts = std::make_shared<DatasetOpts>();
  auto* ds = app.add_subcommand("dataset", "Manifest validation and video-level folds");
  ds->require_subcommand(1);

  auto* v = ds->add_subcommand("validate", "Check every clip record against the curation rules");
  v->add_option("--manifest", opts->manifest, "Manifest (JSONL)")->required()->check(CLI::ExistingFile);
  v->callback([opts, &action] { action = [opts] { return run_validate(*opts); }; });

  auto* f = ds->add_subcommand("folds", "Assign videos to k folds");
  f->add_option("--manifest", opts->manifest, "Manifest (JSONL)")->required()->check(CLI::ExistingFile);
  f->add_option("--k", opts->k, "Number of folds")->capture_default_str();
  f->add_option("--seed", opts->seed, "Shuffle seed")->required();
  f->add_option("--out", opts->out, "Output file (JSON); stdout when omitted");
  f->callback([opts, &action] { action = [opts] { return run_folds(*opts); }; });
}

}  // namespace bsa::cli
