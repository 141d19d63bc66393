#include <cstdlib>
#include <fstream>
#include <map>

#include "bsa/core/error.hpp"
#include "bsa/planning/accuracy.hpp"
#include "bsa/planning/client.hpp"
#include "bsa/planning/log_io.hpp"
#include "bsa/planning/mock_server.hpp"
#include "bsa/planning/runner.hpp"
#include "commands.hpp"

namespace bsa::cli {

namespace {

struct PlanRunOpts {
  std::string contexts;
  std::string kb;
  std::string out;
  std::string config;
  std::string endpoint, model, token;
  int parallelism = 0;
  double timeout_s = 0.0;
  std::uint64_t seed = 0;
  std::string mock;
  CLI::Option* endpoint_opt = nullptr;
  CLI::Option* model_opt = nullptr;
  CLI::Option* token_opt = nullptr;
  CLI::Option* parallelism_opt = nullptr;
  CLI::Option* timeout_opt = nullptr;
};

struct Resolved {
  planning::ClientConfig client;
  int parallelism = 4;
  std::map<std::string, std::string> source;  // setting -> default|config|env|flag
};

// Flags beat environment, environment beats the config file.
Resolved resolve(const PlanRunOpts& o) {
  Resolved r;
  for (auto k : {"endpoint", "model", "api_token", "parallelism", "timeout_s"}) r.source[k] = "default";
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw Error(Errc::IoError, "cannot open config " + o.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::MalformedRecord, "config " + o.config + ": " + e.what());
    }
    auto take = [&](const char* key, auto& field) {
      if (j.contains(key)) {
        field = j[key].get<std::remove_reference_t<decltype(field)>>();
        r.source[key] = "config";
      }
    };
    take("endpoint", r.client.endpoint);
    take("model", r.client.model);
    take("api_token", r.client.api_token);
    take("parallelism", r.parallelism);
    take("timeout_s", r.client.timeout_s);
  }
  auto env = [&](const char* var, const char* key, std::string& field) {
    if (const char* v = std::getenv(var); v && *v) {
      field = v;
      r.source[key] = "env";
    }
  };
  env("BSA_ENDPOINT", "endpoint", r.client.endpoint);
  env("BSA_MODEL", "model", r.client.model);
  env("BSA_API_TOKEN", "api_token", r.client.api_token);
  if (const char* v = std::getenv("BSA_PARALLELISM"); v && *v) {
    r.parallelism = std::atoi(v);
    r.source["parallelism"] = "env";
  }
  if (o.endpoint_opt->count()) r.client.endpoint = o.endpoint, r.source["endpoint"] = "flag";
  if (o.model_opt->count()) r.client.model = o.model, r.source["model"] = "flag";
  if (o.token_opt->count()) r.client.api_token = o.token, r.source["api_token"] = "flag";
  if (o.parallelism_opt->count()) r.parallelism = o.parallelism, r.source["parallelism"] = "flag";
  if (o.timeout_opt->count()) r.client.timeout_s = o.timeout_s, r.source["timeout_s"] = "flag";
  if (r.parallelism < 1) throw Error(Errc::InvalidArgument, "parallelism must be at least 1");
  return r;
}

int run_plan(const PlanRunOpts& o) {
  auto r = resolve(o);
  const auto contexts = planning::read_contexts_file(o.contexts);
  const auto kb = planning::read_knowledge_base_file(o.kb);
  std::vector<planning::PlanningSample> samples;
  for (const auto& c : contexts) {
    auto s = planning::make_samples(c);
    samples.insert(samples.end(), s.begin(), s.end());
  }

  std::unique_ptr<planning::MockServer> mock;
  if (!o.mock.empty()) {
    planning::MockConfig mc;
    mc.mode = planning::parse_mock_mode(o.mock);
    mc.seed = o.seed;
    for (const auto& s : samples) mc.truth[s.key()] = s.next;
    mock = std::make_unique<planning::MockServer>(mc);
    mock->start();
    r.client.endpoint = mock->endpoint();
    r.source["endpoint"] = "mock:" + o.mock;
  }

  echo_config("plan run", {{"contexts", o.contexts},
                           {"knowledge_base", o.kb},
                           {"out", o.out},
                           {"endpoint", r.client.endpoint},
                           {"model", r.client.model},
                           {"api_token", r.client.api_token.empty() ? "" : "<set>"},
                           {"parallelism", r.parallelism},
                           {"timeout_s", r.client.timeout_s},
                           {"seed", o.seed},
                           {"sources", r.source},
                           {"samples", samples.size()}});

  const auto log = planning::run_planning(samples, kb, r.client, {r.parallelism, o.seed});
  if (mock) mock->stop();
  planning::save_log(o.out, log);

  std::size_t failed = 0;
  for (const auto& e : log.entries()) failed += !e.error.empty();
  if (!log.empty()) planning::write_accuracy_csv(std::cout, planning::accuracy_table(log));
  std::cerr << log.size() << " samples, " << failed << " failed queries\n";
  return failed == 0 ? kOk : kValidationFailure;
}

struct PlanScoreOpts {
  std::string log;
  std::string surgeon;
  std::string out;
};

// {"context_id": "...", "t": 7, "choices": ["Dissection", ...]} per line
std::vector<std::vector<ActionClass>> read_surgeon_choices(const std::string& path, const planning::PredictionLog& log) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::map<std::string, std::vector<ActionClass>> by_key;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = nlohmann::json::parse(line);
    std::vector<ActionClass> c;
    for (const auto& a : j.at("choices")) {
      const auto name = a.get<std::string>();
      const auto act = planning::resolve_action_name(name);
      if (!act) throw Error(Errc::UnknownAction, "surgeon choice '" + name + "'");
      c.push_back(*act);
    }
    by_key[j.at("context_id").get<std::string>() + "/" + std::to_string(j.at("t").get<int>())] = std::move(c);
  }
  std::vector<std::vector<ActionClass>> out;
  for (const auto& e : log.entries()) {
    auto it = by_key.find(e.context_id + "/" + std::to_string(e.t));
    if (it == by_key.end()) throw Error(Errc::AlignmentError, "no surgeon choice for " + e.context_id + "/" + std::to_string(e.t));
    out.push_back(it->second);
  }
  return out;
}

int run_score(const PlanScoreOpts& o) {
  echo_config("plan score", {{"log", o.log}, {"surgeon", o.surgeon}, {"out", o.out}});
  const auto log = planning::load_log(o.log);
  const auto table = planning::accuracy_table(log);
  planning::write_accuracy_csv(std::cout, table);
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw Error(Errc::IoError, "cannot write " + o.out);
    planning::write_accuracy_csv(f, table);
  }
  if (!o.surgeon.empty()) {
    const auto m = planning::surgeon_match_metrics(log, read_surgeon_choices(o.surgeon, log));
    std::cout << nlohmann::json{{"top1_match", m.top1_match},
                                {"top1_any_match", m.top1_any_match},
                                {"top3_inclusion", m.top3_inclusion}}
                     .dump()
              << '\n';
  }
  return kOk;
}

}  // namespace

void register_plan(CLI::App& app, Action& action) {
  auto* plan = app.add_subcommand("plan", "Next-action planning runs and scoring");
  plan->require_subcommand(1);

  auto r = std::make_shared<PlanRunOpts>();
  auto* run = plan->add_subcommand("run", "Query the agent for every sliding-window sample");
  run->add_option("--contexts", r->contexts, "Context sequences (JSONL)")->required()->check(CLI::ExistingFile);
  run->add_option("--kb", r->kb, "Knowledge base (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", r->out, "Run log (JSONL)")->required();
  run->add_option("--config", r->config, "Endpoint settings (JSON: endpoint, model, api_token, parallelism, timeout_s)")
      ->check(CLI::ExistingFile);
  r->endpoint_opt = run->add_option("--endpoint", r->endpoint, "Chat-completion URL (env BSA_ENDPOINT)");
  r->model_opt = run->add_option("--model", r->model, "Model name (env BSA_MODEL)");
  r->token_opt = run->add_option("--api-token", r->token, "Bearer token (env BSA_API_TOKEN)");
  r->parallelism_opt = run->add_option("--parallelism", r->parallelism, "Requests in flight (env BSA_PARALLELISM)");
  r->timeout_opt = run->add_option("--timeout", r->timeout_s, "Per-request timeout in seconds");
  run->add_option("--seed", r->seed, "Run seed (recorded; also seeds the random mock)")->required();
  run->add_option("--mock", r->mock, "Serve replies from an in-process mock instead")
      ->check(CLI::IsMember({"ground-truth", "uniform-random", "malformed-then-valid", "non-taxonomy",
                             "rate-limit-once"}));
  run->callback([r, &action] { action = [r] { return run_plan(*r); }; });

  auto s = std::make_shared<PlanScoreOpts>();
  auto* score = plan->add_subcommand("score", "Strict/relaxed local/global top-k accuracy of a run log");
  score->add_option("--log", s->log, "Run log (JSONL)")->required()->check(CLI::ExistingFile);
  score->add_option("--surgeon", s->surgeon, "Surgeon choices (JSONL) for match metrics")->check(CLI::ExistingFile);
  score->add_option("--out", s->out, "Also write the accuracy table here (CSV)");
  score->callback([s, &action] { action = [s] { return run_score(*s); }; });
}

}  // namespace bsa::cli
