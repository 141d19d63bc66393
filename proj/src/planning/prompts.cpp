#include "bsa/planning/prompts.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bsa/core/error.hpp"

namespace bsa::planning {

using nlohmann::json;

KnowledgeBase read_knowledge_base(std::istream& in) {
  KnowledgeBase kb;
  try {
    const auto j = json::parse(in);
    for (const auto& [name, text] : j.at("actions").items()) {
      const auto a = parse_action(name);
      if (!a) throw Error(Errc::MalformedRecord, "knowledge base: unknown action " + name);
      kb.action_descriptions[*a] = text.get<std::string>();
    }
    for (const auto& [name, p] : j.at("procedures").items()) {
      const auto s = parse_surgery(name);
      if (!s) throw Error(Errc::MalformedRecord, "knowledge base: unknown procedure " + name);
      kb.procedures[*s] = {p.at("surgical_process").get<std::string>(), p.at("safety_protocol").get<std::string>()};
    }
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("knowledge base: ") + e.what());
  }
  return kb;
}

KnowledgeBase read_knowledge_base_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open knowledge base " + path);
  return read_knowledge_base(in);
}

const std::array<std::string, kNumQueries>& user_queries() {
  static const std::array<std::string, kNumQueries> q{
      "Scene understanding: describe what is happening in the current frame and the most recent clip.",
      "Progress judgment: which stage of the procedure has been reached, and what remains?",
      "Safety considerations: what risks or safety checks apply at this point?",
      "Next action: which basic surgical action should be performed next?",
      "Alternatives: give up to two other plausible next actions, ranked.",
  };
  return q;
}

PromptBundle assemble_prompts(const PlanningSample& s, const KnowledgeBase& kb) {
  const auto it = kb.procedures.find(s.surgery_type);
  if (it == kb.procedures.end()) {
    throw Error(Errc::UnknownProcedure, "no knowledge base entry for " + std::string(surgery_name(s.surgery_type)));
  }
  PromptBundle b;
  b.sample_key = s.key();

  std::ostringstream sys;
  sys << "You are assisting with a " << surgery_name(s.surgery_type) << " procedure.\n\n";
  sys << "Surgical process:\n" << it->second.surgical_process << "\n\n";
  sys << "Safety protocol:\n" << it->second.safety_protocol << "\n\n";
  sys << "Basic surgical actions:\n";
  for (auto a : kAllActions) {
    sys << "- " << action_name(a);
    if (auto d = kb.action_descriptions.find(a); d != kb.action_descriptions.end()) sys << ": " << d->second;
    sys << '\n';
  }
  b.system_prompt = sys.str();

  std::ostringstream u;
  u << "Procedure: " << surgery_name(s.surgery_type) << "\n";
  u << "Earlier actions (oldest first): ";
  for (std::size_t i = 0; i < s.distant.size(); ++i) u << (i ? ", " : "") << action_name(s.distant[i]);
  u << "\n";
  u << "Most recent clip " << s.near_clip_id << ": " << action_name(s.near_action) << " (" << s.near_frames.size()
    << " frames attached, then the current frame)\n\n";
  for (std::size_t i = 0; i < kNumQueries; ++i) u << (i + 1) << ". " << user_queries()[i] << "\n";
  u << "\nReply with one JSON object and nothing else, using exactly these fields:\n"
       "{\"scene_understanding\": \"...\", \"progress_judgment\": \"...\", \"safety_considerations\": \"...\",\n"
       " \"predictions\": [{\"action\": \"<action>\", \"rationale\": \"...\"}]}\n"
       "List 1 to 3 predictions, most likely first. Each action must be one of: ";
  for (std::size_t i = 0; i < kAllActions.size(); ++i) u << (i ? ", " : "") << action_name(kAllActions[i]);
  u << ".\n";
  b.user_text = u.str();

  b.images = s.near_frames;
  b.images.push_back(s.current_frame);
  return b;
}

std::string reinforcement_prompt(const std::string& problem) {
  return "Your previous reply could not be used (" + problem +
         "). Answer again with only the JSON object described above, and use only the listed action names.";
}

}  // namespace bsa::planning
