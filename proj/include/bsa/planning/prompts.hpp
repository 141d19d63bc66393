#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bsa/planning/samples.hpp"

namespace bsa::planning {

struct ProcedureKnowledge {
  std::string surgical_process;
  std::string safety_protocol;
};

/// Per-procedure background text for the system prompt, plus one
/// description per action shared by all procedures.
struct KnowledgeBase {
  std::map<SurgeryType, ProcedureKnowledge> procedures;
  std::map<ActionClass, std::string> action_descriptions;
};

// {"actions": {"Aspiration": "...", ...},
//  "procedures": {"Cholecystectomy": {"surgical_process": "...", "safety_protocol": "..."}, ...}}
KnowledgeBase read_knowledge_base(std::istream& in);
KnowledgeBase read_knowledge_base_file(const std::string& path);

inline constexpr std::size_t kNumQueries = 5;

/// The five questions in the order they are asked.
const std::array<std::string, kNumQueries>& user_queries();

struct PromptBundle {
  std::string sample_key;
  std::string system_prompt;
  std::string user_text;  // history, queries and the output contract
  std::vector<ImageRef> images;  // near-clip frames, then the current frame
};

/// Deterministic. Throws Error(UnknownProcedure) when the knowledge base has
/// no entry for the sample's surgery type.
PromptBundle assemble_prompts(const PlanningSample& s, const KnowledgeBase& kb);

/// Text appended to the conversation when a reply could not be parsed.
std::string reinforcement_prompt(const std::string& problem);

}  // namespace bsa::planning
