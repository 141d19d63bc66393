#include "bsa/metrics/score_matrix.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "bsa/core/action.hpp"
#include "bsa/core/error.hpp"

namespace bsa::metrics {

using nlohmann::json;

void ScoreMatrix::check(double tol) const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.probs.size() != static_cast<std::size_t>(n_classes)) {
      throw Error(Errc::ShapeMismatch, "row " + std::to_string(i) + " has " + std::to_string(r.probs.size()) +
                                           " scores, expected " + std::to_string(n_classes));
    }
    double s = 0.0;
    for (double p : r.probs) s += p;
    if (std::abs(s - 1.0) > tol) {
      throw Error(Errc::ShapeMismatch, "row " + std::to_string(i) + " sums to " + std::to_string(s));
    }
    if (r.label < 0 || r.label >= n_classes) {
      throw Error(Errc::OutOfRange, "row " + std::to_string(i) + " label " + std::to_string(r.label));
    }
  }
}

ScoreMatrix ScoreMatrix::subset(const std::vector<std::size_t>& indices) const {
  ScoreMatrix out;
  out.n_classes = n_classes;
  out.rows.reserve(indices.size());
  for (auto i : indices) out.rows.push_back(rows[i]);
  return out;
}

std::vector<double> ScoreMatrix::class_scores(int k) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.probs[static_cast<std::size_t>(k)]);
  return out;
}

std::vector<int> ScoreMatrix::labels() const {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.label);
  return out;
}

std::vector<int> ScoreMatrix::predictions() const {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < r.probs.size(); ++j) {
      if (r.probs[j] > r.probs[best]) best = j;
    }
    out.push_back(static_cast<int>(best));
  }
  return out;
}

std::string class_display_name(int k, int n_classes) {
  if (n_classes == static_cast<int>(kNumActions) && k >= 0 && k < n_classes) {
    return std::string(action_name(action_from_index(k)));
  }
  return "class" + std::to_string(k);
}

ScoreMatrix read_scores(std::istream& in) {
  ScoreMatrix s;
  s.n_classes = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json::parse(line);
      ScoreRow r;
      r.sample_id = j.value("sample_id", std::to_string(lineno));
      const auto& lab = j.at("label");
      if (lab.is_string()) {
        auto a = parse_action(lab.get<std::string>());
        if (!a) throw Error(Errc::MalformedRecord, "unknown label " + lab.get<std::string>());
        r.label = to_index(*a);
      } else {
        r.label = lab.get<int>();
      }
      r.group = j.value("group", std::string{});
      r.fold = j.value("fold", -1);
      for (int k = 0; j.contains("p" + std::to_string(k)); ++k) r.probs.push_back(j["p" + std::to_string(k)].get<double>());
      if (s.n_classes < 0) s.n_classes = static_cast<int>(r.probs.size());
      s.rows.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw Error(Errc::MalformedRecord, "scores line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (s.n_classes < 0) s.n_classes = static_cast<int>(kNumActions);
  s.check();
  return s;
}

ScoreMatrix read_scores_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open scores file " + path);
  return read_scores(in);
}

void write_scores(std::ostream& out, const ScoreMatrix& s) {
  for (const auto& r : s.rows) {
    json j;
    j["sample_id"] = r.sample_id;
    if (s.n_classes == static_cast<int>(kNumActions)) j["label"] = std::string(action_name(action_from_index(r.label)));
    else j["label"] = r.label;
    j["group"] = r.group;
    j["fold"] = r.fold;
    for (std::size_t k = 0; k < r.probs.size(); ++k) j["p" + std::to_string(k)] = r.probs[k];
    out << j.dump() << '\n';
  }
}

}  // namespace bsa::metrics
