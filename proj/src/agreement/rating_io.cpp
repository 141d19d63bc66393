#include "bsa/agreement/rating_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "bsa/core/action.hpp"
#include "bsa/core/error.hpp"

namespace bsa::agreement {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int code_of(const std::string& label, std::size_t lineno) {
  auto a = parse_action(label, true);
  if (!a) throw Error(Errc::MalformedRecord, "line " + std::to_string(lineno) + ": unknown label '" + label + "'");
  return to_index(*a);
}

}  // namespace

RatingPair read_ratings(std::istream& in) {
  RatingPair p;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line.rfind("clip_id,", 0) == 0) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(trim(c));
    if (cols.size() != 3) {
      throw Error(Errc::MalformedRecord, "line " + std::to_string(lineno) + ": expected clip_id,rater_a,rater_b");
    }
    if (!seen.insert(cols[0]).second) {
      throw Error(Errc::MalformedRecord, "line " + std::to_string(lineno) + ": repeated clip id " + cols[0]);
    }
    p.item_ids.push_back(cols[0]);
    p.a.push_back(code_of(cols[1], lineno));
    p.b.push_back(code_of(cols[2], lineno));
  }
  return p;
}

RatingPair read_ratings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open ratings file " + path);
  return read_ratings(in);
}

void write_ratings(std::ostream& out, const RatingPair& p) {
  p.check();
  out << "clip_id,rater_a,rater_b\n";
  for (std::size_t i = 0; i < p.n(); ++i) {
    const std::string id = p.item_ids.empty() ? "item" + std::to_string(i) : p.item_ids[i];
    out << id << ',' << action_name(static_cast<ActionClass>(p.a[i])) << ','
        << action_name(static_cast<ActionClass>(p.b[i])) << '\n';
  }
}

}  // namespace bsa::agreement
