// Shared helpers for the test binaries.

#ifndef GDDP_TESTS_SUPPORT_HPP_
#define GDDP_TESTS_SUPPORT_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gddp/cli.hpp"
#include "gddp/problem.hpp"

namespace gddp::test {

inline std::string source_path(const std::string& rel) {
  return std::string(GDDP_SOURCE_DIR) + "/" + rel;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Problem load_problem(const std::string& rel) {
  const std::string path = source_path(rel);
  return parse_problem(slurp(path), *format_for_path(path));
}

inline const RuleSet& default_rules() {
  static const RuleSet rules = load_rules(source_path("rules/gdd.rules"));
  return rules;
}

inline PointId pt(const Problem& p, const std::string& name) { return *p.find_point(name); }

// Builds a fact over the named points of `p`.
inline Fact fact(const Problem& p, Pred pred, std::initializer_list<const char*> names) {
  std::vector<PointId> ids;
  for (const char* n : names) ids.push_back(pt(p, n));
  return Fact(pred, ids);
}

struct CorpusEntry {
  std::string file;
  std::string model;  // construct twin that provides numeric models
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c{
      {"problems/p1.gdd", "problems/p1.gdd"}, {"problems/p1.p", "problems/p1.gdd"},
      {"problems/p1_ndg.p", "problems/p1.gdd"}, {"problems/p2.gdd", "problems/p2.gdd"},
      {"problems/p3.gdd", "problems/p3.gdd"}, {"problems/p3.p", "problems/p3.gdd"},
      {"problems/p4.gdd", "problems/p4.gdd"}};
  return c;
}

// Maps each point of `from` to the point of `to` with the same name.
inline std::vector<PointId> point_map(const Problem& from, const Problem& to) {
  std::vector<PointId> m;
  for (const auto& d : from.points) m.push_back(*to.find_point(d.name));
  return m;
}

}  // namespace gddp::test

#endif  // GDDP_TESTS_SUPPORT_HPP_
