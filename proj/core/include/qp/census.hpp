#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qp/covers.hpp"
#include "qp/rational.hpp"

namespace qp {

struct RunConfig {
  std::string cover_path;  // empty: built-in model where the command has one
  double height_bound{1.0};
  double epsilon{0.01};
  int workers{1};
  long seed{0};
  std::string format{"csv"};
  std::pair<int, int> n_range{2, 20};
  std::vector<Rat> t_values;
  int sections{5};
  int corrupt_check{-1};  // test hook: force the k-th built-in check to fail

  void validate() const;  // throws std::invalid_argument
};

struct Report {
  std::string body;
  int row_count{0};
  bool all_checks_pass{true};
};

/// The worked double-cover families: w^2 = x^{2m} - y^{2m} + z^{2m} on P^2.
CyclicCoverModel builtin_cover(int m);
/// The smooth quadric x^2 + y^2 + z^2 - w^2 in P^3.
MultiPoly builtin_quadric();

CyclicCoverModel load_cover_file(const std::string& path);

Report cmd_audit(const CyclicCoverModel& cover, const RunConfig& cfg);
Report cmd_verify_examples(const RunConfig& cfg);
Report cmd_generate_points(const CyclicCoverModel& cover, const RunConfig& cfg);
Report cmd_thresholds(const RunConfig& cfg);
Report cmd_enumerate(const CyclicCoverModel& cover, const RunConfig& cfg);

}  // namespace qp
