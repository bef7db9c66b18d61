#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qp/census.hpp"

namespace {

qp::Rat parse_rat(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos) throw std::invalid_argument("range must look like A..B");
  return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

int emit(const qp::Report& rep, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << rep.body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output file: " << out_path << "\n";
      return 2;
    }
    out << rep.body;
  }
  return rep.all_checks_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"census of points on cyclic covers: audits, example checks, enumeration"};
  app.require_subcommand(1);

  std::string cover_path, out_path, format = "csv", n_range_str = "2..20", t_values_str;
  qp::RunConfig cfg;

  app.add_option("--cover", cover_path, "cover definition file (JSON)");
  app.add_option("--height-bound", cfg.height_bound, "height bound for enumeration");
  app.add_option("--epsilon", cfg.epsilon, "epsilon in the slack computation");
  app.add_option("--workers", cfg.workers, "worker thread count");
  app.add_option("--seed", cfg.seed, "seed recorded in reports");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--format", format, "csv or json");
  app.add_option("--n-range", n_range_str, "family parameter range A..B");
  app.add_option("--t-values", t_values_str, "comma-separated base values");
  app.add_option("--sections", cfg.sections, "section count (or conic parameter count)");
  app.add_option("--corrupt-check", cfg.corrupt_check, "test hook: force check K to fail")
      ->group("");

  auto* audit = app.add_subcommand("audit", "slack audit over enumerated base points");
  auto* verify = app.add_subcommand("verify-examples", "run the built-in example checks");
  auto* gen = app.add_subcommand("generate-points", "lift fiber points to the cover");
  auto* thresholds = app.add_subcommand("thresholds", "threshold and residue-degree table");
  auto* enumerate = app.add_subcommand("enumerate", "enumerate and classify base points");
  for (auto* sub : {audit, verify, gen, thresholds, enumerate}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.cover_path = cover_path;
    cfg.format = format;
    cfg.n_range = parse_range(n_range_str);
    if (!t_values_str.empty()) {
      std::string cur;
      std::istringstream ss(t_values_str);
      while (std::getline(ss, cur, ',')) cfg.t_values.push_back(parse_rat(cur));
    }

    auto need_cover = [&](int builtin_m) {
      if (!cover_path.empty()) return qp::load_cover_file(cover_path);
      if (builtin_m > 0) return qp::builtin_cover(builtin_m);
      throw std::invalid_argument("--cover is required for this command");
    };

    qp::Report rep;
    if (audit->parsed()) {
      rep = qp::cmd_audit(need_cover(0), cfg);
    } else if (verify->parsed()) {
      rep = qp::cmd_verify_examples(cfg);
    } else if (gen->parsed()) {
      rep = qp::cmd_generate_points(need_cover(4), cfg);
    } else if (thresholds->parsed()) {
      rep = qp::cmd_thresholds(cfg);
    } else if (enumerate->parsed()) {
      rep = qp::cmd_enumerate(need_cover(0), cfg);
    }
    return emit(rep, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
