// Command-line front end. All domain work goes through the C API in salem.h;
// this file only parses flags, routes files, and maps status codes to exit
// codes (0 ok, 2 config, 3 infeasibility, 4 invariant violation, 5 attempt
// cap).
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "salem.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CLI::ValidationError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  f << body;
}

std::string out_path(const std::string& name) {
  const char* dir = std::getenv("SALEM_OUT_DIR");
  if (!dir || !*dir) return name;
  return std::string(dir) + "/" + name;
}

int fail(int status) {
  std::fprintf(stderr, "error: %s\n", salem_last_error());
  return status;
}

struct ScheduleArgs {
  std::string variant = "thm2";
  double alpha = 0.5;
  double beta = 0.0;  // defaults to alpha
  std::string phi = "log:1";
  int levels = 16;
  std::string schedule_file;  // load instead of building
};

void add_schedule_flags(CLI::App* cmd, ScheduleArgs& a) {
  cmd->add_option("--variant", a.variant, "thm2 | thm3 | thm1 | thm1-second-part");
  cmd->add_option("--alpha", a.alpha, "dimension parameter in (0,1)");
  cmd->add_option("--beta", a.beta, "decay parameter in (0, alpha]; defaults to alpha");
  cmd->add_option("--phi", a.phi, "gauge descriptor: log:EPS | loglog:C | table:t=v,...");
  cmd->add_option("--levels", a.levels, "schedule length N_max");
  cmd->add_option("--schedule", a.schedule_file, "load a schedule JSON instead of building");
}

int make_schedule(const ScheduleArgs& a, salem_schedule** out) {
  if (!a.schedule_file.empty())
    return salem_schedule_from_json(read_file(a.schedule_file).c_str(), out);
  const double beta = a.beta > 0.0 ? a.beta : a.alpha;
  return salem_schedule_create(a.variant.c_str(), a.alpha, beta, a.phi.c_str(), a.levels, out);
}

std::string meta_echo(const ScheduleArgs& a, uint64_t seed, int depth) {
  std::ostringstream os;
  os << "{\"variant\":\"" << a.variant << "\",\"alpha\":" << a.alpha
     << ",\"beta\":" << (a.beta > 0 ? a.beta : a.alpha) << ",\"phi\":\"" << a.phi
     << "\",\"levels\":" << a.levels << ",\"seed\":" << seed << ",\"depth\":" << depth << "}";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"salem: randomized Cantor measures with certified Fourier decay, regularity, "
               "and restriction-sharpness reports"};
  app.require_subcommand(1);

  ScheduleArgs sa;
  uint64_t seed = 1;
  int depth = 0;
  int attempt_cap = 64;
  uint64_t kmax = 4096;
  int level = 0;
  int scan_depth = 0;
  int samples = 12;
  int rr = 4;
  std::vector<double> qs;
  int l_arg = 0, n_arg = 0, l_max = 0;
  uint64_t drift_l = 100000;
  std::string out, tree_file, summary_path;

  auto* c_schedule = app.add_subcommand("schedule", "build a branching schedule");
  add_schedule_flags(c_schedule, sa);
  c_schedule->add_option("--out", out, "schedule JSON path");

  auto* c_build = app.add_subcommand("build", "build and serialize a tree");
  add_schedule_flags(c_build, sa);
  c_build->add_option("--seed", seed);
  c_build->add_option("--depth", depth, "levels to build (default: schedule length)");
  c_build->add_option("--attempt-cap", attempt_cap);
  c_build->add_option("--out", out, "tree JSON path");

  auto* c_decay = app.add_subcommand("decay", "dense decay profile of a built tree");
  add_schedule_flags(c_decay, sa);
  c_decay->add_option("--tree", tree_file, "tree JSON (otherwise build from flags)");
  c_decay->add_option("--seed", seed);
  c_decay->add_option("--depth", depth);
  c_decay->add_option("--level", level, "measure level (default: depth)");
  c_decay->add_option("--kmax", kmax);
  c_decay->add_option("--out", out, "CSV path");
  c_decay->add_option("--summary", summary_path, "JSON summary path");

  auto* c_reg = app.add_subcommand("regularity", "interval-mass band scan");
  add_schedule_flags(c_reg, sa);
  c_reg->add_option("--tree", tree_file);
  c_reg->add_option("--seed", seed);
  c_reg->add_option("--depth", depth);
  c_reg->add_option("--scan-depth", scan_depth, "largest scale (default: derived)");
  c_reg->add_option("--samples", samples, "samples per scale");
  c_reg->add_option("--out", out, "CSV path");
  c_reg->add_option("--summary", summary_path);

  auto* c_energy = app.add_subcommand("energy", "additive-energy certificates at (l, N)");
  add_schedule_flags(c_energy, sa);
  c_energy->add_option("--tree", tree_file);
  c_energy->add_option("--seed", seed);
  c_energy->add_option("--depth", depth);
  c_energy->add_option("--l", l_arg)->required();
  c_energy->add_option("--n", n_arg, "ambient level (default: l+3)");
  c_energy->add_option("--r", rr);
  c_energy->add_option("--out", out, "JSON path");

  auto* c_sharp = app.add_subcommand("sharpness", "quotient lower-bound sweep over l");
  add_schedule_flags(c_sharp, sa);
  c_sharp->add_option("--tree", tree_file);
  c_sharp->add_option("--seed", seed);
  c_sharp->add_option("--depth", depth);
  c_sharp->add_option("--q", qs, "exponents to sweep")->required();
  c_sharp->add_option("--r", rr);
  c_sharp->add_option("--lmax", l_max);
  c_sharp->add_option("--out", out, "CSV path (suffix _qX for multiple q)");
  c_sharp->add_option("--summary", summary_path);

  auto* c_drift = app.add_subcommand("drift", "rounding-drift table for ceil(N^alpha)");
  c_drift->add_option("--alpha", sa.alpha);
  c_drift->add_option("--L", drift_l);
  c_drift->add_option("--out", out, "CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_schedule->parsed()) {
      salem_schedule* s = nullptr;
      if (int rc = make_schedule(sa, &s)) return fail(rc);
      char* js = nullptr;
      salem_schedule_to_json(s, &js);
      if (!out.empty())
        write_file(out_path(out), js);
      else
        std::puts(js);
      std::fprintf(stderr, "schedule: start_level=%d hash=%llu\n",
                   salem_schedule_start_level(s),
                   (unsigned long long)salem_schedule_hash(s));
      salem_string_free(js);
      salem_schedule_free(s);
      return 0;
    }

    // Every other command needs a tree.
    salem_tree* tree = nullptr;
    if (c_drift->parsed()) {
      char* js = nullptr;
      const std::string meta = meta_echo(sa, 0, 0);
      if (int rc = salem_drift_csv(sa.alpha, drift_l, meta.c_str(),
                                   out.empty() ? "" : out_path(out).c_str(), &js))
        return fail(rc);
      std::puts(js);
      salem_string_free(js);
      return 0;
    }

    if (!tree_file.empty()) {
      if (int rc = salem_tree_from_json(read_file(tree_file).c_str(), &tree)) return fail(rc);
    } else {
      salem_schedule* s = nullptr;
      if (int rc = make_schedule(sa, &s)) return fail(rc);
      const int d = depth > 0 ? depth : sa.levels;
      const int rc = salem_tree_build(s, seed, d, attempt_cap, &tree);
      salem_schedule_free(s);
      if (rc) return fail(rc);
    }
    const std::string meta = meta_echo(sa, seed, salem_tree_depth(tree));

    int rc = SALEM_OK;
    char* js = nullptr;
    if (c_build->parsed()) {
      rc = salem_tree_to_json(tree, &js);
      if (!rc) {
        if (!out.empty())
          write_file(out_path(out), js);
        else
          std::puts(js);
        std::fprintf(stderr, "tree: depth=%d hash=%llu\n", salem_tree_depth(tree),
                     (unsigned long long)salem_tree_hash(tree));
      }
    } else if (c_decay->parsed()) {
      rc = salem_decay_csv(tree, level, kmax, meta.c_str(),
                           out.empty() ? "" : out_path(out).c_str(), &js);
      if (!rc) {
        if (!summary_path.empty()) write_file(out_path(summary_path), js);
        std::puts(js);
      }
    } else if (c_reg->parsed()) {
      const int sd = scan_depth > 0 ? scan_depth : salem_tree_depth(tree) - 6;
      rc = salem_regularity_csv(tree, sd, samples, meta.c_str(),
                                out.empty() ? "" : out_path(out).c_str(), &js);
      if (!rc) {
        if (!summary_path.empty()) write_file(out_path(summary_path), js);
        std::puts(js);
      }
    } else if (c_energy->parsed()) {
      rc = salem_energy_json(tree, l_arg, n_arg, rr, &js);
      if (!rc) {
        if (!out.empty()) write_file(out_path(out), js);
        std::puts(js);
      }
    } else if (c_sharp->parsed()) {
      for (double q : qs) {
        std::string path = out;
        if (!out.empty() && qs.size() > 1) {
          std::ostringstream os;
          os << out << "_q" << q;
          path = os.str();
        }
        char* one = nullptr;
        rc = salem_sharpness_csv(tree, q, rr, l_max, meta.c_str(),
                                 path.empty() ? "" : out_path(path).c_str(), &one);
        if (rc) break;
        if (!summary_path.empty()) write_file(out_path(summary_path), one);
        std::puts(one);
        salem_string_free(one);
      }
    }
    if (js) salem_string_free(js);
    salem_tree_free(tree);
    if (rc) return fail(rc);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return SALEM_ERR_CONFIG;
  }
}
