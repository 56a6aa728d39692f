#include "salem.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include <json.hpp>

#include "salem/fourier.hpp"
#include "salem/regularity.hpp"
#include "salem/restriction.hpp"
#include "salem/schedule.hpp"
#include "salem/serialize.hpp"
#include "salem/tree.hpp"
#include "salem/version.hpp"

using nlohmann::json;

struct salem_schedule {
  salem::BranchingSchedule impl;
};
struct salem_tree {
  salem::CantorTree impl;
};

namespace {

thread_local std::string g_last_error;

int classify(const std::exception& e) {
  if (dynamic_cast<const salem::ConfigError*>(&e)) return SALEM_ERR_CONFIG;
  if (dynamic_cast<const salem::InfeasibleError*>(&e)) return SALEM_ERR_INFEASIBLE;
  if (dynamic_cast<const salem::InvariantError*>(&e)) return SALEM_ERR_INVARIANT;
  if (dynamic_cast<const salem::AttemptCapError*>(&e)) return SALEM_ERR_ATTEMPT_CAP;
  return SALEM_ERR;
}

template <typename F>
int guarded(F&& f) {
  try {
    f();
    return SALEM_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return classify(e);
  } catch (...) {
    g_last_error = "unknown error";
    return SALEM_ERR;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw salem::ConfigError("cannot open for writing: " + path);
  f << body;
  if (!f) throw salem::ConfigError("write failed: " + path);
}

std::string artifact_header(const salem::CantorTree* t, const char* meta_json) {
  std::string h;
  h += "# version: ";
  h += SALEM_VERSION_STRING;
  h += "\n";
  if (t) {
    h += "# schedule_hash: " + std::to_string(t->schedule.hash()) + "\n";
    h += "# seed: " + std::to_string(t->seed) + "\n";
  }
  if (meta_json && *meta_json) {
    h += "# meta: ";
    h += meta_json;
    h += "\n";
  }
  return h;
}

json summary_base(const salem::CantorTree* t, const char* meta_json) {
  json j;
  j["version"] = SALEM_VERSION_STRING;
  if (t) {
    j["schedule_hash"] = t->schedule.hash();
    j["seed"] = t->seed;
  }
  if (meta_json && *meta_json) j["meta"] = json::parse(meta_json, nullptr, false);
  return j;
}

}  // namespace

extern "C" {

const char* salem_last_error(void) { return g_last_error.c_str(); }

void salem_string_free(char* s) { ::free(s); }

int salem_schedule_create(const char* variant, double alpha, double beta, const char* phi,
                          int levels, salem_schedule** out) {
  return guarded([&] {
    const salem::Variant v = salem::variant_from_name(variant ? variant : "");
    salem::BranchingSchedule s;
    switch (v) {
      case salem::Variant::Dyadic:
        s = salem::build_dyadic_schedule(alpha, levels);
        break;
      case salem::Variant::Flat:
        s = salem::build_flat_schedule(alpha, levels);
        break;
      case salem::Variant::General:
      case salem::Variant::GeneralSecond: {
        const salem::PhiSpec p = salem::PhiSpec::parse(phi && *phi ? phi : "log:1");
        s = salem::build_general_schedule(alpha, beta, p,
                                          v == salem::Variant::GeneralSecond, levels);
        break;
      }
    }
    *out = new salem_schedule{std::move(s)};
  });
}

int salem_schedule_from_json(const char* text, salem_schedule** out) {
  return guarded([&] { *out = new salem_schedule{salem::schedule_from_json(text)}; });
}

int salem_schedule_to_json(const salem_schedule* s, char** json_out) {
  return guarded([&] { *json_out = dup_string(s->impl.to_json()); });
}

void salem_schedule_free(salem_schedule* s) { delete s; }

int salem_schedule_start_level(const salem_schedule* s) { return s->impl.startLevel; }
int salem_schedule_band_start(const salem_schedule* s) { return s->impl.bandStart; }
uint64_t salem_schedule_hash(const salem_schedule* s) { return s->impl.hash(); }

int salem_tree_build(const salem_schedule* s, uint64_t seed, int depth, int attempt_cap,
                     salem_tree** out) {
  return guarded([&] {
    *out = new salem_tree{
        salem::build_tree(s->impl, seed, depth, attempt_cap > 0 ? attempt_cap : 64)};
  });
}

int salem_tree_from_json(const char* text, salem_tree** out) {
  return guarded([&] { *out = new salem_tree{salem::tree_from_json(text)}; });
}

int salem_tree_to_json(const salem_tree* t, char** json_out) {
  return guarded([&] { *json_out = dup_string(t->impl.to_json()); });
}

void salem_tree_free(salem_tree* t) { delete t; }

int salem_tree_depth(const salem_tree* t) { return t->impl.depth(); }

uint64_t salem_tree_hash(const salem_tree* t) { return t->impl.hash(); }

int salem_tree_verify(const salem_tree* t) {
  return guarded([&] { salem::check_tree_invariants(t->impl, true); });
}

int salem_decay_csv(const salem_tree* t, int level, uint64_t kmax, const char* meta_json,
                    const char* path, char** summary_json_out) {
  return guarded([&] {
    const salem::CantorTree& tree = t->impl;
    const int lv = level > 0 ? level : tree.depth();
    salem::StepMeasure m(tree, lv);
    const auto coef = m.fourier_dense(kmax);
    const salem::DecayReport rep = salem::decay_profile(m, kmax);
    std::string body = artifact_header(&tree, meta_json);
    body += "k,re,im,abs,envelope,ratio\n";
    char line[256];
    for (const auto& [k, a] : rep.perK) {
      const double env = rep.envelope_at(k);
      std::snprintf(line, sizeof line, "%llu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    (unsigned long long)k, coef[k].real(), coef[k].imag(), a, env, a / env);
      body += line;
    }
    if (path && *path) write_file(path, body);
    json j = summary_base(&tree, meta_json);
    j["supConstant"] = rep.supConstant;
    j["exponent"] = rep.exponent;
    j["envelope"] = rep.envelope == salem::DecayEnvelope::PurePower ? "pure-power"
                                                                    : "power-times-sqrt-log";
    j["variant"] = salem::variant_name(tree.schedule.variant);
    j["level"] = lv;
    j["kmax"] = kmax;
    if (summary_json_out) *summary_json_out = dup_string(j.dump());
  });
}

int salem_regularity_csv(const salem_tree* t, int depth, int samples_per_scale,
                         const char* meta_json, const char* path, char** summary_json_out) {
  return guarded([&] {
    const salem::CantorTree& tree = t->impl;
    const salem::RegularityReport rep =
        salem::regularity_scan(tree, depth, samples_per_scale > 0 ? samples_per_scale : 12);
    std::string body = artifact_header(&tree, meta_json);
    body += "scale,width,center,mass_num,mass_den,env_lower,env_upper,ratio_lower,ratio_upper,"
            "e_centered,contained_cell_ok\n";
    for (const auto& s : rep.samples) {
      const double width = salem::to_double(s.halfwidth) * 2.0;
      body += std::to_string(s.scale) + "," + std::to_string(width) + "," +
              std::to_string(salem::to_double(s.center)) + "," +
              boost::multiprecision::numerator(s.mass).str() + "," +
              boost::multiprecision::denominator(s.mass).str() + "," +
              std::to_string(salem::envelope_lower(tree.schedule, width)) + "," +
              std::to_string(salem::envelope_upper(tree.schedule, width)) + "," +
              std::to_string(s.ratioLower) + "," + std::to_string(s.ratioUpper) + "," +
              (s.eCentered ? "1" : "0") + "," + (s.containedCellOk ? "1" : "0") + "\n";
    }
    if (path && *path) write_file(path, body);
    json j = summary_base(&tree, meta_json);
    j["bandLower"] = rep.bandLower;
    j["bandUpper"] = rep.bandUpper;
    j["delta"] = rep.delta;
    j["variant"] = salem::variant_name(rep.variant);
    j["samples"] = rep.samples.size();
    if (summary_json_out) *summary_json_out = dup_string(j.dump());
  });
}

int salem_energy_json(const salem_tree* t, int l, int n, int r, char** json_out) {
  return guarded([&] {
    const salem::CantorTree& tree = t->impl;
    const int nn = n > 0 ? n : std::min(tree.depth(), l + 3);
    const auto nodes = salem::restricted_nodes(tree, l, nn);
    json j = summary_base(&tree, nullptr);
    j["l"] = l;
    j["N"] = nn;
    j["r"] = r;
    j["points"] = nodes.size();
    j["sumset_bound"] = salem::sumset_bound(tree.schedule, l, nn, r).str();
    const salem::BigRat lower = salem::energy_lower_bound(tree.schedule, l, nn, r);
    j["energy_lower_num"] = boost::multiprecision::numerator(lower).str();
    j["energy_lower_den"] = boost::multiprecision::denominator(lower).str();
    j["energy_exact"] =
        salem::energy_via_convolution({nodes, r}).str();
    const salem::BigRat norm = salem::salem_norm_exact(tree, l, nn, r);
    j["norm2r_exact"] = salem::to_double(norm);
    *json_out = dup_string(j.dump());
  });
}

int salem_sharpness_csv(const salem_tree* t, double q, int r, int l_max,
                        const char* meta_json, const char* path, char** summary_json_out) {
  return guarded([&] {
    const salem::CantorTree& tree = t->impl;
    const int lm = l_max > 0 ? std::min(l_max, tree.depth()) : tree.depth();
    const auto sweep = salem::sharpness_sweep(tree, q, r, lm);
    if (sweep.empty()) throw salem::ConfigError("empty sweep range");
    std::string body = artifact_header(&tree, meta_json);
    body += "l,q,r,massF,energyLower,norm2rLower,quotientLower,e_q,compensated\n";
    char line[512];
    for (const auto& c : sweep) {
      std::snprintf(line, sizeof line, "%d,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    c.l, c.q, c.r, salem::to_double(c.massF), salem::to_double(c.energyLower),
                    salem::to_double(c.norm2rLower), c.quotientLower, c.growthExponent,
                    c.compensated);
      body += line;
    }
    if (path && *path) write_file(path, body);
    json j = summary_base(&tree, meta_json);
    j["q"] = q;
    j["r"] = r;
    j["q_critical"] = salem::q_critical(tree.schedule.alpha, tree.schedule.beta);
    j["growth_exponent"] = sweep.front().growthExponent;
    j["levels"] = sweep.size();
    j["quotient_first"] = sweep.front().quotientLower;
    j["quotient_last"] = sweep.back().quotientLower;
    if (summary_json_out) *summary_json_out = dup_string(j.dump());
  });
}

int salem_drift_csv(double alpha, uint64_t l_max, const char* meta_json, const char* path,
                    char** summary_json_out) {
  return guarded([&] {
    if (!(alpha > 0.0 && alpha < 1.0)) throw salem::ConfigError("alpha must be in (0,1)");
    std::string body = artifact_header(nullptr, meta_json);
    body += "L,log_product,ratio\n";
    double last_ratio = 0.0;
    for (uint64_t l = 10; l <= l_max; l *= 10) {
      const double lp = salem::rounding_drift_log(alpha, l);
      last_ratio = lp / std::pow((double)l, 1.0 - alpha);
      body += std::to_string(l) + "," + std::to_string(lp) + "," +
              std::to_string(last_ratio) + "\n";
    }
    if (path && *path) write_file(path, body);
    json j = summary_base(nullptr, meta_json);
    j["alpha"] = alpha;
    j["L"] = l_max;
    j["ratio"] = last_ratio;
    if (summary_json_out) *summary_json_out = dup_string(j.dump());
  });
}

}  // extern "C"
