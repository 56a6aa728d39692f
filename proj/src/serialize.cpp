#include "salem/serialize.hpp"

#include <json.hpp>

namespace salem {

namespace {

using nlohmann::json;

json big_array(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

std::vector<BigInt> big_array_from(const json& a) {
  std::vector<BigInt> v;
  v.reserve(a.size());
  for (const auto& x : a) v.emplace_back(x.get<std::string>());
  return v;
}

json delta_encode(const std::vector<uint64_t>& v) {
  json a = json::array();
  uint64_t prev = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    const uint64_t d = i == 0 ? v[0] : v[i] - prev;
    if (d > (uint64_t(1) << 53)) throw InvariantError("delta too large for JSON numbers");
    a.push_back(d);
    prev = v[i];
  }
  return a;
}

std::vector<uint64_t> delta_decode(const json& a) {
  std::vector<uint64_t> v;
  v.reserve(a.size());
  uint64_t acc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    acc = (i == 0) ? a[i].get<uint64_t>() : acc + a[i].get<uint64_t>();
    v.push_back(acc);
  }
  return v;
}

}  // namespace

std::string schedule_to_json(const BranchingSchedule& s) {
  json j;
  j["format"] = "salem-schedule-v1";
  j["variant"] = variant_name(s.variant);
  j["alpha"] = s.alpha;
  j["beta"] = s.beta;
  j["phi"] = s.phi ? json(s.phi->descriptor()) : json(nullptr);
  j["levels"] = s.levels;
  j["psi"] = s.psi;
  j["t"] = s.t;
  j["tau"] = s.tau;
  j["theta"] = s.theta;
  j["vartheta"] = s.vartheta;
  j["Psi"] = big_array(s.Psi);
  j["T"] = big_array(s.T);
  j["bandStart"] = s.bandStart;
  j["startLevel"] = s.startLevel;
  return j.dump();
}

BranchingSchedule schedule_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("format", "") != "salem-schedule-v1") throw ConfigError("not a schedule document");
  BranchingSchedule s;
  s.variant = variant_from_name(j.at("variant").get<std::string>());
  s.alpha = j.at("alpha").get<double>();
  s.beta = j.at("beta").get<double>();
  if (!j.at("phi").is_null()) s.phi = PhiSpec::parse(j.at("phi").get<std::string>());
  s.levels = j.at("levels").get<int>();
  s.psi = j.at("psi").get<std::vector<int64_t>>();
  s.t = j.at("t").get<std::vector<int64_t>>();
  s.tau = j.at("tau").get<std::vector<int64_t>>();
  s.theta = j.at("theta").get<std::vector<double>>();
  s.vartheta = j.at("vartheta").get<std::vector<double>>();
  s.Psi = big_array_from(j.at("Psi"));
  s.T = big_array_from(j.at("T"));
  s.bandStart = j.at("bandStart").get<int>();
  s.startLevel = j.at("startLevel").get<int>();
  s.validate();
  return s;
}

std::string BranchingSchedule::to_json() const { return schedule_to_json(*this); }
BranchingSchedule BranchingSchedule::from_json(const std::string& text) {
  return schedule_from_json(text);
}

std::string tree_to_json(const CantorTree& t) {
  json j;
  j["format"] = "salem-tree-v1";
  j["schedule"] = json::parse(schedule_to_json(t.schedule));
  j["seed"] = t.seed;
  j["attemptCap"] = t.attemptCap;
  json levels = json::array();
  for (const auto& ln : t.levels) {
    json l;
    l["level"] = ln.level;
    l["numerators"] = delta_encode(ln.numerators);
    l["progression"] = delta_encode(ln.progression);
    l["xdraws"] = ln.xdraws;
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  json recs = json::array();
  for (const auto& r : t.verification) {
    json rj;
    rj["level"] = r.level;
    rj["attempts"] = r.attempts;
    rj["supRandomPart"] = r.supRandomPart;
    rj["threshold"] = r.threshold;
    rj["correction"] = r.correction;
    rj["supModifiedPart"] = r.supModifiedPart;
    recs.push_back(std::move(rj));
  }
  j["verification"] = std::move(recs);
  return j.dump();
}

CantorTree tree_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("format", "") != "salem-tree-v1") throw ConfigError("not a tree document");
  CantorTree t;
  t.schedule = schedule_from_json(j.at("schedule").dump());
  t.seed = j.at("seed").get<uint64_t>();
  t.attemptCap = j.at("attemptCap").get<int>();
  for (const auto& l : j.at("levels")) {
    LevelNodes ln;
    ln.level = l.at("level").get<int>();
    ln.numerators = delta_decode(l.at("numerators"));
    ln.progression = delta_decode(l.at("progression"));
    ln.xdraws = l.at("xdraws").get<std::vector<uint32_t>>();
    t.levels.push_back(std::move(ln));
  }
  for (const auto& rj : j.at("verification")) {
    VerificationRecord r;
    r.level = rj.at("level").get<int>();
    r.attempts = rj.at("attempts").get<int>();
    r.supRandomPart = rj.at("supRandomPart").get<double>();
    r.threshold = rj.at("threshold").get<double>();
    r.correction = rj.at("correction").get<double>();
    r.supModifiedPart = rj.at("supModifiedPart").get<double>();
    t.verification.push_back(r);
  }
  check_tree_invariants(t);
  return t;
}

std::string CantorTree::to_json() const { return tree_to_json(*this); }
CantorTree CantorTree::from_json(const std::string& text) { return tree_from_json(text); }

uint64_t CantorTree::hash() const {
  const std::string j = to_json();
  return fnv1a64(j.data(), j.size());
}

}  // namespace salem
