#include "salem/phi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "salem/types.hpp"

namespace salem {

long double PhiSpec::operator()(long double t) const {
  if (t < 2.0L) t = 2.0L;
  switch (family) {
    case Family::LogPower:
      return std::pow(std::log(t), (long double)epsilon);
    case Family::ConstantPlusLogLog:
      return (long double)constant + std::log(std::log(t));
    case Family::UserTable: {
      // Piecewise linear in (t, phi), clamped at the ends.
      if (table.empty()) throw ConfigError("phi table empty");
      if (t <= (long double)table.front().first) return (long double)table.front().second;
      if (t >= (long double)table.back().first) return (long double)table.back().second;
      for (size_t i = 1; i < table.size(); ++i) {
        if (t <= (long double)table[i].first) {
          const long double t0 = table[i - 1].first, v0 = table[i - 1].second;
          const long double t1 = table[i].first, v1 = table[i].second;
          if (t1 == t0) return v0;
          return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
        }
      }
      return (long double)table.back().second;
    }
  }
  throw ConfigError("phi: bad family");
}

void PhiSpec::validate() const {
  switch (family) {
    case Family::LogPower:
      if (!(epsilon > 0.0)) throw ConfigError("phi log-power requires epsilon > 0");
      break;
    case Family::ConstantPlusLogLog:
      if (!((*this)(2.0L) > 0.0L))
        throw ConfigError("phi constant-plus-log-log must be positive at t=2");
      break;
    case Family::UserTable: {
      if (table.size() < 2) throw ConfigError("phi table needs at least 2 points");
      for (size_t i = 0; i < table.size(); ++i) {
        if (!(table[i].second > 0.0)) throw ConfigError("phi table values must be positive");
        if (i > 0 && (table[i].first <= table[i - 1].first ||
                      table[i].second < table[i - 1].second))
          throw ConfigError("phi table must be strictly increasing in t, nondecreasing in value");
      }
      break;
    }
  }
}

long double PhiSpec::max_doubling_increment(const std::vector<long double>& ts) const {
  long double worst = 0.0L;
  for (long double t : ts) worst = std::max(worst, (*this)(2.0L * t) - (*this)(t));
  return worst;
}

PhiSpec PhiSpec::parse(const std::string& descriptor) {
  PhiSpec p;
  const auto colon = descriptor.find(':');
  const std::string head = descriptor.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  if (head == "log") {
    p.family = Family::LogPower;
    p.epsilon = rest.empty() ? 1.0 : std::stod(rest);
  } else if (head == "loglog") {
    p.family = Family::ConstantPlusLogLog;
    p.constant = rest.empty() ? 1.0 : std::stod(rest);
  } else if (head == "table") {
    p.family = Family::UserTable;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("phi table entry needs t=v: " + item);
      p.table.emplace_back(std::stod(item.substr(0, eq)), std::stod(item.substr(eq + 1)));
    }
  } else {
    throw ConfigError("unknown phi descriptor: " + descriptor);
  }
  p.validate();
  return p;
}

std::string PhiSpec::descriptor() const {
  std::ostringstream os;
  switch (family) {
    case Family::LogPower:
      os << "log:" << epsilon;
      break;
    case Family::ConstantPlusLogLog:
      os << "loglog:" << constant;
      break;
    case Family::UserTable: {
      os << "table:";
      for (size_t i = 0; i < table.size(); ++i) {
        if (i) os << ",";
        os << table[i].first << "=" << table[i].second;
      }
      break;
    }
  }
  return os.str();
}

}  // namespace salem
