#pragma once

#include <json.hpp>

#include <string>

namespace plg {

using json = nlohmann::ordered_json;

struct CheckResult {
  std::string check;
  int samples = 0;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
  json details = json::object();
};

inline CheckResult make_result(std::string check, int samples, double residual, double tol, json details = json::object()) {
  CheckResult r;
  r.check = std::move(check);
  r.samples = samples;
  r.max_residual = residual;
  r.tolerance = tol;
  r.pass = residual <= tol;
  r.details = std::move(details);
  return r;
}

}  // namespace plg
