#include "vmcast/solvers.hpp"

#include "json.hpp"

namespace vmcast {

std::string SolverResult::to_json() const {
  nlohmann::json j;
  j["allocation"] = nlohmann::json::parse(alloc.to_json());
  j["utility"] = utility;
  j["iterations"] = iterations;
  j["wall_time_ms"] = wall_time.count() * 1e3;
  j["trace"] = trace;
  j["used_fallback"] = used_fallback;
  return j.dump(2);
}

}  // namespace vmcast
