#include "catbell/state_json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace catbell {
namespace {

nlohmann::json pair(const Complex& z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw DomainError(ErrorCode::kInvalidArgument, "complex number must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

nlohmann::json state_to_json(const State& s) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    auto amps = nlohmann::json::array();
    for (int m = 0; m < s.modes(); ++m) amps.push_back(pair(s.amp(i, m)));
    out.push_back({{"coeff", pair(s.coeff(i))}, {"amps", std::move(amps)}});
  }
  return out;
}

State state_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw DomainError(ErrorCode::kInvalidArgument, "state must be a nonempty array of terms");
  }
  std::vector<std::pair<Complex, std::vector<Complex>>> terms;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("amps") || !t["amps"].is_array()) {
      throw DomainError(ErrorCode::kInvalidArgument, "term needs 'coeff' and 'amps'");
    }
    std::vector<Complex> amps;
    for (const auto& a : t["amps"]) amps.push_back(complex_from(a));
    terms.emplace_back(complex_from(t["coeff"]), std::move(amps));
  }
  return State::from_terms(terms);
}

}  // namespace catbell
