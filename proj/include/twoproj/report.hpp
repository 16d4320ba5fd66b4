#pragma once
//
// Report document emitted by the command-line tools: an input digest, the
// sixfold ranks, the principal-angle spectrum, and one entry per check with
// the exact residual that was computed, never just a pass/fail bit. Reports
// carry no timestamp; identical inputs produce byte-identical documents.
//

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "twoproj/types.hpp"

namespace twoproj {

inline constexpr const char* kToolName = "twoproj";
inline constexpr const char* kToolVersion = "0.1.0";

enum class CheckStatus { pass, fail, skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "?";
}

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

struct Report {
  std::string input_name;
  std::size_t n = 0;
  std::size_t rank_p = 0;
  std::size_t rank_q = 0;
  bool generic = false;
  std::string side = "p";
  std::vector<std::size_t> sixfold_ranks;
  std::vector<double> principal_angle_cosines;  // eigenvalues of c on ran [p,q]
  Tolerance tol;
  std::vector<Check> checks;

  std::size_t count(CheckStatus s) const {
    std::size_t k = 0;
    for (const auto& c : checks)
      if (c.status == s) ++k;
    return k;
  }
  bool all_passed() const { return count(CheckStatus::fail) == 0; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["input"] = {{"name", input_name},
                  {"n", n},
                  {"rank_p", rank_p},
                  {"rank_q", rank_q},
                  {"generic", generic}};
    j["tolerance"] = {{"eps_rank", tol.eps_rank},   {"tau_sym", tol.tau_sym},
                      {"tau_orth", tol.tau_orth},   {"tau_recon", tol.tau_recon},
                      {"tau_eq", tol.tau_eq},       {"eps_sqrt", tol.eps_sqrt}};
    j["sixfold"] = {{"side", side}, {"ranks", sixfold_ranks}};
    j["principal_angles"] = nlohmann::ordered_json::object();
    j["principal_angles"]["cosines"] = principal_angle_cosines;
    {
      std::vector<double> angles;
      angles.reserve(principal_angle_cosines.size());
      for (double c : principal_angle_cosines)
        angles.push_back(std::acos(std::min(1.0, std::max(-1.0, c))));
      j["principal_angles"]["radians"] = angles;
    }
    nlohmann::ordered_json checks_json = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json cj;
      cj["name"] = c.name;
      cj["residual"] = c.residual;
      cj["threshold"] = c.threshold;
      cj["status"] = to_string(c.status);
      if (!c.note.empty()) cj["note"] = c.note;
      checks_json.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks_json);
    j["summary"] = {{"passed", count(CheckStatus::pass)},
                    {"failed", count(CheckStatus::fail)},
                    {"skipped", count(CheckStatus::skip)}};
    return j;
  }
};

}  // namespace twoproj
