#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pureres {

enum class VerdictStatus { Pass, Fail, Indeterminate };

inline const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Fail: return "fail";
    case VerdictStatus::Indeterminate: return "indeterminate";
  }
  return "fail";
}

/* One checked claim: what was asked, what came out, what was required. */
struct Verdict {
  std::string claim;
  std::string computed;
  std::string expected;
  VerdictStatus status = VerdictStatus::Fail;
};

inline Verdict verdict_eq(std::string claim, long long got, long long want) {
  Verdict v;
  v.claim = std::move(claim);
  v.computed = std::to_string(got);
  v.expected = std::to_string(want);
  v.status = (got == want) ? VerdictStatus::Pass : VerdictStatus::Fail;
  return v;
}

inline Verdict verdict_true(std::string claim, bool ok, std::string computed = "") {
  Verdict v;
  v.claim = std::move(claim);
  v.computed = computed.empty() ? (ok ? "true" : "false") : std::move(computed);
  v.expected = "true";
  v.status = ok ? VerdictStatus::Pass : VerdictStatus::Fail;
  return v;
}

struct TheoremReport {
  std::string id;
  std::vector<std::pair<std::string, long long>> params;
  std::vector<Verdict> verdicts;
  // wall time is reported on the console, never serialized, so identical
  // parameters and seed give byte-identical files
  double wall_seconds = 0;

  bool pass() const {
    for (auto& v : verdicts)
      if (v.status != VerdictStatus::Pass) return false;
    return true;
  }
};

}  // namespace pureres
