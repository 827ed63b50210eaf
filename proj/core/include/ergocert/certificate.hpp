// Copyright 2026 The ergocert Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Structured verdicts produced by every checker.

#ifndef ERGOCERT_CERTIFICATE_HPP_
#define ERGOCERT_CERTIFICATE_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ergocert {

// Slack used when comparing a computed quantity against a bound.
inline constexpr double kCheckTolerance = 1e-10;

enum class Verdict { kHolds, kFails, kInconclusive };

enum class ConditionId {
  kAuxSupport,
  kAlmostInv,
  kMeanAlmostInv,
  kResolventAlmostInv,
  kIndexC,
  kAssumpA,
  kAssumpAPrime,
  kAssumpB,
  kAssumpC,
  kAssumpCPrime,
  kGenDrift,
  kCondD,
  kCondE,
  kSmallness,
  kPartialSubInv,
  kLasotaSzarekHalf,
  kUniformBoundLp,
  kAuxIndexTransfer,
  kHarnackLyapunov,
  kHarnackPipeline,
  kPerturbedHarnackLyapunov,
  kClassCountBound,
};

std::string_view ToString(Verdict v);
Verdict VerdictFromString(std::string_view s);
std::string_view ToString(ConditionId id);
ConditionId ConditionFromString(std::string_view s);
const std::vector<ConditionId>& AllConditions();

struct Witness {
  std::optional<std::string> state;
  std::vector<std::string> set;
  std::optional<long long> n;
  std::string description;
};

struct Certificate {
  ConditionId condition = ConditionId::kAlmostInv;
  Verdict verdict = Verdict::kInconclusive;
  std::map<std::string, double> constants;
  // Per-horizon or per-state profiles backing the constants.
  std::map<std::string, std::vector<double>> series;
  std::optional<Witness> witness;
  std::string notes;
  std::vector<Certificate> attached;

  bool holds() const { return verdict == Verdict::kHolds; }
  bool fails() const { return verdict == Verdict::kFails; }
  void AddNote(std::string_view note);
  // Looks up a constant; throws Error when absent.
  double constant(const std::string& name) const;
  // First attached certificate with the given condition, or nullptr.
  const Certificate* Find(ConditionId id) const;
};

Certificate MakeCertificate(ConditionId id);

}  // namespace ergocert

#endif  // ERGOCERT_CERTIFICATE_HPP_
