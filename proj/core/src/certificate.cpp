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


#include "ergocert/certificate.hpp"

#include <array>
#include <utility>

#include "ergocert/kernel.hpp"

namespace ergocert {

namespace {

constexpr std::array<std::pair<ConditionId, std::string_view>, 22> kConditionNames{{
    {ConditionId::kAuxSupport, "AuxSupport"},
    {ConditionId::kAlmostInv, "AlmostInv"},
    {ConditionId::kMeanAlmostInv, "MeanAlmostInv"},
    {ConditionId::kResolventAlmostInv, "ResolventAlmostInv"},
    {ConditionId::kIndexC, "IndexC"},
    {ConditionId::kAssumpA, "AssumpA"},
    {ConditionId::kAssumpAPrime, "AssumpAPrime"},
    {ConditionId::kAssumpB, "AssumpB"},
    {ConditionId::kAssumpC, "AssumpC"},
    {ConditionId::kAssumpCPrime, "AssumpCPrime"},
    {ConditionId::kGenDrift, "GenDrift"},
    {ConditionId::kCondD, "CondD"},
    {ConditionId::kCondE, "CondE"},
    {ConditionId::kSmallness, "Smallness"},
    {ConditionId::kPartialSubInv, "PartialSubInv"},
    {ConditionId::kLasotaSzarekHalf, "LasotaSzarekHalf"},
    {ConditionId::kUniformBoundLp, "UniformBoundLp"},
    {ConditionId::kAuxIndexTransfer, "AuxIndexTransfer"},
    {ConditionId::kHarnackLyapunov, "HarnackLyapunov"},
    {ConditionId::kHarnackPipeline, "HarnackPipeline"},
    {ConditionId::kPerturbedHarnackLyapunov, "PerturbedHarnackLyapunov"},
    {ConditionId::kClassCountBound, "ClassCountBound"},
}};

}  // namespace

std::string_view ToString(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kFails:
      return "fails";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict VerdictFromString(std::string_view s) {
  if (s == "holds") return Verdict::kHolds;
  if (s == "fails") return Verdict::kFails;
  if (s == "inconclusive") return Verdict::kInconclusive;
  throw Error("unknown verdict '" + std::string(s) + "'");
}

std::string_view ToString(ConditionId id) {
  for (const auto& [cid, name] : kConditionNames) {
    if (cid == id) return name;
  }
  return "unknown";
}

ConditionId ConditionFromString(std::string_view s) {
  for (const auto& [cid, name] : kConditionNames) {
    if (name == s) return cid;
  }
  throw Error("unknown condition '" + std::string(s) + "'");
}

const std::vector<ConditionId>& AllConditions() {
  static const std::vector<ConditionId> all = [] {
    std::vector<ConditionId> v;
    for (const auto& entry : kConditionNames) v.push_back(entry.first);
    return v;
  }();
  return all;
}

void Certificate::AddNote(std::string_view note) {
  if (!notes.empty()) notes += "; ";
  notes += note;
}

double Certificate::constant(const std::string& name) const {
  auto it = constants.find(name);
  if (it == constants.end()) {
    throw Error("certificate " + std::string(ToString(condition)) + " has no constant '" + name +
                "'");
  }
  return it->second;
}

const Certificate* Certificate::Find(ConditionId id) const {
  for (const auto& c : attached) {
    if (c.condition == id) return &c;
  }
  return nullptr;
}

Certificate MakeCertificate(ConditionId id) {
  Certificate c;
  c.condition = id;
  return c;
}

}  // namespace ergocert
