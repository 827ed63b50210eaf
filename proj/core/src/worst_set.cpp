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


#include "ergocert/worst_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ergocert {

double SignedExcess(const Measure& row, const Measure& base, double c) {
  RequireSameSpace(row.space(), base.space(), "SignedExcess");
  if (!(c >= 0.0)) throw Error("signed excess needs c >= 0");
  return (row.weights() - c * base.weights()).cwiseMax(0.0).sum();
}

WorstSet WorstSetSearch(const Measure& row, const Measure& m, const Phi& phi,
                        std::size_t exhaustive_limit) {
  RequireSameSpace(row.space(), m.space(), "WorstSetSearch");
  std::vector<StateIndex> atoms = row.support().members();
  WorstSet out;
  if (phi.is_linear()) {
    // Exact: every atom with a positive contribution.
    const double c = phi.slope();
    for (StateIndex a : atoms) {
      const double d = row(a) - c * m(a);
      if (d > 0.0) {
        out.value += d;
        out.set.push_back(a);
      }
    }
    out.prefix_value = out.value;
    return out;
  }
  std::stable_sort(atoms.begin(), atoms.end(), [&](StateIndex a, StateIndex b) {
    const bool za = m(a) <= 0.0, zb = m(b) <= 0.0;
    if (za != zb) return za;
    if (za) return false;
    return row(a) * m(b) > row(b) * m(a);
  });
  double best = 0.0;
  std::size_t best_len = 0;
  double rsum = 0.0, msum = 0.0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    rsum += row(atoms[k]);
    msum += m(atoms[k]);
    const double v = rsum - phi(msum);
    if (v > best) {
      best = v;
      best_len = k + 1;
    }
  }
  out.prefix_value = best;
  out.value = best;
  out.set.assign(atoms.begin(), atoms.begin() + static_cast<std::ptrdiff_t>(best_len));
  if (atoms.size() <= exhaustive_limit) {
    // Gray-code walk over all subsets of supp(row).
    const std::size_t k = atoms.size();
    const std::uint64_t total = std::uint64_t{1} << k;
    double r = 0.0, mm = 0.0, ex_best = 0.0;
    std::uint64_t ex_code = 0, code = 0;
    for (std::uint64_t i = 1; i < total; ++i) {
      const int bit = __builtin_ctzll(i);
      const std::uint64_t mask = std::uint64_t{1} << bit;
      const StateIndex a = atoms[static_cast<std::size_t>(bit)];
      if (code & mask) {
        r -= row(a);
        mm -= m(a);
      } else {
        r += row(a);
        mm += m(a);
      }
      code ^= mask;
      const double v = r - phi(std::max(mm, 0.0));
      if (v > ex_best) {
        ex_best = v;
        ex_code = code;
      }
    }
    out.exhaustive_value = ex_best;
    if (ex_best > best + 1e-12 * std::max(1.0, std::abs(best))) {
      out.value = ex_best;
      out.set.clear();
      for (std::size_t b = 0; b < k; ++b) {
        if (ex_code & (std::uint64_t{1} << b)) out.set.push_back(atoms[b]);
      }
    }
  }
  std::sort(out.set.begin(), out.set.end());
  return out;
}

double FunctionGridSup(const Measure& row, const Measure& m, const Phi& phi, int k) {
  RequireSameSpace(row.space(), m.space(), "FunctionGridSup");
  if (k < 1) throw Error("function grid needs k >= 1");
  const std::size_t n = row.size();
  double cells = 1.0;
  for (std::size_t i = 0; i < n; ++i) cells *= (k + 1);
  if (cells > 5e7) throw Error("function grid too large; use fewer states or a coarser grid");
  std::vector<int> digits(n, 0);
  double best = 0.0;
  while (true) {
    double r = 0.0, mm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double f = static_cast<double>(digits[i]) / k;
      r += row(i) * f;
      mm += m(i) * f;
    }
    best = std::max(best, r - phi(mm));
    std::size_t pos = 0;
    while (pos < n && digits[pos] == k) digits[pos++] = 0;
    if (pos == n) break;
    ++digits[pos];
  }
  return best;
}

double PairGap(const Kernel& p, StateIndex x, StateIndex y, unsigned long n, unsigned long j) {
  if (n < 1 || j < 1) throw Error("pair gap needs powers >= 1");
  if (x >= p.size() || y >= p.size()) throw Error("pair gap state out of range");
  const Matrix pn = Power(p, n).matrix();
  const Matrix pj = j == n ? pn : Power(p, j).matrix();
  return (pj.row(static_cast<Eigen::Index>(y)) - pn.row(static_cast<Eigen::Index>(x)))
      .cwiseMax(0.0)
      .sum();
}

}  // namespace ergocert
