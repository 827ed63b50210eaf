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


#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ergocert::testing {

Dense ToDense(const Matrix& m) {
  Dense out(static_cast<std::size_t>(m.rows()), Vec(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
  }
  return out;
}

Vec ToVec(const Vector& v) { return Vec(v.data(), v.data() + v.size()); }

Dense Identity(std::size_t n) {
  Dense out(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1.0;
  return out;
}

Dense Mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Dense out(n, Vec(m, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const double v = a[i][l];
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += v * b[l][j];
    }
  }
  return out;
}

Dense Add(const Dense& a, const Dense& b, double scale_b) {
  Dense out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += scale_b * b[i][j];
  }
  return out;
}

Dense Scale(const Dense& a, double s) {
  Dense out = a;
  for (auto& row : out) {
    for (double& v : row) v *= s;
  }
  return out;
}

Dense NaivePower(const Dense& a, unsigned long n) {
  Dense out = Identity(a.size());
  for (unsigned long k = 0; k < n; ++k) out = Mul(out, a);
  return out;
}

Dense Inverse(const Dense& a) {
  const std::size_t n = a.size();
  Dense m = a, inv = Identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (std::abs(m[piv][c]) < 1e-300) throw std::runtime_error("singular matrix");
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    const double d = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0.0) continue;
      const double f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Vec VecMat(const Vec& v, const Dense& a) {
  Vec out(a.empty() ? 0 : a[0].size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[i] * a[i][j];
  }
  return out;
}

Vec MatVec(const Dense& a, const Vec& v) {
  Vec out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  }
  return out;
}

double MaxAbsDiff(const Dense& a, const Dense& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) out = std::max(out, std::abs(a[i][j] - b[i][j]));
  }
  return out;
}

double L1(const Vec& a, const Vec& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out += std::abs(a[i] - b[i]);
  return out;
}

double Sum(const Vec& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

Vec StationaryOracle(const Dense& p) {
  const std::size_t n = p.size();
  // Rows of A are the balance equations sum_x pi(x) (P(x,a) - [x == a]) = 0.
  Dense a(n, Vec(n, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t x = 0; x < n; ++x) a[r][x] = p[x][r] - (x == r ? 1.0 : 0.0);
  }
  for (std::size_t x = 0; x < n; ++x) a[n - 1][x] = 1.0;
  Vec rhs(n, 0.0);
  rhs[n - 1] = 1.0;
  return MatVec(Inverse(a), rhs);
}

Dense SeriesResolvent(const Dense& p, int terms) {
  const std::size_t n = p.size();
  Dense out(n, Vec(n, 0.0));
  Dense pk = Identity(n);
  double w = 0.5;
  for (int k = 0; k < terms; ++k) {
    out = Add(out, pk, w);
    pk = Mul(pk, p);
    w *= 0.5;
  }
  return out;
}

Dense ExpOracle(const Dense& q, double t) {
  const std::size_t n = q.size();
  double norm = 0.0;
  for (const auto& row : q) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    norm = std::max(norm, s);
  }
  int squarings = 0;
  double scale = t;
  while (norm * scale > 0.125) {
    scale /= 2.0;
    ++squarings;
  }
  const Dense a = Scale(q, scale);
  Dense out = Identity(n), term = Identity(n);
  for (int k = 1; k <= 20; ++k) {
    term = Scale(Mul(term, a), 1.0 / k);
    out = Add(out, term);
  }
  for (int s = 0; s < squarings; ++s) out = Mul(out, out);
  return out;
}

Vec AbsorptionOracle(const Dense& p, const std::vector<bool>& target) {
  const std::size_t n = p.size();
  // h = P h off the absorbing states, h = 1 on target, 0 on other absorbing
  // states.
  std::vector<std::size_t> free;
  for (std::size_t x = 0; x < n; ++x) {
    if (p[x][x] < 1.0) free.push_back(x);
  }
  const std::size_t k = free.size();
  Dense a(k, Vec(k, 0.0));
  Vec rhs(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t x = free[i];
    a[i][i] = 1.0;
    for (std::size_t j = 0; j < k; ++j) a[i][j] -= p[x][free[j]];
    for (std::size_t y = 0; y < n; ++y) {
      if (p[y][y] == 1.0 && target[y]) rhs[i] += p[x][y];
    }
  }
  const Vec h = MatVec(Inverse(a), rhs);
  Vec out(n, 0.0);
  for (std::size_t y = 0; y < n; ++y) out[y] = (p[y][y] == 1.0 && target[y]) ? 1.0 : 0.0;
  for (std::size_t i = 0; i < k; ++i) out[free[i]] = h[i];
  return out;
}

double SubsetDp(const Vec& row, const Vec& m, const std::function<double(double)>& phi) {
  std::vector<std::size_t> atoms;
  for (std::size_t a = 0; a < row.size(); ++a) {
    if (row[a] > 0.0 || m[a] > 0.0) atoms.push_back(a);
  }
  if (atoms.size() > 24) throw std::runtime_error("too many atoms for the subset table");
  const std::size_t count = std::size_t{1} << atoms.size();
  Vec mass(count, 0.0), hit(count, 0.0);
  double best = row.empty() ? 0.0 : -phi(0.0);
  for (std::size_t s = 1; s < count; ++s) {
    const std::size_t low = s & (~s + 1);
    const auto bit = static_cast<std::size_t>(std::countr_zero(low));
    mass[s] = mass[s ^ low] + m[atoms[bit]];
    hit[s] = hit[s ^ low] + row[atoms[bit]];
    best = std::max(best, hit[s] - phi(mass[s]));
  }
  return best;
}

namespace {

double LogRatio(const Vec& x, const Vec& y, double p, const Vec& u) {
  double sy = 0.0, sx = 0.0;
  const double shift = *std::max_element(u.begin(), u.end());
  for (std::size_t a = 0; a < u.size(); ++a) {
    sy += y[a] * std::exp(u[a] - shift);
    sx += x[a] * std::exp(p * (u[a] - shift));
  }
  return p * std::log(sy) - std::log(sx);
}

}  // namespace

double NumericHarnack(const Vec& x, const Vec& y, double p) {
  const std::size_t n = x.size();
  double best = -std::numeric_limits<double>::infinity();
  Gen g(17);
  for (int start = 0; start < 4; ++start) {
    Vec u(n, 0.0);
    if (start > 0) {
      for (double& v : u) v = g.U(-2.0, 2.0);
    }
    double val = LogRatio(x, y, p, u);
    double step = 1.0;
    for (int it = 0; it < 20000 && step > 1e-14; ++it) {
      const double shift = *std::max_element(u.begin(), u.end());
      double sy = 0.0, sx = 0.0;
      Vec ey(n), ex(n);
      for (std::size_t a = 0; a < n; ++a) {
        ey[a] = y[a] * std::exp(u[a] - shift);
        ex[a] = x[a] * std::exp(p * (u[a] - shift));
        sy += ey[a];
        sx += ex[a];
      }
      Vec grad(n);
      double gnorm = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        grad[a] = p * ey[a] / sy - p * ex[a] / sx;
        gnorm += grad[a] * grad[a];
      }
      if (gnorm < 1e-30) break;
      while (step > 1e-14) {
        Vec trial = u;
        for (std::size_t a = 0; a < n; ++a) trial[a] += step * grad[a];
        const double tv = LogRatio(x, y, p, trial);
        if (tv >= val + 1e-4 * step * gnorm) {
          u = trial;
          val = tv;
          step *= 2.0;
          break;
        }
        step /= 2.0;
      }
    }
    best = std::max(best, val);
  }
  return std::exp(best);
}

Kernel RandomErgodic(Gen& g, std::size_t n, double density) {
  Matrix rows = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < n; ++a) {
      if (a == x || a == (x + 1) % n || g.Coin(density)) {
        rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a)) = g.U(0.05, 1.0);
      }
    }
    rows.row(static_cast<Eigen::Index>(x)) /= rows.row(static_cast<Eigen::Index>(x)).sum();
  }
  return Kernel(StateSpace::Indexed(n, ""), rows, KernelKind::kMarkovian, RowSumPolicy::kRenormalize);
}

Kernel RandomPositive(Gen& g, std::size_t n) { return RandomErgodic(g, n, 1.0); }

Kernel RandomPeriodic(Gen& g, std::size_t n, int period) {
  // State x sits in cyclic group x % period and jumps only into the next one.
  Matrix rows = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const auto d = static_cast<std::size_t>(period);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t next = (x % d + 1) % d;
    bool any = false;
    for (std::size_t a = next; a < n; a += d) {
      if (g.Coin(0.6) || a == (x + 1) % n) {
        rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a)) = g.U(0.05, 1.0);
        any = true;
      }
    }
    if (!any) rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(next)) = 1.0;
    rows.row(static_cast<Eigen::Index>(x)) /= rows.row(static_cast<Eigen::Index>(x)).sum();
  }
  return Kernel(StateSpace::Indexed(n, ""), rows, KernelKind::kMarkovian, RowSumPolicy::kRenormalize);
}

MultiClass RandomMultiClass(Gen& g, std::size_t blocks, std::size_t block_size,
                            std::size_t transient) {
  const std::size_t n = blocks * block_size + transient;
  Matrix rows = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  MultiClass out{Kernel::Identity(StateSpace::Indexed(n, "")), {}, {}};
  for (std::size_t b = 0; b < blocks; ++b) {
    std::vector<StateIndex> cls;
    const std::size_t base = b * block_size;
    for (std::size_t i = 0; i < block_size; ++i) {
      cls.push_back(base + i);
      for (std::size_t j = 0; j < block_size; ++j) {
        if (j == (i + 1) % block_size || g.Coin(0.4)) {
          rows(static_cast<Eigen::Index>(base + i), static_cast<Eigen::Index>(base + j)) = g.U(0.05, 1.0);
        }
      }
    }
    out.classes.push_back(cls);
  }
  for (std::size_t t = 0; t < transient; ++t) {
    const std::size_t x = blocks * block_size + t;
    out.transient.push_back(x);
    // Some weight stays among transient states, the rest leaks to blocks.
    rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = g.U(0.0, 0.5);
    for (std::size_t y = blocks * block_size; y < n; ++y) {
      if (y != x && g.Coin(0.3)) rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = g.U(0.0, 0.5);
    }
    const auto target = static_cast<std::size_t>(g.Int(0, static_cast<int>(blocks * block_size) - 1));
    rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(target)) += g.U(0.1, 1.0);
  }
  for (std::size_t x = 0; x < n; ++x) {
    rows.row(static_cast<Eigen::Index>(x)) /= rows.row(static_cast<Eigen::Index>(x)).sum();
  }
  out.p = Kernel(StateSpace::Indexed(n, ""), rows, KernelKind::kMarkovian, RowSumPolicy::kRenormalize);
  return out;
}

Generator RandomGenerator(Gen& g, std::size_t n, double density) {
  Matrix q = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < n; ++a) {
      if (a != x && (a == (x + 1) % n || g.Coin(density))) {
        q(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a)) = g.U(0.1, 2.0);
      }
    }
    q(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = -q.row(static_cast<Eigen::Index>(x)).sum();
  }
  return Generator(StateSpace::Indexed(n, ""), q);
}

Measure RandomMeasure(Gen& g, const StateSpace& space, bool probability) {
  Vector w(static_cast<Eigen::Index>(space.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = g.U(0.05, 1.0);
  if (probability) w /= w.sum();
  return Measure(space, w);
}

StateFn RandomUnitFn(Gen& g, const StateSpace& space) {
  Vector w(static_cast<Eigen::Index>(space.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = g.U();
  return StateFn(space, w);
}

}  // namespace ergocert::testing
