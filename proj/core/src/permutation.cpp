#include "ietlab/permutation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace ietlab {

namespace {

bool is_bijection(const std::vector<int>& pi) {
  const int d = static_cast<int>(pi.size());
  std::vector<char> seen(d + 1, 0);
  for (int v : pi) {
    if (v < 1 || v > d || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace

Permutation::Permutation(std::vector<std::string> alphabet, std::vector<int> pi0,
                         std::vector<int> pi1)
    : alphabet_(std::move(alphabet)), pi0_(std::move(pi0)), pi1_(std::move(pi1)) {
  const size_t d = alphabet_.size();
  if (d == 0 || pi0_.size() != d || pi1_.size() != d)
    throw StructuralError("permutation: alphabet/pi0/pi1 size mismatch");
  if (!is_bijection(pi0_) || !is_bijection(pi1_))
    throw StructuralError("permutation: pi0/pi1 must be bijections onto {1..d}");
  std::set<std::string> uniq(alphabet_.begin(), alphabet_.end());
  if (uniq.size() != d) throw StructuralError("permutation: duplicate labels");
  rebuild_inverse();
}

void Permutation::rebuild_inverse() {
  const int d = this->d();
  inv0_.assign(d, 0);
  inv1_.assign(d, 0);
  for (int i = 0; i < d; ++i) {
    inv0_[pi0_[i] - 1] = i;
    inv1_[pi1_[i] - 1] = i;
  }
}

Permutation Permutation::from_rows(const std::vector<std::string>& top,
                                   const std::vector<std::string>& bottom) {
  const int d = static_cast<int>(top.size());
  if (static_cast<int>(bottom.size()) != d)
    throw StructuralError("permutation rows of unequal length");
  std::vector<std::string> alphabet = top;
  std::vector<int> pi0(d), pi1(d);
  std::map<std::string, int> idx;
  for (int i = 0; i < d; ++i) {
    idx[top[i]] = i;
    pi0[i] = i + 1;
  }
  for (int p = 0; p < d; ++p) {
    auto it = idx.find(bottom[p]);
    if (it == idx.end()) throw StructuralError("bottom row label not in top row");
    pi1[it->second] = p + 1;
  }
  return Permutation(std::move(alphabet), std::move(pi0), std::move(pi1));
}

Permutation Permutation::reversal(int d) {
  std::vector<std::string> alphabet(d);
  std::vector<int> pi0(d), pi1(d);
  for (int i = 0; i < d; ++i) {
    alphabet[i] = std::string(1, static_cast<char>('A' + i));
    pi0[i] = i + 1;
    pi1[i] = d - i;
  }
  return Permutation(std::move(alphabet), std::move(pi0), std::move(pi1));
}

int Permutation::index_of(const std::string& label) const {
  for (int i = 0; i < d(); ++i)
    if (alphabet_[i] == label) return i;
  throw StructuralError("unknown label: " + label);
}

bool Permutation::irreducible() const {
  // pi1 o pi0^{-1}{1..k} = {1..k} only for k = d.
  const int dd = d();
  int max_seen = 0;
  for (int k = 1; k < dd; ++k) {
    max_seen = std::max(max_seen, pi1_[inv0_[k - 1]]);
    if (max_seen == k) return false;
  }
  return true;
}

bool Permutation::symmetric() const {
  for (int i = 0; i < d(); ++i)
    if (pi0_[i] + pi1_[i] != d() + 1) return false;
  return true;
}

bool Permutation::degenerate() const {
  for (int i = 0; i < d(); ++i)
    for (int j = 0; j < d(); ++j)
      if (pi0_[j] == pi0_[i] + 1 && pi1_[j] == pi1_[i] + 1) return true;
  return false;
}

std::string Permutation::str() const {
  std::ostringstream os;
  for (int p = 1; p <= d(); ++p) os << (p > 1 ? " " : "") << alphabet_[inv0(p)];
  os << " | ";
  for (int p = 1; p <= d(); ++p) os << (p > 1 ? " " : "") << alphabet_[inv1(p)];
  return os.str();
}

PermutationFlags validate_permutation(const Permutation& p) {
  PermutationFlags f;
  f.irreducible = p.irreducible();
  f.symmetric = p.symmetric();
  f.degenerate = p.degenerate();
  return f;
}

std::vector<std::vector<int>> omega_matrix(const Permutation& p) {
  const int d = p.d();
  std::vector<std::vector<int>> om(d, std::vector<int>(d, 0));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (p.pi1(a) > p.pi1(b) && p.pi0(a) < p.pi0(b))
        om[a][b] = 1;
      else if (p.pi1(a) < p.pi1(b) && p.pi0(a) > p.pi0(b))
        om[a][b] = -1;
    }
  return om;
}

int omega_kernel_dim(const Permutation& p) {
  const int d = p.d();
  auto om = omega_matrix(p);
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = om[i][j];
  int rank = 0;
  for (int col = 0; col < d && rank < d; ++col) {
    int piv = -1;
    for (int r = rank; r < d; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = 0; r < d; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[rank][col];
      for (int c = col; c < d; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return d - rank;
}

SingularityStructure sigma_and_genus(const Permutation& perm) {
  if (!perm.irreducible())
    throw DomainError("sigma_and_genus requires an irreducible permutation");
  const int d = perm.d();
  // extended permutation p on {0..d+1}
  std::vector<int> p(d + 2), pinv(d + 2);
  p[0] = 0;
  p[d + 1] = d + 1;
  for (int j = 1; j <= d; ++j) p[j] = perm.pi1(perm.inv0(j));
  for (int j = 0; j <= d + 1; ++j) pinv[p[j]] = j;

  SingularityStructure s;
  s.sigma.resize(d + 1);
  for (int j = 0; j <= d; ++j) s.sigma[j] = pinv[p[j] + 1] - 1;

  s.orbit_of.assign(d + 1, -1);
  for (int j = 0; j <= d; ++j) {
    if (s.orbit_of[j] >= 0) continue;
    std::vector<int> orbit;
    int cur = j;
    while (s.orbit_of[cur] < 0) {
      s.orbit_of[cur] = static_cast<int>(s.orbits.size());
      orbit.push_back(cur);
      cur = s.sigma[cur];
    }
    s.orbits.push_back(std::move(orbit));
  }
  s.num_orbits = static_cast<int>(s.orbits.size());
  for (const auto& orb : s.orbits)
    if (std::find(orb.begin(), orb.end(), 0) == orb.end())
      ++s.num_orbits_without_zero;

  const int two_g = d + 1 - s.num_orbits;
  if (two_g < 0 || two_g % 2 != 0)
    throw InternalConsistencyError("genus formula yields non-integer genus");
  s.genus = two_g / 2;

  const int kd = omega_kernel_dim(perm);
  if (s.num_orbits != kd + 1)
    throw InternalConsistencyError(
        "#Sigma(pi) disagrees with dim Ker(Omega) + 1");

  s.marked_minus.resize(s.num_orbits);
  s.marked_plus.resize(s.num_orbits);
  for (int a = 0; a < d; ++a) {
    s.marked_minus[s.orbit_of[perm.pi0(a)]].push_back(a);
    s.marked_plus[s.orbit_of[perm.pi0(a) - 1]].push_back(a);
  }
  return s;
}

Permutation rauzy_move(const Permutation& p, bool top) {
  if (!p.irreducible()) throw DomainError("rauzy move on reducible permutation");
  const int d = p.d();
  Permutation q = p;
  if (top) {
    const int w = p.inv0(d);  // winner keeps its pi1 slot
    const int l = p.inv1(d);  // loser reinserts right after it
    const int k = p.pi1(w);
    for (int i = 0; i < d; ++i)
      if (q.pi1_[i] > k) ++q.pi1_[i];
    q.pi1_[l] = k + 1;
  } else {
    const int w = p.inv1(d);
    const int l = p.inv0(d);
    const int k = p.pi0(w);
    for (int i = 0; i < d; ++i)
      if (q.pi0_[i] > k) ++q.pi0_[i];
    q.pi0_[l] = k + 1;
  }
  q.rebuild_inverse();
  return q;
}

RauzyClass rauzy_class(const Permutation& p) {
  if (!p.irreducible()) throw DomainError("rauzy_class requires irreducible pi");
  RauzyClass rc;
  std::map<Permutation, int> index;
  std::deque<Permutation> todo{p};
  index[p] = 0;
  rc.vertices.push_back(p);
  while (!todo.empty()) {
    Permutation cur = todo.front();
    todo.pop_front();
    const int ci = index[cur];
    int targets[2];
    for (int m = 0; m < 2; ++m) {
      Permutation nxt = rauzy_move(cur, m == 0);
      auto it = index.find(nxt);
      if (it == index.end()) {
        int ni = static_cast<int>(rc.vertices.size());
        index[nxt] = ni;
        rc.vertices.push_back(nxt);
        rc.edges.resize(rc.vertices.size(), {-1, -1});
        todo.push_back(nxt);
        targets[m] = ni;
      } else {
        targets[m] = it->second;
      }
    }
    if (rc.edges.size() < rc.vertices.size())
      rc.edges.resize(rc.vertices.size(), {-1, -1});
    rc.edges[ci] = {targets[0], targets[1]};
  }
  return rc;
}

std::vector<Permutation> all_irreducible(int d) {
  std::vector<std::string> alphabet(d);
  for (int i = 0; i < d; ++i) alphabet[i] = std::string(1, static_cast<char>('A' + i));
  std::vector<int> pi1(d);
  std::iota(pi1.begin(), pi1.end(), 1);
  std::vector<int> pi0(d);
  std::iota(pi0.begin(), pi0.end(), 1);
  std::vector<Permutation> out;
  do {
    Permutation p(alphabet, pi0, pi1);
    if (p.irreducible()) out.push_back(p);
  } while (std::next_permutation(pi1.begin(), pi1.end()));
  return out;
}

BigMatrix unimodular_inverse(const BigMatrix& b) {
  const int n = b.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = Rational(b(i, j));
    m[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw DomainError("unimodular_inverse: singular matrix");
    std::swap(m[piv], m[col]);
    Rational inv = Rational(1) / m[col][col];
    for (int c = 0; c < 2 * n; ++c) m[col][c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  BigMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational v = m[i][n + j];
      if (denominator(v) != 1)
        throw DomainError("unimodular_inverse: non-integer inverse");
      out(i, j) = numerator(v);
    }
  return out;
}

BigInt det_exact(const BigMatrix& b) {
  const int n = b.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = Rational(b(i, j));
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rational inv = Rational(1) / m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] * inv;
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  if (denominator(det) != 1) throw InternalConsistencyError("non-integer det");
  return numerator(det);
}

}  // namespace ietlab
