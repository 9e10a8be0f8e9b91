#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ietlab/types.hpp"

namespace ietlab {

// Pair of bijections (pi0, pi1) from a labelled alphabet onto {1..d}.
// pi0 gives positions before the exchange, pi1 after.
class Permutation {
 public:
  Permutation() = default;
  Permutation(std::vector<std::string> alphabet, std::vector<int> pi0,
              std::vector<int> pi1);

  // pi0 = identity order of `alphabet`, pi1 given by the list of labels in
  // post-exchange order.
  static Permutation from_rows(const std::vector<std::string>& top,
                               const std::vector<std::string>& bottom);
  // d-symbol reversal: pi1(j) = d+1-pi0(j), labels A, B, C, ...
  static Permutation reversal(int d);

  int d() const { return static_cast<int>(alphabet_.size()); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& label(int idx) const { return alphabet_[idx]; }
  int index_of(const std::string& label) const;

  int pi0(int idx) const { return pi0_[idx]; }
  int pi1(int idx) const { return pi1_[idx]; }
  // Alphabet index occupying position p (1-based) in row eps.
  int inv0(int p) const { return inv0_[p - 1]; }
  int inv1(int p) const { return inv1_[p - 1]; }

  bool irreducible() const;
  bool symmetric() const;
  // Exists an adjacent pair translated in parallel: alpha, beta with
  // pi0(beta) = pi0(alpha)+1 and pi1(beta) = pi1(alpha)+1.
  bool degenerate() const;

  bool operator==(const Permutation& o) const {
    return alphabet_ == o.alphabet_ && pi0_ == o.pi0_ && pi1_ == o.pi1_;
  }
  bool operator<(const Permutation& o) const {
    if (pi0_ != o.pi0_) return pi0_ < o.pi0_;
    return pi1_ < o.pi1_;
  }

  std::string str() const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<int> pi0_, pi1_;    // alphabet index -> position (1-based)
  std::vector<int> inv0_, inv1_;  // position (0-based storage) -> alphabet index
  void rebuild_inverse();
  friend Permutation rauzy_move(const Permutation&, bool top);
};

struct PermutationFlags {
  bool irreducible = false;
  bool symmetric = false;
  bool degenerate = false;
};

PermutationFlags validate_permutation(const Permutation& p);

// Antisymmetric matrix of eq. type: +1 if pi1(a)>pi1(b) and pi0(a)<pi0(b),
// -1 in the mirrored case, 0 otherwise. Row/column order = alphabet order.
std::vector<std::vector<int>> omega_matrix(const Permutation& p);

// Veech's permutation sigma on {0..d}, its orbit partition, and the genus.
struct SingularityStructure {
  std::vector<int> sigma;               // sigma[j], 0 <= j <= d
  std::vector<std::vector<int>> orbits; // partition of {0..d}
  std::vector<int> orbit_of;            // j -> orbit index
  int num_orbits = 0;                   // #Sigma(pi)
  int num_orbits_without_zero = 0;      // #Sigma_0(pi)
  int genus = 0;
  // marked sets per orbit: A^-_O = {alpha : pi0(alpha) in O},
  // A^+_O = {alpha : pi0(alpha)-1 in O}
  std::vector<std::vector<int>> marked_minus;
  std::vector<std::vector<int>> marked_plus;
};

SingularityStructure sigma_and_genus(const Permutation& p);

// Kernel dimension of Omega over the rationals (exact).
int omega_kernel_dim(const Permutation& p);

// Formal Rauzy move on the permutation alone (top: pi0 fixed, bottom: pi1
// fixed). Preserves irreducibility.
Permutation rauzy_move(const Permutation& p, bool top);

struct RauzyClass {
  std::vector<Permutation> vertices;
  // edges[v] = {top-target index, bottom-target index}
  std::vector<std::pair<int, int>> edges;
};

RauzyClass rauzy_class(const Permutation& p);

// All irreducible permutations on d symbols (labels A..), for exhaustive
// small-d checks.
std::vector<Permutation> all_irreducible(int d);

}  // namespace ietlab
