#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ietlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Half-open interval [a, b). Degenerate (a >= b) means empty.
struct Interval {
  double a = 0.0;
  double b = 0.0;

  double length() const { return b > a ? b - a : 0.0; }
  double mid() const { return 0.5 * (a + b); }
  bool empty() const { return !(a < b); }
  bool contains(double x) const { return x >= a && x < b; }
};

// Dense row-major square matrix of big integers.
class BigMatrix {
 public:
  BigMatrix() = default;
  explicit BigMatrix(int n) : n_(n), m_(static_cast<size_t>(n) * n) {}

  static BigMatrix identity(int n) {
    BigMatrix I(n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
  }

  int size() const { return n_; }
  BigInt& operator()(int i, int j) { return m_[static_cast<size_t>(i) * n_ + j]; }
  const BigInt& operator()(int i, int j) const { return m_[static_cast<size_t>(i) * n_ + j]; }

  bool operator==(const BigMatrix& o) const { return n_ == o.n_ && m_ == o.m_; }

  BigMatrix operator*(const BigMatrix& o) const {
    BigMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const BigInt& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  BigInt row_sum(int i) const {
    BigInt s = 0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j);
    return s;
  }

  // Max absolute row sum.
  BigInt norm_inf() const {
    BigInt best = 0;
    for (int i = 0; i < n_; ++i) {
      BigInt s = 0;
      for (int j = 0; j < n_; ++j) s += abs((*this)(i, j));
      if (s > best) best = s;
    }
    return best;
  }

  bool all_positive() const {
    for (const auto& v : m_)
      if (v <= 0) return false;
    return true;
  }

 private:
  int n_ = 0;
  std::vector<BigInt> m_;
};

// Exact inverse of a unimodular integer matrix (det = +-1) via rational
// Gauss-Jordan. Throws if the matrix is singular or non-unimodular.
BigMatrix unimodular_inverse(const BigMatrix& b);

// Determinant over exact rationals (returned as BigInt; throws if non-integer,
// which cannot happen for integer input).
BigInt det_exact(const BigMatrix& b);

struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ietlab
