#pragma once

#include "latshape/localarith.hpp"

#include <numeric>

namespace latshape {

// Decides isotropy of sum a_i x_i^2 over Q_p by searching primitive zeros digit by digit.
// A residue x is accepted once q(x) = 0 mod p^j with j >= 2 delta + 1, delta the valuation of
// the gradient; Hensel lifting then produces a genuine zero.
class HenselOracle {
public:
  HenselOracle(std::vector<long long> coeffs, long long p) : a_(std::move(coeffs)), p_(p) {
    long long g = 0;
    for (auto c : a_) {
      if (c == 0) throw MathError("hensel oracle: zero coefficient");
      g = std::gcd(g, c < 0 ? -c : c);
    }
    for (auto &c : a_) c /= g;
    int v = val(2);
    for (auto c : a_) v += val(c);
    depth_ = 2 * v + 1;
    mod_ = 1;
    for (int i = 0; i < depth_; ++i) mod_ *= p_;
    for (auto c : a_) vcoef_.push_back(val(2 * c));
  }

  bool isotropic() {
    if (a_.size() < 2) return false;
    std::vector<long long> x(a_.size(), 0);
    return search(1, 1, x);
  }

  long long nodes() const { return nodes_; }

private:
  int val(long long c) const {
    if (c < 0) c = -c;
    int v = 0;
    while (c % p_ == 0) {
      c /= p_;
      ++v;
    }
    return v;
  }

  long long qmod(const std::vector<long long> &x, long long m) const {
    __int128 s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<__int128>(a_[i]) * x[i] * x[i];
    long long r = static_cast<long long>(s % m);
    return r < 0 ? r + m : r;
  }

  bool accepts(const std::vector<long long> &x, int j, long long pj) const {
    int delta = 1 << 30;
    for (std::size_t i = 0; i < x.size(); ++i) {
      long long xi = x[i] % pj;
      if (xi == 0) continue;
      delta = std::min(delta, vcoef_[i] + val(xi));
    }
    return delta < j && 2 * delta + 1 <= j;
  }

  // x holds residues mod p^(j-1); extend by one digit
  bool search(int j, long long pj_prev, std::vector<long long> &x) {
    long long pj = pj_prev * p_;
    std::size_t m = x.size();
    std::vector<long long> digit(m, 0);
    std::vector<long long> base = x;
    while (true) {
      ++nodes_;
      bool primitive = j > 1;
      for (std::size_t i = 0; i < m && !primitive; ++i) primitive = digit[i] != 0;
      if (primitive) {
        for (std::size_t i = 0; i < m; ++i) x[i] = base[i] + digit[i] * pj_prev;
        if (qmod(x, pj) == 0) {
          if (accepts(x, j, pj)) return true;
          if (j < depth_ && search(j + 1, pj, x)) return true;
        }
      }
      std::size_t i = 0;
      while (i < m && ++digit[i] == p_) digit[i++] = 0;
      if (i == m) break;
    }
    x = base;
    return false;
  }

  std::vector<long long> a_;
  long long p_;
  int depth_ = 1;
  long long mod_ = 1;
  std::vector<int> vcoef_;
  long long nodes_ = 0;
};

inline bool hensel_isotropic(const std::vector<long long> &diag, long long p) {
  HenselOracle o(diag, p);
  return o.isotropic();
}

} // namespace latshape
