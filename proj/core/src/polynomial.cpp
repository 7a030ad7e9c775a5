#include "zcover/polynomial.hpp"

#include <algorithm>
#include <cstddef>

namespace zcover::polyq {

Poly normalized(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

bool is_zero(const Poly& p) { return p.empty(); }

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return normalized(std::move(r));
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return normalized(std::move(r));
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return normalized(std::move(r));
}

Poly scale(const Poly& a, const Rat& c) {
  if (c == 0) return {};
  Poly r = a;
  for (auto& x : r) x *= c;
  return r;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rat(static_cast<long>(i));
  return normalized(std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  Poly rem = a;
  const int db = degree(b);
  Poly quo;
  if (degree(rem) >= db) quo.assign(rem.size() - b.size() + 1, Rat(0));
  while (degree(rem) >= db) {
    const int k = degree(rem) - db;
    Rat c = rem.back() / b.back();
    quo[k] = c;
    for (int i = 0; i <= db; ++i) rem[k + i] -= c * b[i];
    rem = normalized(std::move(rem));
  }
  return {normalized(std::move(quo)), std::move(rem)};
}

Rat eval(const Poly& p, const Rat& x) {
  Rat acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<Rat, Rat> eval_interval(const Poly& p, const Rat& lo, const Rat& hi) {
  Rat alo(0), ahi(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    // [alo,ahi] * [lo,hi]: take min/max of the four corner products.
    Rat c1 = alo * lo, c2 = alo * hi, c3 = ahi * lo, c4 = ahi * hi;
    Rat mn = std::min(std::min(c1, c2), std::min(c3, c4));
    Rat mx = std::max(std::max(c1, c2), std::max(c3, c4));
    alo = mn + *it;
    ahi = mx + *it;
  }
  return {alo, ahi};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = normalized(a), y = normalized(b);
  while (!y.empty()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty() && x.back() != 1) x = scale(x, Rat(1) / x.back());
  return x;
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  Poly r0 = normalized(a), r1 = normalized(b);
  Poly u0{Rat(1)}, u1{}, v0{}, v1{Rat(1)};
  while (!r1.empty()) {
    auto [q, r2] = divmod(r0, r1);
    Poly u2 = sub(u0, mul(q, u1));
    Poly v2 = sub(v0, mul(q, v1));
    r0 = std::move(r1); r1 = std::move(r2);
    u0 = std::move(u1); u1 = std::move(u2);
    v0 = std::move(v1); v1 = std::move(v2);
  }
  if (!r0.empty() && r0.back() != 1) {
    Rat inv = Rat(1) / r0.back();
    r0 = scale(r0, inv);
    u0 = scale(u0, inv);
    v0 = scale(v0, inv);
  }
  return {std::move(r0), std::move(u0), std::move(v0)};
}

namespace {

int sign_variations(const std::vector<Poly>& chain, const Rat& x) {
  int vars = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++vars;
    prev = s;
  }
  return vars;
}

}  // namespace

int count_roots(const Poly& p, const Rat& lo, const Rat& hi) {
  std::vector<Poly> chain;
  chain.push_back(normalized(p));
  chain.push_back(derivative(p));
  while (!chain.back().empty() && degree(chain.back()) > 0) {
    Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
    chain.push_back(scale(r, Rat(-1)));
  }
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

}  // namespace zcover::polyq
