#include "oracles.hpp"

#include <functional>

namespace oracle {

Dense convolve(const Dense& a, const Dense& b, long q_max) {
  Dense out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      const long q = ea.first + eb.first;
      if (q > q_max) continue;
      out[{q, ea.second + eb.second}] += ca * cb;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::vector<long> inverse_square(long n) {
  Dense geo;
  for (long k = 0; k <= n; ++k) geo[{k, 0}] = 1;
  const Dense sq = convolve(geo, geo, n);
  std::vector<long> out(static_cast<std::size_t>(n + 1), 0);
  for (const auto& [e, c] : sq) out[static_cast<std::size_t>(e.first)] = c;
  return out;
}

std::map<std::pair<long, long>, long> enumerate_character(const std::vector<int>& exponents, int order, long max_ticks) {
  // Each creation slot: (weight ticks, charge, fermionic).
  struct Slot {
    long w;
    long charge;
    bool fermion;
  };
  std::vector<Slot> slots;
  for (int m : exponents) {
    // a and psi: weights (order - m) mod order + k*order, never 0.
    long first_upper = (order - m) % order;
    if (first_upper == 0) first_upper = order;
    for (long w = first_upper; w <= max_ticks; w += order) {
      slots.push_back({w, 0, false});   // a
      slots.push_back({w, -1, true});   // psi
    }
    // b and phi: weights m + k*order; b_0 is excluded, phi_0 is kept.
    for (long w = m; w <= max_ticks; w += order) {
      if (w > 0) slots.push_back({w, 0, false});  // b
      slots.push_back({w, 1, true});              // phi
    }
  }
  std::map<std::pair<long, long>, long> out;
  std::function<void(std::size_t, long, long)> rec = [&](std::size_t i, long w, long c) {
    if (i == slots.size()) {
      ++out[{w, c}];
      return;
    }
    const Slot& s = slots[i];
    const long max_occ = s.fermion ? 1 : (max_ticks - w) / s.w;
    for (long k = 0; k <= max_occ && w + k * s.w <= max_ticks; ++k) rec(i + 1, w + k * s.w, c + k * s.charge);
  };
  rec(0, 0, 0);
  return out;
}

LineTrace line_trace(long lambda_num, long den, long q_max_ticks) {
  // Factors as lists of (q ticks, y, u) steps: exterior (one step), symmetric (all powers).
  LineTrace acc{{{0, 0, 0}, 1}};
  auto multiply = [&](long q, long y, long u, long sign, bool symmetric) {
    LineTrace next;
    for (const auto& [e, c] : acc) {
      long coeff = 1;
      for (long k = 0;; ++k) {
        const long qq = std::get<0>(e) + k * q;
        if (qq > q_max_ticks || (!symmetric && k > 1)) break;
        next[{qq, std::get<1>(e) + k * y, std::get<2>(e) + k * u}] += c * coeff;
        coeff *= sign;
        if (q == 0 && symmetric) break;
      }
    }
    acc.clear();
    for (const auto& [e, c] : next) {
      if (c != 0) acc.emplace(e, c);
    }
  };
  for (long k = 1; (k - 1) * den + lambda_num <= q_max_ticks || k * den - lambda_num <= q_max_ticks; ++k) {
    const long lo = (k - 1) * den + lambda_num;  // k - 1 + lambda
    const long hi = k * den - lambda_num;        // k - lambda
    multiply(lo, 1, -1, 1, false);               // (1 + y q^lo u^-1)
    multiply(hi, -1, 1, 1, false);               // (1 + y^-1 q^hi u)
    if (lo > 0) multiply(lo, 0, -1, 1, true);    // (1 - q^lo u^-1)^-1
    multiply(hi, 0, 1, 1, true);                 // (1 - q^hi u)^-1
  }
  return acc;
}

std::map<long, long> p1_euler_characteristic(long m) {
  // Sections z^k (d/dz)^m; z -> a z scales them by a^{m-k}. H^0: 0 <= k <= 2m.
  // H^1 (Cech, Laurent monomials regular on neither chart): 2m < k < 0.
  std::map<long, long> out;
  for (long k = 0; k <= 2 * m; ++k) out[m - k] += 1;
  for (long k = 2 * m + 1; k < 0; ++k) out[m - k] -= 1;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::map<std::pair<long, long>, long> p1_lefschetz(long m, long zeta_k, long zeta_order) {
  std::map<std::pair<long, long>, long> out;
  for (const auto& [e, c] : p1_euler_characteristic(m)) {
    long z = (e * zeta_k) % zeta_order;
    if (z < 0) z += zeta_order;
    out[{z, e}] += c;
  }
  return out;
}

}  // namespace oracle
