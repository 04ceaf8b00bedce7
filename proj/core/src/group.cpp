#include "cdr/group.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "cdr/errors.hpp"

namespace cdr {

GroupData GroupData::from_table(std::vector<std::vector<int>> table, std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InputError("group: empty multiplication table");
  for (int a = 0; a < n; ++a) {
    const auto& row = table[static_cast<std::size_t>(a)];
    if (static_cast<int>(row.size()) != n) {
      throw InputError("group: table row " + std::to_string(a) + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(n));
    }
    for (int x : row) {
      if (x < 0 || x >= n) throw InputError("group: table entry " + std::to_string(x) + " out of range");
    }
  }
  if (labels.empty()) {
    for (int a = 0; a < n; ++a) labels.push_back("g" + std::to_string(a));
  }
  if (static_cast<int>(labels.size()) != n) throw InputError("group: label count does not match the order");

  GroupData g;
  g.table_ = std::move(table);
  g.labels_ = std::move(labels);

  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = g.mul(a, b) == b && g.mul(b, a) == b;
    if (ok) e = a;
  }
  if (e < 0) throw InputError("group: no identity element");
  g.identity_ = e;

  g.inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul(a, b) == e && g.mul(b, a) == e) {
        g.inverse_[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (g.inverse_[static_cast<std::size_t>(a)] < 0) {
      throw InputError("group: element " + std::to_string(a) + " (row " + std::to_string(a) + ") has no inverse");
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int ab = g.mul(a, b);
      for (int c = 0; c < n; ++c) {
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
          throw InputError("group: table is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                           "," + std::to_string(c) + ")");
        }
      }
    }
  }
  g.build();
  return g;
}

GroupData GroupData::from_permutations(const std::vector<std::vector<int>>& perms) {
  if (perms.empty()) throw InputError("group: empty permutation list");
  const std::size_t d = perms.front().size();
  for (std::size_t k = 0; k < perms.size(); ++k) {
    const auto& p = perms[k];
    if (p.size() != d) throw InputError("group: permutation " + std::to_string(k) + " has the wrong degree");
    std::vector<int> seen(d, 0);
    for (int x : p) {
      if (x < 0 || static_cast<std::size_t>(x) >= d || seen[static_cast<std::size_t>(x)]++) {
        throw InputError("group: entry " + std::to_string(k) + " is not a permutation of 0.." + std::to_string(d - 1));
      }
    }
  }
  auto compose = [d](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = p[static_cast<std::size_t>(q[i])];
    return r;
  };

  std::map<std::vector<int>, int> id;
  std::vector<std::vector<int>> elems;
  auto add = [&](const std::vector<int>& p) {
    if (id.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(p);
  };
  for (const auto& p : perms) add(p);
  bool closed = elems.size() == perms.size();
  for (std::size_t a = 0; a < elems.size() && closed; ++a) {
    for (std::size_t b = 0; b < elems.size() && closed; ++b) closed = id.count(compose(elems[a], elems[b])) > 0;
  }

  if (!closed) {
    std::vector<int> ident(d);
    for (std::size_t i = 0; i < d; ++i) ident[i] = static_cast<int>(i);
    id.clear();
    elems.clear();
    add(ident);
    for (const auto& p : perms) add(p);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < elems.size(); ++i) queue.push_back(i);
    while (!queue.empty()) {
      const auto x = elems[queue.front()];
      queue.pop_front();
      for (const auto& s : perms) {
        const auto before = elems.size();
        add(compose(x, s));
        if (elems.size() > before) queue.push_back(before);
        if (elems.size() > 5040) throw InputError("group: generated group is too large");
      }
    }
  }

  const std::size_t n = elems.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a][b] = id.at(compose(elems[a], elems[b]));
  }
  std::vector<std::string> labels;
  for (const auto& p : elems) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
    labels.push_back(s + ")");
  }
  return from_table(std::move(table), std::move(labels));
}

int GroupData::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

bool GroupData::is_abelian() const {
  for (int a = 0; a < order(); ++a) {
    for (int b = 0; b < a; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::vector<int> GroupData::centralizer(int g) const {
  std::vector<int> out;
  for (int h = 0; h < order(); ++h) {
    if (mul(h, g) == mul(g, h)) out.push_back(h);
  }
  return out;
}

void GroupData::build() {
  const int n = order();
  class_of_.assign(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g) {
    if (class_of_[static_cast<std::size_t>(g)] >= 0) continue;
    ConjugacyClass c;
    c.rep = g;
    for (int h = 0; h < n; ++h) c.members.push_back(conjugate(h, g));
    std::sort(c.members.begin(), c.members.end());
    c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
    const int idx = static_cast<int>(classes_.size());
    for (int m : c.members) class_of_[static_cast<std::size_t>(m)] = idx;
    if (c.members.size() * centralizer(g).size() != static_cast<std::size_t>(n)) {
      throw InvariantFailure("group: orbit-stabilizer fails for element " + std::to_string(g));
    }
    classes_.push_back(std::move(c));
  }
}

}  // namespace cdr
