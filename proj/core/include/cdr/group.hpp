#pragma once

#include <string>
#include <vector>

namespace cdr {

struct ConjugacyClass {
  int rep = 0;               ///< smallest element id in the class
  std::vector<int> members;  ///< sorted
};

/// Finite group given by its multiplication table; element ids are 0 .. order-1.
class GroupData {
 public:
  /// table[a][b] = id of a*b. Throws InputError unless the table is a group.
  static GroupData from_table(std::vector<std::vector<int>> table, std::vector<std::string> labels = {});

  /// Permutations of {0..d-1}, composed as (p*q)(i) = p[q[i]].
  ///
  /// A list closed under composition is taken as the full element list with ids
  /// in the given order. Otherwise the list is read as generators: id 0 is the
  /// identity, then the distinct non-identity generators in order, then
  /// breadth-first products x*s over generators s.
  static GroupData from_permutations(const std::vector<std::vector<int>>& perms);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  int conjugate(int h, int g) const { return mul(mul(h, g), inverse(h)); }
  int element_order(int a) const;
  bool contains(int a) const { return a >= 0 && a < order(); }
  const std::string& label(int a) const { return labels_[static_cast<std::size_t>(a)]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  bool is_abelian() const;

  /// Classes ordered by representative; checks |class| * |C(rep)| = |G|.
  const std::vector<ConjugacyClass>& conjugacy_classes() const { return classes_; }
  /// Index into conjugacy_classes() of the class containing g.
  int class_of(int g) const { return class_of_[static_cast<std::size_t>(g)]; }
  std::vector<int> centralizer(int g) const;

 private:
  GroupData() = default;
  void build();

  std::vector<std::vector<int>> table_;
  std::vector<std::string> labels_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::vector<ConjugacyClass> classes_;
  std::vector<int> class_of_;
};

}  // namespace cdr
