#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgh {

using cplx = std::complex<double>;

// Representation index: k for the circle, two_ell for SU(2), 0 for the trivial group.
// Wide enough for Liouville convergent denominators up to 10^24.
using Index = __int128;

std::string index_to_string(Index v);
Index parse_index(std::string_view text);

enum class GroupKind { Trivial, Circle, SU2 };

std::string_view kind_label(GroupKind kind);  // TRIV, T1, SU2
GroupKind parse_kind(std::string_view label);

struct Factor {
  GroupKind kind = GroupKind::Trivial;
  int trunc = 0;  // K for the circle, two_ell_max for SU(2)

  bool operator==(const Factor&) const = default;
};

int rep_dim(GroupKind kind, Index rep);
double rep_weight(GroupKind kind, Index rep);
// Doubled eigenvalue of the distinguished vector field at local row index `local`.
Index twice_eigenvalue(GroupKind kind, Index rep, int local);
// Doubled index stored in coefficient files (two_m): 0 on the circle.
int file_two_m(GroupKind kind, Index rep, int local);

// Spacing of the doubled eigenvalue lattice: 2 for the circle, 1 for SU(2), 0 for the trivial group.
int eigen_lattice_step(GroupKind kind);

// Weight of the first representation outside the truncation (infinity for the trivial group).
double edge_weight(const Factor& factor);

class BlockLayout {
 public:
  BlockLayout() = default;
  explicit BlockLayout(const Factor& factor);

  const Factor& factor() const { return factor_; }
  std::size_t rep_count() const { return reps_.size(); }
  Index rep(std::size_t i) const { return reps_[i]; }
  int dim(std::size_t i) const { return dims_[i]; }
  std::size_t offset(std::size_t i) const { return offsets_[i]; }
  std::size_t size() const { return total_; }
  // Position of `rep` in the layout, or npos when outside the truncation.
  std::size_t find(Index rep) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Factor factor_;
  std::vector<Index> reps_;
  std::vector<int> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

}  // namespace lgh
