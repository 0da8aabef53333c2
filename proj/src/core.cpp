#include "lgh/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lgh {

std::string index_to_string(Index v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string out;
  while (u > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Index parse_index(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  bool neg = false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw std::invalid_argument("malformed integer: " + std::string(text));
  unsigned __int128 u = 0;
  const unsigned __int128 limit = static_cast<unsigned __int128>(std::numeric_limits<__int128>::max());
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c < '0' || c > '9') throw std::invalid_argument("malformed integer: " + std::string(text));
    u = u * 10 + static_cast<unsigned>(c - '0');
    if (u > limit) throw std::out_of_range("integer too large: " + std::string(text));
  }
  Index v = static_cast<Index>(u);
  return neg ? -v : v;
}

std::string_view kind_label(GroupKind kind) {
  switch (kind) {
    case GroupKind::Trivial: return "TRIV";
    case GroupKind::Circle: return "T1";
    case GroupKind::SU2: return "SU2";
  }
  return "?";
}

GroupKind parse_kind(std::string_view label) {
  if (label == "T1") return GroupKind::Circle;
  if (label == "SU2") return GroupKind::SU2;
  if (label == "TRIV") return GroupKind::Trivial;
  throw std::invalid_argument("unknown group kind: " + std::string(label));
}

int rep_dim(GroupKind kind, Index rep) {
  if (kind == GroupKind::SU2) {
    if (rep < 0) throw std::invalid_argument("negative two_ell");
    if (rep > std::numeric_limits<int>::max() - 1) throw std::out_of_range("SU(2) representation too large");
    return static_cast<int>(rep) + 1;
  }
  return 1;
}

double rep_weight(GroupKind kind, Index rep) {
  switch (kind) {
    case GroupKind::Trivial: return 1.0;
    case GroupKind::Circle: {
      double k = static_cast<double>(rep);
      return std::sqrt(1.0 + k * k);
    }
    case GroupKind::SU2: {
      double ell = static_cast<double>(rep) / 2.0;
      return std::sqrt(1.0 + ell * (ell + 1.0));
    }
  }
  return 1.0;
}

Index twice_eigenvalue(GroupKind kind, Index rep, int local) {
  switch (kind) {
    case GroupKind::Trivial: return 0;
    case GroupKind::Circle: return 2 * rep;
    case GroupKind::SU2: return 2 * static_cast<Index>(local) - rep;
  }
  return 0;
}

int file_two_m(GroupKind kind, Index rep, int local) {
  if (kind == GroupKind::SU2) return 2 * local - static_cast<int>(rep);
  return 0;
}

int eigen_lattice_step(GroupKind kind) {
  switch (kind) {
    case GroupKind::Trivial: return 0;
    case GroupKind::Circle: return 2;
    case GroupKind::SU2: return 1;
  }
  return 0;
}

double edge_weight(const Factor& factor) {
  switch (factor.kind) {
    case GroupKind::Trivial: return std::numeric_limits<double>::infinity();
    case GroupKind::Circle: return rep_weight(GroupKind::Circle, factor.trunc + 1);
    case GroupKind::SU2: return rep_weight(GroupKind::SU2, factor.trunc + 1);
  }
  return 0.0;
}

BlockLayout::BlockLayout(const Factor& factor) : factor_(factor) {
  if (factor.trunc < 0) throw std::invalid_argument("negative truncation");
  switch (factor.kind) {
    case GroupKind::Trivial: reps_ = {0}; break;
    case GroupKind::Circle:
      for (int k = -factor.trunc; k <= factor.trunc; ++k) reps_.push_back(k);
      break;
    case GroupKind::SU2:
      for (int j = 0; j <= factor.trunc; ++j) reps_.push_back(j);
      break;
  }
  for (Index r : reps_) {
    int d = rep_dim(factor.kind, r);
    dims_.push_back(d);
    offsets_.push_back(total_);
    total_ += static_cast<std::size_t>(d) * d;
  }
}

std::size_t BlockLayout::find(Index rep) const {
  switch (factor_.kind) {
    case GroupKind::Trivial: return rep == 0 ? 0 : npos;
    case GroupKind::Circle:
      if (rep < -factor_.trunc || rep > factor_.trunc) return npos;
      return static_cast<std::size_t>(rep + factor_.trunc);
    case GroupKind::SU2:
      if (rep < 0 || rep > factor_.trunc) return npos;
      return static_cast<std::size_t>(rep);
  }
  return npos;
}

}  // namespace lgh
