#pragma once

// Finite graded posets with a minimum of rank -1, the input of the g/h
// recursion.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tvbetti/error.hpp"

namespace tvb {

class FacePoset {
 public:
  FacePoset() = default;

  /// dims[i] is the rank of element i; leq[i][j] says element i <= element j.
  /// Throws if the relation is not a graded poset with unique bottom and top.
  FacePoset(std::vector<int> dims, std::vector<std::vector<bool>> leq)
      : dims_(std::move(dims)), leq_(std::move(leq)) {
    validate();
  }

  std::size_t size() const noexcept { return dims_.size(); }
  int dim(std::size_t i) const { return dims_[i]; }
  const std::vector<int>& dims() const noexcept { return dims_; }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq_[i][j]; }
  std::size_t bottom() const noexcept { return bottom_; }
  std::size_t top() const noexcept { return top_; }
  int top_dim() const { return dims_[top_]; }

  /// Number of elements of each rank, from -1 upwards.
  std::map<int, long> counts() const {
    std::map<int, long> c;
    for (int d : dims_) ++c[d];
    return c;
  }

  /// Counts d_{-1}, ..., d_{p-1} of the proper faces.
  std::vector<long> proper_face_counts() const {
    std::vector<long> out(static_cast<std::size_t>(top_dim() + 1), 0);
    for (int d : dims_)
      if (d < top_dim()) ++out[static_cast<std::size_t>(d + 1)];
    return out;
  }

  /// The order-reversed poset, re-ranked so the new bottom has rank -1.
  FacePoset polar() const {
    const int p = top_dim();
    std::vector<int> dims(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) dims[i] = p - 1 - dims_[i];
    std::vector<std::vector<bool>> leq(dims_.size(), std::vector<bool>(dims_.size()));
    for (std::size_t i = 0; i < dims_.size(); ++i)
      for (std::size_t j = 0; j < dims_.size(); ++j) leq[i][j] = leq_[j][i];
    return FacePoset(std::move(dims), std::move(leq));
  }

  /// Every interval of length >= 1 has as many elements of even as of odd rank.
  bool is_eulerian() const {
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = 0; y < size(); ++y) {
        if (!less(x, y)) continue;
        long s = 0;
        for (std::size_t z = 0; z < size(); ++z)
          if (leq_[x][z] && leq_[z][y]) s += (dims_[z] % 2 == 0) ? 1 : -1;
        if (s != 0) return false;
      }
    return true;
  }

 private:
  void validate() {
    const std::size_t n = dims_.size();
    if (n == 0) throw Error(ErrorCategory::Precondition, "face poset is empty");
    if (leq_.size() != n)
      throw Error(ErrorCategory::Precondition, "face poset relation has the wrong size");
    std::vector<std::size_t> bottoms, tops;
    for (std::size_t i = 0; i < n; ++i) {
      bool is_bottom = true, is_top = true;
      for (std::size_t j = 0; j < n; ++j) {
        is_bottom = is_bottom && leq_[i][j];
        is_top = is_top && leq_[j][i];
      }
      if (is_bottom) bottoms.push_back(i);
      if (is_top) tops.push_back(i);
    }
    if (bottoms.size() != 1 || tops.size() != 1)
      throw Error(ErrorCategory::Precondition, "face poset needs a unique minimum and maximum");
    bottom_ = bottoms[0];
    top_ = tops[0];
    if (dims_[bottom_] != -1) throw Error(ErrorCategory::Precondition, "face poset minimum must have rank -1");
    // Graded: rank goes up by exactly one along every covering relation.
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!less(x, y)) continue;
        if (dims_[y] <= dims_[x]) throw Error(ErrorCategory::Precondition, "face poset rank is not monotone");
        bool covers = true;
        for (std::size_t z = 0; z < n && covers; ++z)
          if (less(x, z) && less(z, y)) covers = false;
        if (covers && dims_[y] != dims_[x] + 1)
          throw Error(ErrorCategory::Precondition, "face poset is not graded");
      }
  }

  std::vector<int> dims_;
  std::vector<std::vector<bool>> leq_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
};

}  // namespace tvb
