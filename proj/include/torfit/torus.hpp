#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "torfit/errors.hpp"

namespace torfit {

using Vec = Eigen::VectorXd;
using IVec = Eigen::VectorXi;

// A point on the m-torus, every coordinate wrapped into [0, 1).
class TorusPoint {
 public:
  explicit TorusPoint(Vec coords);
  static TorusPoint from_raw(const Vec& coords) { return TorusPoint(coords); }

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }
  const Vec& coords() const { return coords_; }

 private:
  Vec coords_;
};

// Wraps raw coordinates onto the torus; rejects non-finite input.
TorusPoint wrap(const Vec& raw);

// Componentwise difference a - b, wrapped back onto the torus.
TorusPoint periodic_diff(const TorusPoint& a, const TorusPoint& b);

// Shortest periodic distance between a and b in the Euclidean sense:
// per axis min(|d|, 1 - |d|), then the l2 norm of those.
double periodic_dist(const TorusPoint& a, const TorusPoint& b);

// sum_i |l_i|^(2k), computed in checked integer arithmetic and converted to
// double at the end.  Throws input_error if any |l_i|^(2k) or the running sum
// would exceed 2^62.
double norm_2k_pow(const IVec& l, int k);

// Number of lattice points in the box -omega <= l <= omega, with overflow
// check against 2^62.
std::uint64_t box_size(const IVec& omega);

// All integer vectors l with -omega_i <= l_i <= omega_i, in lexicographic
// order (first axis slowest).
std::vector<IVec> enumerate_box(const IVec& omega);

// All integer vectors with max_i |l_i| <= R, m axes.
std::vector<IVec> enumerate_cube(int R, int m);

// One representative of each pair {l, -l} from the box, excluding zero: the
// indices whose first nonzero entry is positive, in lexicographic order.
std::vector<IVec> enumerate_half_box(const IVec& omega);

// Visits box indices without materializing them; f(const IVec&) for each.
template <typename F>
void for_each_box_index(const IVec& omega, F&& f) {
  const int m = static_cast<int>(omega.size());
  IVec l = -omega;
  for (;;) {
    f(static_cast<const IVec&>(l));
    int axis = m - 1;
    while (axis >= 0 && l[axis] == omega[axis]) {
      l[axis] = -omega[axis];
      --axis;
    }
    if (axis < 0) break;
    ++l[axis];
  }
}

}  // namespace torfit
