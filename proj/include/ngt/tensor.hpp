#pragma once
#include <Eigen/Dense>
#include <array>
#include <vector>

#include "ngt/jet.hpp"

namespace ngt {

// Dense component array of a rank-r tensor at a point, all slots of size
// dim. Contravariant vs covariant slot roles are tracked by the caller.
template <class T>
struct TArr {
  int dim = 0;
  int rank = 0;
  std::vector<T> v;

  TArr() = default;
  TArr(int dim_, int rank_) : dim(dim_), rank(rank_), v(size_of(dim_, rank_)) {}
  TArr(int dim_, int rank_, const T& init) : dim(dim_), rank(rank_), v(size_of(dim_, rank_), init) {}

  static std::size_t size_of(int d, int r) {
    std::size_t s = 1;
    for (int i = 0; i < r; ++i) s *= static_cast<std::size_t>(d);
    return s;
  }

  template <class... I>
  T& operator()(I... is) {
    return v[flat(is...)];
  }
  template <class... I>
  const T& operator()(I... is) const {
    return v[flat(is...)];
  }

  template <class... I>
  std::size_t flat(I... is) const {
    std::size_t idx = 0;
    ((idx = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(is)), ...);
    return idx;
  }

  T& at_multi(const int* mi) {
    std::size_t idx = 0;
    for (int a = 0; a < rank; ++a)
      idx = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(mi[a]);
    return v[idx];
  }
  const T& at_multi(const int* mi) const {
    std::size_t idx = 0;
    for (int a = 0; a < rank; ++a)
      idx = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(mi[a]);
    return v[idx];
  }
};

using DArr = TArr<double>;
using JArr = TArr<Jet>;

struct Perm {
  std::array<int, 4> p{};
  int sign = 1;
};

// All permutations of {0..k-1} with parity, k <= 4, cached.
const std::vector<Perm>& permutations(int k);

// Strictly increasing multi-indices of length k over {0..dim-1}, cached.
const std::vector<std::array<int, 4>>& increasing_tuples(int dim, int k);

// Iterate every multi-index of length rank over {0..dim-1}.
template <class F>
void for_each_index(int dim, int rank, F&& f) {
  int mi[8] = {0};
  if (rank == 0) {
    f(mi);
    return;
  }
  for (;;) {
    f(mi);
    int a = rank - 1;
    while (a >= 0 && ++mi[a] == dim) mi[a--] = 0;
    if (a < 0) break;
  }
}

// Signed average over slot permutations, divided by k!.
DArr alternate(const DArr& A);
JArr alternate(const JArr& A);

double max_abs(const DArr& A);
DArr add(const DArr& A, const DArr& B, double cb = 1.0);
DArr scale(const DArr& A, double c);
double dot_full(const DArr& A, const DArr& B);

// Replace slot `slot` by contraction with M (out_i = Σ_b M(i,b) in_b).
DArr contract_slot(const DArr& A, int slot, const Eigen::MatrixXd& M);
// Raise every slot with ginv.
DArr raise_all(const DArr& A, const Eigen::MatrixXd& ginv);

// Pointwise inner product of two (0,k) tensors, all slots paired via ginv.
double tensor_inner(const DArr& A, const DArr& B, const Eigen::MatrixXd& ginv);
// Increasing-index inner product of two k-forms (frame components).
double form_inner(const DArr& A, const DArr& B, const Eigen::MatrixXd& frame);

// g-orthonormal frame from a Cholesky factorization of g at a point.
// Columns of `frame` are the frame vectors.
struct FrameData {
  Eigen::MatrixXd frame;
};
FrameData orthonormal_frame(const Eigen::MatrixXd& g);

// (X∧Y)Z = g(Y,Z)X - g(X,Z)Y for coordinate component vectors.
Eigen::VectorXd wedge_action(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                             const Eigen::VectorXd& Z, const Eigen::MatrixXd& g);
// <X∧Y, Z∧W> = g(X,Z)g(Y,W) - g(X,W)g(Y,Z).
double lambda2_inner(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                     const Eigen::VectorXd& Z, const Eigen::VectorXd& W,
                     const Eigen::MatrixXd& g);
// Endomorphism matrix of X∧Y: Z -> g(Y,Z)X - g(X,Z)Y.
Eigen::MatrixXd wedge_endo(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                           const Eigen::MatrixXd& g);

// Derivation action of an endomorphism on a (0,k) tensor:
// (L S)(X1..Xk) = -Σ_a S(X1,..,L Xa,..,Xk).
DArr endo_action(const Eigen::MatrixXd& L, const DArr& S);

}  // namespace ngt
