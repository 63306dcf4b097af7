#include "ngt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ngt/error.hpp"

namespace ngt {

const std::vector<Perm>& permutations(int k) {
  static std::array<std::vector<Perm>, 5> cache = [] {
    std::array<std::vector<Perm>, 5> c;
    for (int k2 = 0; k2 <= 4; ++k2) {
      std::array<int, 4> p{};
      std::iota(p.begin(), p.begin() + k2, 0);
      do {
        int inv = 0;
        for (int i = 0; i < k2; ++i)
          for (int j = i + 1; j < k2; ++j)
            if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inv;
        c[static_cast<std::size_t>(k2)].push_back({p, inv % 2 == 0 ? 1 : -1});
      } while (std::next_permutation(p.begin(), p.begin() + k2));
    }
    return c;
  }();
  return cache[static_cast<std::size_t>(k)];
}

const std::vector<std::array<int, 4>>& increasing_tuples(int dim, int k) {
  static std::map<std::pair<int, int>, std::vector<std::array<int, 4>>> cache;
  auto key = std::make_pair(dim, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> mi{};
  auto rec = [&](auto&& self, int slot, int start) -> void {
    if (slot == k) {
      out.push_back(mi);
      return;
    }
    for (int i = start; i < dim; ++i) {
      mi[static_cast<std::size_t>(slot)] = i;
      self(self, slot + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return cache.emplace(key, std::move(out)).first->second;
}

namespace {

template <class T>
TArr<T> alternate_impl(const TArr<T>& A) {
  TArr<T> out(A.dim, A.rank);
  const auto& ps = permutations(A.rank);
  double inv_fact = 1.0 / static_cast<double>(ps.size());
  for_each_index(A.dim, A.rank, [&](const int* mi) {
    T acc{};
    if constexpr (std::is_same_v<T, Jet>) acc.dim = A.dim;
    bool first = true;
    int pm[8];
    for (const Perm& perm : ps) {
      for (int a = 0; a < A.rank; ++a)
        pm[a] = mi[perm.p[static_cast<std::size_t>(a)]];
      T term = A.at_multi(pm);
      if (perm.sign < 0) term = -term;
      if (first) {
        acc = term;
        first = false;
      } else {
        acc = acc + term;
      }
    }
    out.at_multi(mi) = inv_fact * acc;
  });
  return out;
}

}  // namespace

DArr alternate(const DArr& A) { return alternate_impl(A); }
JArr alternate(const JArr& A) { return alternate_impl(A); }

double max_abs(const DArr& A) {
  double m = 0.0;
  for (double x : A.v) m = std::max(m, std::abs(x));
  return m;
}

DArr add(const DArr& A, const DArr& B, double cb) {
  DArr out = A;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += cb * B.v[i];
  return out;
}

DArr scale(const DArr& A, double c) {
  DArr out = A;
  for (double& x : out.v) x *= c;
  return out;
}

double dot_full(const DArr& A, const DArr& B) {
  double s = 0.0;
  for (std::size_t i = 0; i < A.v.size(); ++i) s += A.v[i] * B.v[i];
  return s;
}

DArr contract_slot(const DArr& A, int slot, const Eigen::MatrixXd& M) {
  DArr out(A.dim, A.rank);
  for_each_index(A.dim, A.rank, [&](const int* mi) {
    double s = 0.0;
    int mj[8];
    for (int a = 0; a < A.rank; ++a) mj[a] = mi[a];
    for (int b = 0; b < A.dim; ++b) {
      mj[slot] = b;
      s += M(mi[slot], b) * A.at_multi(mj);
    }
    out.at_multi(mi) = s;
  });
  return out;
}

DArr raise_all(const DArr& A, const Eigen::MatrixXd& ginv) {
  DArr out = A;
  for (int a = 0; a < A.rank; ++a) out = contract_slot(out, a, ginv);
  return out;
}

double tensor_inner(const DArr& A, const DArr& B, const Eigen::MatrixXd& ginv) {
  return dot_full(A, raise_all(B, ginv));
}

double form_inner(const DArr& A, const DArr& B, const Eigen::MatrixXd& frame) {
  DArr Af = A, Bf = B;
  for (int a = 0; a < A.rank; ++a) {
    Af = contract_slot(Af, a, frame.transpose());
    Bf = contract_slot(Bf, a, frame.transpose());
  }
  double s = 0.0;
  for (const auto& mi : increasing_tuples(A.dim, A.rank))
    s += Af.at_multi(mi.data()) * Bf.at_multi(mi.data());
  return s;
}

FrameData orthonormal_frame(const Eigen::MatrixXd& g) {
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw NgtError("metric is not positive definite at a grid point");
  Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(g.rows(), g.cols());
  FrameData fd;
  fd.frame = L.transpose().triangularView<Eigen::Upper>().solve(identity);
  return fd;
}

Eigen::VectorXd wedge_action(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                             const Eigen::VectorXd& Z, const Eigen::MatrixXd& g) {
  double gyz = Y.dot(g * Z), gxz = X.dot(g * Z);
  return gyz * X - gxz * Y;
}

double lambda2_inner(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                     const Eigen::VectorXd& Z, const Eigen::VectorXd& W,
                     const Eigen::MatrixXd& g) {
  return X.dot(g * Z) * Y.dot(g * W) - X.dot(g * W) * Y.dot(g * Z);
}

Eigen::MatrixXd wedge_endo(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                           const Eigen::MatrixXd& g) {
  return X * (g * Y).transpose() - Y * (g * X).transpose();
}

DArr endo_action(const Eigen::MatrixXd& L, const DArr& S) {
  DArr out(S.dim, S.rank);
  for_each_index(S.dim, S.rank, [&](const int* mi) {
    double s = 0.0;
    int mj[8];
    for (int a = 0; a < S.rank; ++a) mj[a] = mi[a];
    for (int a = 0; a < S.rank; ++a) {
      for (int b = 0; b < S.dim; ++b) {
        mj[a] = b;
        s -= S.at_multi(mj) * L(b, mi[a]);
      }
      mj[a] = mi[a];
    }
    out.at_multi(mi) = s;
  });
  return out;
}

}  // namespace ngt
