#pragma once
#include <random>
#include <vector>

#include "ngt/tensor.hpp"

namespace ngt {

// Analytic scalar field with exact order-2 jets: either a quadratic
// polynomial or a two-term trigonometric field (periodic on any torus with
// periods 2π/integer multiples).
struct ScalarField {
  bool trig = false;
  double c0 = 0.0;
  std::array<double, MAXDIM> c{};
  std::array<std::array<double, MAXDIM>, MAXDIM> q{};
  double amp_s = 0.0, phase_s = 0.0, amp_c = 0.0, phase_c = 0.0;
  std::array<int, MAXDIM> ms{}, mc{};

  Jet eval(const double* x, int dim) const {
    Jet r;
    r.dim = dim;
    r.budget = 2;
    if (!trig) {
      r.v = c0;
      for (int i = 0; i < dim; ++i) {
        std::size_t si = static_cast<std::size_t>(i);
        r.v += c[si] * x[i];
        r.grad(i) = c[si];
        for (int j = 0; j < dim; ++j) {
          std::size_t sj = static_cast<std::size_t>(j);
          r.v += q[si][sj] * x[i] * x[j];
          r.grad(i) += (q[si][sj] + q[sj][si]) * x[j];
          r.hess(i, j) = q[si][sj] + q[sj][si];
        }
      }
      return r;
    }
    double us = phase_s, uc = phase_c;
    for (int i = 0; i < dim; ++i) {
      us += ms[static_cast<std::size_t>(i)] * x[i];
      uc += mc[static_cast<std::size_t>(i)] * x[i];
    }
    r.v = amp_s * std::sin(us) + amp_c * std::cos(uc);
    for (int i = 0; i < dim; ++i) {
      r.grad(i) = amp_s * std::cos(us) * ms[static_cast<std::size_t>(i)] -
                  amp_c * std::sin(uc) * mc[static_cast<std::size_t>(i)];
      for (int j = 0; j < dim; ++j)
        r.hess(i, j) = -amp_s * std::sin(us) * ms[static_cast<std::size_t>(i)] *
                           ms[static_cast<std::size_t>(j)] -
                       amp_c * std::cos(uc) * mc[static_cast<std::size_t>(i)] *
                           mc[static_cast<std::size_t>(j)];
    }
    return r;
  }
};

// Vector field probe: dim analytic components.
struct VectorProbe {
  int dim = 0;
  std::array<ScalarField, MAXDIM> comp{};

  JArr eval(const double* x) const {
    JArr out(dim, 1, jet_const(0.0, dim));
    for (int i = 0; i < dim; ++i) out(i) = comp[static_cast<std::size_t>(i)].eval(x, dim);
    return out;
  }
};

// k-form probe: analytic components on increasing index tuples, stored
// fully antisymmetrized.
struct FormProbe {
  int dim = 0;
  int degree = 0;
  std::vector<ScalarField> comps;  // one per increasing tuple

  JArr eval(const double* x) const {
    JArr out(dim, degree, jet_const(0.0, dim));
    const auto& tuples = increasing_tuples(dim, degree);
    const auto& ps = permutations(degree);
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      Jet val = comps[t].eval(x, dim);
      int mi[4];
      for (const Perm& perm : ps) {
        for (int a = 0; a < degree; ++a)
          mi[a] = tuples[t][static_cast<std::size_t>(perm.p[static_cast<std::size_t>(a)])];
        out.at_multi(mi) = perm.sign > 0 ? val : -val;
      }
    }
    return out;
  }
};

inline ScalarField constant_field(double v) {
  ScalarField s;
  s.c0 = v;
  return s;
}

inline ScalarField random_poly_field(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField s;
  s.c0 = u(rng);
  for (int i = 0; i < MAXDIM; ++i) {
    s.c[static_cast<std::size_t>(i)] = 0.5 * u(rng);
    for (int j = 0; j < MAXDIM; ++j)
      s.q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0.25 * u(rng);
  }
  return s;
}

inline ScalarField random_trig_field(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> freq(-1, 1);
  ScalarField s;
  s.trig = true;
  s.amp_s = u(rng);
  s.amp_c = u(rng);
  s.phase_s = u(rng);
  s.phase_c = u(rng);
  for (int i = 0; i < dim; ++i) {
    s.ms[static_cast<std::size_t>(i)] = freq(rng);
    s.mc[static_cast<std::size_t>(i)] = freq(rng);
  }
  return s;
}

// Coordinate vector fields followed by `extra` pseudo-random fields.
std::vector<VectorProbe> standard_vector_probes(int dim, unsigned long long seed, int extra,
                                                bool periodic);
std::vector<FormProbe> standard_form_probes(int dim, int degree, unsigned long long seed,
                                            int count, bool periodic);

}  // namespace ngt
